#include "ufrac/asymptotics.hpp"

#include "ufrac/enumerator.hpp"
#include "ufrac/errors.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace ufrac {

namespace {

Rational R(long a, long b = 1) { return Rational(a) / b; }

Natural floor_div(const Natural& a, const Natural& b) { return a / b; }

Natural ceil_div(const Natural& a, const Natural& b) { return (a + b - 1) / b; }

// Pairs (source, formula) attaining the minimum at c.
std::vector<std::pair<int, int>> signature(const Rational& c, Rational* value = nullptr) {
    const auto& sources = bound_sources();
    const auto& formulas = bound_formulas();
    Rational best = sources[0].exponent(c);
    for (const auto& s : sources) best = std::min(best, s.exponent(c));
    std::vector<std::pair<int, int>> sig;
    for (int s = 0; s < static_cast<int>(sources.size()); ++s) {
        if (sources[s].exponent(c) != best) continue;
        for (int f : sources[s].formulas)
            if (formulas[f].exponent(c) == best) sig.emplace_back(s, f);
    }
    if (value) *value = best;
    return sig;
}

Float to_float(const Rational& x) { return Float(numerator(x)) / Float(denominator(x)); }

}  // namespace

const std::array<BoundFormula, 5>& bound_formulas() {
    static const std::array<BoundFormula, 5> formulas{{
        {"n^(3/2)/m^(3/4)", R(3, 2), R(3, 4)},
        {"n^(8/5)/m", R(8, 5), R(1)},
        {"n^(28/17)/m^(8/5)", R(28, 17), R(8, 5)},
        {"(n/m)^(5/3)", R(5, 3), R(5, 3)},
        {"n^(4/3)/m^(2/3)", R(4, 3), R(2, 3)},
    }};
    return formulas;
}

Rational BoundSource::exponent(const Rational& c) const {
    Rational best = bound_formulas()[formulas.front()].exponent(c);
    for (int f : formulas) best = std::max(best, bound_formulas()[f].exponent(c));
    return best;
}

const std::array<BoundSource, 4>& bound_sources() {
    static const std::array<BoundSource, 4> sources{{
        {"n^(3/2)/m^(3/4)", {0}},
        {"n^(8/5)/m", {1}},
        {"n^(4/3)/m^(2/3) + n^(28/17)/m^(8/5)", {4, 2}},
        {"(n/m)^(5/3) + n^(4/3)/m^(2/3)", {3, 4}},
    }};
    return sources;
}

Regime regime(const Rational& c) {
    if (c < 0 || c > 1) throw InvalidArgument("c must lie in [0, 1], got " + to_string(c));
    Regime r;
    r.c = c;
    for (auto [s, f] : signature(c, &r.value)) {
        r.sources.push_back(s);
        r.formulas.push_back(f);
    }
    auto unique = [](std::vector<int>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    unique(r.sources);
    unique(r.formulas);
    return r;
}

std::vector<Rational> regime_breakpoints() {
    const auto& formulas = bound_formulas();
    std::vector<Rational> cuts{R(0), R(1)};
    for (std::size_t i = 0; i < formulas.size(); ++i) {
        for (std::size_t j = i + 1; j < formulas.size(); ++j) {
            const Rational slope = formulas[i].m_coeff - formulas[j].m_coeff;
            if (slope == 0) continue;
            const Rational c = (formulas[i].n_coeff - formulas[j].n_coeff) / slope;
            if (c > 0 && c < 1) cuts.push_back(c);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Rational> out;
    for (std::size_t i = 1; i + 1 < cuts.size(); ++i) {
        const Rational left = (cuts[i - 1] + cuts[i]) / 2;
        const Rational right = (cuts[i] + cuts[i + 1]) / 2;
        if (signature(left) != signature(right)) out.push_back(cuts[i]);
    }
    return out;
}

std::vector<RegimePiece> regime_table() {
    std::vector<Rational> cuts{R(0)};
    for (const auto& b : regime_breakpoints()) cuts.push_back(b);
    cuts.push_back(R(1));
    std::vector<RegimePiece> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Regime mid = regime((cuts[i] + cuts[i + 1]) / 2);
        pieces.push_back({cuts[i], cuts[i + 1], mid.formula(), mid.sources});
    }
    return pieces;
}

std::string FkBound::str() const {
    std::ostringstream out;
    out << "(" << k << "^(4/3)*" << n << "^2/" << m << ")^(" << to_string(exponent) << ")";
    return out.str();
}

std::string FkBound::magnitude(int digits) const {
    using boost::multiprecision::floor;
    const Float e = floor(log10_magnitude);
    Float mantissa = boost::multiprecision::pow(Float(10), log10_magnitude - e);
    std::ostringstream out;
    out.precision(digits - 1);
    out << std::fixed << mantissa << "e" << (e >= 0 ? "+" : "") << e.convert_to<long long>();
    return out.str();
}

FkBound fk_bound(int k, const Natural& m, const Natural& n) {
    if (k < 5) throw InvalidArgument("k must be at least 5");
    if (m == 0 || n == 0) throw InvalidArgument("m and n must be positive");
    FkBound b;
    b.k = k;
    b.m = m;
    b.n = n;
    b.exponent = R(8, 5) * Rational(Natural(1) << (k - 5));
    b.ratio = Rational(n * n, m);
    using boost::multiprecision::log10;
    const Float base = Float(4) / 3 * log10(Float(k)) + log10(to_float(b.ratio));
    b.log10_magnitude = to_float(b.exponent) * base;
    return b;
}

std::vector<LiftRow> lift_report(int n_max, unsigned threads) {
    if (n_max < 1 || n_max > 30) throw InvalidArgument("n_max must lie in [1, 30]");
    std::vector<LiftRow> rows;
    for (int n = 1; n <= n_max; ++n)
        for (int m = 1; m <= 6 * n; ++m)
            if (gcd(Natural(m), Natural(n)) == 1) rows.push_back({Natural(m), Natural(n), 0, 0});
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < rows.size();) {
            auto& row = rows[i];
            row.f5 = count(row.m, row.n, 5);
            const Float ratio = to_float(Rational(row.n * row.n, row.m));
            row.bound = boost::multiprecision::pow(ratio, Float(8) / 5);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return rows;
}

std::pair<Rational, Rational> root_bracket(const Rational& r, int times, unsigned bits) {
    if (r < 0) throw InvalidArgument("root of a negative number");
    const Natural scale = Natural(1) << (2 * bits);
    const Natural unit = Natural(1) << bits;
    Rational lo = r, hi = r;
    for (int i = 0; i < times; ++i) {
        lo = Rational(isqrt(floor_div(numerator(lo) * scale, denominator(lo))), unit);
        hi = Rational(isqrt(ceil_div(numerator(hi) * scale, denominator(hi))) + 1, unit);
    }
    return {lo, hi};
}

SylvesterState sylvester(const Rational& target_width) {
    if (target_width <= 0) throw InvalidArgument("width must be positive");
    SylvesterState st;
    st.u.push_back(1);
    st.q.emplace_back(1, 1);
    st.lower = 1;
    st.upper = 2;
    // Rounding of each square root stays below a quarter of the target.
    unsigned bits = 8;
    while (Rational(1, Natural(1) << bits) * 64 > target_width) ++bits;
    for (int i = 1; st.width() > target_width; ++i) {
        const Natural prev = st.u.back();
        st.u.push_back(prev * (prev + 1));
        const auto q = root_bracket(Rational(st.u.back()), i, bits);
        const auto q1 = root_bracket(Rational(st.u.back() + 1), i, bits);
        st.q.push_back(q);
        st.lower = std::max(st.lower, q.first);
        st.upper = std::min(st.upper, q1.second);
        if (i > 64) throw InvariantViolation("bracket did not shrink");
    }
    return st;
}

std::string decimal(const Rational& r, int digits, bool round_up) {
    const Natural scale = boost::multiprecision::pow(Natural(10), static_cast<unsigned>(digits));
    const bool negative = r < 0;
    const Rational a = negative ? Rational(-r) : r;
    const bool up = round_up != negative;
    const Natural scaled = up ? ceil_div(numerator(a) * scale, denominator(a)) : numerator(a) * scale / denominator(a);
    std::string out = (negative ? "-" : "") + (scaled / scale).str();
    if (digits > 0) {
        std::string frac = (scaled % scale).str();
        out += "." + std::string(digits - frac.size(), '0') + frac;
    }
    return out;
}

}  // namespace ufrac
