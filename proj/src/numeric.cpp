#include "ufrac/numeric.hpp"

#include "ufrac/errors.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

namespace ufrac {

namespace mp = boost::multiprecision;

Natural gcd(const Natural& a, const Natural& b) {
    if (a.is_zero()) return abs(b);
    if (b.is_zero()) return abs(a);
    return mp::gcd(a, b);
}

Natural lcm(const Natural& a, const Natural& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    return abs(a / gcd(a, b) * b);
}

Natural parse_natural(std::string_view text) {
    if (text.empty()) throw InvalidArgument("expected a natural number, got an empty string");
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw InvalidArgument("expected a natural number, got '" + std::string(text) + "'");
    }
    // A leading zero would select octal in the string constructor.
    while (text.size() > 1 && text.front() == '0') text.remove_prefix(1);
    return Natural(std::string(text));
}

Rational parse_rational(std::string_view text) {
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        Rational mantissa = parse_rational(text.substr(0, e));
        std::string_view exp = text.substr(e + 1);
        bool negative = !exp.empty() && exp.front() == '-';
        if (!exp.empty() && (exp.front() == '-' || exp.front() == '+')) exp.remove_prefix(1);
        Natural k = parse_natural(exp);
        if (k > 1000) throw InvalidArgument("exponent out of range in '" + std::string(text) + "'");
        Natural scale = mp::pow(Natural(10), static_cast<unsigned>(k));
        return negative ? mantissa / scale : mantissa * scale;
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Natural p = parse_natural(text.substr(0, slash));
        Natural q = parse_natural(text.substr(slash + 1));
        if (q.is_zero()) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
        return Rational(p, q);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if (whole.empty() && frac.empty())
            throw InvalidArgument("malformed decimal '" + std::string(text) + "'");
        Natural w = whole.empty() ? Natural(0) : parse_natural(whole);
        Natural f = frac.empty() ? Natural(0) : parse_natural(frac);
        Natural scale = mp::pow(Natural(10), static_cast<unsigned>(frac.size()));
        return Rational(w * scale + f, scale);
    }
    return Rational(parse_natural(text));
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Fraction Fraction::reduce(const Natural& m, const Natural& n) {
    if (n.is_zero()) throw InvalidArgument("zero denominator");
    if (m.sign() <= 0 || n.sign() < 0) throw InvalidArgument("fraction components must be positive");
    Natural g = gcd(m, n);
    return Fraction(m / g, n / g);
}

std::string Fraction::str() const { return num_.str() + "/" + den_.str(); }

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    Natural lhs = a.num_ * b.den_;
    Natural rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

TrialDivisionFactorizer::TrialDivisionFactorizer(std::uint32_t table_limit) {
    table_limit = std::max<std::uint32_t>(table_limit, 30);
    std::vector<bool> composite(table_limit + 1, false);
    for (std::uint32_t i = 2; i <= table_limit; ++i) {
        if (composite[i]) continue;
        primes_.push_back(i);
        for (std::uint64_t j = std::uint64_t{i} * i; j <= table_limit; j += i) composite[j] = true;
    }
}

namespace {

// Strips every factor p from n, appending p^e to out when e > 0.
void strip(Natural& n, const Natural& p, Factorization& out) {
    unsigned e = 0;
    Natural q, r;
    for (;;) {
        divide_qr(n, p, q, r);
        if (!r.is_zero()) break;
        n.swap(q);
        ++e;
    }
    if (e > 0) out.push_back({p, e});
}

}  // namespace

Factorization TrialDivisionFactorizer::factor(const Natural& n_in) const {
    if (n_in.sign() <= 0) throw InvalidArgument("factor: argument must be positive");
    Factorization out;
    Natural n = n_in;
    for (std::uint32_t p : primes_) {
        if (n == 1) return out;
        Natural pp = p;
        if (pp * pp > n) break;
        strip(n, pp, out);
    }
    if (n == 1) return out;

    // Wheel past the table: candidates coprime to 30.
    static constexpr unsigned kWheel[8] = {1, 7, 11, 13, 17, 19, 23, 29};
    Natural base = (Natural(primes_.back()) / 30) * 30;
    for (;;) {
        for (unsigned off : kWheel) {
            Natural cand = base + off;
            if (cand <= primes_.back()) continue;
            if (cand * cand > n) {
                if (n > 1) out.push_back({n, 1});
                return out;
            }
            strip(n, cand, out);
        }
        base += 30;
    }
}

namespace {

std::mutex& factorizer_mutex() {
    static std::mutex m;
    return m;
}

std::shared_ptr<const Factorizer>& factorizer_slot() {
    static std::shared_ptr<const Factorizer> slot = std::make_shared<TrialDivisionFactorizer>();
    return slot;
}

}  // namespace

std::shared_ptr<const Factorizer> default_factorizer() {
    std::lock_guard lock(factorizer_mutex());
    return factorizer_slot();
}

std::shared_ptr<const Factorizer> install_factorizer(std::shared_ptr<const Factorizer> backend) {
    if (!backend) throw InvalidArgument("install_factorizer: null backend");
    std::lock_guard lock(factorizer_mutex());
    std::swap(factorizer_slot(), backend);
    return backend;
}

Factorization factor(const Natural& n) { return default_factorizer()->factor(n); }

bool factor_over(const Natural& n_in, const std::vector<Natural>& candidate_primes, Factorization& out) {
    out.clear();
    Natural n = n_in;
    for (const Natural& p : candidate_primes) {
        if (n == 1) break;
        strip(n, p, out);
    }
    std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return n == 1;
}

Factorization power(Factorization f, unsigned k) {
    for (auto& pp : f) pp.exponent *= k;
    return f;
}

std::vector<Natural> divisors(const Factorization& f) {
    std::vector<Natural> out{Natural(1)};
    for (const auto& [p, e] : f) {
        const std::size_t existing = out.size();
        Natural pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < existing; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Natural> divisors(const Natural& n) {
    if (n.sign() <= 0) throw InvalidArgument("divisors: argument must be positive");
    return divisors(factor(n));
}

Natural divisor_count(const Factorization& f) {
    Natural c = 1;
    for (const auto& pp : f) c *= pp.exponent + 1;
    return c;
}

Natural divisor_count(const Natural& n) {
    if (n.sign() <= 0) throw InvalidArgument("divisor_count: argument must be positive");
    return divisor_count(factor(n));
}

Natural isqrt(const Natural& n) {
    if (n.sign() < 0) throw InvalidArgument("isqrt: negative argument");
    return mp::sqrt(n);
}

}  // namespace ufrac
