#include "ufrac/parametrization.hpp"

#include "ufrac/errors.hpp"

#include <algorithm>

namespace ufrac {

std::string subset_name(unsigned mask) {
    std::string s;
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) s += static_cast<char>('1' + i);
    return s;
}

bool canonical_less(unsigned a, unsigned b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return subset_name(a) < subset_name(b);
}

std::string to_string(ZConvention c) {
    return c == ZConvention::own_pair ? "own-pair" : "both-pairs";
}

Pattern pattern_of(const SolutionTuple& s, const Natural& n) {
    Pattern p;
    p.parts.reserve(s.k());
    for (const auto& a : s.denominators()) p.parts.push_back(gcd(a, n));
    return p;
}

std::vector<Natural> relative_gcds(const std::vector<Natural>& t) {
    const int k = static_cast<int>(t.size());
    if (k < 1 || k > kMaxTerms) throw InvalidArgument("relative_gcds: need between 1 and 6 cofactors");
    const unsigned full = (1u << k) - 1;
    std::vector<Natural> x(full + 1, Natural(0));

    // Supersets first: visit masks by decreasing size.
    std::vector<unsigned> order;
    for (unsigned mask = 1; mask <= full; ++mask) order.push_back(mask);
    std::stable_sort(order.begin(), order.end(),
                     [](unsigned a, unsigned b) { return popcount(a) > popcount(b); });

    for (unsigned mask : order) {
        Natural g = 0;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) g = gcd(g, t[i]);
        Natural above = 1;
        for (unsigned sup = (mask + 1) | mask; sup <= full; sup = (sup + 1) | mask) above *= x[sup];
        Natural q, r;
        divide_qr(g, above, q, r);
        if (!r.is_zero())
            throw InvariantViolation("relative gcd for {" + subset_name(mask) + "} is not integral");
        x[mask] = q;
    }
    return x;
}

Natural Decomposition::z_own(unsigned mask) const {
    if (convention == ZConvention::both_pairs && popcount(mask) == 2) return z[mask] * x[complement(mask)];
    return z[mask];
}

namespace {

constexpr unsigned bit(int i) { return 1u << (i - 1); }

template <class Pred>
Natural product_over(const std::array<Natural, 16>& x, Pred keep) {
    Natural p = 1;
    for (unsigned J : kXSets)
        if (keep(J)) p *= x[J];
    return p;
}

// prod of x_J over |J| >= 2 with r not in J.
Natural missing(const std::array<Natural, 16>& x, int r) {
    return product_over(x, [r](unsigned J) { return !(J & bit(r)); });
}

// prod of x_J over |J| >= 2 with j in J and i not in J.
Natural only(const std::array<Natural, 16>& x, int j, int i) {
    return product_over(x, [i, j](unsigned J) { return (J & bit(j)) && !(J & bit(i)); });
}

std::pair<int, int> members(unsigned pair) {
    int i = 0, j = 0;
    for (int r = 1; r <= 4; ++r) {
        if (!(pair & bit(r))) continue;
        (i ? j : i) = r;
    }
    return {i, j};
}

}  // namespace

Decomposition decompose(const SolutionTuple& s, const Fraction& f, ZConvention convention) {
    if (s.k() != 4) throw InvalidArgument("decompose needs a four-term solution, got " + s.str());
    if (!s.sums_to(f))
        throw InvalidArgument("reciprocals of " + s.str() + " do not sum to " + f.str());
    for (std::size_t i = 1; i < 4; ++i)
        if (s[i] < s[i - 1]) throw InvalidArgument("denominators must be nondecreasing: " + s.str());

    const Natural& m = f.num();
    const Natural& n = f.den();
    Decomposition d{s, f, pattern_of(s, n), {}, {}, {}, {}, convention};
    const auto& np = d.pattern.parts;

    std::vector<Natural> t(4);
    for (int i = 0; i < 4; ++i) t[i] = d.t[i] = s[i] / np[i];
    const std::vector<Natural> x = relative_gcds(t);
    for (unsigned J = 0; J < 16; ++J) d.x[J] = x[J];

    for (int i = 1; i <= 4; ++i) {
        if (d.x[bit(i)] != 1)
            throw InvariantViolation("x_" + std::to_string(i) + " = " + d.x[bit(i)].str() + " is not 1");
    }
    for (unsigned J = 1; J < 16; ++J) {
        for (unsigned K = J + 1; K < 16; ++K) {
            if ((J & K) == J || (J & K) == K) continue;
            if (d.x[J] != 1 && d.x[K] != 1 && gcd(d.x[J], d.x[K]) != 1)
                throw InvariantViolation("x_" + subset_name(J) + " and x_" + subset_name(K) + " are not coprime");
        }
    }

    std::array<Natural, 4> cof;  // n / n_i
    for (int i = 0; i < 4; ++i) cof[i] = n / np[i];
    for (unsigned J : kPairs) {
        auto [i, j] = members(J);
        d.d[J] = gcd(cof[i - 1], cof[j - 1]);
    }
    for (unsigned J : kTriples) {
        Natural g = 0;
        for (int r = 1; r <= 4; ++r)
            if (J & bit(r)) g = gcd(g, cof[r - 1]);
        d.d[J] = g;
    }

    for (unsigned J : kPairs) {
        auto [i, j] = members(J);
        const Natural num = cof[i - 1] / d.d[J] * only(d.x, j, i) + cof[j - 1] / d.d[J] * only(d.x, i, j);
        Natural den = d.x[J];
        if (convention == ZConvention::both_pairs) den *= d.x[complement(J)];
        Natural q, r;
        divide_qr(num, den, q, r);
        if (!r.is_zero())
            throw IntegralityViolation("z" + subset_name(J),
                                       num.str() + "/" + den.str() + " under the " + to_string(convention) +
                                           " convention");
        d.z[J] = q;
    }
    for (unsigned J : kTriples) {
        Natural num = 0;
        Natural den = 1;
        for (int r = 1; r <= 4; ++r) {
            if (!(J & bit(r))) continue;
            num += cof[r - 1] / d.d[J] * missing(d.x, r);
        }
        for (unsigned K : kXSets)
            if ((K & J) == K && popcount(K) >= 2) den *= d.x[K];
        Natural q, r;
        divide_qr(num, den, q, r);
        if (!r.is_zero()) throw IntegralityViolation("z" + subset_name(J), num.str() + "/" + den.str());
        d.z[J] = q;
    }
    for (unsigned J : kPairs)
        if (d.z[J].is_zero()) throw IntegralityViolation("z" + subset_name(J), "is zero");
    for (unsigned J : kTriples)
        if (d.z[J].is_zero()) throw IntegralityViolation("z" + subset_name(J), "is zero");

    Natural rhs = 0;
    for (int r = 1; r <= 4; ++r) rhs += cof[r - 1] * missing(d.x, r);
    if (m * product_over(d.x, [](unsigned) { return true; }) != rhs)
        throw InvariantViolation("master equation fails for " + s.str());
    return d;
}

SolutionTuple reconstruct(const Decomposition& d) {
    std::vector<Natural> a;
    for (int i = 1; i <= 4; ++i) {
        Natural v = d.pattern[i - 1];
        for (unsigned J = 1; J < 16; ++J)
            if (J & bit(i)) v *= d.x[J];
        a.push_back(std::move(v));
    }
    return SolutionTuple(std::move(a), d.fraction);
}

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerificationReport::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

VerificationReport verify(const Decomposition& dec) {
    VerificationReport report;
    const auto& x = dec.x;
    const auto& d = dec.d;
    const Natural& m = dec.m();
    const Natural& n = dec.n();
    const auto& np = dec.pattern.parts;
    auto X = [&x](const char* digits) -> const Natural& { return x[subset(digits)]; };
    auto D = [&d](const char* digits) -> const Natural& { return d[subset(digits)]; };
    auto Z = [&dec](const char* digits) { return dec.z_own(subset(digits)); };
    auto N = [&np](int i) -> const Natural& { return np[i - 1]; };

    auto equal = [&report](std::string name, const Natural& lhs, const Natural& rhs) {
        Check c{std::move(name), lhs == rhs, {}};
        if (!c.passed) c.detail = lhs.str() + " != " + rhs.str();
        report.checks.push_back(std::move(c));
    };
    auto at_most = [&report](std::string name, const Natural& lhs, const Natural& rhs) {
        Check c{std::move(name), lhs <= rhs, {}};
        if (!c.passed) c.detail = lhs.str() + " > " + rhs.str();
        report.checks.push_back(std::move(c));
    };

    Natural all = product_over(x, [](unsigned) { return true; });
    Natural rhs = 0;
    for (int r = 1; r <= 4; ++r) rhs += n / N(r) * missing(x, r);
    equal("master equation", m * all, rhs);

    equal("t4 via z123", m * X("14") * X("24") * X("34") * X("124") * X("134") * X("234") * X("1234"),
          D("123") * Z("123") + n / N(4));
    equal("t1 via z234", m * X("12") * X("13") * X("14") * X("123") * X("124") * X("134") * X("1234"),
          D("234") * Z("234") + n / N(1));
    // Pair definitions, scaled by d_ij.
    equal("z23 definition", D("23") * Z("23") * X("23"),
          n / N(2) * X("13") * X("34") * X("134") + n / N(3) * X("12") * X("24") * X("124"));
    equal("z34 definition", D("34") * Z("34") * X("34"),
          n / N(3) * X("14") * X("24") * X("124") + n / N(4) * X("13") * X("23") * X("123"));
    // Triple relations, scaled by d_ijk.
    equal("z234 via z23", D("234") * Z("234") * X("24") * X("34") * X("234"),
          D("23") * X("14") * Z("23") + n / N(4) * X("12") * X("13") * X("123"));
    equal("z234 via z34", D("234") * Z("234") * X("23") * X("24") * X("234"),
          D("34") * X("12") * Z("34") + n / N(2) * X("13") * X("14") * X("134"));
    // Product relation, scaled by d_134 d_234.
    equal("z134 z234 product", D("134") * D("234") * Z("134") * Z("234"),
          n * n / (N(1) * N(2)) + m * D("34") * Z("34") * X("12") * X("12") * X("123") * X("124") * X("1234"));

    {
        Check c{"coprimality", true, {}};
        for (unsigned J = 1; J < 16 && c.passed; ++J) {
            for (unsigned K = J + 1; K < 16; ++K) {
                if ((J & K) == J || (J & K) == K) continue;
                if (gcd(x[J], x[K]) != 1) {
                    c.passed = false;
                    c.detail = "x" + subset_name(J) + ", x" + subset_name(K);
                    break;
                }
            }
        }
        report.checks.push_back(std::move(c));
    }
    {
        Check c{"singletons", true, {}};
        for (int i = 1; i <= 4; ++i)
            if (x[bit(i)] != 1) {
                c.passed = false;
                c.detail = "x" + std::to_string(i) + " = " + x[bit(i)].str();
            }
        report.checks.push_back(std::move(c));
    }
    {
        Check c{"x_i coprime to n/n_i", true, {}};
        for (int i = 1; i <= 4; ++i)
            if (gcd(x[bit(i)], n / N(i)) != 1) {
                c.passed = false;
                c.detail = "i = " + std::to_string(i);
            }
        report.checks.push_back(std::move(c));
    }

    at_most("z23 inequality", N(2) * D("23") * Z("23") * X("23"), 2 * n * X("13") * X("34") * X("134"));
    at_most("z34 inequality", N(3) * D("34") * Z("34") * X("34"), 2 * n * X("14") * X("24") * X("124"));
    at_most("z234 inequality", N(2) * D("234") * Z("234") * X("23") * X("24") * X("234"),
            3 * n * X("13") * X("14") * X("134"));
    at_most("t1 bound", N(1) * m * X("12") * X("13") * X("14") * X("123") * X("124") * X("134") * X("1234"),
            4 * n);
    return report;
}

}  // namespace ufrac
