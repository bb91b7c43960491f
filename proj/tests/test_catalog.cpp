#include "oracles.hpp"

#include "ufrac/catalog.hpp"
#include "ufrac/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

using namespace ufrac;

namespace {

const Fraction kOne = reduce(1, 1);

Decomposition sample() { return decompose(SolutionTuple({2, 4, 6, 12}, kOne), kOne); }

// Straightforward rational evaluation of the symbolic terms, without the
// evaluator's skeleton cache or 128-bit fast path.
struct Plain {
    std::array<Rational, kParamCount> p;
    std::array<Rational, kSymbolCount> s;

    explicit Plain(const Decomposition& d) {
        for (int i = 0; i < kParamCount; ++i) {
            const ParamId id{i};
            p[i] = id.kind() == ParamKind::x ? Rational(d.x[id.subset()]) : Rational(d.z_own(id.subset()));
        }
        s[0] = d.m();
        s[1] = d.n();
        for (int i = 0; i < 4; ++i) s[2 + i] = d.pattern.parts[i];
        for (int i = 0; i < 6; ++i) s[6 + i] = d.d[kPairs[i]];
        for (int i = 0; i < 4; ++i) s[12 + i] = d.d[kTriples[i]];
    }

    static Rational pow(Rational b, int e) {
        Rational r = 1;
        if (e < 0) {
            b = 1 / b;
            e = -e;
        }
        while (e-- > 0) r *= b;
        return r;
    }

    Rational value(const Term& t, ParamSet skip = {}) const {
        Rational v = t.coefficient;
        for (const auto& f : t.symbols) v *= pow(s[f.index], f.exponent);
        for (const auto& f : t.params)
            if (!skip.contains(ParamId{f.index})) v *= pow(p[f.index], f.exponent);
        return v;
    }

    Rational sum(const std::vector<Term>& ts) const {
        Rational v = 0;
        for (const auto& t : ts) v += value(t);
        return v;
    }

    bool holds(const ClosureRule& r) const {
        if (!r.unknowns) return sum(r.lhs) == sum(r.rhs);
        // Family 1: collect the master equation by the two unknowns and test
        // the quadratic relation directly: C1 xJ xK = C2 xK + C3 xJ + C4.
        const auto [J, K] = *r.unknowns;
        const auto [lhs, rhs] = master_equation();
        Rational c1 = value(lhs, ParamSet{J, K}), c2 = 0, c3 = 0, c4 = 0;
        for (const auto& t : rhs) {
            const bool hj = t.param_exponent(J) > 0, hk = t.param_exponent(K) > 0;
            if (hj && hk) c1 -= value(t, ParamSet{J, K});
            else if (hj) c3 += value(t, ParamSet{J});
            else if (hk) c2 += value(t, ParamSet{K});
            else c4 += value(t);
        }
        const Rational& xj = p[J.index];
        const Rational& xk = p[K.index];
        return c1 * xj * xk == c2 * xk + c3 * xj + c4;
    }

    bool holds(const InequalityTemplate& t) const {
        Rational left = 1, right = t.constant;
        for (int i = 0; i < kParamCount; ++i) {
            left *= pow(p[i], t.lhs[i]);
            right *= pow(p[i], t.rhs[i]);
        }
        right *= pow(s[1], t.n_exp) * pow(s[0], t.m_exp);
        for (int k = 0; k < kSymbolCount; ++k) right /= pow(s[k], t.pattern_factor[k]);
        return left <= right;
    }
};

int rule_index(int family, int offset) {
    int i = 0;
    for (int f = 1; f < family; ++f) i += kFamilySizes[f - 1];
    return i + offset;
}

const InequalityTemplate& named(const std::string& name) {
    for (const auto& t : catalog().inequalities)
        if (t.name == name) return t;
    throw std::runtime_error("no template " + name);
}

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("parameter identifiers") {
    CHECK(ParamSet::all().size() == 21);
    CHECK(ParamSet::xs().size() == 11);
    CHECK(ParamSet::zs().size() == 10);
    CHECK(ParamId::parse("x1234") == ParamId::x(0b1111));
    CHECK(ParamId::parse("z234").kind() == ParamKind::z);
    CHECK(ParamSet::parse(" z23 , z234") == ParamSet{ParamId::parse("z23"), ParamId::parse("z234")});
    CHECK(ParamSet::parse("").empty());
    CHECK_THROWS_AS(ParamId::parse("x1"), InvalidArgument);
    CHECK_THROWS_AS(ParamSet::parse("z23,,z34"), InvalidArgument);
    CHECK_THROWS_AS(ParamId::parse("z1234"), InvalidArgument);
    for (int i = 0; i < kParamCount; ++i) CHECK(ParamId::parse(ParamId{i}.name()) == ParamId{i});
    CHECK(ParamSet::parse("z234,x12").str() == "x12,z234");
    CHECK(canonical_less(ParamSet::parse("z34"), ParamSet::parse("x12,x13")));
    CHECK(canonical_less(ParamSet::parse("x12,z23"), ParamSet::parse("x13,z12")));
}

TEST_CASE("family counts") {
    const auto rules = build_rules();
    REQUIRE(rules.size() == 96);
    std::array<int, 8> counts{};
    for (const auto& r : rules) {
        REQUIRE(r.family >= 1);
        REQUIRE(r.family <= 8);
        ++counts[r.family - 1];
        CHECK_FALSE(r.outputs.empty());
    }
    CHECK(counts == std::array<int, 8>{55, 6, 4, 12, 4, 6, 3, 6});
    CHECK(counts == kFamilySizes);
}

TEST_CASE("family 1 covers every pair of x parameters once") {
    std::set<std::uint32_t> seen;
    for (const auto& r : catalog().rules) {
        if (r.family != 1) continue;
        REQUIRE(r.unknowns);
        CHECK(r.outputs.size() == 2);
        CHECK((r.outputs | r.inputs) == ParamSet::xs());
        CHECK((r.outputs & r.inputs).empty());
        seen.insert(r.outputs.bits());
    }
    CHECK(seen.size() == 55);
}

TEST_CASE("family 5 for the triple 234") {
    const ClosureRule& r = catalog().rules[rule_index(5, 3)];
    CHECK(r.family == 5);
    CHECK(r.inputs == ParamSet::parse("z234"));
    CHECK(r.outputs == ParamSet::parse("x12,x13,x14,x123,x124,x134,x1234"));
}

TEST_CASE("family 7 has one rule per split into two pairs") {
    std::set<std::uint32_t> inputs;
    for (const auto& r : catalog().rules)
        if (r.family == 7) inputs.insert(r.inputs.bits());
    CHECK(inputs.size() == 3);
    CHECK(inputs.count(ParamSet::parse("z12,z34").bits()));
    CHECK(inputs.count(ParamSet::parse("z13,z24").bits()));
    CHECK(inputs.count(ParamSet::parse("z14,z23").bits()));
}

TEST_CASE("inequality templates") {
    const auto ts = build_inequalities();
    REQUIRE(ts.size() == 13);
    std::vector<std::string> names;
    for (const auto& t : ts) {
        names.push_back(t.name);
        for (int i = 0; i < kParamCount; ++i) CHECK_FALSE((t.lhs[i] && t.rhs[i]));
    }
    CHECK(names == std::vector<std::string>{"z23", "z34", "z234", "z12", "z13", "z14", "z24", "z123", "z124",
                                            "z134", "t1", "t2", "t3"});

    const InequalityTemplate& z234 = named("z234");
    CHECK(z234.str() == "x23*x24*x234*z234 <= 3*n/(n2*d234)*x13*x14*x134");
    CHECK(z234.n_exp == 1);
    CHECK(z234.m_exp == 0);
    CHECK(z234.constant == 3);

    const InequalityTemplate& t1 = named("t1");
    CHECK(t1.str() == "x12*x13*x14*x123*x124*x134*x1234 <= 4*n/(m*n1)");
    CHECK(t1.n_exp == 1);
    CHECK(t1.m_exp == -1);
    CHECK(t1.constant == 4);
    for (int i = 0; i < kParamCount; ++i) CHECK(t1.rhs[i] == 0);

    CHECK(named("t2").str().find("12*n^2/(m*n2)") != std::string::npos);
    CHECK(named("t3").str().find("96*n^4/(m^2*n3)") != std::string::npos);
    CHECK(named("z14").str() == "x14*z14 <= 2*n/(n1*d14)*x24*x34*x234");
}

TEST_CASE("printed forms of representative equations") {
    const auto& rules = catalog().rules;
    CHECK(rules[rule_index(2, 3)].str() == "x23*z23 = n/(n2*d23)*x13*x34*x134 + n/(n3*d23)*x12*x24*x124");
    CHECK(rules[rule_index(5, 0)].str() == "m*x14*x24*x34*x124*x134*x234*x1234 = d123*z123 + n/n4");
    CHECK(rules[rule_index(7, 0)].str() == "m*x13*x14*x23*x24*x123*x124*x134*x234*x1234 = d12*z12 + d34*z34");
    CHECK(rules[0].str() == "master equation factored in x12, x13");
}

TEST_CASE("evaluation examples on (2,4,6,12)") {
    const Decomposition d = sample();
    const Plain plain(d);

    // m prod_{4 in J} x_J = 1*2*3*2 = 12 = d123 z123 + n/n4 = 11 + 1
    const ClosureRule& f5 = catalog().rules[rule_index(5, 0)];
    CHECK(plain.sum(f5.lhs) == 12);
    CHECK(plain.value(f5.rhs[0]) == 11);
    CHECK(plain.value(f5.rhs[1]) == 1);
    CHECK(evaluate_rule(f5, d));

    // z23 x23 = 5 <= 2 n/(n2 d23) x24 x234 = 2 * 3
    const InequalityTemplate& z23 = named("z23");
    Rational left = 1, right = 1;
    for (int i = 0; i < kParamCount; ++i) {
        left *= Plain::pow(plain.p[i], z23.lhs[i]);
        right *= Plain::pow(plain.p[i], z23.rhs[i]);
    }
    CHECK(left == 5);
    CHECK(right == 3);
    CHECK(evaluate_rule(z23, d));

    // t3 = x13 x23 x34 x123 x134 x234 x1234 = 6 <= 96 n^4 / m^2 = 96
    const InequalityTemplate& t3 = named("t3");
    Rational t3v = 1;
    for (int i = 0; i < kParamCount; ++i) t3v *= Plain::pow(plain.p[i], t3.lhs[i]);
    CHECK(t3v == 6);
    CHECK(evaluate_rule(t3, d));

    CHECK(evaluate_catalog(catalog(), d).ok());
}

TEST_CASE("generation is deterministic") {
    const auto a = build_rules();
    const auto b = build_rules();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].export_line() == b[i].export_line());
        CHECK(a[i].lhs == b[i].lhs);
        CHECK(a[i].rhs == b[i].rhs);
    }
    const auto ia = build_inequalities();
    const auto ib = build_inequalities();
    for (std::size_t i = 0; i < ia.size(); ++i) CHECK(ia[i].str() == ib[i].str());
}

TEST_CASE("export lines") {
    const auto& rules = catalog().rules;
    CHECK(rules[rule_index(5, 3)].export_line() == "5|z234|x12,x13,x14,x123,x124,x134,x1234");
    CHECK(rules[rule_index(7, 0)].export_line() ==
          "7|z12,z34|x13,x14,x23,x24,x123,x124,x134,x234,x1234");
    for (const auto& r : rules) {
        const std::string line = r.export_line();
        const auto a = line.find('|');
        const auto b = line.find('|', a + 1);
        REQUIRE(b != std::string::npos);
        CHECK(std::stoi(line.substr(0, a)) == r.family);
        CHECK(ParamSet::parse(line.substr(a + 1, b - a - 1)) == r.inputs);
        CHECK(ParamSet::parse(line.substr(b + 1)) == r.outputs);
    }
}

TEST_CASE("corruption is detected and agrees with plain evaluation") {
    const CatalogEvaluator eval(catalog());
    std::mt19937_64 rng(4411);
    std::uniform_int_distribution<int> which(0, kParamCount - 1);
    std::uniform_int_distribution<int> delta(1, 3);
    int flagged = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Decomposition d = sample();
        const ParamId p{which(rng)};
        if (p.kind() == ParamKind::x) d.x[p.subset()] += delta(rng);
        else d.z[p.subset()] += delta(rng);
        const Plain plain(d);
        const CatalogCheck c = eval.check(d);
        for (std::size_t i = 0; i < catalog().rules.size(); ++i) {
            const bool failed = std::find(c.failed_rules.begin(), c.failed_rules.end(), int(i)) != c.failed_rules.end();
            REQUIRE(failed == !plain.holds(catalog().rules[i]));
        }
        for (std::size_t i = 0; i < catalog().inequalities.size(); ++i) {
            const bool failed = std::find(c.failed_inequalities.begin(), c.failed_inequalities.end(), int(i)) !=
                                c.failed_inequalities.end();
            REQUIRE(failed == !plain.holds(catalog().inequalities[i]));
        }
        if (!c.failed_rules.empty()) ++flagged;
    }
    CHECK(flagged == 200);
}

TEST_CASE("large parameters take the exact path") {
    // 1/N = 1/(N+1) + 1/(N(N+1)), applied to both terms; with N near 10^12
    // the parameter products leave the 128-bit range.
    const Natural N("1000000000039");
    const Natural A = N * (N + 1);
    std::vector<Natural> a = {N + 2, (N + 1) * (N + 2), A + 1, A * (A + 1)};
    std::sort(a.begin(), a.end());
    const Fraction f = reduce(Natural(1), N);
    const Decomposition d = decompose(SolutionTuple(a, f), f);
    CHECK(verify(d).all_passed());
    const CatalogCheck c = evaluate_catalog(catalog(), d);
    CHECK(c.ok());
    const Plain plain(d);
    for (const auto& r : catalog().rules) CHECK(plain.holds(r));

    Decomposition bad = d;
    bad.z[subset("123")] += 1;
    CHECK_FALSE(evaluate_catalog(catalog(), bad).ok());
}

TEST_CASE("sweep: every rule and template holds for n <= 12") {
    const CatalogEvaluator eval(catalog());
    std::size_t seen = 0;
    for (int n = 1; n <= 12; ++n) {
        for (int m = 1; m <= 4 * n; ++m) {
            if (oracle::euclid_gcd(m, n) != 1) continue;
            const Fraction f = reduce(m, n);
            for (const auto& s : enumerate(f, 4).solutions) {
                ++seen;
                const Decomposition d = decompose(s, f);
                const CatalogCheck c = eval.check(d);
                REQUIRE_MESSAGE(c.ok(), s.str() << " for " << f.str());
                // Spot-check the fast evaluator against plain arithmetic.
                if (seen % 97 == 0) {
                    const Plain plain(d);
                    for (const auto& r : catalog().rules) REQUIRE(plain.holds(r));
                    for (const auto& t : catalog().inequalities) REQUIRE(plain.holds(t));
                }
            }
        }
    }
    CHECK(seen == 41510);
}

}  // TEST_SUITE
