#include "oracles.hpp"

#include "ufrac/asymptotics.hpp"
#include "ufrac/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace ufrac;

namespace {

Rational R(long a, long b = 1) { return Rational(a) / b; }

Rational rpow(const Rational& x, unsigned e) {
    Rational out = 1;
    for (unsigned i = 0; i < e; ++i) out *= x;
    return out;
}

// Exponent of the sharpest bound, each sum taken as the larger of its terms;
// records the attaining sources with the term that is larger in each.
double envelope(double c, std::set<std::pair<int, int>>* attaining) {
    const double f[5] = {1.5 - 0.75 * c, 1.6 - c, 28.0 / 17 - 1.6 * c, 5.0 / 3 - 5.0 / 3 * c, 4.0 / 3 - 2.0 / 3 * c};
    const int term[4] = {0, 1, f[2] > f[4] ? 2 : 4, f[3] > f[4] ? 3 : 4};
    const double best = std::min({f[term[0]], f[term[1]], f[term[2]], f[term[3]]});
    attaining->clear();
    for (int i = 0; i < 4; ++i)
        if (f[term[i]] - best < 1e-12) attaining->insert({i, term[i]});
    return best;
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("the five formulas") {
    const auto& f = bound_formulas();
    CHECK(f[0].exponent(R(0)) == R(3, 2));
    CHECK(f[0].exponent(R(1)) == R(3, 4));
    CHECK(f[1].exponent(R(1)) == R(3, 5));
    CHECK(f[2].exponent(R(1)) == R(28, 17) - R(8, 5));
    CHECK(f[3].exponent(R(1)) == 0);
    CHECK(f[4].exponent(R(1, 2)) == 1);
    CHECK(f[0].label == "n^(3/2)/m^(3/4)");
    CHECK(f[1].label == "n^(8/5)/m");
}

TEST_CASE("regime examples") {
    const Regime zero = regime(R(0));
    CHECK(zero.formula() == 0);
    CHECK(zero.value == R(3, 2));

    const Regime tie = regime(R(50, 289));
    CHECK(tie.value == R(396, 289));
    CHECK(tie.formulas == std::vector<int>{0, 2});

    const Regime one = regime(R(1));
    CHECK(one.formula() == 1);
    CHECK(one.value == R(3, 5));

    CHECK_THROWS_AS(regime(R(-1, 100)), InvalidArgument);
    CHECK_THROWS_AS(regime(R(101, 100)), InvalidArgument);
}

TEST_CASE("breakpoints") {
    const auto b = regime_breakpoints();
    const std::vector<Rational> expected{R(5250, 30345), R(8925, 30345), R(10115, 30345), R(10200, 30345),
                                         R(24276, 30345)};
    CHECK(b == expected);
    CHECK(b == std::vector<Rational>{R(50, 289), R(5, 17), R(1, 3), R(40, 119), R(4, 5)});
}

TEST_CASE("breakpoints match a sampled envelope") {
    std::vector<double> changes;
    std::set<std::pair<int, int>> prev, cur;
    const int steps = 300007;
    envelope(0, &prev);
    for (int i = 1; i <= steps; ++i) {
        const double c = static_cast<double>(i) / steps;
        envelope(c, &cur);
        if (cur != prev) changes.push_back(c);
        prev = cur;
    }
    const auto b = regime_breakpoints();
    int matched = 0;
    for (double c : changes)
        for (const auto& x : b)
            if (std::abs(c - x.convert_to<double>()) < 2.0 / steps) ++matched;
    CHECK(matched == static_cast<int>(changes.size()));
    CHECK(changes.size() == 5);

    std::set<std::pair<int, int>> a;
    envelope(0.335, &a);
    CHECK(a == std::set<std::pair<int, int>>{{3, 4}});
    envelope(0.5, &a);
    CHECK(a == std::set<std::pair<int, int>>{{2, 4}, {3, 4}});
}

TEST_CASE("regime is continuous at each breakpoint") {
    const auto b = regime_breakpoints();
    const auto& f = bound_formulas();
    std::vector<Rational> cuts{R(0)};
    cuts.insert(cuts.end(), b.begin(), b.end());
    cuts.push_back(R(1));
    for (std::size_t i = 1; i + 1 < cuts.size(); ++i) {
        const Regime left = regime((cuts[i - 1] + cuts[i]) / 2);
        const Regime right = regime((cuts[i] + cuts[i + 1]) / 2);
        const Regime at = regime(cuts[i]);
        CHECK(f[left.formula()].exponent(cuts[i]) == at.value);
        CHECK(f[right.formula()].exponent(cuts[i]) == at.value);
        CHECK((left.formula() != right.formula() || left.sources != right.sources));
    }
}

TEST_CASE("regime table") {
    const auto t = regime_table();
    REQUIRE(t.size() == 6);
    std::vector<int> formulas;
    for (const auto& p : t) formulas.push_back(p.formula);
    CHECK(formulas == std::vector<int>{0, 2, 3, 4, 4, 1});
    CHECK(t[3].sources == std::vector<int>{3});
    CHECK(t[4].sources == std::vector<int>{2, 3});
    CHECK(t.front().lo == 0);
    CHECK(t.back().hi == 1);
}

TEST_CASE("lifted bound") {
    CHECK(fk_bound(5, 3, 7).exponent == R(8, 5));
    CHECK(fk_bound(6, 3, 7).exponent == R(16, 5));
    CHECK(fk_bound(9, 1, 1).exponent == R(128, 5));
    CHECK_THROWS_AS(fk_bound(4, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(fk_bound(5, 0, 1), InvalidArgument);

    const FkBound cancel = fk_bound(5, 100, 10);
    CHECK(cancel.ratio == 1);
    CHECK(cancel.log10_magnitude.convert_to<double>() == doctest::Approx(32.0 / 15 * std::log10(5.0)));
    CHECK(cancel.magnitude(4) == "3.098e+1");
    CHECK(cancel.str() == "(5^(4/3)*10^2/100)^(8/5)");

    const FkBound huge = fk_bound(30, 1, 1000);
    CHECK(huge.magnitude().find("e+") != std::string::npos);
    CHECK(huge.log10_magnitude > 1e8);
}

TEST_CASE("lift report") {
    const auto rows = lift_report(3);
    std::size_t expected = 0;
    for (std::uint64_t n = 1; n <= 3; ++n)
        for (std::uint64_t m = 1; m <= 6 * n; ++m) expected += oracle::euclid_gcd(m, n) == 1;
    REQUIRE(rows.size() == expected);
    CHECK(rows[0].m == 1);
    CHECK(rows[0].n == 1);
    CHECK(rows[0].f5 == 147);
    CHECK(rows[0].bound == 1);
    for (const auto& r : rows) {
        const auto m = r.m.convert_to<std::uint64_t>(), n = r.n.convert_to<std::uint64_t>();
        if (m > 5 * n) CHECK(r.f5 == 0);
        if (n <= 2 && m <= 2) CHECK(r.f5 == oracle::naive_count(m, n, 5));
    }
    const auto threaded = lift_report(3, 3);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(threaded[i].f5 == rows[i].f5);
    CHECK_THROWS_AS(lift_report(0), InvalidArgument);
    CHECK_THROWS_AS(lift_report(31), InvalidArgument);
}

TEST_CASE("certified roots") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const Rational r(Natural(rng() % 100000 + 1), Natural(rng() % 1000 + 1));
        const int times = static_cast<int>(rng() % 5);
        const auto [lo, hi] = root_bracket(r, times, 40);
        REQUIRE(rpow(lo, 1u << times) <= r);
        REQUIRE(rpow(hi, 1u << times) >= r);
        REQUIRE(hi - lo < R(1, 1000000));
    }
    const auto [lo, hi] = root_bracket(R(2), 1, 30);
    CHECK(lo * lo <= 2);
    CHECK(hi * hi >= 2);
    CHECK(lo.convert_to<double>() == doctest::Approx(1.41421356).epsilon(1e-8));
}

TEST_CASE("sylvester constant") {
    const SylvesterState s = sylvester(R(1, 10000000));
    REQUIRE(s.u.size() >= 5);
    CHECK(std::vector<Natural>(s.u.begin(), s.u.begin() + 5) == std::vector<Natural>{1, 2, 6, 42, 1806});
    CHECK(s.width() <= R(1, 10000000));
    CHECK(s.lower >= R(15979102, 10000000));
    CHECK(s.upper < R(15979103, 10000000));
    CHECK(decimal(s.lower, 7) == "1.5979102");

    for (std::size_t i = 0; i + 1 < s.u.size(); ++i) {
        CHECK(s.u[i + 1] == s.u[i] * (s.u[i] + 1));
        // q_i <= q_{i+1} and q_i <= 2, as exact integer comparisons.
        CHECK(s.u[i] * s.u[i] <= s.u[i + 1]);
        CHECK(s.u[i] <= Natural(1) << (1u << i));
    }
    for (std::size_t i = 0; i < s.q.size(); ++i) {
        CHECK(rpow(s.q[i].first, 1u << i) <= Rational(s.u[i]));
        CHECK(rpow(s.q[i].second, 1u << i) >= Rational(s.u[i]));
        CHECK(s.q[i].second <= 2);
    }
    CHECK(s.q[1].first.convert_to<double>() == doctest::Approx(std::sqrt(2.0)));

    const SylvesterState wide = sylvester(R(1, 100));
    CHECK(wide.width() > s.width());
    CHECK(wide.lower <= s.lower);
    CHECK(wide.upper >= s.upper);
    const SylvesterState fine = sylvester(R(1, 1000000000) / 1000000000);
    CHECK(fine.lower >= s.lower);
    CHECK(fine.upper <= s.upper);
    CHECK(decimal(fine.lower, 15) == decimal(fine.upper, 15));
    CHECK_THROWS_AS(sylvester(R(0)), InvalidArgument);
}

TEST_CASE("decimal rendering") {
    CHECK(decimal(R(1, 3), 4) == "0.3333");
    CHECK(decimal(R(-7, 2), 2) == "-3.50");
    CHECK(decimal(R(5), 0) == "5");
}

}  // TEST_SUITE
