#include "oracles.hpp"

#include "ufrac/errors.hpp"
#include "ufrac/parametrization.hpp"

#include <doctest.h>

#include <random>

using namespace ufrac;

namespace {

SolutionTuple tuple(std::vector<Natural> a, const Fraction& f) { return SolutionTuple(std::move(a), f); }

const Fraction kOne = reduce(1, 1);

}  // namespace

TEST_SUITE("parametrization") {

TEST_CASE("pattern examples") {
    const SolutionTuple s = tuple({2, 4, 6, 12}, kOne);
    CHECK(pattern_of(s, 1).parts == std::vector<Natural>{1, 1, 1, 1});
    CHECK(pattern_of(s, 6).parts == std::vector<Natural>{2, 2, 6, 6});
    const SolutionTuple r(SolutionTuple::Trusted{}, {3, 4, 5, 6});
    CHECK(pattern_of(r, 10).parts == std::vector<Natural>{1, 2, 5, 2});
}

TEST_CASE("subset helpers") {
    CHECK(subset("234") == 0b1110u);
    CHECK(subset_name(subset("134")) == "134");
    CHECK(complement(subset("12")) == subset("34"));
    CHECK(canonical_less(subset("34"), subset("123")));
    CHECK(canonical_less(subset("14"), subset("23")));
    CHECK_FALSE(canonical_less(subset("23"), subset("23")));
}

TEST_CASE("decomposition of (2,4,6,12) for 1") {
    const Decomposition d = decompose(tuple({2, 4, 6, 12}, kOne), kOne);
    CHECK(d.x[subset("1234")] == 2);
    CHECK(d.x[subset("24")] == 2);
    CHECK(d.x[subset("34")] == 3);
    for (unsigned J : kXSets) {
        if (J == subset("1234") || J == subset("24") || J == subset("34")) continue;
        CHECK_MESSAGE(d.x[J] == 1, subset_name(J));
    }
    CHECK(d.z[subset("23")] == 5);
    CHECK(d.z[subset("34")] == 1);
    CHECK(d.z[subset("123")] == 11);
    CHECK(d.z[subset("134")] == 3);
    CHECK(d.z[subset("234")] == 1);

    // m * prod x = 12 = 6 + 3 + 2 + 1
    Natural all = 1;
    for (unsigned J : kXSets) all *= d.x[J];
    CHECK(d.m() * all == 12);
    CHECK(d.t == std::array<Natural, 4>{2, 4, 6, 12});
}

TEST_CASE("verification report on (2,4,6,12)") {
    const VerificationReport r = verify(decompose(tuple({2, 4, 6, 12}, kOne), kOne));
    CHECK(r.all_passed());
    REQUIRE(r.find("t1 via z234"));
    CHECK(r.find("t1 via z234")->passed);
    REQUIRE(r.find("z134 z234 product"));
    CHECK(r.find("z134 z234 product")->passed);
    REQUIRE(r.find("z234 inequality"));
    CHECK(r.find("z234 inequality")->passed);
    CHECK(r.checks.size() == 15);
}

TEST_CASE("verification flags a corrupted decomposition") {
    Decomposition d = decompose(tuple({2, 4, 6, 12}, kOne), kOne);
    d.z[subset("234")] = 2;
    const VerificationReport r = verify(d);
    CHECK_FALSE(r.all_passed());
    CHECK_FALSE(r.find("t1 via z234")->passed);
    CHECK_FALSE(r.find("t1 via z234")->detail.empty());
    CHECK(r.find("master equation")->passed);
}

TEST_CASE("reconstruct inverts decompose") {
    const SolutionTuple s = tuple({2, 4, 6, 12}, kOne);
    CHECK(reconstruct(decompose(s, kOne)) == s);

    // All x equal to 1 with pattern (n,n,n,n) is 4/n = 4 * (1/n).
    for (int n : {5, 7, 12}) {
        const Fraction f = reduce(4, n);
        Decomposition d{SolutionTuple(SolutionTuple::Trusted{}, {n, n, n, n}), f, Pattern{{n, n, n, n}}, {}, {},
                        {}, {}, ZConvention::own_pair};
        for (unsigned J = 1; J < 16; ++J) d.x[J] = 1;
        CHECK(reconstruct(d).denominators() == std::vector<Natural>{n, n, n, n});
    }
}

TEST_CASE("decompose rejects inputs outside its domain") {
    CHECK_THROWS_AS(decompose(tuple({2, 3, 6}, kOne), kOne), InvalidArgument);
    CHECK_THROWS_AS(decompose(SolutionTuple(SolutionTuple::Trusted{}, {2, 4, 6, 13}), kOne), InvalidArgument);
    CHECK_THROWS_AS(decompose(SolutionTuple(SolutionTuple::Trusted{}, {4, 2, 6, 12}), kOne), InvalidArgument);
}

TEST_CASE("both-pairs convention is not integral in general") {
    const SolutionTuple s = tuple({2, 3, 7, 42}, kOne);
    try {
        decompose(s, kOne, ZConvention::both_pairs);
        FAIL("expected an integrality violation");
    } catch (const IntegralityViolation& e) {
        CHECK(e.parameter() == "z12");
    }
    CHECK_NOTHROW(decompose(s, kOne, ZConvention::own_pair));

    // Where it is integral, renormalising recovers the own-pair values.
    const SolutionTuple r = tuple({2, 4, 6, 12}, kOne);
    const Decomposition own = decompose(r, kOne);
    const Decomposition both = decompose(r, kOne, ZConvention::both_pairs);
    for (unsigned J : kPairs) CHECK(both.z_own(J) == own.z[J]);
    CHECK(verify(both).all_passed());
}

TEST_CASE("relative gcds match the valuation oracle") {
    std::mt19937_64 rng(7301);
    std::uniform_int_distribution<int> pick(0, 9);
    const std::uint64_t small[] = {1, 2, 3, 4, 5, 6, 9, 10, 12, 35};
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 2 + trial % 5;
        std::vector<std::uint64_t> t;
        std::vector<Natural> tn;
        for (int i = 0; i < k; ++i) {
            std::uint64_t v = small[pick(rng)] * small[pick(rng)] * small[pick(rng)];
            t.push_back(v);
            tn.emplace_back(v);
        }
        const auto x = relative_gcds(tn);
        const auto expected = oracle::relative_gcds_by_valuations(t);
        REQUIRE(x.size() == expected.size());
        for (std::size_t J = 1; J < x.size(); ++J) REQUIRE(x[J] == expected[J]);
        // t_i is the product of x_J over J containing i.
        for (int i = 0; i < k; ++i) {
            Natural p = 1;
            for (std::size_t J = 1; J < x.size(); ++J)
                if (J & (1u << i)) p *= x[J];
            REQUIRE(p == tn[i]);
        }
    }
    CHECK_THROWS_AS(relative_gcds({}), InvalidArgument);
}

TEST_CASE("sweep: identities, oracle agreement and roundtrip for n <= 14") {
    std::size_t seen = 0;
    for (int n = 1; n <= 14; ++n) {
        for (int m = 1; m <= 4 * n; ++m) {
            if (oracle::euclid_gcd(m, n) != 1) continue;
            const Fraction f = reduce(m, n);
            for (const auto& s : enumerate(f, 4).solutions) {
                ++seen;
                const Decomposition d = decompose(s, f);
                const VerificationReport r = verify(d);
                REQUIRE_MESSAGE(r.all_passed(), s.str());
                REQUIRE(reconstruct(d) == s);

                std::vector<std::uint64_t> t;
                for (const auto& v : d.t) t.push_back(static_cast<std::uint64_t>(v));
                const auto xo = oracle::relative_gcds_by_valuations(t);
                for (unsigned J = 1; J < 16; ++J) REQUIRE(d.x[J] == xo[J]);

                // Closed forms through the denominators alone:
                //   z_ijk = (m a_l - n) / (n_l d_ijk)
                //   z_ij  = n T (a_i + a_j) / (a_i a_j x_ij x_kl d_ij),  T = lcm(t)
                Natural T = 1;
                for (const auto& v : d.t) T = lcm(T, v);
                for (unsigned J : kTriples) {
                    const int l = __builtin_ctz(complement(J));
                    REQUIRE(d.z[J] * d.pattern[l] * d.d[J] == f.num() * s[l] - f.den());
                }
                for (unsigned J : kPairs) {
                    const int i = __builtin_ctz(J);
                    const int j = 31 - __builtin_clz(J);
                    REQUIRE(d.z[J] * s[i] * s[j] * d.x[J] * d.x[complement(J)] * d.d[J] == f.den() * T * (s[i] + s[j]));
                }
            }
        }
    }
    CHECK(seen > 50000);
}

}  // TEST_SUITE
