#pragma once

// Patterns, relative greatest common divisors and the d- and z-parameters of
// a four-term solution.
//
// A solution a_1 <= ... <= a_4 of m/n = sum 1/a_i is written a_i = n_i t_i with
// n_i = gcd(a_i, n), and each t_i splits into the shared factors x_J over the
// index sets J containing i. Index sets are bitmasks: bit i-1 stands for i.

#include "ufrac/enumerator.hpp"
#include "ufrac/numeric.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace ufrac {

/// Mask for an index set written as digits, e.g. subset("234") == 0b1110.
constexpr unsigned subset(std::string_view digits) {
    unsigned mask = 0;
    for (char c : digits) mask |= 1u << (c - '1');
    return mask;
}

/// Digits of a mask in increasing order, e.g. "234".
std::string subset_name(unsigned mask);

/// Canonical order on index sets: by size, then lexicographically on digits.
bool canonical_less(unsigned a, unsigned b);

inline constexpr int popcount(unsigned mask) { return __builtin_popcount(mask); }

/// How the pair parameters z_ij are normalised.
enum class ZConvention {
    /// z_ij carries x_ij alone in its denominator.
    own_pair,
    /// z_ij carries x_ij * x_kl, {k,l} being the complementary pair.
    both_pairs,
};

std::string to_string(ZConvention c);

struct Pattern {
    /// n_i = gcd(a_i, n), in solution order.
    std::vector<Natural> parts;

    const Natural& operator[](std::size_t i) const { return parts[i]; }
    friend bool operator==(const Pattern&, const Pattern&) = default;
};

Pattern pattern_of(const SolutionTuple& s, const Natural& n);

/// x_J for every nonempty J of {1..k}, indexed by mask (entry 0 unused),
/// computed top-down from x_I = gcd(t_1..t_k). Works for any k <= kMaxTerms.
std::vector<Natural> relative_gcds(const std::vector<Natural>& t);

inline constexpr std::array<unsigned, 6> kPairs = {subset("12"), subset("13"), subset("14"),
                                                   subset("23"), subset("24"), subset("34")};
inline constexpr std::array<unsigned, 4> kTriples = {subset("123"), subset("124"), subset("134"),
                                                     subset("234")};
inline constexpr unsigned kFull = subset("1234");

/// The eleven index sets with |J| >= 2 in canonical order.
inline constexpr std::array<unsigned, 11> kXSets = {
    subset("12"),  subset("13"),  subset("14"),  subset("23"),  subset("24"),   subset("34"),
    subset("123"), subset("124"), subset("134"), subset("234"), subset("1234")};

struct Decomposition {
    SolutionTuple source;
    Fraction fraction;
    Pattern pattern;
    std::array<Natural, 4> t;
    /// Indexed by mask; x covers every nonempty set, d and z only |J| in {2,3}.
    std::array<Natural, 16> x;
    std::array<Natural, 16> d;
    std::array<Natural, 16> z;
    ZConvention convention = ZConvention::own_pair;

    const Natural& m() const { return fraction.num(); }
    const Natural& n() const { return fraction.den(); }

    /// z_J in the own-pair normalisation whatever `convention` is.
    Natural z_own(unsigned mask) const;
};

/// Pair masks are 1-based {i,j}; returns the complementary pair within {1..4}.
inline constexpr unsigned complement(unsigned mask) { return kFull & ~mask; }

/// Full decomposition of a four-term solution of `f`. Throws InvalidArgument
/// when `s` is not a four-term solution of `f`, IntegralityViolation when a z
/// is not integral under `convention`, and InvariantViolation when any other
/// structural identity fails.
Decomposition decompose(const SolutionTuple& s, const Fraction& f,
                        ZConvention convention = ZConvention::own_pair);

/// a_i = n_i * prod_{J containing i} x_J.
SolutionTuple reconstruct(const Decomposition& d);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<Check> checks;

    bool all_passed() const;
    const Check* find(std::string_view name) const;
};

/// Checks the identities and inequalities satisfied by every decomposition.
/// Failures are recorded, never thrown.
VerificationReport verify(const Decomposition& d);

}  // namespace ufrac
