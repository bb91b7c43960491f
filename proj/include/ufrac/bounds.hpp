#pragma once

// Products of inequality templates, their simplification to n^A / m^B and
// the split of the resulting monomial into parts that each contain a defining
// set. If a product of g parameter groups is at most n^A / m^B then one group
// is at most n^(A/g) / m^(B/g), and fixing a group that holds a defining set
// leaves only divisor-many solutions.

#include "ufrac/catalog.hpp"
#include "ufrac/defining.hpp"
#include "ufrac/parametrization.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ufrac {

inline constexpr int kTemplateCount = 13;

using Exponents = std::array<int, kParamCount>;

/// Multiplicities of the 13 templates, in catalog order.
struct Combination {
    std::array<int, kTemplateCount> multiplicity{};

    int total() const;
    /// "z34 + 2*z234 + 3*t1"; "1" when empty.
    std::string str() const;

    /// By total multiplicity, then lexicographically on the multiplicities
    /// read from the last template down.
    friend bool canonical_less(const Combination& a, const Combination& b);
    friend bool operator==(const Combination&, const Combination&) = default;
};

/// prod p^lhs[p] <= constant * n^n_exp * m^m_exp / prod pattern symbols.
struct MonomialInequality {
    Exponents lhs{};
    Rational constant = 1;
    int n_exp = 0;
    int m_exp = 0;
    std::array<int, kSymbolCount> pattern{};
    /// Number of n_i n_j d_ij >= n and n_i n_j n_k d_ijk >= n applications
    /// already folded into n_exp.
    int reductions = 0;

    std::string str() const;
    friend bool operator==(const MonomialInequality&, const MonomialInequality&) = default;
};

/// Multiplies the templates and moves their right-hand parameters to the
/// left. Throws InvalidArgument ("uncleared denominator") when a parameter is
/// left with a negative exponent.
MonomialInequality combine(const Combination& c);

/// Lowers the n exponent by the largest number of disjoint applications of
/// n_i n_j d_ij >= n and n_i n_j n_k d_ijk >= n to the pattern factor, then
/// drops what is left of it.
MonomialInequality simplify_pattern(const MonomialInequality& raw);

struct Part {
    /// The library set this part is built on.
    ParamSet core;
    Exponents factors{};
};

/// Splits the occurrences in `lhs` into g parts, each containing a library
/// set. Leftover occurrences go to the first part whose core holds the
/// parameter, otherwise to the first part.
std::optional<std::vector<Part>> partition(const Exponents& lhs, int g, const std::vector<ParamSet>& library);

/// Largest g <= cap for which partition succeeds.
int max_parts(const Exponents& lhs, int cap, const std::vector<ParamSet>& library);

struct DerivedBound {
    Combination witness;
    Exponents lhs{};
    Rational A;
    Rational B;
    int g = 0;
    std::vector<Part> partition;
    Rational constant = 1;

    Rational a() const { return A / g; }
    Rational b() const { return B / g; }
};

struct SearchOptions {
    unsigned threads = 1;
    /// Cap on packing search nodes; when reached the search stops and
    /// returns the frontier found so far.
    std::uint64_t node_budget = 2'000'000'000;
};

/// One point (A/g, B/g) of the frontier with every witness reaching it,
/// ordered by total multiplicity, then canonical combination order, then g.
struct FrontierPoint {
    Rational a;
    Rational b;
    std::vector<DerivedBound> witnesses;
};

struct SearchResult {
    /// Ordered by a ascending (b then descends).
    std::vector<FrontierPoint> frontier;
    std::uint64_t combinations = 0;
    bool exhausted = false;

    /// The first witness with the given (A, B, g), if any.
    const DerivedBound* find(int A, int B, int g) const;
};

/// Every combination of total multiplicity at most `budget`, every g up to
/// `g_max`; the Pareto frontier minimising A/g and maximising B/g.
SearchResult search(int budget, int g_max, const std::vector<ParamSet>& library, const SearchOptions& options = {});

/// All minimal defining sets (they include the six known ones).
std::vector<ParamSet> default_library();

/// Reads one set per line, either "x12,z23" or a JSON object with a "set"
/// array; blank lines and lines starting with '#' are skipped. Every entry
/// must be defining.
std::vector<ParamSet> read_library(std::istream& in);

/// One JSON object per witness.
std::string witness_json(const DerivedBound& d);

struct ReplayReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

/// Recomputes a witness line from its combination and checks the recorded
/// exponents, A, B, g and partition. Throws InvalidArgument on malformed input.
ReplayReport replay(const std::string& witness_line);

/// True when the combined inequality and its simplified form both hold on
/// `d`: LHS <= raw bound and LHS <= constant n^A m^-B.
bool instantiate(const Combination& c, const Decomposition& d);

}  // namespace ufrac
