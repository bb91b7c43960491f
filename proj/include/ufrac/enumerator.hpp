#pragma once

// Exact enumeration of representations m/n = 1/a_1 + ... + 1/a_k with
// a_1 <= ... <= a_k. This is the ground truth the rest of the workbench is
// validated against.

#include "ufrac/numeric.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ufrac {

inline constexpr int kMaxTerms = 6;

class SolutionTuple {
public:
    /// Validates ordering and that the reciprocals sum to `target` exactly.
    SolutionTuple(std::vector<Natural> denominators, const Fraction& target);

    struct Trusted {};
    /// For producers that established the invariants by construction.
    SolutionTuple(Trusted, std::vector<Natural> denominators) : denominators_(std::move(denominators)) {}

    std::size_t k() const noexcept { return denominators_.size(); }
    const std::vector<Natural>& denominators() const noexcept { return denominators_; }
    const Natural& operator[](std::size_t i) const { return denominators_[i]; }

    Rational reciprocal_sum() const;
    /// Same as reciprocal_sum() == f, by cross-multiplication.
    bool sums_to(const Fraction& f) const;
    std::string str() const;

    friend bool operator==(const SolutionTuple&, const SolutionTuple&) = default;
    friend auto operator<=>(const SolutionTuple& a, const SolutionTuple& b) {
        return a.denominators_ <=> b.denominators_;
    }

private:
    std::vector<Natural> denominators_;
};

/// How the last two denominators are produced.
enum class TailStrategy {
    /// Divisors of q^2 via (p*a - q)(p*b - q) = q^2.
    divisor,
    /// Plain recursion down to a single unit fraction.
    loop,
};

struct EnumerationOptions {
    std::optional<std::uint64_t> cap;
    TailStrategy tail = TailStrategy::divisor;
    /// Worker threads for first-level branches; output order is unaffected.
    unsigned threads = 1;
};

struct Enumeration {
    Fraction fraction;
    int k = 0;
    std::vector<SolutionTuple> solutions;
    /// True when `cap` cut the output short.
    bool truncated = false;
};

/// Visitor over denominators in lexicographic order; return false to stop.
using SolutionVisitor = std::function<bool(std::span<const Natural>)>;

/// Streams every solution for the reduced fraction `f`. Returns false if the
/// visitor stopped the walk early.
bool for_each_solution(const Fraction& f, int k, const SolutionVisitor& visit,
                       TailStrategy tail = TailStrategy::divisor);

/// m/n is reduced first; counts and solutions are those of the reduced fraction.
Enumeration enumerate(const Natural& m, const Natural& n, int k, const EnumerationOptions& options = {});
Enumeration enumerate(const Fraction& f, int k, const EnumerationOptions& options = {});

Natural count(const Natural& m, const Natural& n, int k, TailStrategy tail = TailStrategy::divisor);
Natural count(const Fraction& f, int k, TailStrategy tail = TailStrategy::divisor);

/// Parses "a1,a2,...,ak"; rejects non-ascending input rather than sorting it.
std::vector<Natural> parse_denominators(std::string_view text);

}  // namespace ufrac
