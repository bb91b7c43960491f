#pragma once

// The closure equations and inequality templates over the 21 parameters,
// generated symbolically and checked numerically on decompositions.
//
// Every equation has the shape  c_0 prod S_0 = sum_i c_i prod S_i  where the
// c_i are built from m, n, the pattern and the d_J. A rule records the
// parameters of the left side as its output and those of the right side as
// its inputs: once the inputs are fixed, the divisor bound leaves few choices
// for the output.

#include "ufrac/numeric.hpp"
#include "ufrac/parametrization.hpp"
#include "ufrac/params.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ufrac {

struct Factor {
    std::uint8_t index = 0;
    std::int8_t exponent = 0;

    friend bool operator==(const Factor&, const Factor&) = default;
};

/// coefficient * prod symbols^e * prod params^e. Symbol exponents may be
/// negative; parameter exponents are positive.
struct Term {
    Rational coefficient = 1;
    std::vector<Factor> symbols;
    std::vector<Factor> params;

    int param_exponent(ParamId p) const;
    ParamSet support() const;
    std::string str() const;

    friend bool operator==(const Term&, const Term&) = default;
};

struct ClosureRule {
    int family = 0;
    ParamSet inputs;
    ParamSet outputs;
    /// Equation sides. Empty for family 1, whose numeric form is derived from
    /// the master equation at evaluation time.
    std::vector<Term> lhs;
    std::vector<Term> rhs;
    /// Family 1 only: the two unknown x parameters.
    std::optional<std::pair<ParamId, ParamId>> unknowns;

    std::string str() const;
    /// "family|inputs|outputs".
    std::string export_line() const;
};

/// lhs <= constant * n^n_exp * m^m_exp / pattern_factor * rhs
struct InequalityTemplate {
    std::string name;
    std::array<std::uint8_t, kParamCount> lhs{};
    std::array<std::uint8_t, kParamCount> rhs{};
    int n_exp = 0;
    int m_exp = 0;
    /// Multiplicities of n_i and d_J in the denominator.
    std::array<std::uint8_t, kSymbolCount> pattern_factor{};
    Rational constant = 1;

    std::string str() const;
};

inline constexpr std::array<int, 8> kFamilySizes = {55, 6, 4, 12, 4, 6, 3, 6};

std::vector<ClosureRule> build_rules();
std::vector<InequalityTemplate> build_inequalities();

/// The master equation m * prod x_J = sum_i (n/n_i) prod_{J not containing i} x_J.
std::pair<Term, std::vector<Term>> master_equation();

struct Catalog {
    std::vector<ClosureRule> rules;
    std::vector<InequalityTemplate> inequalities;
};

/// Built once on first use; immutable afterwards.
const Catalog& catalog();

bool evaluate_rule(const ClosureRule& rule, const Decomposition& d);
bool evaluate_rule(const InequalityTemplate& ineq, const Decomposition& d);

struct CatalogCheck {
    std::vector<int> failed_rules;
    std::vector<int> failed_inequalities;

    bool ok() const { return failed_rules.empty() && failed_inequalities.empty(); }
};

/// Numeric checker for a fixed catalog. Construction compiles the constant
/// parts of all terms so each decomposition evaluates them once.
class CatalogEvaluator {
public:
    explicit CatalogEvaluator(const Catalog& c);

    CatalogCheck check(const Decomposition& d) const;
    bool rule_holds(std::size_t rule, const Decomposition& d) const;
    bool inequality_holds(std::size_t inequality, const Decomposition& d) const;

    struct Impl;

private:
    template <class Fn>
    auto with_table(const Decomposition& d, Fn&& fn) const;

    std::shared_ptr<const Impl> impl_;
};

/// One-shot convenience over CatalogEvaluator.
CatalogCheck evaluate_catalog(const Catalog& c, const Decomposition& d);

}  // namespace ufrac
