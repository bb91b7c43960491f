#pragma once

// The upper bounds for f_4 written as n^(a - b c) with m = n^c, the regimes
// in which each one is the sharpest, the k >= 5 lifting and the limit of
// u_n^(2^-n) for u_0 = 1, u_{n+1} = u_n (u_n + 1).

#include "ufrac/numeric.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <string>
#include <vector>

namespace ufrac {

using Float = boost::multiprecision::cpp_bin_float_50;

/// n^n_coeff / m^m_coeff; with m = n^c this is n^(n_coeff - m_coeff c).
struct BoundFormula {
    std::string label;
    Rational n_coeff;
    Rational m_coeff;

    Rational exponent(const Rational& c) const { return n_coeff - m_coeff * c; }
};

/// n^(3/2)/m^(3/4), n^(8/5)/m, n^(28/17)/m^(8/5), (n/m)^(5/3), n^(4/3)/m^(2/3).
const std::array<BoundFormula, 5>& bound_formulas();

/// A published bound; a sum of formulas, so its exponent is their maximum.
struct BoundSource {
    std::string name;
    std::vector<int> formulas;

    Rational exponent(const Rational& c) const;
};

/// The two four-part bounds on their own, then the two sums.
const std::array<BoundSource, 4>& bound_sources();

struct Regime {
    Rational c;
    /// Exponent of n in the sharpest bound.
    Rational value;
    /// Formulas attaining it inside an attaining source, ascending.
    std::vector<int> formulas;
    /// Sources attaining it, ascending.
    std::vector<int> sources;

    int formula() const { return formulas.front(); }
};

/// Throws InvalidArgument unless 0 <= c <= 1.
Regime regime(const Rational& c);

/// Points in (0, 1) where the attaining formulas or sources change, ascending.
std::vector<Rational> regime_breakpoints();

struct RegimePiece {
    Rational lo;
    Rational hi;
    int formula = 0;
    std::vector<int> sources;
};

/// [0, 1] split at the breakpoints.
std::vector<RegimePiece> regime_table();

/// (k^(4/3) n^2 / m)^exponent with exponent = (8/5) 2^(k-5).
struct FkBound {
    int k = 5;
    Natural m;
    Natural n;
    Rational exponent;
    /// n^2 / m.
    Rational ratio;
    Float log10_magnitude;

    std::string str() const;
    /// Scientific notation with `digits` significant digits.
    std::string magnitude(int digits = 6) const;
};

/// Throws InvalidArgument for k < 5 or m, n = 0.
FkBound fk_bound(int k, const Natural& m, const Natural& n);

struct LiftRow {
    Natural m;
    Natural n;
    Natural f5;
    /// (n^2 / m)^(8/5).
    Float bound;
};

/// Every reduced m/n with n <= n_max and m <= 6 n, ordered by n then m.
/// Throws InvalidArgument unless 1 <= n_max <= 30.
std::vector<LiftRow> lift_report(int n_max, unsigned threads = 1);

struct SylvesterState {
    std::vector<Natural> u;
    /// Certified enclosures of u_i^(2^-i), one per term.
    std::vector<std::pair<Rational, Rational>> q;
    /// Intersection of [u_i^(2^-i), (u_i + 1)^(2^-i)] over all terms.
    Rational lower;
    Rational upper;

    Rational width() const { return upper - lower; }
};

/// Extends u until the bracket is at most `target_width` wide. Throws
/// InvalidArgument unless target_width > 0.
SylvesterState sylvester(const Rational& target_width);

/// Certified lower and upper bounds of r^(2^-times) within 2^-bits per step.
std::pair<Rational, Rational> root_bracket(const Rational& r, int times, unsigned bits);

/// Fixed-point rendering, truncated toward zero or rounded up.
std::string decimal(const Rational& r, int digits, bool round_up = false);

}  // namespace ufrac
