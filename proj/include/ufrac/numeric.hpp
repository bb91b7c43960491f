#pragma once

// Exact integer and rational arithmetic plus divisor machinery.
//
// Everything here is exact. Natural is an arbitrary-precision integer; the
// nonnegativity of values that denote natural numbers is enforced at the
// operation boundaries that need it rather than in the type, since
// intermediate expressions such as (p*a - q) are legitimately signed.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ufrac {

using Natural = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

Natural gcd(const Natural& a, const Natural& b);
Natural lcm(const Natural& a, const Natural& b);

/// Parses a base-10 natural number. Rejects signs, blanks and trailing junk.
Natural parse_natural(std::string_view text);

/// Parses "p/q", "p" or a decimal literal such as "0.25" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/// A positive rational num/den kept in lowest terms.
class Fraction {
public:
    /// Reduces m/n. Both must be positive.
    static Fraction reduce(const Natural& m, const Natural& n);

    const Natural& num() const noexcept { return num_; }
    const Natural& den() const noexcept { return den_; }

    Rational value() const { return Rational(num_, den_); }
    std::string str() const;

    friend bool operator==(const Fraction&, const Fraction&) = default;
    friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b);

private:
    Fraction(Natural num, Natural den) : num_(std::move(num)), den_(std::move(den)) {}

    Natural num_;
    Natural den_;
};

/// Shorthand for Fraction::reduce.
inline Fraction reduce(const Natural& m, const Natural& n) { return Fraction::reduce(m, n); }

struct PrimePower {
    Natural prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime powers in increasing order of prime.
using Factorization = std::vector<PrimePower>;

/// Factorization backend. Callers go through default_factorizer() so a faster
/// implementation can be installed globally.
class Factorizer {
public:
    virtual ~Factorizer() = default;

    /// Factors n >= 1; factor(1) is empty.
    virtual Factorization factor(const Natural& n) const = 0;
};

/// Deterministic trial division, using a sieved prime table up to
/// `table_limit` and a 2-3-5 wheel past it.
class TrialDivisionFactorizer final : public Factorizer {
public:
    explicit TrialDivisionFactorizer(std::uint32_t table_limit = 1u << 16);

    Factorization factor(const Natural& n) const override;

    const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

private:
    std::vector<std::uint32_t> primes_;
};

std::shared_ptr<const Factorizer> default_factorizer();

/// Installs a new process-wide factorizer and returns the previous one.
std::shared_ptr<const Factorizer> install_factorizer(std::shared_ptr<const Factorizer> backend);

Factorization factor(const Natural& n);

/// Factors n using only the supplied candidate primes. Returns false (and
/// leaves `out` unspecified) when a cofactor greater than one survives.
bool factor_over(const Natural& n, const std::vector<Natural>& candidate_primes, Factorization& out);

/// Multiplies every exponent by `k`, i.e. the factorization of n^k.
Factorization power(Factorization f, unsigned k);

/// All positive divisors in increasing order.
std::vector<Natural> divisors(const Factorization& f);
std::vector<Natural> divisors(const Natural& n);

Natural divisor_count(const Factorization& f);
Natural divisor_count(const Natural& n);

/// floor(sqrt(n)) for n >= 0.
Natural isqrt(const Natural& n);

}  // namespace ufrac
