#pragma once

#include <stdexcept>
#include <string>

namespace ufrac {

/// Caller supplied something outside an operation's domain.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An identity that must hold for every valid input failed. This is a
/// finding about the inputs or the model, never a usage error.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A z-parameter came out non-integral under the active convention.
class IntegralityViolation : public InvariantViolation {
public:
    IntegralityViolation(std::string parameter, const std::string& detail)
        : InvariantViolation("non-integral " + parameter + ": " + detail),
          parameter_(std::move(parameter)) {}

    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

/// A search exceeded its configured work budget.
class ResourceExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ufrac
