#pragma once

#include <stdexcept>
#include <string>

namespace dbr {

/// Malformed input: invalid spec, schema violation, bad arguments.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iteration or quadrature did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested root is not enclosed by the supplied bracket.
class BracketError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The phase of the spec does not vary enough on one side of a point to
/// reach the requested level (only possible for exp_rate == 0).
class BracketUnavailable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A checked mathematical property failed; `invariant` names it.
class MathFailure : public std::runtime_error {
public:
    MathFailure(std::string invariant, const std::string& detail)
        : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
    const std::string& invariant() const { return invariant_; }

private:
    std::string invariant_;
};

}  // namespace dbr
