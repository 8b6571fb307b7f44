#pragma once

#include <stdexcept>
#include <string>

namespace trimer {

/// Invalid argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Sector index not handled by the requested operation (e.g. even ell).
class UnsupportedSectorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Unknown mapping tag, bad format name, inconsistent options.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Profile/grid size mismatch or sector mismatch between operands.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Unsorted or empty input sequences.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Iterative procedure ran out of budget. Carries the last estimate.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_(best_estimate), err_(error_estimate) {}
    double best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return err_; }

private:
    double best_;
    double err_;
};

/// Failure of a linear-algebra backend.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Broken invariant, e.g. a root bracket that should always straddle.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace trimer
