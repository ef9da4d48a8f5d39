/**
 * @file errors.hpp
 * @brief Error hierarchy shared by all library modules.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fspd {

/// Base class for every library error, so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter violated its validity domain; carries the offending field and
/// the inequality it failed.
class DomainError : public Error {
public:
    DomainError(std::string field, std::string constraint)
        : Error(field + ": " + constraint),
          field_(std::move(field)),
          constraint_(std::move(constraint)) {}

    const std::string& field() const noexcept { return field_; }
    const std::string& constraint() const noexcept { return constraint_; }

private:
    std::string field_;
    std::string constraint_;
};

/// Gamma function requested exactly at a non-positive integer.
class PoleError : public Error {
public:
    using Error::Error;
};

/// A series or quadrature failed to reach its tolerance within its cap.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// A contour integral left a residual (imaginary part or unresolved tail)
/// above threshold; the truncation or node budget is insufficient.
class ContourError : public Error {
public:
    using Error::Error;
};

/// Truncated inner sum of the drift-factor series came out non-positive, so
/// its logarithm is undefined; signals sigma outside desk-scale validity.
class NonPositiveSum : public Error {
public:
    using Error::Error;
};

/// Converged series value fell below minus the tolerance; signals parameter
/// misuse (for example a drift factor inconsistent with the model).
class NegativePrice : public Error {
public:
    using Error::Error;
};

/// A file could not be opened or read.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace fspd
