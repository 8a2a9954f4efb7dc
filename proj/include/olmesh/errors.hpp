#pragma once

#include <stdexcept>
#include <string>

namespace olmesh {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes disagree, or a size that must be positive is zero.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A mode or gate index lies outside the valid range.
class IndexError : public Error {
public:
    using Error::Error;
};

/// A matrix that must be unitary is not. `deviation` is max |m^dagger m - I|.
class UnitarityError : public Error {
public:
    UnitarityError(const std::string& what, double deviation)
        : Error(what + " (max deviation " + std::to_string(deviation) + ")"),
          deviation_(deviation) {}
    double deviation() const noexcept { return deviation_; }

private:
    double deviation_;
};

/// A matrix that must be Hermitian is not. `deviation` is max |h - h^dagger|.
class SymmetryError : public Error {
public:
    SymmetryError(const std::string& what, double deviation)
        : Error(what + " (max deviation " + std::to_string(deviation) + ")"),
          deviation_(deviation) {}
    double deviation() const noexcept { return deviation_; }

private:
    double deviation_;
};

/// Malformed input file or stream.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Structurally invalid object (non-bijective permutation, bad schedule, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed; indicates a bug or numerical breakdown.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Not enough usable data to perform a fit.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

}  // namespace olmesh
