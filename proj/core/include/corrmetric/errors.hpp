#ifndef CORRMETRIC_ERRORS_HPP
#define CORRMETRIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace corrmetric {

/// Base class for all corrmetric errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sample is constant (centered norm below the zero-variance threshold),
/// so its correlation with anything is undefined.
class ZeroVarianceError : public Error {
public:
    explicit ZeroVarianceError(std::string sample_id)
        : Error("zero variance in sample '" + sample_id + "'"),
          sample_id_(std::move(sample_id)) {}

    const std::string& sample_id() const noexcept { return sample_id_; }

private:
    std::string sample_id_;
};

/// Two vectors that should have equal length do not.
class DimensionMismatchError : public Error {
public:
    DimensionMismatchError(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) +
                ", got " + std::to_string(got)) {}
};

/// An argument is outside the domain an operation is defined on.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An angle triple is not realizable as pairwise angles of unit vectors.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// The ambient dimension is too small to embed the requested configuration.
class DimensionTooSmallError : public Error {
public:
    using Error::Error;
};

}  // namespace corrmetric

#endif
