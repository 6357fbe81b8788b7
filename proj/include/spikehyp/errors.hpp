#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spikehyp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input lies outside the domain where the requested quantity is defined
// (branch cut, divergent series region, invalid dimensions, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Argument hits a pole of the gamma function.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

struct Violation {
    char vector = 'a';     // 'a' or 'b'
    std::size_t index = 0; // position inside the vector
    std::string reason;
};

// Parameter conditions of the contour representation are not met.
class ValidationError : public DomainError {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

// A series, transformation ladder or quadrature did not reach its tolerance
// within the allotted budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

} // namespace spikehyp
