#pragma once

#include <stdexcept>
#include <string>

namespace abelian {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Requested table would exceed the configured entry limit.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Observed data incompatible with the model or malformed input.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace abelian
