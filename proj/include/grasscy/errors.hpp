#pragma once

#include <stdexcept>
#include <string>

namespace grasscy {

// Operands live in different polynomial contexts (variable count or field).
class ContextError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Arguments outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A computation would exceed the enumeration or memory guards.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Independent specializations of a generic computation disagree.
class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal self-check failed while constructing an object.
class ConstructionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace grasscy
