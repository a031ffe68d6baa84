#pragma once

#include <stdexcept>
#include <string>

namespace hcont {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed values: reversed interval endpoints, NaN, bad file contents.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// An operation was called outside its domain (wrong backend, non H-continuous
// input where one is required, unbounded family, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class SpaceMismatch : public PreconditionError {
public:
    SpaceMismatch() : PreconditionError("functions are defined on different spaces") {}
};

// An exhaustive enumeration would exceed its configured budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

} // namespace hcont
