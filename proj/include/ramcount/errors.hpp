#pragma once

#include <stdexcept>
#include <string>

namespace ramcount {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// The requested discriminant exponent violates Ore's conditions.
class OreViolation : public Error {
public:
    using Error::Error;
};

class InfeasiblePolygon : public Error {
public:
    using Error::Error;
};

class InvalidTuple : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class InconsistentCount : public Error {
public:
    using Error::Error;
};

class PrecisionInsufficient : public Error {
public:
    using Error::Error;
};

}  // namespace ramcount
