#pragma once

#include <stdexcept>
#include <string>

namespace adiclab {

/**
 * Base class for all structured errors raised by the library.  Every
 * subclass names a distinct failure mode so callers can catch precisely.
 */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Unit operands of different rank combined or compared; no silent coercion.
class RankMismatchError : public Error {
public:
    using Error::Error;
};

// Element fed to an operation whose domain ring does not contain it,
// or two values over different primes combined.
class DomainMismatchError : public Error {
public:
    using Error::Error;
};

// A computation demanded more precision than the operand carries.
class PrecisionError : public Error {
public:
    PrecisionError(const std::string& what, long needed, long available)
        : Error(what), needed(needed), available(available) {}
    long needed;
    long available;
};

// A finite-model computation exceeded its size or search budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

// Malformed textual input to one of the parsers.
class ParseError : public Error {
public:
    using Error::Error;
};

// Operation invoked on a ring instance it does not support.
class UnsupportedInstanceError : public Error {
public:
    using Error::Error;
};

// Division or localization at an element of the support.
class SupportViolationError : public Error {
public:
    using Error::Error;
};

} // namespace adiclab
