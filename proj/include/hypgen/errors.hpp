#pragma once

#include <stdexcept>
#include <string>

namespace hypgen
{

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ZeroAtOrigin : public Error
{
public:
    using Error::Error;
};

class EmptyInput : public Error
{
public:
    using Error::Error;
};

class DomainError : public Error
{
public:
    using Error::Error;
};

class InvalidInput : public Error
{
public:
    using Error::Error;
};

class IndexError : public Error
{
public:
    using Error::Error;
};

/// A hypothesis required by an operation does not hold for the given spec.
class HypothesisError : public Error
{
public:
    using Error::Error;
};

// Numerical failures. The CLI maps all of these to exit code 3.

class NumericalError : public Error
{
public:
    using Error::Error;
};

class PoleError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

class BracketError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

class MultipleRootError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

class MonotonicityViolation : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

} // namespace hypgen
