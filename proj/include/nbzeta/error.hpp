// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <stdexcept>
#include <string>

namespace nbzeta {

/// Base of every error raised by the library.
class nbzeta_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside an operation's mathematical domain.
class DomainError : public nbzeta_error
{
public:
    using nbzeta_error::nbzeta_error;
};

/// Evaluation requested at (or within the guard radius of) a pole.
class PoleError : public DomainError
{
public:
    using DomainError::DomainError;
};

/// Coefficients violate the flattened constraint c . beta = 0.
class ConstraintViolation : public DomainError
{
public:
    using DomainError::DomainError;
};

/// Mismatched matrix or vector dimensions.
class ShapeError : public DomainError
{
public:
    using DomainError::DomainError;
};

/// A result left the representable range.
class OverflowError : public DomainError
{
public:
    using DomainError::DomainError;
};

/// An iterative or series method could not reach its tolerance.
class ConvergenceError : public nbzeta_error
{
public:
    using nbzeta_error::nbzeta_error;
};

/// A quadrature exhausted its panel budget before meeting its tolerance.
class ToleranceError : public nbzeta_error
{
public:
    using nbzeta_error::nbzeta_error;
};

/// KKT system remained singular after the full ridge escalation.
class SingularSystemError : public nbzeta_error
{
public:
    using nbzeta_error::nbzeta_error;
};

/// File could not be read, parsed, or written.
class IoError : public nbzeta_error
{
public:
    using nbzeta_error::nbzeta_error;
};

} // namespace nbzeta
