// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace renorm {

/// Base class for every failure this library reports deliberately.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Enumeration would exceed the configured element cap, or a combinatorial
/// count overflowed. The message names the offending count.
class BallSizeError : public Error {
 public:
  using Error::Error;
};

/// A window/radius requirement is not met; the message names the radius that
/// would be needed.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a fully enumerated finite group was called on a
/// truncated (windowed) model, or vice versa.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument values (non-positive epsilon, malformed specs, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Numeric integrity violations: eigensolver failure, non-finite values,
/// or a matrix outside its contracted range.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Structures that should agree (shared group model, matching dimensions)
/// do not.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// An artifact file does not match its declared schema; the message names
/// the offending field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace renorm
