#pragma once

#include <stdexcept>
#include <string>

namespace levybox {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A parameter or configuration value violates its type invariant.
/// `field()` carries the dotted path of the offending field when known.
class InvalidArgument : public Error {
public:
  InvalidArgument(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// A numerical procedure could not meet its requested tolerance.
class ToleranceFailure : public Error {
public:
  ToleranceFailure(std::string operation, const std::string& message)
      : Error(operation + ": " + message), operation_(std::move(operation)) {}

  const std::string& operation() const noexcept { return operation_; }

private:
  std::string operation_;
};

/// Reading or writing an artifact failed.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace levybox
