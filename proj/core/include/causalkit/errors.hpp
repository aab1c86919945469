#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace causalkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression source. `position` is a byte offset into the input.
class ParseError : public Error {
public:
  ParseError(std::size_t position, std::string message, std::string expected = {});

  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::string& expected() const noexcept { return expected_; }

private:
  std::size_t position_;
  std::string detail_;
  std::string expected_;
};

class UnboundVariable : public Error {
public:
  explicit UnboundVariable(std::string name);
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

/// Arithmetic outside the domain of an operation (log of a non-positive
/// value, division by zero, NaN-producing power). `variable` is filled in
/// when the failure happened while sampling a specific SCM variable.
class DomainError : public Error {
public:
  explicit DomainError(std::string message, std::string variable = {});
  const std::string& variable() const noexcept { return variable_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  std::string detail_;
  std::string variable_;
};

class InvalidParams : public Error {
public:
  using Error::Error;
};

class DuplicateName : public Error {
public:
  explicit DuplicateName(const std::string& name);
};

class UnknownTarget : public Error {
public:
  explicit UnknownTarget(const std::string& name);
};

/// An equation references a name that is neither endogenous nor exogenous.
class UndeclaredVariable : public Error {
public:
  UndeclaredVariable(const std::string& variable, const std::string& reference);
};

/// Two interventions of one set target the same variable.
class DuplicateTarget : public Error {
public:
  explicit DuplicateTarget(const std::string& name);
};

class CycleError : public Error {
public:
  explicit CycleError(std::vector<std::string> cycle);
  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

private:
  std::vector<std::string> cycle_;
};

class InvalidConfig : public Error {
public:
  using Error::Error;
};

class ExhaustedRetries : public Error {
public:
  ExhaustedRetries(std::size_t produced, std::size_t requested, std::size_t retries);
};

class InvalidAction : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class InsufficientData : public Error {
public:
  using Error::Error;
};

/// Structural problem in a serialized document; `path` is a dotted JSON path.
class SchemaError : public Error {
public:
  SchemaError(std::string path, const std::string& message);
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

class HeterogeneousSamples : public Error {
public:
  using Error::Error;
};

}  // namespace causalkit
