#include "causalkit/errors.hpp"

#include <utility>

namespace causalkit {

namespace {

std::string join_cycle(const std::vector<std::string>& cycle) {
  std::string out;
  for (const auto& name : cycle) {
    out += name;
    out += " -> ";
  }
  if (!cycle.empty()) out += cycle.front();
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t position, std::string message, std::string expected)
    : Error("parse error at offset " + std::to_string(position) + ": " + message +
            (expected.empty() ? std::string{} : " (expected " + expected + ")")),
      position_(position),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

UnboundVariable::UnboundVariable(std::string name)
    : Error("unbound variable '" + name + "'"), name_(std::move(name)) {}

DomainError::DomainError(std::string message, std::string variable)
    : Error(variable.empty() ? "domain error: " + message
                             : "domain error while evaluating '" + variable + "': " + message),
      detail_(std::move(message)),
      variable_(std::move(variable)) {}

DuplicateName::DuplicateName(const std::string& name)
    : Error("variable '" + name + "' is already declared") {}

UnknownTarget::UnknownTarget(const std::string& name)
    : Error("intervention target '" + name + "' is not an endogenous variable") {}

UndeclaredVariable::UndeclaredVariable(const std::string& variable, const std::string& reference)
    : Error("equation of '" + variable + "' references undeclared variable '" + reference + "'") {}

DuplicateTarget::DuplicateTarget(const std::string& name)
    : Error("variable '" + name + "' is targeted by more than one intervention") {}

CycleError::CycleError(std::vector<std::string> cycle)
    : Error("causal cycle: " + join_cycle(cycle)), cycle_(std::move(cycle)) {}

ExhaustedRetries::ExhaustedRetries(std::size_t produced, std::size_t requested, std::size_t retries)
    : Error("gave up after " + std::to_string(retries) + " consecutive duplicate graphs with " +
            std::to_string(produced) + " of " + std::to_string(requested) +
            " unique graphs produced; the configured graph space is too small") {}

SchemaError::SchemaError(std::string path, const std::string& message)
    : Error("schema error at " + (path.empty() ? std::string{"<root>"} : path) + ": " + message),
      path_(std::move(path)) {}

}  // namespace causalkit
