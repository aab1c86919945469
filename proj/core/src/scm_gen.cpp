#include "causalkit/scm_gen.hpp"

#include <cmath>

#include "causalkit/errors.hpp"

namespace causalkit {

namespace {

Expr signed_constant(double value) {
  return std::signbit(value) ? Expr::negate(Expr::number(-value)) : Expr::number(value);
}

// Appends `term` to `sum` as `sum + term` or `sum - |term|` for a negative
// term; a missing sum starts with the signed term.
void accumulate(std::optional<Expr>& sum, Expr magnitude_term, bool negative) {
  if (!sum) {
    sum = negative ? Expr::negate(std::move(magnitude_term)) : std::move(magnitude_term);
  } else {
    sum = Expr::binary(negative ? BinaryOperator::sub : BinaryOperator::add, std::move(*sum),
                       std::move(magnitude_term));
  }
}

Expr linear_equation(const FunctionClass& fc, const std::vector<std::string>& parents, Rng& rng) {
  std::optional<Expr> sum;
  for (const auto& parent : parents) {
    const double magnitude = fc.weight_low + (fc.weight_high - fc.weight_low) * rng.next_unit();
    const bool negative = fc.random_sign && rng.next_bernoulli(0.5);
    accumulate(sum, Expr::number(magnitude) * Expr::variable(parent), negative);
  }
  if (!sum) return signed_constant(fc.bias);
  accumulate(sum, Expr::number(std::fabs(fc.bias)), std::signbit(fc.bias));
  return *sum;
}

Expr interaction_equation(const std::vector<std::string>& parents, Rng& rng) {
  if (parents.empty()) return Expr::number(0.0);
  std::optional<Expr> sum;
  for (const auto& parent : parents) accumulate(sum, Expr::variable(parent), false);
  if (parents.size() < 2) return *sum;
  std::size_t first = rng.next_below(parents.size());
  std::size_t second = rng.next_below(parents.size() - 1);
  if (second >= first) ++second;
  if (second < first) std::swap(first, second);
  accumulate(sum, Expr::variable(parents[first]) * Expr::variable(parents[second]), false);
  return *sum;
}

}  // namespace

std::string_view to_string(FunctionKind kind) noexcept {
  return kind == FunctionKind::linear ? "linear" : "interaction";
}

FunctionKind function_kind_from_string(std::string_view name) {
  if (name == "linear") return FunctionKind::linear;
  if (name == "interaction") return FunctionKind::interaction;
  throw InvalidConfig("unknown function class '" + std::string(name) + "'");
}

void FunctionClass::validate() const {
  if (kind != FunctionKind::linear) return;
  if (!(weight_low > 0.0 && weight_low <= weight_high && std::isfinite(weight_high)))
    throw InvalidConfig("linear weights require 0 < weight_low <= weight_high");
  if (!std::isfinite(bias)) throw InvalidConfig("linear bias must be finite");
}

void ScmGenConfig::validate() const {
  graph_config.validate();
  if (function_classes.empty()) throw InvalidConfig("at least one function class is required");
  for (const auto& fc : function_classes) fc.validate();
}

Expr materialize_equation(const FunctionClass& function_class, const std::vector<std::string>& parents, Rng& rng) {
  function_class.validate();
  return function_class.kind == FunctionKind::linear ? linear_equation(function_class, parents, rng)
                                                     : interaction_equation(parents, rng);
}

ScmModel create_from_graph(const CausalGraph& graph, const ScmGenConfig& config, Rng& rng) {
  if (config.function_classes.empty()) throw InvalidConfig("at least one function class is required");
  for (const auto& fc : config.function_classes) fc.validate();
  graph.validate(false);

  const Rng base(rng.next_u64());
  std::map<std::string, DistributionSpec> exogenous;
  for (const auto& name : graph.exo_nodes) exogenous.emplace(name, config.exo_spec);
  std::map<std::string, Expr> endogenous;
  for (const auto& name : graph.endo_nodes) {
    Rng stream = base.derive(name);
    const auto& fc = config.function_classes[stream.next_below(config.function_classes.size())];
    endogenous.emplace(name, materialize_equation(fc, graph.parents(name), stream));
  }
  return ScmModel::from_parts(std::move(exogenous), std::move(endogenous));
}

std::vector<ScmModel> create_random(std::size_t count, const ScmGenConfig& config, Rng& rng) {
  if (count < 1) throw InvalidConfig("SCM count must be at least 1");
  config.validate();
  auto [graph_rng, equation_rng] = rng.split();
  std::vector<CausalGraph> graphs;
  if (config.unique_graphs) {
    graphs = generate_unique_graph_set(config.graph_config, count, graph_rng, config.max_retries);
  } else {
    for (std::size_t i = 0; i < count; ++i) graphs.push_back(generate_graph(config.graph_config, graph_rng));
  }
  std::vector<ScmModel> models;
  models.reserve(count);
  for (const auto& graph : graphs) models.push_back(create_from_graph(graph, config, equation_rng));
  return models;
}

}  // namespace causalkit
