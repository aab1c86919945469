#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "causalkit/expr.hpp"
#include "causalkit/graph.hpp"
#include "causalkit/random.hpp"
#include "causalkit/scm.hpp"

namespace causalkit {

enum class FunctionKind { linear, interaction };

std::string_view to_string(FunctionKind kind) noexcept;
FunctionKind function_kind_from_string(std::string_view name);

/// Family of structural equations a generator may draw from.
///
/// `linear`: sum of w_i * parent_i plus `bias`, with |w_i| uniform in
/// [weight_low, weight_high] and, when `random_sign` is set, a fair random
/// sign.
/// `interaction`: sum of all parents plus the product of two distinct,
/// randomly chosen parents. Weight fields are ignored.
struct FunctionClass {
  FunctionKind kind = FunctionKind::linear;
  double weight_low = 0.5;
  double weight_high = 2.0;
  double bias = 0.0;
  bool random_sign = true;

  static FunctionClass linear(double weight_low = 0.5, double weight_high = 2.0, double bias = 0.0,
                              bool random_sign = true) {
    return {FunctionKind::linear, weight_low, weight_high, bias, random_sign};
  }
  static FunctionClass interaction() { return {FunctionKind::interaction}; }

  void validate() const;
};

struct ScmGenConfig {
  GraphGenConfig graph_config;
  std::vector<FunctionClass> function_classes{FunctionClass::linear()};
  DistributionSpec exo_spec = DistributionSpec::gauss(0.0, 1.0);
  /// When set, `create_random` draws pairwise distinct graphs.
  bool unique_graphs = false;
  std::optional<std::size_t> max_retries;

  void validate() const;
};

/// Structural equation over exactly `parents`. With fewer than two parents
/// the interaction class reduces to the plain sum (zero with no parents).
Expr materialize_equation(const FunctionClass& function_class, const std::vector<std::string>& parents, Rng& rng);

/// SCM whose effective graph equals `graph`. Every exogenous node receives
/// `config.exo_spec`; every endogenous node an equation from a uniformly
/// chosen function class over its graph parents.
ScmModel create_from_graph(const CausalGraph& graph, const ScmGenConfig& config, Rng& rng);

std::vector<ScmModel> create_random(std::size_t count, const ScmGenConfig& config, Rng& rng);

}  // namespace causalkit
