#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causalkit/expr.hpp"
#include "causalkit/graph.hpp"
#include "causalkit/random.hpp"

namespace causalkit {

/// do(target = equation): replaces the structural equation of an
/// endogenous variable.
struct Intervention {
  std::string target;
  Expr equation;

  friend bool operator==(const Intervention&, const Intervention&) = default;
};

/// Parses `Name=EXPR`, the command-line spelling of an intervention.
Intervention parse_intervention(std::string_view text);

/// One joint draw of every variable of a model.
struct Sample {
  std::map<std::string, double> endogenous;
  std::map<std::string, double> exogenous;

  double at(const std::string& name) const;
  Bindings bindings() const;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Structural causal model: endogenous variables with structural
/// equations, exogenous variables with noise distributions, and the set of
/// interventions currently in force.
///
/// Every mutating member either succeeds or throws leaving the model
/// untouched. The effective graph (original equations with active
/// interventions substituted) is acyclic at all times.
class ScmModel {
public:
  ScmModel() = default;

  /// Builds a model from complete equation and distribution maps in one
  /// step, so equations may reference each other in any order. Throws
  /// DuplicateName, UndeclaredVariable or CycleError.
  static ScmModel from_parts(std::map<std::string, DistributionSpec> exogenous,
                             std::map<std::string, Expr> endogenous);

  /// Every name referenced by `equation` must already be declared.
  void add_endogenous(const std::string& name, Expr equation);
  void add_exogenous(const std::string& name, DistributionSpec spec);

  /// Installs all interventions at once or none of them. Throws
  /// DuplicateTarget, UnknownTarget, UndeclaredVariable or CycleError.
  void do_interventions(std::span<const Intervention> interventions);
  void do_intervention(const Intervention& intervention) { do_interventions({&intervention, 1}); }
  void undo_interventions() noexcept;

  const std::map<std::string, DistributionSpec>& exogenous() const noexcept { return exogenous_; }
  /// Structural equations as declared, ignoring interventions.
  const std::map<std::string, Expr>& original_equations() const noexcept { return original_; }
  const std::map<std::string, Expr>& active_interventions() const noexcept { return interventions_; }
  /// Equation currently in force for `name`.
  const Expr& effective_equation(const std::string& name) const;
  std::map<std::string, Expr> effective_equations() const;

  bool is_endogenous(const std::string& name) const { return original_.count(name) != 0; }
  bool is_exogenous(const std::string& name) const { return exogenous_.count(name) != 0; }
  bool has_variable(const std::string& name) const { return is_endogenous(name) || is_exogenous(name); }
  std::vector<std::string> endogenous_names() const;
  std::vector<std::string> exogenous_names() const;

  /// Endogenous variables in evaluation order (ties lexicographic).
  const std::vector<std::string>& topological_order() const noexcept { return order_; }

  CausalGraph effective_graph() const;

  /// Ancestral sampling. Consumes one word of `rng`; exogenous variable `U`
  /// is drawn from a stream derived from that word and the key `U`.
  Sample sample(Rng& rng) const;
  std::vector<Sample> sample_n(std::size_t count, Rng& rng) const;

  /// Equation-by-equation structural equality, including interventions.
  friend bool operator==(const ScmModel& lhs, const ScmModel& rhs);

private:
  void check_references(const std::string& name, const Expr& equation) const;
  static std::vector<std::string> order_or_throw(const std::map<std::string, Expr>& equations);

  std::map<std::string, Expr> original_;
  std::map<std::string, DistributionSpec> exogenous_;
  std::map<std::string, Expr> interventions_;
  std::vector<std::string> order_;
};

}  // namespace causalkit
