#include "causalkit/scm.hpp"

#include <algorithm>
#include <set>

#include "causalkit/errors.hpp"

namespace causalkit {

namespace {

// Follows parent links among the nodes Kahn's algorithm could not place;
// every such node has an unplaced parent, so the walk must revisit a node.
std::vector<std::string> find_cycle(const std::map<std::string, std::vector<std::string>>& parents,
                                    const std::set<std::string>& stuck) {
  std::vector<std::string> path;
  std::map<std::string, std::size_t> position;
  std::string current = *stuck.begin();
  while (!position.count(current)) {
    position[current] = path.size();
    path.push_back(current);
    for (const auto& parent : parents.at(current)) {
      if (stuck.count(parent)) {
        current = parent;
        break;
      }
    }
  }
  std::vector<std::string> cycle(path.begin() + static_cast<std::ptrdiff_t>(position[current]), path.end());
  // The walk followed child -> parent links; report in causal direction.
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

Intervention parse_intervention(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ParseError(text.size(), "intervention must have the form Name=EXPR", "'='");
  auto name = text.substr(0, eq);
  while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
  while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
  if (!is_identifier(name)) throw ParseError(0, "invalid intervention target '" + std::string(name) + "'", "identifier");
  try {
    return {std::string(name), parse(text.substr(eq + 1))};
  } catch (const ParseError& e) {
    throw ParseError(e.position() + eq + 1, e.detail(), e.expected());
  }
}

double Sample::at(const std::string& name) const {
  if (auto it = endogenous.find(name); it != endogenous.end()) return it->second;
  if (auto it = exogenous.find(name); it != exogenous.end()) return it->second;
  throw UnboundVariable(name);
}

Bindings Sample::bindings() const {
  Bindings out(exogenous.begin(), exogenous.end());
  out.insert(endogenous.begin(), endogenous.end());
  return out;
}

ScmModel ScmModel::from_parts(std::map<std::string, DistributionSpec> exogenous,
                              std::map<std::string, Expr> endogenous) {
  ScmModel model;
  for (const auto& [name, spec] : exogenous) model.add_exogenous(name, spec);
  for (const auto& [name, equation] : endogenous) {
    if (!is_identifier(name)) throw InvalidParams("invalid variable name '" + name + "'");
    if (model.is_exogenous(name)) throw DuplicateName(name);
  }
  model.original_ = std::move(endogenous);
  for (const auto& [name, equation] : model.original_) model.check_references(name, equation);
  model.order_ = order_or_throw(model.original_);
  return model;
}

void ScmModel::check_references(const std::string& name, const Expr& equation) const {
  for (const auto& ref : free_variables(equation)) {
    if (ref == name) throw CycleError({name});
    if (!has_variable(ref)) throw UndeclaredVariable(name, ref);
  }
}

std::vector<std::string> ScmModel::order_or_throw(const std::map<std::string, Expr>& equations) {
  std::map<std::string, std::vector<std::string>> parents;
  std::map<std::string, std::vector<std::string>> children;
  std::map<std::string, std::size_t> pending;
  for (const auto& [name, equation] : equations) {
    auto& list = parents[name];
    for (const auto& ref : free_variables(equation)) {
      if (equations.count(ref)) {
        list.push_back(ref);
        children[ref].push_back(name);
      }
    }
    pending[name] = list.size();
  }
  std::set<std::string> ready;
  for (const auto& [name, count] : pending) {
    if (count == 0) ready.insert(name);
  }
  std::vector<std::string> order;
  order.reserve(equations.size());
  while (!ready.empty()) {
    std::string name = *ready.begin();
    ready.erase(ready.begin());
    for (const auto& child : children[name]) {
      if (--pending[child] == 0) ready.insert(child);
    }
    order.push_back(std::move(name));
  }
  if (order.size() != equations.size()) {
    std::set<std::string> stuck;
    for (const auto& [name, count] : pending) {
      if (count > 0) stuck.insert(name);
    }
    throw CycleError(find_cycle(parents, stuck));
  }
  return order;
}

void ScmModel::add_endogenous(const std::string& name, Expr equation) {
  if (!is_identifier(name)) throw InvalidParams("invalid variable name '" + name + "'");
  if (has_variable(name)) throw DuplicateName(name);
  check_references(name, equation);
  auto equations = effective_equations();
  equations.emplace(name, equation);
  auto order = order_or_throw(equations);
  original_.emplace(name, std::move(equation));
  order_ = std::move(order);
}

void ScmModel::add_exogenous(const std::string& name, DistributionSpec spec) {
  if (!is_identifier(name)) throw InvalidParams("invalid variable name '" + name + "'");
  if (has_variable(name)) throw DuplicateName(name);
  exogenous_.emplace(name, std::move(spec));
}

void ScmModel::do_interventions(std::span<const Intervention> interventions) {
  std::set<std::string> targets;
  for (const auto& intervention : interventions) {
    if (!is_endogenous(intervention.target)) throw UnknownTarget(intervention.target);
    if (!targets.insert(intervention.target).second) throw DuplicateTarget(intervention.target);
    check_references(intervention.target, intervention.equation);
  }
  auto equations = effective_equations();
  for (const auto& intervention : interventions) equations.insert_or_assign(intervention.target, intervention.equation);
  auto order = order_or_throw(equations);
  for (const auto& intervention : interventions) interventions_.insert_or_assign(intervention.target, intervention.equation);
  order_ = std::move(order);
}

void ScmModel::undo_interventions() noexcept {
  if (interventions_.empty()) return;
  interventions_.clear();
  // The original equations were acyclic when they were installed.
  order_ = order_or_throw(original_);
}

const Expr& ScmModel::effective_equation(const std::string& name) const {
  if (auto it = interventions_.find(name); it != interventions_.end()) return it->second;
  if (auto it = original_.find(name); it != original_.end()) return it->second;
  throw UnknownTarget(name);
}

std::map<std::string, Expr> ScmModel::effective_equations() const {
  auto equations = original_;
  for (const auto& [name, equation] : interventions_) equations.insert_or_assign(name, equation);
  return equations;
}

std::vector<std::string> ScmModel::endogenous_names() const {
  std::vector<std::string> out;
  for (const auto& [name, equation] : original_) out.push_back(name);
  return out;
}

std::vector<std::string> ScmModel::exogenous_names() const {
  std::vector<std::string> out;
  for (const auto& [name, spec] : exogenous_) out.push_back(name);
  return out;
}

CausalGraph ScmModel::effective_graph() const {
  CausalGraph graph;
  graph.endo_nodes = endogenous_names();
  graph.exo_nodes = exogenous_names();
  for (const auto& name : graph.endo_nodes) {
    for (const auto& parent : free_variables(effective_equation(name))) graph.edges.emplace(parent, name);
  }
  return graph;
}

Sample ScmModel::sample(Rng& rng) const {
  const Rng base(rng.next_u64());
  Sample sample;
  Bindings values;
  for (const auto& [name, spec] : exogenous_) {
    Rng stream = base.derive(name);
    const double value = draw(spec, stream);
    sample.exogenous.emplace(name, value);
    values.emplace(name, value);
  }
  for (const auto& name : order_) {
    double value = 0.0;
    try {
      value = evaluate(effective_equation(name), values);
    } catch (const DomainError& e) {
      throw DomainError(e.detail(), name);
    }
    sample.endogenous.emplace(name, value);
    values.emplace(name, value);
  }
  return sample;
}

std::vector<Sample> ScmModel::sample_n(std::size_t count, Rng& rng) const {
  std::vector<Sample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample(rng));
  return out;
}

bool operator==(const ScmModel& lhs, const ScmModel& rhs) {
  return lhs.original_ == rhs.original_ && lhs.exogenous_ == rhs.exogenous_ &&
         lhs.interventions_ == rhs.interventions_;
}

}  // namespace causalkit
