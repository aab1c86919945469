#include "causalkit/graph.hpp"

#include <algorithm>
#include <map>

#include "causalkit/errors.hpp"

namespace causalkit {

std::vector<std::string> CausalGraph::parents(const std::string& node) const {
  std::vector<std::string> out;
  for (const auto& [from, to] : edges) {
    if (to == node) out.push_back(from);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t CausalGraph::out_degree(const std::string& node) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.first == node; }));
}

void CausalGraph::validate(bool require_exo_children) const {
  std::set<std::string> endo(endo_nodes.begin(), endo_nodes.end());
  std::set<std::string> exo(exo_nodes.begin(), exo_nodes.end());
  if (endo.size() != endo_nodes.size() || exo.size() != exo_nodes.size())
    throw InvalidConfig("graph has duplicate node names");
  for (const auto& name : exo) {
    if (endo.count(name)) throw InvalidConfig("node '" + name + "' is both endogenous and exogenous");
  }
  for (const auto& [from, to] : edges) {
    if (!endo.count(from) && !exo.count(from)) throw InvalidConfig("edge from unknown node '" + from + "'");
    if (!endo.count(to)) {
      if (exo.count(to)) throw InvalidConfig("exogenous node '" + to + "' has a parent");
      throw InvalidConfig("edge into unknown node '" + to + "'");
    }
  }
  if (require_exo_children) {
    for (const auto& name : exo_nodes) {
      if (out_degree(name) == 0) throw InvalidConfig("exogenous node '" + name + "' has no children");
    }
  }
  if (!topological_order(*this)) throw InvalidConfig("graph is cyclic");
}

CausalGraph CausalGraph::endogenous_subgraph() const {
  CausalGraph out;
  out.endo_nodes = endo_nodes;
  std::set<std::string> endo(endo_nodes.begin(), endo_nodes.end());
  for (const auto& edge : edges) {
    if (endo.count(edge.first) && endo.count(edge.second)) out.edges.insert(edge);
  }
  return out;
}

std::optional<std::vector<std::string>> topological_order(const CausalGraph& graph) {
  std::map<std::string, std::size_t> in_degree;
  std::map<std::string, std::vector<std::string>> children;
  for (const auto& name : graph.endo_nodes) in_degree[name];
  for (const auto& name : graph.exo_nodes) in_degree[name];
  for (const auto& [from, to] : graph.edges) {
    in_degree[from];
    ++in_degree[to];
    children[from].push_back(to);
  }
  std::set<std::string> ready;
  for (const auto& [name, degree] : in_degree) {
    if (degree == 0) ready.insert(name);
  }
  std::vector<std::string> order;
  order.reserve(in_degree.size());
  while (!ready.empty()) {
    std::string name = *ready.begin();
    ready.erase(ready.begin());
    for (const auto& child : children[name]) {
      if (--in_degree[child] == 0) ready.insert(child);
    }
    order.push_back(std::move(name));
  }
  if (order.size() != in_degree.size()) return std::nullopt;
  return order;
}

void GraphGenConfig::validate() const {
  if (n_endo < 1) throw InvalidConfig("n_endo must be at least 1");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw InvalidConfig("edge_prob must lie in [0, 1]");
  if (!(confounder_child_prob >= 0.0 && confounder_child_prob <= 1.0))
    throw InvalidConfig("confounder_child_prob must lie in [0, 1]");
  if (allow_exo_confounders && n_exo > 0 && confounder_child_prob == 0.0)
    throw InvalidConfig("confounder_child_prob must be positive when exogenous confounders are allowed");
}

CausalGraph generate_graph(const GraphGenConfig& config, Rng& rng) {
  config.validate();
  CausalGraph graph;
  for (std::size_t i = 0; i < config.n_endo; ++i) graph.endo_nodes.push_back("X" + std::to_string(i));
  for (std::size_t i = 0; i < config.n_exo; ++i) graph.exo_nodes.push_back("U" + std::to_string(i));

  std::vector<std::size_t> order(config.n_endo);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.next_below(i)]);

  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (rng.next_bernoulli(config.edge_prob))
        graph.edges.emplace(graph.endo_nodes[order[i]], graph.endo_nodes[order[j]]);
    }
  }

  for (const auto& exo : graph.exo_nodes) {
    if (!config.allow_exo_confounders) {
      graph.edges.emplace(exo, graph.endo_nodes[rng.next_below(config.n_endo)]);
      continue;
    }
    std::vector<std::size_t> children;
    while (children.empty()) {
      for (std::size_t i = 0; i < config.n_endo; ++i) {
        if (rng.next_bernoulli(config.confounder_child_prob)) children.push_back(i);
      }
    }
    for (auto child : children) graph.edges.emplace(exo, graph.endo_nodes[child]);
  }
  return graph;
}

std::vector<CausalGraph> generate_unique_graph_set(const GraphGenConfig& config, std::size_t count, Rng& rng,
                                                   std::optional<std::size_t> max_retries,
                                                   const GraphFilter& accept) {
  if (count < 1) throw InvalidConfig("graph set size must be at least 1");
  config.validate();
  const std::size_t retry_limit = max_retries.value_or(100 * count);
  std::vector<CausalGraph> graphs;
  std::set<std::set<Edge>> seen;
  std::size_t consecutive_failures = 0;
  while (graphs.size() < count) {
    CausalGraph candidate = generate_graph(config, rng);
    if ((accept && !accept(candidate)) || !seen.insert(candidate.edges).second) {
      if (++consecutive_failures >= retry_limit) throw ExhaustedRetries(graphs.size(), count, consecutive_failures);
      continue;
    }
    consecutive_failures = 0;
    graphs.push_back(std::move(candidate));
  }
  return graphs;
}

bool is_confounded(const CausalGraph& graph) {
  return std::any_of(graph.exo_nodes.begin(), graph.exo_nodes.end(),
                     [&](const std::string& exo) { return graph.out_degree(exo) >= 2; });
}

}  // namespace causalkit
