#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causalkit/random.hpp"

namespace causalkit {

using Edge = std::pair<std::string, std::string>;

/// Labeled directed graph over endogenous and exogenous variable names.
/// Generated graphs are always acyclic with parentless exogenous nodes;
/// `validate` checks those invariants for graphs from other sources.
struct CausalGraph {
  std::vector<std::string> endo_nodes;
  std::vector<std::string> exo_nodes;
  std::set<Edge> edges;

  /// Sorted parent names of `node`.
  std::vector<std::string> parents(const std::string& node) const;
  std::size_t out_degree(const std::string& node) const;

  /// Throws InvalidConfig if the graph is cyclic, an edge touches an unknown
  /// node, or an exogenous node has a parent. `require_exo_children` adds the
  /// rule that every exogenous node feeds at least one endogenous node.
  void validate(bool require_exo_children = true) const;

  /// Graph restricted to endogenous nodes and the edges between them.
  CausalGraph endogenous_subgraph() const;

  friend bool operator==(const CausalGraph&, const CausalGraph&) = default;
};

/// Kahn's algorithm over all nodes, ties broken lexicographically. Returns
/// nullopt when the graph has a cycle.
std::optional<std::vector<std::string>> topological_order(const CausalGraph& graph);

struct GraphGenConfig {
  std::size_t n_endo = 1;
  std::size_t n_exo = 0;
  bool allow_exo_confounders = false;
  double edge_prob = 0.5;
  double confounder_child_prob = 0.5;

  void validate() const;
};

/// Random DAG: a uniformly random ordering of X0..X{n-1} with each forward
/// pair connected with probability `edge_prob`. Without confounders every
/// exogenous node gets exactly one uniformly chosen child; with them, each
/// endogenous node becomes a child independently with probability
/// `confounder_child_prob`, redrawn until the exogenous node has a child.
CausalGraph generate_graph(const GraphGenConfig& config, Rng& rng);

/// Predicate a generated graph must satisfy to enter a unique set.
using GraphFilter = std::function<bool(const CausalGraph&)>;

/// `count` graphs with pairwise distinct labeled edge sets. A draw that is
/// a duplicate or fails `accept` counts as a retry; `max_retries`
/// consecutive retries raise ExhaustedRetries. Defaults to 100 * count.
std::vector<CausalGraph> generate_unique_graph_set(const GraphGenConfig& config, std::size_t count, Rng& rng,
                                                   std::optional<std::size_t> max_retries = std::nullopt,
                                                   const GraphFilter& accept = {});

/// True iff some exogenous node has two or more children.
bool is_confounded(const CausalGraph& graph);

}  // namespace causalkit
