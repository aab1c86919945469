#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "causalkit/graph.hpp"
#include "causalkit/random.hpp"
#include "causalkit/scm.hpp"
#include "causalkit/scm_gen.hpp"

namespace causalkit {

/// Directed 0/1 adjacency over lexicographically ordered node names.
/// Entry (i, j) is set iff there is an edge names[i] -> names[j].
class AdjacencyMatrix {
public:
  explicit AdjacencyMatrix(std::vector<std::string> names);

  /// Endogenous-only adjacency of `graph`; exogenous nodes are dropped.
  static AdjacencyMatrix from_graph(const CausalGraph& graph);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  bool at(std::size_t from, std::size_t to) const { return cells_.at(from * size() + to) != 0; }
  /// Self-loops are rejected.
  void set(std::size_t from, std::size_t to, bool value = true);
  void set(const std::string& from, const std::string& to, bool value = true);
  std::size_t edge_count() const;

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

private:
  std::size_t index_of(const std::string& name) const;

  std::vector<std::string> names_;
  std::vector<std::uint8_t> cells_;
};

struct StructureMetrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double f1 = 0.0;
  double tpr = 0.0;
};

/// Directed-edge confusion counts over ordered pairs i != j. F1 and TPR
/// are 0 when their denominators vanish. Throws DimensionMismatch when the
/// node lists differ.
StructureMetrics compare_structures(const AdjacencyMatrix& predicted, const AdjacencyMatrix& truth);

/// Column-major sample data with named columns.
struct SampleTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;  // values[column][row]

  std::size_t rows() const noexcept { return values.empty() ? 0 : values.front().size(); }

  /// Endogenous columns of `samples` in lexicographic order.
  static SampleTable endogenous(std::span<const Sample> samples);
};

double pearson(std::span<const double> x, std::span<const double> y);

/// Baseline structure learner: edge i -> j iff |corr(i, j)| > threshold
/// and name_i < name_j. Only meant to exercise the evaluation pipeline.
/// Throws InsufficientData for fewer than two rows.
AdjacencyMatrix corr_threshold_discovery(const SampleTable& data, double threshold);

enum class Regime { confounded, unconfounded };
std::string_view to_string(Regime regime) noexcept;

/// Structure learners known to the use-case runner. `oracle` returns the
/// ground truth and checks the plumbing.
enum class DiscoveryAlgorithm { corr_threshold, oracle };
std::string_view to_string(DiscoveryAlgorithm algorithm) noexcept;
DiscoveryAlgorithm discovery_algorithm_from_string(std::string_view name);

struct UseCaseConfig {
  std::size_t n_endo = 4;
  std::size_t n_exo = 4;
  std::size_t scm_count = 30;
  std::size_t samples_per_scm = 100;
  /// Confounded SCMs get scm_count * confounded_fraction (rounded down);
  /// the remainder are unconfounded.
  double confounded_fraction = 0.5;
  double edge_prob = 0.5;
  double confounder_child_prob = 0.5;
  std::vector<FunctionClass> function_classes{FunctionClass::linear(), FunctionClass::interaction()};
  DistributionSpec exo_spec = DistributionSpec::gauss(0.0, 1.0);
  std::vector<DiscoveryAlgorithm> algorithms{DiscoveryAlgorithm::corr_threshold};
  double corr_threshold = 0.5;

  void validate() const;
};

struct UseCaseRow {
  Regime regime;
  DiscoveryAlgorithm algorithm;
  double f1_mean = 0.0;
  double f1_sd = 0.0;
  double tpr_mean = 0.0;
  double tpr_sd = 0.0;
  std::size_t n_scms = 0;
};

/// Generates unique confounded and unconfounded graphs, builds one SCM per
/// graph, samples each, runs every algorithm and aggregates F1/TPR per
/// regime and algorithm. Ground truth is the endogenous subgraph of each
/// SCM's effective graph. Rows are ordered confounded before unconfounded,
/// then by algorithm; regimes without SCMs are omitted.
std::vector<UseCaseRow> run_usecase(const UseCaseConfig& config, Rng& rng);

/// Aligned plain-text rendering of use-case rows.
std::string format_metrics_table(std::span<const UseCaseRow> rows);

}  // namespace causalkit
