#include "causalkit/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "causalkit/errors.hpp"

namespace causalkit {

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

// Sample standard deviation; zero when fewer than two values.
MeanSd summarize(const std::vector<double>& values) {
  MeanSd out;
  if (values.empty()) return out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() < 2) return out;
  double squares = 0.0;
  for (double v : values) squares += (v - out.mean) * (v - out.mean);
  out.sd = std::sqrt(squares / static_cast<double>(values.size() - 1));
  return out;
}

}  // namespace

AdjacencyMatrix::AdjacencyMatrix(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  if (std::adjacent_find(names_.begin(), names_.end()) != names_.end())
    throw DimensionMismatch("adjacency matrix has duplicate node names");
  cells_.assign(names_.size() * names_.size(), 0);
}

AdjacencyMatrix AdjacencyMatrix::from_graph(const CausalGraph& graph) {
  AdjacencyMatrix out(graph.endo_nodes);
  for (const auto& [from, to] : graph.endogenous_subgraph().edges) out.set(from, to);
  return out;
}

void AdjacencyMatrix::set(std::size_t from, std::size_t to, bool value) {
  if (from >= size() || to >= size()) throw DimensionMismatch("adjacency index out of range");
  if (from == to && value) throw DimensionMismatch("adjacency matrix must have a zero diagonal");
  cells_[from * size() + to] = value ? 1 : 0;
}

void AdjacencyMatrix::set(const std::string& from, const std::string& to, bool value) {
  set(index_of(from), index_of(to), value);
}

std::size_t AdjacencyMatrix::index_of(const std::string& name) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) throw DimensionMismatch("unknown node '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t AdjacencyMatrix::edge_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

StructureMetrics compare_structures(const AdjacencyMatrix& predicted, const AdjacencyMatrix& truth) {
  if (predicted.names() != truth.names())
    throw DimensionMismatch("predicted and true structures cover different nodes (" +
                            std::to_string(predicted.size()) + " vs " + std::to_string(truth.size()) + ")");
  StructureMetrics m;
  const std::size_t n = truth.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool p = predicted.at(i, j);
      const bool t = truth.at(i, j);
      if (p && t) ++m.tp;
      else if (p) ++m.fp;
      else if (t) ++m.fn;
      else ++m.tn;
    }
  }
  const auto denominator_f1 = 2 * m.tp + m.fp + m.fn;
  m.f1 = denominator_f1 == 0 ? 0.0 : 2.0 * static_cast<double>(m.tp) / static_cast<double>(denominator_f1);
  const auto positives = m.tp + m.fn;
  m.tpr = positives == 0 ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(positives);
  return m;
}

SampleTable SampleTable::endogenous(std::span<const Sample> samples) {
  SampleTable table;
  if (samples.empty()) return table;
  for (const auto& [name, value] : samples.front().endogenous) table.columns.push_back(name);
  table.values.assign(table.columns.size(), std::vector<double>(samples.size()));
  for (std::size_t row = 0; row < samples.size(); ++row) {
    if (samples[row].endogenous.size() != table.columns.size())
      throw HeterogeneousSamples("samples have different endogenous variables");
    std::size_t column = 0;
    for (const auto& [name, value] : samples[row].endogenous) {
      if (name != table.columns[column]) throw HeterogeneousSamples("samples have different endogenous variables");
      table.values[column++][row] = value;
    }
  }
  return table;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("correlation of columns with different lengths");
  const double n = static_cast<double>(x.size());
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  // A constant column carries no linear association.
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

AdjacencyMatrix corr_threshold_discovery(const SampleTable& data, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw InvalidConfig("correlation threshold must lie in (0, 1)");
  if (data.rows() < 2) throw InsufficientData("correlation discovery needs at least two rows");
  if (data.values.size() != data.columns.size()) throw DimensionMismatch("column names and data disagree");
  AdjacencyMatrix out(data.columns);
  // Matrix order is lexicographic, so i < j in matrix order is name_i < name_j.
  std::vector<std::size_t> column_of(out.size());
  for (std::size_t c = 0; c < data.columns.size(); ++c) {
    const auto pos = std::lower_bound(out.names().begin(), out.names().end(), data.columns[c]) - out.names().begin();
    column_of[static_cast<std::size_t>(pos)] = c;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (std::fabs(pearson(data.values[column_of[i]], data.values[column_of[j]])) > threshold) out.set(i, j);
    }
  }
  return out;
}

std::string_view to_string(Regime regime) noexcept {
  return regime == Regime::confounded ? "confounded" : "unconfounded";
}

std::string_view to_string(DiscoveryAlgorithm algorithm) noexcept {
  return algorithm == DiscoveryAlgorithm::oracle ? "oracle" : "corr_threshold";
}

DiscoveryAlgorithm discovery_algorithm_from_string(std::string_view name) {
  if (name == "corr_threshold") return DiscoveryAlgorithm::corr_threshold;
  if (name == "oracle") return DiscoveryAlgorithm::oracle;
  throw InvalidConfig("unknown discovery algorithm '" + std::string(name) + "'");
}

void UseCaseConfig::validate() const {
  if (scm_count < 1) throw InvalidConfig("scm_count must be at least 1");
  if (samples_per_scm < 2) throw InvalidConfig("samples_per_scm must be at least 2");
  if (!(confounded_fraction >= 0.0 && confounded_fraction <= 1.0))
    throw InvalidConfig("confounded_fraction must lie in [0, 1]");
  if (algorithms.empty()) throw InvalidConfig("at least one discovery algorithm is required");
  if (!(corr_threshold > 0.0 && corr_threshold < 1.0)) throw InvalidConfig("correlation threshold must lie in (0, 1)");
}

std::vector<UseCaseRow> run_usecase(const UseCaseConfig& config, Rng& rng) {
  config.validate();
  auto [graph_rng, scm_rng] = rng.split();
  const auto confounded_count =
      static_cast<std::size_t>(std::floor(static_cast<double>(config.scm_count) * config.confounded_fraction));
  const std::size_t counts[] = {confounded_count, config.scm_count - confounded_count};
  const Regime regimes[] = {Regime::confounded, Regime::unconfounded};

  ScmGenConfig gen;
  gen.function_classes = config.function_classes;
  gen.exo_spec = config.exo_spec;

  std::vector<UseCaseRow> rows;
  for (std::size_t r = 0; r < 2; ++r) {
    if (counts[r] == 0) continue;
    GraphGenConfig graph_config{config.n_endo, config.n_exo, regimes[r] == Regime::confounded, config.edge_prob,
                                config.confounder_child_prob};
    gen.graph_config = graph_config;
    GraphFilter accept;
    if (regimes[r] == Regime::confounded) accept = [](const CausalGraph& g) { return is_confounded(g); };
    const auto graphs = generate_unique_graph_set(graph_config, counts[r], graph_rng, std::nullopt, accept);

    std::vector<std::vector<double>> f1(config.algorithms.size());
    std::vector<std::vector<double>> tpr(config.algorithms.size());
    const Rng regime_base(scm_rng.next_u64());
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      Rng stream = regime_base.derive("scm" + std::to_string(i));
      const ScmModel model = create_from_graph(graphs[i], gen, stream);
      const auto samples = model.sample_n(config.samples_per_scm, stream);
      const auto truth = AdjacencyMatrix::from_graph(model.effective_graph());
      const auto table = SampleTable::endogenous(samples);
      for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
        const auto predicted = config.algorithms[a] == DiscoveryAlgorithm::oracle
                                   ? truth
                                   : corr_threshold_discovery(table, config.corr_threshold);
        const auto metrics = compare_structures(predicted, truth);
        f1[a].push_back(metrics.f1);
        tpr[a].push_back(metrics.tpr);
      }
    }
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      const auto f1_stats = summarize(f1[a]);
      const auto tpr_stats = summarize(tpr[a]);
      rows.push_back({regimes[r], config.algorithms[a], f1_stats.mean, f1_stats.sd, tpr_stats.mean, tpr_stats.sd,
                      graphs.size()});
    }
  }
  return rows;
}

std::string format_metrics_table(std::span<const UseCaseRow> rows) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-14s %-16s %8s %8s %8s %8s %6s\n", "regime", "algorithm", "f1_mean", "f1_sd",
                "tpr_mean", "tpr_sd", "n_scms");
  out += line;
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%-14s %-16s %8.4f %8.4f %8.4f %8.4f %6zu\n",
                  std::string(to_string(row.regime)).c_str(), std::string(to_string(row.algorithm)).c_str(),
                  row.f1_mean, row.f1_sd, row.tpr_mean, row.tpr_sd, row.n_scms);
    out += line;
  }
  return out;
}

}  // namespace causalkit
