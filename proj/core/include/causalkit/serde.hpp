#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causalkit/environment.hpp"
#include "causalkit/evaluation.hpp"
#include "causalkit/graph.hpp"
#include "causalkit/scm.hpp"

namespace causalkit {

/// Version written into every SCM document; readers reject other values.
inline constexpr int kScmFormatVersion = 1;

struct ScmDocument {
  ScmModel model;
  /// Compact JSON text of the free-form `metadata` member, empty if absent.
  std::string metadata_json;
};

/// Canonical SCM JSON: sorted keys, two-space indentation, shortest
/// round-trip numbers, trailing newline. `metadata_json`, when non-empty,
/// must be valid JSON and is stored under `metadata`. Active interventions
/// are stored under `interventions` and reapplied on read.
std::string write_scm(const ScmModel& model, std::string_view metadata_json = {});

/// Throws SchemaError (with a dotted path) for malformed documents and
/// CycleError for documents that encode a cyclic model.
ScmDocument read_scm_document(std::string_view text);
ScmModel read_scm(std::string_view text);

/// `{"endo": [...], "exo": [...], "edges": [[from, to], ...]}` with edges
/// in lexicographic order.
std::string write_graph(const CausalGraph& graph);
CausalGraph read_graph(std::string_view text);

/// Header: endogenous names then exogenous names, each sorted. One row per
/// sample, LF line endings. Throws HeterogeneousSamples if a sample does
/// not cover exactly the model's variables.
std::string write_samples_csv(const ScmModel& model, std::span<const Sample> samples);
/// Columns taken from the first sample; `samples` must not be empty.
std::string write_samples_csv(std::span<const Sample> samples);

/// Possible-intervention list: `[{"target": "A", "expr": "5"}, ...]`.
std::vector<Intervention> read_interventions(std::string_view text);
std::string write_interventions(std::span<const Intervention> interventions);

struct EpisodeRecord {
  std::size_t episode = 0;
  std::size_t t = 0;
  Action action;
  StepResult result;
};

/// One JSON line (with trailing newline) of an episode log.
std::string write_episode_record(const EpisodeRecord& record);

std::string write_metrics_json(const StructureMetrics& metrics);
std::string write_metrics_json(std::span<const UseCaseRow> rows);

}  // namespace causalkit
