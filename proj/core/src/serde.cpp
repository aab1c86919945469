#include "causalkit/serde.hpp"

#include <json.hpp>

#include "causalkit/errors.hpp"

namespace causalkit {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const json& member(const json& object, const std::string& key, const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) throw SchemaError(join(path, key), "missing required member");
  return *it;
}

const json& object_at(const json& value, const std::string& path) {
  if (!value.is_object()) throw SchemaError(path, "expected an object");
  return value;
}

std::string string_at(const json& value, const std::string& path) {
  if (!value.is_string()) throw SchemaError(path, "expected a string");
  return value.get<std::string>();
}

void only_keys(const json& object, std::initializer_list<std::string_view> allowed, const std::string& path) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw SchemaError(join(path, key), "unexpected member");
  }
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

std::string variable_name(const std::string& name, const std::string& path) {
  if (!is_identifier(name)) throw SchemaError(path, "'" + name + "' is not a valid variable name");
  return name;
}

Expr expression_at(const json& value, const std::string& path) {
  const auto source = string_at(value, path);
  try {
    return parse(source);
  } catch (const ParseError& e) {
    throw SchemaError(path, e.what());
  }
}

json distribution_to_json(const DistributionSpec& spec) {
  json params = json::object();
  for (const auto& [name, value] : spec.params()) params[name] = value;
  return json{{"dist", std::string(to_string(spec.kind()))}, {"params", params}};
}

DistributionSpec distribution_from_json(const json& value, const std::string& path) {
  object_at(value, path);
  only_keys(value, {"dist", "params"}, path);
  const auto kind_path = join(path, "dist");
  DistributionKind kind{};
  try {
    kind = distribution_kind_from_string(string_at(member(value, "dist", path), kind_path));
  } catch (const InvalidParams& e) {
    throw SchemaError(kind_path, e.what());
  }
  const auto params_path = join(path, "params");
  const auto& params_json = object_at(member(value, "params", path), params_path);
  std::map<std::string, double> params;
  for (const auto& [name, param] : params_json.items()) {
    if (!param.is_number()) throw SchemaError(join(params_path, name), "expected a number");
    params[name] = param.get<double>();
  }
  try {
    return DistributionSpec(kind, std::move(params));
  } catch (const InvalidParams& e) {
    throw SchemaError(params_path, e.what());
  }
}

void csv_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  out += '\n';
}

json sample_to_json(const Sample& sample) {
  json out = json::object();
  for (const auto& [name, value] : sample.endogenous) out[name] = value;
  for (const auto& [name, value] : sample.exogenous) out[name] = value;
  return out;
}

ordered_json row_to_json(const UseCaseRow& row) {
  ordered_json out;
  out["regime"] = std::string(to_string(row.regime));
  out["algorithm"] = std::string(to_string(row.algorithm));
  out["f1_mean"] = row.f1_mean;
  out["f1_sd"] = row.f1_sd;
  out["tpr_mean"] = row.tpr_mean;
  out["tpr_sd"] = row.tpr_sd;
  out["n_scms"] = row.n_scms;
  return out;
}

}  // namespace

std::string write_scm(const ScmModel& model, std::string_view metadata_json) {
  json doc = json::object();
  doc["format_version"] = kScmFormatVersion;
  json endogenous = json::object();
  for (const auto& [name, equation] : model.original_equations()) endogenous[name] = {{"expr", print(equation)}};
  doc["endogenous"] = std::move(endogenous);
  json exogenous = json::object();
  for (const auto& [name, spec] : model.exogenous()) exogenous[name] = distribution_to_json(spec);
  doc["exogenous"] = std::move(exogenous);
  if (!model.active_interventions().empty()) {
    json interventions = json::object();
    for (const auto& [name, equation] : model.active_interventions()) interventions[name] = {{"expr", print(equation)}};
    doc["interventions"] = std::move(interventions);
  }
  if (!metadata_json.empty()) {
    try {
      doc["metadata"] = json::parse(metadata_json);
    } catch (const json::parse_error& e) {
      throw SchemaError("metadata", std::string("invalid JSON: ") + e.what());
    }
  }
  return doc.dump(2) + "\n";
}

ScmDocument read_scm_document(std::string_view text) {
  const json doc = parse_json(text);
  object_at(doc, "");
  only_keys(doc, {"format_version", "endogenous", "exogenous", "interventions", "metadata"}, "");

  const auto& version = member(doc, "format_version", "");
  if (!version.is_number_integer() || version.get<int>() != kScmFormatVersion)
    throw SchemaError("format_version", "unsupported format version (expected " + std::to_string(kScmFormatVersion) + ")");

  std::map<std::string, DistributionSpec> exogenous;
  const auto& exo_json = object_at(member(doc, "exogenous", ""), "exogenous");
  for (const auto& [name, value] : exo_json.items()) {
    const auto path = "exogenous." + name;
    exogenous.emplace(variable_name(name, path), distribution_from_json(value, path));
  }

  std::map<std::string, Expr> endogenous;
  const auto& endo_json = object_at(member(doc, "endogenous", ""), "endogenous");
  for (const auto& [name, value] : endo_json.items()) {
    const auto path = "endogenous." + name;
    variable_name(name, path);
    if (exogenous.count(name)) throw SchemaError(path, "name is also declared as exogenous");
    object_at(value, path);
    only_keys(value, {"expr"}, path);
    endogenous.emplace(name, expression_at(member(value, "expr", path), path + ".expr"));
  }

  const auto declared = [&](const std::string& ref) { return exogenous.count(ref) || endogenous.count(ref); };
  for (const auto& [name, equation] : endogenous) {
    for (const auto& ref : free_variables(equation)) {
      if (!declared(ref)) throw SchemaError("endogenous." + name + ".expr", "references undeclared variable '" + ref + "'");
    }
  }

  ScmDocument out{ScmModel::from_parts(std::move(exogenous), std::move(endogenous)), {}};

  if (const auto it = doc.find("interventions"); it != doc.end()) {
    object_at(*it, "interventions");
    std::vector<Intervention> interventions;
    for (const auto& [name, value] : it->items()) {
      const auto path = "interventions." + name;
      if (!out.model.is_endogenous(name)) throw SchemaError(path, "target is not an endogenous variable");
      object_at(value, path);
      only_keys(value, {"expr"}, path);
      auto equation = expression_at(member(value, "expr", path), path + ".expr");
      for (const auto& ref : free_variables(equation)) {
        if (!out.model.has_variable(ref))
          throw SchemaError(path + ".expr", "references undeclared variable '" + ref + "'");
      }
      interventions.push_back({name, std::move(equation)});
    }
    out.model.do_interventions(interventions);
  }

  if (const auto it = doc.find("metadata"); it != doc.end()) out.metadata_json = it->dump();
  return out;
}

ScmModel read_scm(std::string_view text) { return read_scm_document(text).model; }

std::string write_graph(const CausalGraph& graph) {
  ordered_json doc;
  doc["endo"] = graph.endo_nodes;
  doc["exo"] = graph.exo_nodes;
  ordered_json edges = ordered_json::array();
  for (const auto& [from, to] : graph.edges) edges.push_back({from, to});
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

CausalGraph read_graph(std::string_view text) {
  const json doc = parse_json(text);
  object_at(doc, "");
  only_keys(doc, {"endo", "exo", "edges"}, "");
  CausalGraph graph;
  for (const char* key : {"endo", "exo"}) {
    const auto& list = member(doc, key, "");
    if (!list.is_array()) throw SchemaError(key, "expected an array");
    auto& target = std::string_view(key) == "endo" ? graph.endo_nodes : graph.exo_nodes;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto path = std::string(key) + "." + std::to_string(i);
      target.push_back(variable_name(string_at(list[i], path), path));
    }
  }
  const auto& edges = member(doc, "edges", "");
  if (!edges.is_array()) throw SchemaError("edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto path = "edges." + std::to_string(i);
    if (!edges[i].is_array() || edges[i].size() != 2) throw SchemaError(path, "expected a [from, to] pair");
    graph.edges.emplace(string_at(edges[i][0], path + ".0"), string_at(edges[i][1], path + ".1"));
  }
  try {
    graph.validate(false);
  } catch (const InvalidConfig& e) {
    throw SchemaError("", e.what());
  }
  return graph;
}

std::string write_samples_csv(const ScmModel& model, std::span<const Sample> samples) {
  const auto endo = model.endogenous_names();
  const auto exo = model.exogenous_names();
  std::vector<std::string> header(endo);
  header.insert(header.end(), exo.begin(), exo.end());
  std::string out;
  csv_row(out, header);
  std::vector<std::string> cells;
  for (const auto& sample : samples) {
    if (sample.endogenous.size() != endo.size() || sample.exogenous.size() != exo.size())
      throw HeterogeneousSamples("sample variables differ from the model's variables");
    cells.clear();
    for (const auto& name : endo) {
      const auto it = sample.endogenous.find(name);
      if (it == sample.endogenous.end()) throw HeterogeneousSamples("sample lacks variable '" + name + "'");
      cells.push_back(format_double(it->second));
    }
    for (const auto& name : exo) {
      const auto it = sample.exogenous.find(name);
      if (it == sample.exogenous.end()) throw HeterogeneousSamples("sample lacks variable '" + name + "'");
      cells.push_back(format_double(it->second));
    }
    csv_row(out, cells);
  }
  return out;
}

std::string write_samples_csv(std::span<const Sample> samples) {
  if (samples.empty()) throw HeterogeneousSamples("cannot infer CSV columns from an empty sample list");
  std::map<std::string, DistributionSpec> exogenous;
  std::map<std::string, Expr> endogenous;
  for (const auto& [name, value] : samples.front().exogenous) exogenous.emplace(name, DistributionSpec::uniform(0, 0));
  for (const auto& [name, value] : samples.front().endogenous) endogenous.emplace(name, Expr::number(0));
  return write_samples_csv(ScmModel::from_parts(std::move(exogenous), std::move(endogenous)), samples);
}

std::vector<Intervention> read_interventions(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_array()) throw SchemaError("", "expected an array of interventions");
  std::vector<Intervention> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto path = std::to_string(i);
    object_at(doc[i], path);
    only_keys(doc[i], {"target", "expr"}, path);
    auto target = variable_name(string_at(member(doc[i], "target", path), path + ".target"), path + ".target");
    out.push_back({std::move(target), expression_at(member(doc[i], "expr", path), path + ".expr")});
  }
  return out;
}

std::string write_interventions(std::span<const Intervention> interventions) {
  ordered_json doc = ordered_json::array();
  for (const auto& intervention : interventions) {
    ordered_json entry;
    entry["target"] = intervention.target;
    entry["expr"] = print(intervention.equation);
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

std::string write_episode_record(const EpisodeRecord& record) {
  ordered_json line;
  line["episode"] = record.episode;
  line["t"] = record.t;
  line["action_indices"] = std::vector<std::size_t>(record.action.indices.begin(), record.action.indices.end());
  line["observation"] = record.result.observation;
  line["reward"] = record.result.reward;
  line["terminated"] = record.result.terminated;
  line["truncated"] = record.result.truncated;
  line["sample"] = sample_to_json(record.result.info);
  return line.dump() + "\n";
}

std::string write_metrics_json(const StructureMetrics& metrics) {
  ordered_json doc;
  doc["tp"] = metrics.tp;
  doc["fp"] = metrics.fp;
  doc["fn"] = metrics.fn;
  doc["tn"] = metrics.tn;
  doc["f1"] = metrics.f1;
  doc["tpr"] = metrics.tpr;
  return doc.dump(2) + "\n";
}

std::string write_metrics_json(std::span<const UseCaseRow> rows) {
  ordered_json doc = ordered_json::array();
  for (const auto& row : rows) doc.push_back(row_to_json(row));
  return doc.dump(2) + "\n";
}

}  // namespace causalkit
