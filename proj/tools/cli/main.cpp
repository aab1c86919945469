// causalkit command-line tool: graph/SCM generation, sampling, environment
// rollouts and structure evaluation. Every random command takes --seed.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "causalkit/causalkit.hpp"
#include "output.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace causalkit::cli {
namespace {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kValidation = 3, kExhausted = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string numbered(std::string_view stem, std::size_t index, std::string_view extension) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%03zu", index);
  return std::string(stem) + buf + std::string(extension);
}

fs::path sidecar_manifest(const fs::path& out) {
  auto p = out;
  p += ".manifest.json";
  return p;
}

std::vector<FunctionClass> parse_functions(const std::string& list) {
  std::vector<FunctionClass> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    switch (function_kind_from_string(item)) {
      case FunctionKind::linear: out.push_back(FunctionClass::linear()); break;
      case FunctionKind::interaction: out.push_back(FunctionClass::interaction()); break;
    }
  }
  if (out.empty()) throw UsageError("--functions needs at least one class");
  return out;
}

ordered_json graph_config_json(const GraphGenConfig& g) {
  ordered_json j;
  j["n_endo"] = g.n_endo;
  j["n_exo"] = g.n_exo;
  j["confounders"] = g.allow_exo_confounders;
  j["edge_prob"] = g.edge_prob;
  j["confounder_child_prob"] = g.confounder_child_prob;
  return j;
}

// Flags shared by the two generation commands.
struct GraphFlags {
  std::size_t n_endo = 4;
  std::size_t n_exo = 4;
  bool confounders = false;
  double edge_prob = 0.5;
  double confounder_child_prob = 0.5;

  void add_to(CLI::App& app) {
    app.add_option("--n-endo", n_endo, "Endogenous variables per graph")->capture_default_str();
    app.add_option("--n-exo", n_exo, "Exogenous variables per graph")->capture_default_str();
    app.add_flag("--confounders", confounders, "Allow exogenous variables with several children");
    app.add_option("--edge-prob", edge_prob, "Probability of each forward endogenous edge")->capture_default_str();
    app.add_option("--confounder-child-prob", confounder_child_prob, "Per-child probability for exogenous nodes")
        ->capture_default_str();
  }
  GraphGenConfig config() const { return {n_endo, n_exo, confounders, edge_prob, confounder_child_prob}; }
};

// ---- gen-graphs ----

struct GenGraphsOptions {
  GraphFlags graph;
  std::size_t count = 30;
  std::optional<std::size_t> max_retries;
  std::uint64_t seed = 0;
  fs::path out;
};

int run_gen_graphs(const GenGraphsOptions& o) {
  const auto config = o.graph.config();
  Rng rng(o.seed);
  const auto graphs = generate_unique_graph_set(config, o.count, rng, o.max_retries);
  OutputSet outputs(o.out / "manifest.json");
  for (std::size_t i = 0; i < graphs.size(); ++i) outputs.write(o.out / numbered("graph", i, ".graph.json"), write_graph(graphs[i]));
  ordered_json cfg = graph_config_json(config);
  cfg["count"] = o.count;
  if (o.max_retries) cfg["max_retries"] = *o.max_retries;
  outputs.write_manifest("gen-graphs", cfg, o.seed);
  std::cerr << "wrote " << graphs.size() << " graphs to " << o.out.string() << "\n";
  return kOk;
}

// ---- gen-scms ----

struct GenScmsOptions {
  GraphFlags graph;
  std::optional<fs::path> from_graphs;
  std::size_t count = 5;
  bool unique = false;
  std::string functions = "linear";
  std::string exo_dist = "gauss:0,1";
  std::uint64_t seed = 0;
  fs::path out;
};

std::vector<fs::path> graph_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw UsageError("--from-graphs: not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > 11 && name.ends_with(".graph.json")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

int run_gen_scms(const GenScmsOptions& o) {
  ScmGenConfig config;
  config.graph_config = o.graph.config();
  config.function_classes = parse_functions(o.functions);
  config.exo_spec = DistributionSpec::parse(o.exo_dist);
  config.unique_graphs = o.unique;

  ordered_json cfg;
  std::vector<ScmModel> models;
  std::vector<std::string> sources;
  Rng rng(o.seed);
  if (o.from_graphs) {
    config.validate();
    for (const auto& file : graph_files(*o.from_graphs)) {
      const auto graph = read_graph(read_file(file));
      graph.validate();
      models.push_back(create_from_graph(graph, config, rng));
      sources.push_back(file.filename().string());
    }
    cfg["from_graphs"] = sources;
  } else {
    models = create_random(o.count, config, rng);
    cfg = graph_config_json(config.graph_config);
    cfg["count"] = o.count;
    cfg["unique"] = o.unique;
  }
  cfg["functions"] = o.functions;
  cfg["exo_dist"] = o.exo_dist;

  OutputSet outputs(o.out / "manifest.json");
  for (std::size_t i = 0; i < models.size(); ++i) {
    ordered_json meta;
    meta["seed"] = o.seed;
    meta["index"] = i;
    if (!sources.empty()) meta["graph"] = sources[i];
    outputs.write(o.out / numbered("scm", i, ".scm.json"), write_scm(models[i], meta.dump()));
  }
  outputs.write_manifest("gen-scms", cfg, o.seed);
  std::cerr << "wrote " << models.size() << " SCMs to " << o.out.string() << "\n";
  return kOk;
}

// ---- sample ----

struct SampleOptions {
  fs::path scm;
  std::size_t n = 100;
  std::vector<std::string> interventions;
  std::uint64_t seed = 0;
  std::optional<fs::path> out;
};

int run_sample(const SampleOptions& o) {
  auto model = read_scm(read_file(o.scm));
  std::vector<Intervention> interventions;
  for (const auto& text : o.interventions) interventions.push_back(parse_intervention(text));
  model.do_interventions(interventions);
  Rng rng(o.seed);
  const auto samples = model.sample_n(o.n, rng);
  const auto csv = write_samples_csv(model, samples);
  if (!o.out) {
    std::cout << csv;
    return kOk;
  }
  OutputSet outputs(sidecar_manifest(*o.out));
  outputs.write(*o.out, csv);
  ordered_json cfg;
  cfg["scm"] = o.scm.filename().string();
  cfg["scm_sha256"] = sha256_hex(read_file(o.scm));
  cfg["n"] = o.n;
  cfg["do"] = o.interventions;
  outputs.write_manifest("sample", cfg, o.seed);
  return kOk;
}

// ---- env-run ----

struct EnvRunOptions {
  fs::path scm;
  std::optional<fs::path> interventions;
  std::size_t episodes = 1;
  std::size_t horizon = 10;
  std::string policy = "random";
  std::uint64_t seed = 0;
  std::optional<fs::path> out;
};

int run_env(const EnvRunOptions& o) {
  EnvConfig config;
  config.model = read_scm(read_file(o.scm));
  if (o.interventions) config.possible_interventions = read_interventions(read_file(*o.interventions));
  config.horizon = o.horizon;
  Rng master(o.seed);
  config.seed = master.next_u64();
  Rng policy_rng(master.next_u64());
  ScmEnvironment env(std::move(config));

  std::string log;
  for (std::size_t episode = 0; episode < o.episodes; ++episode) {
    env.reset();
    for (std::size_t t = 0;; ++t) {
      const Action action = o.policy == "random" ? env.random_action(policy_rng) : Action{};
      const auto result = env.step(action);
      log += write_episode_record({episode, t, action, result});
      if (result.terminated || result.truncated) break;
    }
  }
  if (!o.out) {
    std::cout << log;
    return kOk;
  }
  OutputSet outputs(sidecar_manifest(*o.out));
  outputs.write(*o.out, log);
  ordered_json cfg;
  cfg["scm"] = o.scm.filename().string();
  cfg["scm_sha256"] = sha256_hex(read_file(o.scm));
  if (o.interventions) cfg["interventions_sha256"] = sha256_hex(read_file(*o.interventions));
  cfg["episodes"] = o.episodes;
  cfg["horizon"] = o.horizon;
  cfg["policy"] = o.policy;
  outputs.write_manifest("env-run", cfg, o.seed);
  return kOk;
}

// ---- eval ----

// Accepts either a graph document or an SCM document (its effective graph).
AdjacencyMatrix load_structure(const fs::path& path) {
  const auto text = read_file(path);
  if (path.string().ends_with(".scm.json")) return AdjacencyMatrix::from_graph(read_scm(text).effective_graph());
  return AdjacencyMatrix::from_graph(read_graph(text));
}

int run_eval(const fs::path& pred, const fs::path& truth) {
  std::cout << write_metrics_json(compare_structures(load_structure(pred), load_structure(truth)));
  return kOk;
}

// ---- usecase ----

struct UseCaseOptions {
  UseCaseConfig config;
  std::string algorithms = "corr_threshold";
  std::uint64_t seed = 0;
  std::optional<fs::path> out;
};

int run_usecase_command(UseCaseOptions o) {
  o.config.algorithms.clear();
  std::stringstream in(o.algorithms);
  std::string item;
  while (std::getline(in, item, ',')) o.config.algorithms.push_back(discovery_algorithm_from_string(item));
  Rng rng(o.seed);
  const auto rows = run_usecase(o.config, rng);
  std::cout << format_metrics_table(rows);
  if (o.out) {
    const auto& c = o.config;
    OutputSet outputs(sidecar_manifest(*o.out));
    outputs.write(*o.out, write_metrics_json(rows));
    ordered_json cfg;
    cfg["n_endo"] = c.n_endo;
    cfg["n_exo"] = c.n_exo;
    cfg["scm_count"] = c.scm_count;
    cfg["samples_per_scm"] = c.samples_per_scm;
    cfg["confounded_fraction"] = c.confounded_fraction;
    cfg["edge_prob"] = c.edge_prob;
    cfg["confounder_child_prob"] = c.confounder_child_prob;
    cfg["algorithms"] = o.algorithms;
    cfg["threshold"] = c.corr_threshold;
    outputs.write_manifest("usecase", cfg, o.seed);
  }
  return kOk;
}

int report(const char* kind, const std::exception& e, int code) {
  std::cerr << "causalkit: " << kind << ": " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate, sample and evaluate structural causal models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CAUSALKIT_TOOL_VERSION);

  std::function<int()> action;

  GenGraphsOptions gg;
  auto* gen_graphs = app.add_subcommand("gen-graphs", "Write a set of unique random causal graphs");
  gg.graph.add_to(*gen_graphs);
  gen_graphs->add_option("--count", gg.count, "Number of graphs")->capture_default_str();
  gen_graphs->add_option("--max-retries", gg.max_retries, "Consecutive duplicate draws tolerated");
  gen_graphs->add_option("--seed", gg.seed, "Random seed")->required();
  gen_graphs->add_option("--out", gg.out, "Output directory")->required();
  gen_graphs->callback([&] { action = [&] { return run_gen_graphs(gg); }; });

  GenScmsOptions gs;
  auto* gen_scms = app.add_subcommand("gen-scms", "Write random SCMs, optionally over existing graphs");
  gs.graph.add_to(*gen_scms);
  gen_scms->add_option("--from-graphs", gs.from_graphs, "Directory of .graph.json files");
  gen_scms->add_option("--count", gs.count, "Number of SCMs without --from-graphs")->capture_default_str();
  gen_scms->add_flag("--unique", gs.unique, "Require pairwise distinct graphs");
  gen_scms->add_option("--functions", gs.functions, "Comma list of linear, interaction")->capture_default_str();
  gen_scms->add_option("--exo-dist", gs.exo_dist, "Exogenous distribution, kind:p1,p2")->capture_default_str();
  gen_scms->add_option("--seed", gs.seed, "Random seed")->required();
  gen_scms->add_option("--out", gs.out, "Output directory")->required();
  gen_scms->callback([&] { action = [&] { return run_gen_scms(gs); }; });

  SampleOptions so;
  auto* sample = app.add_subcommand("sample", "Draw samples from an SCM, optionally under interventions");
  sample->add_option("--scm", so.scm, "SCM document")->required()->check(CLI::ExistingFile);
  sample->add_option("--n", so.n, "Number of samples")->capture_default_str();
  sample->add_option("--do", so.interventions, "Intervention Name=EXPR (repeatable)");
  sample->add_option("--seed", so.seed, "Random seed")->required();
  sample->add_option("--out", so.out, "CSV output (stdout if omitted)");
  sample->callback([&] { action = [&] { return run_sample(so); }; });

  EnvRunOptions eo;
  auto* env_run = app.add_subcommand("env-run", "Roll out episodes of an SCM environment");
  env_run->add_option("--scm", eo.scm, "SCM document")->required()->check(CLI::ExistingFile);
  env_run->add_option("--interventions", eo.interventions, "JSON list of possible interventions")
      ->check(CLI::ExistingFile);
  env_run->add_option("--episodes", eo.episodes, "Number of episodes")->capture_default_str();
  env_run->add_option("--horizon", eo.horizon, "Steps per episode")->capture_default_str()->check(CLI::PositiveNumber);
  env_run->add_option("--policy", eo.policy, "random or none")
      ->capture_default_str()
      ->check(CLI::IsMember({"random", "none"}));
  env_run->add_option("--seed", eo.seed, "Random seed")->required();
  env_run->add_option("--out", eo.out, "JSONL output (stdout if omitted)");
  env_run->callback([&] { action = [&] { return run_env(eo); }; });

  fs::path pred;
  fs::path truth;
  auto* eval = app.add_subcommand("eval", "Compare a predicted structure against the truth");
  eval->add_option("--pred", pred, "Predicted .graph.json or .scm.json")->required()->check(CLI::ExistingFile);
  eval->add_option("--truth", truth, "True .graph.json or .scm.json")->required()->check(CLI::ExistingFile);
  eval->callback([&] { action = [&] { return run_eval(pred, truth); }; });

  UseCaseOptions uo;
  auto* usecase = app.add_subcommand("usecase", "Generate SCMs, sample them and score structure discovery");
  usecase->add_option("--n-endo", uo.config.n_endo)->capture_default_str();
  usecase->add_option("--n-exo", uo.config.n_exo)->capture_default_str();
  usecase->add_option("--scm-count", uo.config.scm_count)->capture_default_str();
  usecase->add_option("--samples", uo.config.samples_per_scm)->capture_default_str();
  usecase->add_option("--confounded-fraction", uo.config.confounded_fraction)->capture_default_str();
  usecase->add_option("--edge-prob", uo.config.edge_prob)->capture_default_str();
  usecase->add_option("--algorithms", uo.algorithms, "Comma list of corr_threshold, oracle")->capture_default_str();
  usecase->add_option("--threshold", uo.config.corr_threshold, "corr_threshold cut-off")->capture_default_str();
  usecase->add_option("--seed", uo.seed, "Random seed")->required();
  usecase->add_option("--out", uo.out, "Metrics JSON output");
  usecase->callback([&] { action = [&] { return run_usecase_command(uo); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    return report("usage", e, kUsage);
  } catch (const ExhaustedRetries& e) {
    return report("exhausted", e, kExhausted);
  } catch (const Error& e) {
    return report("invalid", e, kValidation);
  } catch (const std::exception& e) {
    return report("error", e, kFailure);
  }
}

}  // namespace causalkit::cli

int main(int argc, char** argv) { return causalkit::cli::main(argc, argv); }
