// Runs the command-line tool end to end.

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "causalkit/causalkit.hpp"

namespace fs = std::filesystem;

namespace causalkit {
namespace {

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("causalkit_cli_" + std::to_string(::getpid()) + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Exit status of the tool; stdout goes to dir_/stdout.txt.
  int run(const std::string& args) const {
    const std::string cmd = std::string("\"") + CAUSALKIT_CLI_PATH + "\" " + args + " > \"" + (dir_ / "stdout.txt").string() +
                            "\" 2> \"" + (dir_ / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const fs::path& path) const {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  std::string stdout_text() const { return read(dir_ / "stdout.txt"); }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
    return dir_ / name;
  }

  std::string q(const fs::path& p) const { return "\"" + p.string() + "\""; }

  fs::path dir_;
};

ScmModel worked_example() {
  ScmModel model;
  model.add_exogenous("U", DistributionSpec::uniform_int(3, 8));
  model.add_endogenous("A", parse("U + 5"));
  model.add_endogenous("Effect", parse("A * 2"));
  return model;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST_F(Cli, GenGraphsIsReproducible) {
  const auto a = dir_ / "a";
  const auto b = dir_ / "b";
  ASSERT_EQ(run("gen-graphs --n-endo 4 --n-exo 4 --count 30 --seed 11 --out " + q(a)), 0);
  ASSERT_EQ(run("gen-graphs --n-endo 4 --n-exo 4 --count 30 --seed 11 --out " + q(b)), 0);
  std::size_t files = 0;
  std::set<std::set<Edge>> distinct;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    EXPECT_EQ(read(entry.path()), read(b / name)) << name;
    if (name.string().ends_with(".graph.json")) {
      ++files;
      distinct.insert(read_graph(read(entry.path())).edges);
    }
  }
  EXPECT_EQ(files, 30u);
  EXPECT_EQ(distinct.size(), 30u);

  const auto manifest = nlohmann::json::parse(read(a / "manifest.json"));
  EXPECT_EQ(manifest.at("seed"), 11);
  EXPECT_EQ(manifest.at("outputs").size(), 30u);
  EXPECT_EQ(manifest.at("outputs").at("graph_000.graph.json").get<std::string>().size(), 64u);
  EXPECT_TRUE(manifest.contains("config_sha256"));
}

TEST_F(Cli, GenGraphsSingleAndExhausted) {
  ASSERT_EQ(run("gen-graphs --n-endo 3 --n-exo 1 --count 1 --seed 1 --out " + q(dir_ / "one")), 0);
  EXPECT_TRUE(fs::exists(dir_ / "one" / "graph_000.graph.json"));
  EXPECT_EQ(run("gen-graphs --n-endo 2 --n-exo 0 --count 4 --seed 1 --out " + q(dir_ / "four")), 4);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("gen-graphs --count 3 --out " + q(dir_ / "x")), 2);
  EXPECT_EQ(run("no-such-command"), 2);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, GenScmsFromGraphsKeepsStructure) {
  ASSERT_EQ(run("gen-graphs --n-endo 4 --n-exo 4 --count 5 --confounders --seed 3 --out " + q(dir_ / "g")), 0);
  ASSERT_EQ(run("gen-scms --from-graphs " + q(dir_ / "g") + " --functions linear,interaction --exo-dist gauss:0,1 --seed 4 --out " +
                q(dir_ / "s")),
            0);
  for (int i = 0; i < 5; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "%03d", i);
    const auto graph = read_graph(read(dir_ / "g" / ("graph_" + std::string(name) + ".graph.json")));
    const auto model = read_scm(read(dir_ / "s" / ("scm_" + std::string(name) + ".scm.json")));
    EXPECT_EQ(model.effective_graph(), graph);
  }
}

TEST_F(Cli, GenScmsRandomConfiguration) {
  ASSERT_EQ(run("gen-scms --n-endo 5 --n-exo 4 --count 5 --functions linear --seed 9 --out " + q(dir_ / "a")), 0);
  ASSERT_EQ(run("gen-scms --n-endo 5 --n-exo 4 --count 5 --functions linear --seed 9 --out " + q(dir_ / "b")), 0);
  for (int i = 0; i < 5; ++i) {
    const auto name = "scm_00" + std::to_string(i) + ".scm.json";
    const auto text = read(dir_ / "a" / name);
    EXPECT_EQ(text, read(dir_ / "b" / name));
    EXPECT_EQ(read_scm(text).original_equations().size(), 5u);
  }
  EXPECT_EQ(run("gen-scms --n-endo 1 --n-exo 0 --count 1 --seed 9 --out " + q(dir_ / "c")), 0);
  EXPECT_EQ(run("gen-scms --count 1 --exo-dist cauchy:0,1 --seed 9 --out " + q(dir_ / "d")), 3);
  EXPECT_EQ(run("gen-scms --count 1 --functions quadratic --seed 9 --out " + q(dir_ / "d")), 3);
}

TEST_F(Cli, SampleWithIntervention) {
  const auto scm = write("worked.scm.json", write_scm(worked_example()));
  ASSERT_EQ(run("sample --scm " + q(scm) + " --n 100 --seed 5 --do \"Effect=A+1\" --out " + q(dir_ / "do.csv")), 0);
  const auto rows = lines(read(dir_ / "do.csv"));
  ASSERT_EQ(rows.size(), 101u);
  EXPECT_EQ(rows[0], "A,Effect,U");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double a = 0;
    double effect = 0;
    double u = 0;
    ASSERT_EQ(std::sscanf(rows[i].c_str(), "%lf,%lf,%lf", &a, &effect, &u), 3);
    EXPECT_EQ(effect - a, 1.0);
  }
  EXPECT_TRUE(fs::exists(dir_ / "do.csv.manifest.json"));
}

TEST_F(Cli, SampleObservationalVersusIntervened) {
  const auto scm = write("worked.scm.json", write_scm(worked_example()));
  ASSERT_EQ(run("sample --scm " + q(scm) + " --n 50 --seed 8 --out " + q(dir_ / "obs.csv")), 0);
  ASSERT_EQ(run("sample --scm " + q(scm) + " --n 50 --seed 8 --do \"Effect=A+1\" --out " + q(dir_ / "do.csv")), 0);
  const auto obs = lines(read(dir_ / "obs.csv"));
  const auto intervened = lines(read(dir_ / "do.csv"));
  ASSERT_EQ(obs.size(), intervened.size());
  // Only Effect (the target, which has no descendants) may differ.
  for (std::size_t i = 1; i < obs.size(); ++i) {
    double oa, oe, ou, ia, ie, iu;
    std::sscanf(obs[i].c_str(), "%lf,%lf,%lf", &oa, &oe, &ou);
    std::sscanf(intervened[i].c_str(), "%lf,%lf,%lf", &ia, &ie, &iu);
    EXPECT_EQ(oa, ia);
    EXPECT_EQ(ou, iu);
    EXPECT_NE(oe, ie);
  }
}

TEST_F(Cli, SampleEdgeCases) {
  const auto scm = write("worked.scm.json", write_scm(worked_example()));
  ASSERT_EQ(run("sample --scm " + q(scm) + " --n 0 --seed 1"), 0);
  EXPECT_EQ(stdout_text(), "A,Effect,U\n");
  EXPECT_EQ(run("sample --scm " + q(scm) + " --n 3 --seed 1 --do \"A=Effect\""), 3);
  EXPECT_EQ(run("sample --scm " + q(scm) + " --n 3 --seed 1 --do \"A=\""), 3);
  EXPECT_EQ(run("sample --scm " + q(scm) + " --n 3"), 2);
  const auto bad = write("bad.scm.json", R"({"format_version": 1, "exogenous": {}, "endogenous": {"X": {"expr": "Z"}}})");
  EXPECT_EQ(run("sample --scm " + q(bad) + " --n 3 --seed 1"), 3);
  ASSERT_EQ(run("sample --scm " + q(scm) + " --n 20 --seed 1"), 0);
  const auto first = stdout_text();
  ASSERT_EQ(run("sample --scm " + q(scm) + " --n 20 --seed 1"), 0);
  EXPECT_EQ(stdout_text(), first);
}

TEST_F(Cli, EnvRunHorizonAndDeterminism) {
  const auto scm = write("worked.scm.json", write_scm(worked_example()));
  const std::vector<Intervention> possible{{"A", parse("5")}, {"Effect", parse("A + 1")}};
  const auto interventions = write("do.json", write_interventions(possible));
  const std::string args = "env-run --scm " + q(scm) + " --interventions " + q(interventions) +
                           " --episodes 3 --horizon 5 --policy random --seed 13 --out ";
  ASSERT_EQ(run(args + q(dir_ / "a.jsonl")), 0);
  ASSERT_EQ(run(args + q(dir_ / "b.jsonl")), 0);
  const auto text = read(dir_ / "a.jsonl");
  EXPECT_EQ(text, read(dir_ / "b.jsonl"));
  const auto records = lines(text);
  ASSERT_EQ(records.size(), 15u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto r = nlohmann::json::parse(records[i]);
    EXPECT_EQ(r.at("episode"), i / 5);
    EXPECT_EQ(r.at("t"), i % 5);
    EXPECT_EQ(r.at("truncated").get<bool>(), i % 5 == 4);
    const auto& s = r.at("sample");
    std::set<std::size_t> action(r.at("action_indices").begin(), r.at("action_indices").end());
    if (action.count(0)) {
      EXPECT_EQ(s.at("A"), 5.0);
    }
    if (action.count(1)) {
      EXPECT_EQ(s.at("Effect").get<double>(), s.at("A").get<double>() + 1);
    } else {
      EXPECT_EQ(s.at("Effect").get<double>(), 2 * s.at("A").get<double>());
    }
  }
}

TEST_F(Cli, EnvRunNoopPolicy) {
  const auto scm = write("worked.scm.json", write_scm(worked_example()));
  ASSERT_EQ(run("env-run --scm " + q(scm) + " --horizon 2 --policy none --seed 1"), 0);
  const auto records = lines(stdout_text());
  ASSERT_EQ(records.size(), 2u);
  EXPECT_TRUE(nlohmann::json::parse(records[0]).at("action_indices").empty());
  EXPECT_EQ(run("env-run --scm " + q(scm) + " --policy greedy --seed 1"), 2);
}

TEST_F(Cli, EvalOracleAndHandCase) {
  const auto truth = write("truth.graph.json", write_graph({{"A", "B", "C"}, {}, {{"A", "B"}, {"B", "C"}}}));
  const auto pred = write("pred.graph.json", write_graph({{"A", "B", "C"}, {}, {{"A", "B"}, {"C", "B"}}}));
  ASSERT_EQ(run("eval --pred " + q(truth) + " --truth " + q(truth)), 0);
  auto m = nlohmann::json::parse(stdout_text());
  EXPECT_EQ(m.at("f1"), 1.0);
  ASSERT_EQ(run("eval --pred " + q(pred) + " --truth " + q(truth)), 0);
  m = nlohmann::json::parse(stdout_text());
  EXPECT_EQ(m.at("tp"), 1);
  EXPECT_EQ(m.at("fp"), 1);
  EXPECT_EQ(m.at("fn"), 1);
  EXPECT_EQ(m.at("tn"), 3);
  EXPECT_EQ(m.at("f1"), 0.5);
  EXPECT_EQ(m.at("tpr"), 0.5);

  const auto scm = write("worked.scm.json", write_scm(worked_example()));
  const auto graph = write("worked.graph.json", write_graph(worked_example().effective_graph()));
  ASSERT_EQ(run("eval --pred " + q(graph) + " --truth " + q(scm)), 0);
  EXPECT_EQ(nlohmann::json::parse(stdout_text()).at("f1"), 1.0);
  EXPECT_EQ(run("eval --pred " + q(pred) + " --truth " + q(scm)), 3);
}

TEST_F(Cli, UseCaseSmall) {
  const std::string args = "usecase --scm-count 6 --samples 50 --algorithms corr_threshold,oracle --seed 21 --out ";
  ASSERT_EQ(run(args + q(dir_ / "a.json")), 0);
  const auto table = stdout_text();
  ASSERT_EQ(run(args + q(dir_ / "b.json")), 0);
  EXPECT_EQ(stdout_text(), table);
  EXPECT_EQ(read(dir_ / "a.json"), read(dir_ / "b.json"));
  const auto rows = nlohmann::json::parse(read(dir_ / "a.json"));
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& row : rows) {
    if (row.at("algorithm") == "oracle") {
      EXPECT_EQ(row.at("f1_mean"), 1.0);
    }
  }
}

}  // namespace
}  // namespace causalkit
