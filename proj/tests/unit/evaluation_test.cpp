#include "causalkit/evaluation.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "causalkit/errors.hpp"

namespace causalkit {
namespace {

AdjacencyMatrix abc(std::initializer_list<Edge> edges) {
  AdjacencyMatrix m({"A", "B", "C"});
  for (const auto& [from, to] : edges) m.set(from, to);
  return m;
}

TEST(CompareStructures, HandCountedConfusion) {
  const auto m = compare_structures(abc({{"A", "B"}, {"C", "B"}}), abc({{"A", "B"}, {"B", "C"}}));
  EXPECT_EQ(m.tp, 1u);
  EXPECT_EQ(m.fp, 1u);
  EXPECT_EQ(m.fn, 1u);
  EXPECT_EQ(m.tn, 3u);
  EXPECT_DOUBLE_EQ(m.f1, 0.5);
  EXPECT_DOUBLE_EQ(m.tpr, 0.5);
}

TEST(CompareStructures, PerfectAndEmpty) {
  const auto truth = abc({{"A", "B"}, {"B", "C"}});
  const auto perfect = compare_structures(truth, truth);
  EXPECT_EQ(perfect.f1, 1.0);
  EXPECT_EQ(perfect.tpr, 1.0);
  const auto empty = compare_structures(abc({}), truth);
  EXPECT_EQ(empty.f1, 0.0);
  EXPECT_EQ(empty.tpr, 0.0);
  const auto nothing = compare_structures(abc({}), abc({}));
  EXPECT_EQ(nothing.f1, 0.0);
  EXPECT_EQ(nothing.tpr, 0.0);
  EXPECT_EQ(nothing.tn, 6u);
}

TEST(CompareStructures, DimensionMismatch) {
  EXPECT_THROW(compare_structures(AdjacencyMatrix({"A", "B"}), abc({})), DimensionMismatch);
  EXPECT_THROW(compare_structures(AdjacencyMatrix({"A", "B", "D"}), abc({})), DimensionMismatch);
}

TEST(AdjacencyMatrix, ZeroDiagonalAndFromGraph) {
  AdjacencyMatrix m({"B", "A"});
  EXPECT_EQ(m.names(), (std::vector<std::string>{"A", "B"}));
  EXPECT_THROW(m.set("A", "A"), DimensionMismatch);
  CausalGraph g{{"X1", "X0"}, {"U0"}, {{"U0", "X0"}, {"X0", "X1"}}};
  const auto from = AdjacencyMatrix::from_graph(g);
  EXPECT_EQ(from.edge_count(), 1u);
  EXPECT_TRUE(from.at(0, 1));
}

// Exhaustive over all 3-node directed graphs (2^6 each side).
TEST(CompareStructures, PropertiesOverAllSmallGraphs) {
  const std::vector<Edge> pairs{{"A", "B"}, {"A", "C"}, {"B", "A"}, {"B", "C"}, {"C", "A"}, {"C", "B"}};
  auto build = [&](unsigned mask) {
    AdjacencyMatrix m({"A", "B", "C"});
    for (unsigned i = 0; i < pairs.size(); ++i)
      if (mask & (1u << i)) m.set(pairs[i].first, pairs[i].second);
    return m;
  };
  for (unsigned p = 0; p < 64; ++p) {
    for (unsigned t = 0; t < 64; ++t) {
      const auto forward = compare_structures(build(p), build(t));
      const auto backward = compare_structures(build(t), build(p));
      ASSERT_EQ(forward.tp + forward.fp + forward.fn + forward.tn, 6u);
      ASSERT_EQ(forward.tp, backward.tp);
      ASSERT_EQ(forward.fp, backward.fn);
      ASSERT_GE(forward.f1, 0.0);
      ASSERT_LE(forward.f1, 1.0);
      ASSERT_GE(forward.tpr, 0.0);
      ASSERT_LE(forward.tpr, 1.0);
    }
  }
}

TEST(CorrThreshold, ExactLinearDependence) {
  ScmModel model = ScmModel::from_parts({{"U", DistributionSpec::gauss(0, 1)}},
                                        {{"A", parse("U")}, {"B", parse("3 * A")}});
  Rng rng(1);
  const auto samples = model.sample_n(100, rng);
  const auto table = SampleTable::endogenous(samples);
  EXPECT_NEAR(pearson(table.values[0], table.values[1]), 1.0, 1e-12);
  const auto m = corr_threshold_discovery(table, 0.5);
  EXPECT_TRUE(m.at(0, 1));
  EXPECT_FALSE(m.at(1, 0));
}

TEST(CorrThreshold, IndependentColumnsGiveNoEdges) {
  ScmModel model = ScmModel::from_parts(
      {{"U0", DistributionSpec::gauss(0, 1)}, {"U1", DistributionSpec::gauss(0, 1)}},
      {{"A", parse("U0")}, {"B", parse("U1")}});
  Rng rng(2);
  const auto samples = model.sample_n(1000, rng);
  const auto table = SampleTable::endogenous(samples);
  EXPECT_LT(std::fabs(pearson(table.values[0], table.values[1])), 0.2);
  EXPECT_EQ(corr_threshold_discovery(table, 0.5).edge_count(), 0u);
}

TEST(CorrThreshold, SingleColumnAndErrors) {
  SampleTable one{{"A"}, {{1.0, 2.0, 3.0}}};
  const auto m = corr_threshold_discovery(one, 0.5);
  EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(m.edge_count(), 0u);
  SampleTable short_table{{"A", "B"}, {{1.0}, {2.0}}};
  EXPECT_THROW(corr_threshold_discovery(short_table, 0.5), InsufficientData);
  EXPECT_THROW(corr_threshold_discovery(one, 1.0), InvalidConfig);
}

TEST(CorrThreshold, ConstantColumnHasNoAssociation) {
  SampleTable table{{"A", "B"}, {{1.0, 2.0, 3.0}, {4.0, 4.0, 4.0}}};
  EXPECT_EQ(corr_threshold_discovery(table, 0.1).edge_count(), 0u);
}

TEST(UseCase, DefaultConfigurationIsBounded) {
  Rng rng(2024);
  UseCaseConfig config;
  config.algorithms = {DiscoveryAlgorithm::corr_threshold, DiscoveryAlgorithm::oracle};
  const auto rows = run_usecase(config, rng);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].regime, Regime::confounded);
  EXPECT_EQ(rows[2].regime, Regime::unconfounded);
  for (const auto& row : rows) {
    EXPECT_EQ(row.n_scms, 15u);
    for (double v : {row.f1_mean, row.f1_sd, row.tpr_mean, row.tpr_sd}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(UseCase, OracleSingleScm) {
  Rng rng(1);
  UseCaseConfig config;
  config.scm_count = 1;
  config.edge_prob = 1.0;
  config.algorithms = {DiscoveryAlgorithm::oracle};
  const auto rows = run_usecase(config, rng);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].n_scms, 1u);
  EXPECT_EQ(rows[0].f1_mean, 1.0);
  EXPECT_EQ(rows[0].tpr_mean, 1.0);
}

TEST(UseCase, Deterministic) {
  UseCaseConfig config;
  config.scm_count = 6;
  Rng a(5);
  Rng b(5);
  const auto first = run_usecase(config, a);
  const auto second = run_usecase(config, b);
  EXPECT_EQ(format_metrics_table(first), format_metrics_table(second));
}

TEST(UseCase, TableFormat) {
  const std::vector<UseCaseRow> rows{{Regime::confounded, DiscoveryAlgorithm::oracle, 1, 0, 1, 0, 3}};
  EXPECT_EQ(format_metrics_table(rows),
            "regime         algorithm         f1_mean    f1_sd tpr_mean   tpr_sd n_scms\n"
            "confounded     oracle             1.0000   0.0000   1.0000   0.0000      3\n");
}

}  // namespace
}  // namespace causalkit
