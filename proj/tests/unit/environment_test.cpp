#include "causalkit/environment.hpp"

#include <gtest/gtest.h>

#include "causalkit/errors.hpp"

namespace causalkit {
namespace {

ScmModel worked_example() {
  ScmModel model;
  model.add_exogenous("U", DistributionSpec::uniform_int(3, 8));
  model.add_endogenous("A", parse("U + 5"));
  model.add_endogenous("Effect", parse("A * 2"));
  return model;
}

// Index 0: do(A = 5); index 1: do(Effect = A + 1).
EnvConfig two_interventions(std::optional<std::size_t> horizon = std::nullopt, std::uint64_t seed = 7) {
  return {worked_example(), {{"A", parse("5")}, {"Effect", parse("A + 1")}}, horizon, seed};
}

TEST(Environment, ResetObservesEndogenousInNameOrder) {
  ScmEnvironment env(two_interventions());
  const auto [observation, info] = env.reset();
  ASSERT_EQ(observation.size(), 2u);
  EXPECT_EQ(observation[0], info.at("A"));
  EXPECT_EQ(observation[1], info.at("Effect"));
  EXPECT_EQ(observation[1], 2 * observation[0]);
  EXPECT_EQ(env.step_count(), 0u);
}

TEST(Environment, ResetWithoutEndogenousVariables) {
  ScmModel model;
  model.add_exogenous("U", DistributionSpec::gauss(0, 1));
  ScmEnvironment env({model, {}, std::nullopt, 1});
  EXPECT_TRUE(env.reset().first.empty());
}

TEST(Environment, ResetIsSeedDeterministic) {
  ScmEnvironment a(two_interventions());
  ScmEnvironment b(two_interventions());
  EXPECT_EQ(a.reset(), b.reset());
  EXPECT_EQ(a.reset(99), b.reset(99));
}

TEST(Environment, StepAppliesSelectedInterventions) {
  ScmEnvironment env(two_interventions());
  env.reset();
  const auto before = env.model();
  for (int i = 0; i < 200; ++i) {
    const auto r1 = env.step({{1}});
    EXPECT_EQ(r1.info.at("Effect"), r1.info.at("A") + 1);
    const auto r0 = env.step({{0}});
    EXPECT_EQ(r0.info.at("A"), 5.0);
    EXPECT_EQ(r0.info.at("Effect"), 10.0);
    const auto none = env.step({});
    EXPECT_EQ(none.info.at("Effect"), 2 * none.info.at("A"));
    const auto both = env.step({{0, 1}});
    EXPECT_EQ(both.info.at("A"), 5.0);
    EXPECT_EQ(both.info.at("Effect"), 6.0);
    ASSERT_EQ(env.model(), before);
  }
}

TEST(Environment, ObservationMatchesInfo) {
  ScmEnvironment env(two_interventions());
  env.reset();
  const auto r = env.step({{1}});
  ASSERT_EQ(r.observation.size(), r.info.endogenous.size());
  std::size_t i = 0;
  for (const auto& [name, value] : r.info.endogenous) EXPECT_EQ(r.observation[i++], value);
  EXPECT_EQ(r.reward, 0.0);
  EXPECT_FALSE(r.terminated);
  EXPECT_FALSE(r.truncated);
}

TEST(Environment, InvalidActionsLeaveModelUnchanged) {
  auto config = two_interventions();
  config.possible_interventions.push_back({"A", parse("U")});
  ScmEnvironment env(config);
  env.reset();
  const auto before = env.model();
  EXPECT_THROW(env.step({{5}}), InvalidAction);
  EXPECT_THROW(env.step({{0, 2}}), InvalidAction);
  EXPECT_EQ(env.model(), before);
  EXPECT_EQ(env.step_count(), 0u);
}

TEST(Environment, JointlyCyclicActionIsInvalid) {
  EnvConfig config{worked_example(), {{"A", parse("Effect - 1")}, {"Effect", parse("3")}}, std::nullopt, 1};
  // do(A = Effect - 1) alone closes the loop A -> Effect -> A.
  EXPECT_THROW(ScmEnvironment{config}, InvalidConfig);

  ScmModel model;
  model.add_exogenous("U", DistributionSpec::gauss(0, 1));
  model.add_endogenous("A", parse("U"));
  model.add_endogenous("B", parse("U"));
  ScmEnvironment env({model, {{"A", parse("B")}, {"B", parse("A")}}, std::nullopt, 1});
  EXPECT_THROW(env.step({{0, 1}}), InvalidAction);
  EXPECT_TRUE(env.model().active_interventions().empty());
}

TEST(Environment, HorizonTruncation) {
  ScmEnvironment env(two_interventions(3));
  env.reset();
  EXPECT_FALSE(env.step({}).truncated);
  EXPECT_FALSE(env.step({}).truncated);
  EXPECT_TRUE(env.step({}).truncated);
  env.reset();
  EXPECT_FALSE(env.step({}).truncated);
}

TEST(Environment, ActionSpaceSize) {
  EXPECT_EQ(ScmEnvironment(two_interventions()).action_space_size(), 4u);
  EXPECT_EQ(ScmEnvironment({worked_example(), {}, std::nullopt, 0}).action_space_size(), 1u);

  std::vector<Intervention> three{{"A", parse("5")}, {"A", parse("U")}, {"Effect", parse("A + 1")}};
  ScmEnvironment env({worked_example(), three, std::nullopt, 0});
  // Brute force: every index subset whose targets are distinct.
  std::size_t valid = 0;
  for (unsigned mask = 0; mask < 8; ++mask) {
    std::set<std::string> targets;
    bool ok = true;
    for (unsigned i = 0; i < 3; ++i) {
      if (mask & (1u << i)) ok = ok && targets.insert(three[i].target).second;
    }
    valid += ok ? 1 : 0;
  }
  EXPECT_EQ(valid, 6u);
  EXPECT_EQ(env.action_space_size(), valid);
}

TEST(Environment, RandomActionIsValidAndCoversSpace) {
  std::vector<Intervention> three{{"A", parse("5")}, {"A", parse("U")}, {"Effect", parse("A + 1")}};
  ScmEnvironment env({worked_example(), three, std::nullopt, 0});
  Rng rng(3);
  std::set<std::set<std::size_t>> seen;
  for (int i = 0; i < 600; ++i) {
    const auto action = env.random_action(rng);
    EXPECT_NO_THROW(env.step(action));
    seen.insert(action.indices);
  }
  EXPECT_EQ(seen.size(), env.action_space_size());
}

TEST(Environment, HooksAreIsolated) {
  std::vector<StepResult> plain;
  std::vector<StepResult> rewarded;
  {
    ScmEnvironment env(two_interventions(4));
    env.reset();
    for (int i = 0; i < 4; ++i) plain.push_back(env.step({{static_cast<std::size_t>(i % 2)}}));
  }
  {
    EnvHooks hooks;
    hooks.reward = [](const Sample& s, const Action& a) { return s.at("Effect") - static_cast<double>(a.indices.size()); };
    ScmEnvironment env(two_interventions(4), hooks);
    env.reset();
    for (int i = 0; i < 4; ++i) rewarded.push_back(env.step({{static_cast<std::size_t>(i % 2)}}));
  }
  for (std::size_t i = 0; i < plain.size(); ++i) {
    EXPECT_EQ(plain[i].info, rewarded[i].info);
    EXPECT_EQ(plain[i].observation, rewarded[i].observation);
    EXPECT_EQ(plain[i].truncated, rewarded[i].truncated);
    EXPECT_EQ(rewarded[i].reward, rewarded[i].info.at("Effect") - 1.0);
  }
}

TEST(Environment, CustomTerminationAndObservation) {
  EnvHooks hooks;
  hooks.terminated = [](const Sample& s) { return s.at("A") == 5.0; };
  hooks.observation = [](const Sample& s) { return std::vector<double>{s.at("U")}; };
  hooks.truncated = [](std::size_t steps) { return steps >= 2; };
  ScmEnvironment env(two_interventions(), hooks);
  env.reset();
  const auto r = env.step({{0}});
  EXPECT_TRUE(r.terminated);
  EXPECT_EQ(r.observation, std::vector<double>{r.info.at("U")});
  EXPECT_FALSE(r.truncated);
  EXPECT_TRUE(env.step({}).truncated);
}

TEST(Environment, EpisodeDeterminism) {
  auto run = [] {
    ScmEnvironment env(two_interventions(5, 42));
    std::vector<StepResult> out;
    env.reset();
    for (std::size_t i = 0; i < 10; ++i) out.push_back(env.step({{i % 2}}));
    return out;
  };
  EXPECT_EQ(run(), run());
}

TEST(Environment, RejectsInvalidPossibleIntervention) {
  EnvConfig config{worked_example(), {{"U", parse("1")}}, std::nullopt, 0};
  EXPECT_THROW(ScmEnvironment{config}, InvalidConfig);
}

}  // namespace
}  // namespace causalkit
