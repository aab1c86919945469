#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "causalkit/random.hpp"
#include "causalkit/scm.hpp"

namespace causalkit {

/// Indices into the environment's list of possible interventions.
struct Action {
  std::set<std::size_t> indices;

  friend bool operator==(const Action&, const Action&) = default;
};

struct StepResult {
  std::vector<double> observation;
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
  Sample info;

  friend bool operator==(const StepResult&, const StepResult&) = default;
};

/// User-replaceable pieces of the step contract. Unset hooks fall back to:
/// zero reward, never terminated, truncated once the horizon is reached,
/// observation = endogenous values in lexicographic name order.
struct EnvHooks {
  std::function<double(const Sample&, const Action&)> reward;
  std::function<bool(const Sample&)> terminated;
  std::function<bool(std::size_t step_count)> truncated;
  std::function<std::vector<double>(const Sample&)> observation;
};

struct EnvConfig {
  ScmModel model;
  std::vector<Intervention> possible_interventions;
  std::optional<std::size_t> horizon;
  std::uint64_t seed = 0;
};

/// Interactive wrapper around one SCM.
///
/// Each step applies the selected interventions, samples the intervened
/// model, evaluates the hooks, and undoes the interventions again, so the
/// wrapped model never changes between steps. Not thread-safe; use one
/// instance per thread.
class ScmEnvironment {
public:
  /// Throws if any possible intervention is invalid against the model.
  explicit ScmEnvironment(EnvConfig config, EnvHooks hooks = {});

  /// Zeroes the step counter, clears any interventions and draws one
  /// observational sample. A seed restarts the random stream.
  std::pair<std::vector<double>, Sample> reset(std::optional<std::uint64_t> seed = std::nullopt);

  /// Throws InvalidAction for out-of-range indices or repeated targets.
  StepResult step(const Action& action);

  /// Number of index subsets whose interventions have distinct targets.
  std::size_t action_space_size() const;

  /// Uniform draw from the valid actions.
  Action random_action(Rng& rng) const;

  const ScmModel& model() const noexcept { return model_; }
  const std::vector<Intervention>& possible_interventions() const noexcept { return possible_; }
  std::size_t step_count() const noexcept { return step_count_; }
  std::optional<std::size_t> horizon() const noexcept { return horizon_; }

private:
  std::vector<double> observe(const Sample& sample) const;

  ScmModel model_;
  std::vector<Intervention> possible_;
  std::optional<std::size_t> horizon_;
  EnvHooks hooks_;
  Rng rng_;
  std::size_t step_count_ = 0;
};

}  // namespace causalkit
