#include "causalkit/environment.hpp"

#include <map>
#include <string>

#include "causalkit/errors.hpp"

namespace causalkit {

namespace {

struct UndoGuard {
  ScmModel& model;
  ~UndoGuard() { model.undo_interventions(); }
};

}  // namespace

ScmEnvironment::ScmEnvironment(EnvConfig config, EnvHooks hooks)
    : model_(std::move(config.model)),
      possible_(std::move(config.possible_interventions)),
      horizon_(config.horizon),
      hooks_(std::move(hooks)),
      rng_(config.seed) {
  model_.undo_interventions();
  for (std::size_t i = 0; i < possible_.size(); ++i) {
    ScmModel probe = model_;
    try {
      probe.do_intervention(possible_[i]);
    } catch (const Error& e) {
      throw InvalidConfig("possible intervention " + std::to_string(i) + " is invalid: " + e.what());
    }
  }
}

std::vector<double> ScmEnvironment::observe(const Sample& sample) const {
  if (hooks_.observation) return hooks_.observation(sample);
  std::vector<double> out;
  out.reserve(sample.endogenous.size());
  for (const auto& [name, value] : sample.endogenous) out.push_back(value);
  return out;
}

std::pair<std::vector<double>, Sample> ScmEnvironment::reset(std::optional<std::uint64_t> seed) {
  if (seed) rng_ = Rng(*seed);
  step_count_ = 0;
  model_.undo_interventions();
  Sample sample = model_.sample(rng_);
  auto observation = observe(sample);
  return {std::move(observation), std::move(sample)};
}

StepResult ScmEnvironment::step(const Action& action) {
  std::vector<Intervention> selected;
  std::set<std::string> targets;
  for (auto index : action.indices) {
    if (index >= possible_.size())
      throw InvalidAction("intervention index " + std::to_string(index) + " out of range (have " +
                          std::to_string(possible_.size()) + ")");
    if (!targets.insert(possible_[index].target).second)
      throw InvalidAction("action selects several interventions on '" + possible_[index].target + "'");
    selected.push_back(possible_[index]);
  }

  StepResult result;
  {
    try {
      model_.do_interventions(selected);
    } catch (const CycleError& e) {
      throw InvalidAction(std::string("selected interventions are jointly cyclic: ") + e.what());
    }
    UndoGuard guard{model_};
    result.info = model_.sample(rng_);
  }
  ++step_count_;
  result.observation = observe(result.info);
  result.reward = hooks_.reward ? hooks_.reward(result.info, action) : 0.0;
  result.terminated = hooks_.terminated ? hooks_.terminated(result.info) : false;
  result.truncated = hooks_.truncated ? hooks_.truncated(step_count_) : (horizon_ && step_count_ >= *horizon_);
  return result;
}

std::size_t ScmEnvironment::action_space_size() const {
  std::map<std::string, std::size_t> per_target;
  for (const auto& intervention : possible_) ++per_target[intervention.target];
  std::size_t total = 1;
  for (const auto& [target, count] : per_target) total *= count + 1;
  return total;
}

Action ScmEnvironment::random_action(Rng& rng) const {
  // Choosing independently per target (one of its interventions or none)
  // is uniform over the valid subsets.
  std::map<std::string, std::vector<std::size_t>> per_target;
  for (std::size_t i = 0; i < possible_.size(); ++i) per_target[possible_[i].target].push_back(i);
  Action action;
  for (const auto& [target, indices] : per_target) {
    const auto choice = rng.next_below(indices.size() + 1);
    if (choice < indices.size()) action.indices.insert(indices[choice]);
  }
  return action;
}

}  // namespace causalkit
