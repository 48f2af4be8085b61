// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// FEAT and FEAT-B: a window of tau variance-aware UCB rounds over L arms,
// repeated with freshly chosen arms and fresh statistics.
//
// One window:
//   1. choose L arms (gradient top-L, or a uniform sample for FEAT-B);
//   2. pull every arm once on the current instance: evaluate all its
//      alternative values, remember the best one and its reward, apply
//      nothing;
//   3. for tau rounds: pick the arm with the highest UCB score, set its
//      feature to the remembered value, evaluate the instance once and feed
//      the realised reward back into that arm's statistics.
// Rounds stop early on success or when a new feature would exceed the budget.

#include <algorithm>
#include <numeric>
#include <random>

#include "attack_internal.h"
#include "catbreak/attacks.h"
#include "catbreak/error.h"

namespace catbreak {
namespace {

std::vector<int> SampleArms(const Instance& inst, std::span<const int> values_per_feature, int l, bool allow_delete,
                            std::mt19937_64& rng) {
  std::vector<int> candidates;
  for (int i = 0; i < inst.num_features(); ++i) {
    if (!AlternativeValues(inst, i, values_per_feature[i], allow_delete).empty()) candidates.push_back(i);
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  if (static_cast<int>(candidates.size()) > l) candidates.resize(l);
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

AttackResult BanditAttack(Method method, ClassifierHandle& handle, const Instance& inst, const AttackConfig& config,
                          const InnerRoundObserver& observer) {
  config.Validate();
  const bool ranked = method == Method::kFeat;
  if (ranked && !handle.white_box()) throw Error(ErrorCode::kBlackBoxModel, "FEAT needs gradients");
  const auto& m = handle.model().values_per_feature();
  ValidateInstance(inst, m);

  internal::Stopwatch clock;
  internal::RunStart start(handle);
  AttackResult result;
  result.method = method;

  const SuccessCheck clean = CheckSuccess(handle, inst);
  Instance current = inst;
  ConfidenceVector current_conf = clean.confidences;
  double margin = clean.margin;
  if (clean.success) {
    internal::Finish(result, handle, start, clock, inst, current, margin);
    return result;
  }

  const int tau = config.EffectiveTau();
  const int max_outer = config.EffectiveMaxOuter();
  const BanditConfig bandit{config.alpha, config.lambda, config.appendix_bonus};
  std::mt19937_64 rng(config.seed);
  std::vector<char> in_set(inst.num_features(), 0);
  int set_size = 0;
  bool done = config.budget == 0;

  int outer = 0;
  while (!done && outer < max_outer && clock.Seconds() < config.time_limit_s) {
    const std::vector<int> arms =
        ranked
            ? OmpRank(handle, current, config.objective, config.top_l, config.omp_score, config.allow_delete).features
            : SampleArms(current, m, config.top_l, config.allow_delete, rng);
    if (arms.empty()) break;
    ++outer;

    std::vector<ArmStats> stats(arms.size());
    std::vector<int> best_value(arms.size(), kAbsent);
    for (size_t l = 0; l < arms.size() && !done; ++l) {
      if (clock.Seconds() >= config.time_limit_s) {
        done = true;
        break;
      }
      const PullResult pull = BestValuePull(handle, current, arms[l], config.lambda, config.reward_variant,
                                            clean.confidences, config.allow_delete);
      stats[l].Update(pull.reward);
      best_value[l] = pull.best_value;
    }
    if (done) break;

    const Instance window_start = current;
    int64_t t = static_cast<int64_t>(arms.size());
    for (int round = 1; round <= tau; ++round) {
      if (clock.Seconds() >= config.time_limit_s) {
        done = true;
        break;
      }
      if (observer) observer(current, outer, round);
      TraceStep step;
      const int pick = SelectArm(stats, t, bandit, &step.scores);
      const int feature = arms[pick];
      if (!in_set[feature] && set_size >= config.budget) {
        done = true;
        break;
      }
      const int64_t before = handle.query_count();
      if (current.categories[feature] != best_value[pick]) {
        current.categories[feature] = best_value[pick];
        current_conf = handle.Predict(current);
        margin = Margin(current_conf, inst.label);
      }
      // Re-selecting an arm whose value is already applied observes the
      // current instance again; the model is deterministic, so no query.
      const double reward =
          Reward(current_conf, internal::RewardBase(config.reward_variant, current_conf, clean.confidences), inst.label,
                 config.lambda);
      stats[pick].Update(reward);
      ++t;
      if (!in_set[feature]) {
        in_set[feature] = 1;
        ++set_size;
      }

      step.outer = outer;
      step.inner = round;
      step.feature = feature;
      step.value = best_value[pick];
      step.reward = reward;
      step.margin = margin;
      step.queries = handle.query_count() - start.queries;
      step.step_queries = handle.query_count() - before;
      if (round == 1) step.arms = arms;
      step.success_check_fired = margin >= 0.0 && config.stop_on_success;
      result.trace.push_back(std::move(step));
      if (result.trace.back().success_check_fired) {
        done = true;
        break;
      }
    }
    // A deterministic re-ranking of an unchanged instance repeats the window.
    if (ranked && current == window_start) break;
  }

  result.outer_iterations = outer;
  internal::Finish(result, handle, start, clock, inst, current, margin);
  return result;
}

}  // namespace

AttackResult FeatAttack(ClassifierHandle& handle, const Instance& inst, const AttackConfig& config,
                        const InnerRoundObserver& observer) {
  return BanditAttack(Method::kFeat, handle, inst, config, observer);
}

AttackResult FeatBAttack(ClassifierHandle& handle, const Instance& inst, const AttackConfig& config,
                         const InnerRoundObserver& observer) {
  return BanditAttack(Method::kFeatB, handle, inst, config, observer);
}

}  // namespace catbreak
