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

// Gradient-guided greedy flips. Each iteration takes one gradient pass at the
// current instance, restricts attention to the top-L unmodified features and
// applies the edit with the largest first-order gain in the objective. With
// grad_combo_depth = d >= 1 it instead evaluates every value combination of up
// to d of those features and keeps the best-rewarded one.

#include <algorithm>
#include <limits>

#include "attack_internal.h"
#include "catbreak/attacks.h"
#include "catbreak/error.h"

namespace catbreak {

AttackResult GradAttack(ClassifierHandle& handle, const Instance& inst, const AttackConfig& config) {
  config.Validate();
  if (!handle.white_box()) throw Error(ErrorCode::kBlackBoxModel, "GradAttack needs gradients");
  const auto& m = handle.model().values_per_feature();
  ValidateInstance(inst, m);

  internal::Stopwatch clock;
  internal::RunStart start(handle);
  AttackResult result;
  result.method = Method::kGradAttack;

  const SuccessCheck clean = CheckSuccess(handle, inst);
  Instance current = inst;
  double margin = clean.margin;
  std::vector<int> modified;
  int iteration = 0;

  while (margin < 0.0 && static_cast<int>(modified.size()) < config.budget && clock.Seconds() < config.time_limit_s) {
    const int64_t before = handle.query_count();
    const IndicatorGrid grad = handle.Grad(current, config.objective);
    const std::vector<double> scores = FeatureScores(grad, current, m, config.omp_score, config.allow_delete);
    const std::vector<int> top = internal::TopFeatures(scores, current, m, config.top_l, config.allow_delete, modified);
    if (top.empty()) break;

    std::vector<int> applied_features;
    std::vector<int> applied_values;
    double reward = 0.0;
    if (config.grad_combo_depth == 0) {
      double best_gain = -std::numeric_limits<double>::infinity();
      int best_feature = -1;
      int best_value = kAbsent;
      for (int f : top) {
        for (int v : AlternativeValues(current, f, m[f], config.allow_delete)) {
          const double gain = internal::FirstOrderGain(grad, current, f, v);
          if (gain > best_gain) {
            best_gain = gain;
            best_feature = f;
            best_value = v;
          }
        }
      }
      current.categories[best_feature] = best_value;
      const ConfidenceVector conf = handle.Predict(current);
      margin = Margin(conf, inst.label);
      reward =
          Reward(conf, internal::RewardBase(config.reward_variant, conf, clean.confidences), inst.label, config.lambda);
      applied_features = {best_feature};
      applied_values = {best_value};
    } else {
      std::vector<std::vector<int>> options;
      for (int f : top) options.push_back(AlternativeValues(current, f, m[f], config.allow_delete));
      const int room = config.budget - static_cast<int>(modified.size());
      const int depth = std::min({config.grad_combo_depth, room, static_cast<int>(options.size())});
      double best_reward = -std::numeric_limits<double>::infinity();
      double best_margin = 0.0;
      for (int k = 1; k <= depth; ++k) {
        internal::ForEachCombination(options, k, [&](const std::vector<int>& lists, const std::vector<int>& picks) {
          Instance probe = current;
          for (size_t a = 0; a < lists.size(); ++a) probe.categories[top[lists[a]]] = picks[a];
          const ConfidenceVector conf = handle.Predict(probe);
          const double g = Reward(conf, internal::RewardBase(config.reward_variant, conf, clean.confidences),
                                  inst.label, config.lambda);
          if (g > best_reward) {
            best_reward = g;
            best_margin = Margin(conf, inst.label);
            applied_features.clear();
            for (int l : lists) applied_features.push_back(top[l]);
            applied_values = picks;
          }
          return clock.Seconds() < config.time_limit_s;
        });
      }
      if (applied_features.empty()) break;
      for (size_t a = 0; a < applied_features.size(); ++a) current.categories[applied_features[a]] = applied_values[a];
      margin = best_margin;
      reward = best_reward;
    }
    modified.insert(modified.end(), applied_features.begin(), applied_features.end());
    ++iteration;

    TraceStep step;
    step.outer = iteration;
    step.feature = applied_features.front();
    step.value = applied_values.front();
    step.reward = reward;
    step.margin = margin;
    step.queries = handle.query_count() - start.queries;
    step.step_queries = handle.query_count() - before;
    step.success_check_fired = margin >= 0.0;
    result.trace.push_back(std::move(step));
  }

  result.outer_iterations = iteration;
  internal::Finish(result, handle, start, clock, inst, current, margin);
  return result;
}

}  // namespace catbreak
