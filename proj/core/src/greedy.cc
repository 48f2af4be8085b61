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

// Forward stepwise greedy search (FSGS) and its gradient-pruned variant
// (OMPGS). Iteration t keeps the recorded values of the t chosen features
// and, for every candidate feature and every subset of the chosen ones,
// evaluates the instance carrying that subset plus a candidate value. The
// best-rewarded combination becomes the next perturbed instance.
//
// FSGS evaluates all M values of each of the N - t remaining features, the
// unchanged one included, so an iteration costs exactly (N - t) * M * 2^t
// queries. OMPGS proposes a single value per top-L candidate.

#include <limits>
#include <string>

#include "attack_internal.h"
#include "catbreak/attacks.h"
#include "catbreak/error.h"

namespace catbreak {
namespace {

struct Candidate {
  int feature;
  std::vector<int> values;
};

struct Best {
  double reward = -std::numeric_limits<double>::infinity();
  int feature = -1;
  int value = kAbsent;
  uint64_t mask = 0;
  ConfidenceVector confidences;
};

std::vector<Candidate> FsgsCandidates(const Instance& inst, std::span<const int> m, std::span<const char> chosen,
                                      bool allow_delete) {
  std::vector<Candidate> out;
  for (int i = 0; i < inst.num_features(); ++i) {
    if (chosen[i]) continue;
    Candidate c{i, {}};
    for (int v = 0; v < m[i]; ++v) c.values.push_back(v);
    if (allow_delete && inst.categories[i] != kAbsent) c.values.push_back(kAbsent);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Candidate> OmpgsCandidates(ClassifierHandle& handle, const Instance& current,
                                       std::span<const int> chosen_features, const AttackConfig& config) {
  const auto& m = handle.model().values_per_feature();
  const IndicatorGrid grad = handle.Grad(current, config.objective);
  const std::vector<double> scores = FeatureScores(grad, current, m, config.omp_score, config.allow_delete);
  const std::vector<int> order =
      internal::TopFeatures(scores, current, m, config.top_l, config.allow_delete, chosen_features);

  std::vector<Candidate> out;
  for (int f : order) {
    int best_value = kAbsent;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (int v : AlternativeValues(current, f, m[f], config.allow_delete)) {
      const double gain = internal::FirstOrderGain(grad, current, f, v);
      if (gain > best_gain) {
        best_gain = gain;
        best_value = v;
      }
    }
    out.push_back({f, {best_value}});
  }
  return out;
}

AttackResult GreedySubsetAttack(Method method, ClassifierHandle& handle, const Instance& inst,
                                const AttackConfig& config) {
  config.Validate();
  const bool pruned = method == Method::kOmpgs;
  if (pruned && !handle.white_box()) throw Error(ErrorCode::kBlackBoxModel, "OMPGS needs gradients");
  const auto& m = handle.model().values_per_feature();
  ValidateInstance(inst, m);

  internal::Stopwatch clock;
  internal::RunStart start(handle);
  AttackResult result;
  result.method = method;

  const SuccessCheck clean = CheckSuccess(handle, inst);
  Instance current = inst;
  double margin = clean.margin;

  std::vector<int> chosen_features;
  std::vector<int> chosen_values;
  std::vector<char> chosen(inst.num_features(), 0);
  bool timed_out = false;
  int iteration = 0;
  while (!clean.success && !timed_out && static_cast<int>(chosen_features.size()) < config.budget &&
         clock.Seconds() < config.time_limit_s) {
    const int t = static_cast<int>(chosen_features.size());
    if (t >= 62 || (int64_t{1} << t) > config.subset_cap) {
      throw Error(ErrorCode::kCapExceeded,
                  "2^" + std::to_string(t) + " subsets exceed the cap of " + std::to_string(config.subset_cap));
    }
    const uint64_t subsets = uint64_t{1} << t;
    const int64_t before = handle.query_count();
    const std::vector<Candidate> candidates = pruned ? OmpgsCandidates(handle, current, chosen_features, config)
                                                     : FsgsCandidates(inst, m, chosen, config.allow_delete);

    Best best;
    for (const Candidate& c : candidates) {
      if (clock.Seconds() >= config.time_limit_s) {
        timed_out = true;
        break;
      }
      for (uint64_t mask = 0; mask < subsets; ++mask) {
        Instance probe = inst;
        for (int b = 0; b < t; ++b) {
          if (mask >> b & 1) probe.categories[chosen_features[b]] = chosen_values[b];
        }
        for (int v : c.values) {
          probe.categories[c.feature] = v;
          ConfidenceVector conf = handle.Predict(probe);
          if (v == inst.categories[c.feature]) continue;
          const double g = Reward(conf, internal::RewardBase(config.reward_variant, conf, clean.confidences),
                                  inst.label, config.lambda);
          if (g > best.reward) best = {g, c.feature, v, mask, std::move(conf)};
        }
      }
    }
    if (timed_out || best.feature < 0) break;

    current = inst;
    for (int b = 0; b < t; ++b) {
      if (best.mask >> b & 1) current.categories[chosen_features[b]] = chosen_values[b];
    }
    current.categories[best.feature] = best.value;
    chosen_features.push_back(best.feature);
    chosen_values.push_back(best.value);
    chosen[best.feature] = 1;
    margin = Margin(best.confidences, inst.label);
    ++iteration;

    TraceStep step;
    step.outer = iteration;
    step.feature = best.feature;
    step.value = best.value;
    step.reward = best.reward;
    step.margin = margin;
    step.queries = handle.query_count() - start.queries;
    step.step_queries = handle.query_count() - before;
    step.success_check_fired = margin >= 0.0;
    result.trace.push_back(std::move(step));
    if (margin >= 0.0) break;
  }

  result.outer_iterations = iteration;
  internal::Finish(result, handle, start, clock, inst, current, margin);
  return result;
}

}  // namespace

AttackResult FsgsAttack(ClassifierHandle& handle, const Instance& inst, const AttackConfig& config) {
  return GreedySubsetAttack(Method::kFsgs, handle, inst, config);
}

AttackResult OmpgsAttack(ClassifierHandle& handle, const Instance& inst, const AttackConfig& config) {
  return GreedySubsetAttack(Method::kOmpgs, handle, inst, config);
}

}  // namespace catbreak
