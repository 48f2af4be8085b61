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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "attack_internal.h"
#include "catbreak/attacks.h"
#include "catbreak/error.h"

namespace catbreak {

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kFeat: return "feat";
    case Method::kFeatB: return "feat-b";
    case Method::kFsgs: return "fsgs";
    case Method::kOmpgs: return "ompgs";
    case Method::kGradAttack: return "gradattack";
    case Method::kExhaustive: return "exhaustive";
  }
  return "unknown";
}

Method ParseMethod(std::string_view name) {
  for (Method m :
       {Method::kFeat, Method::kFeatB, Method::kFsgs, Method::kOmpgs, Method::kGradAttack, Method::kExhaustive}) {
    if (MethodName(m) == name) return m;
  }
  throw Error(ErrorCode::kInvalidArg, "unknown attack method '" + std::string(name) + "'");
}

int AttackConfig::EffectiveMaxOuter() const {
  if (max_outer > 0) return max_outer;
  const int t = EffectiveTau();
  return std::max(1, (budget + t - 1) / t);
}

void AttackConfig::Validate() const {
  if (budget < 0) throw Error(ErrorCode::kInvalidArg, "budget must be >= 0");
  if (top_l < 1) throw Error(ErrorCode::kInvalidArg, "top_l must be >= 1");
  if (tau < 0) throw Error(ErrorCode::kInvalidArg, "tau must be >= 1 (or 0 for the default)");
  if (!(time_limit_s > 0.0)) throw Error(ErrorCode::kInvalidArg, "time limit must be positive");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::kInvalidArg, "alpha must be >= 0");
  if (!std::isfinite(lambda)) throw Error(ErrorCode::kInvalidArg, "lambda must be finite");
  if (max_outer < 0) throw Error(ErrorCode::kInvalidArg, "max_outer must be >= 0");
  if (subset_cap < 1) throw Error(ErrorCode::kInvalidArg, "subset cap must be >= 1");
  if (grad_combo_depth < 0) throw Error(ErrorCode::kInvalidArg, "combination depth must be >= 0");
  if (exhaustive_cap < 1) throw Error(ErrorCode::kInvalidArg, "exhaustive cap must be >= 1");
}

SuccessCheck CheckSuccess(ClassifierHandle& handle, const Instance& inst) {
  SuccessCheck out;
  out.confidences = handle.Predict(inst);
  out.margin = Margin(out.confidences, inst.label);
  out.success = out.margin >= 0.0;
  return out;
}

std::vector<double> FeatureScores(const IndicatorGrid& grad, const Instance& inst,
                                  std::span<const int> values_per_feature, OmpScore score, bool allow_delete) {
  const int n = inst.num_features();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const std::vector<int> alternatives = AlternativeValues(inst, i, values_per_feature[i], allow_delete);
    if (alternatives.empty()) continue;
    double s = 0.0;
    switch (score) {
      case OmpScore::kEditDirectional:
        for (int v : alternatives) s = std::max(s, std::abs(internal::FirstOrderGain(grad, inst, i, v)));
        break;
      case OmpScore::kMaxAbsSlot:
        for (int v : alternatives) {
          const int slot = v == kAbsent ? inst.categories[i] : v;
          s = std::max(s, std::abs(grad(i, slot)));
        }
        break;
      case OmpScore::kRowNorm:
        for (int j = 0; j < values_per_feature[i]; ++j) s += grad(i, j) * grad(i, j);
        s = std::sqrt(s);
        break;
    }
    out[i] = s;
  }
  return out;
}

RankedFeatures OmpRank(ClassifierHandle& handle, const Instance& inst, const Objective& objective, int l,
                       OmpScore score, bool allow_delete, std::span<const int> exclude) {
  if (!handle.white_box()) throw Error(ErrorCode::kBlackBoxModel, "gradient ranking needs a white-box model");
  if (l < 1) throw Error(ErrorCode::kInvalidArg, "L must be >= 1");
  const auto& m = handle.model().values_per_feature();
  const IndicatorGrid grad = handle.Grad(inst, objective);

  RankedFeatures out;
  out.scores = FeatureScores(grad, inst, m, score, allow_delete);
  const double total = std::accumulate(out.scores.begin(), out.scores.end(), 0.0);
  out.weights.assign(out.scores.size(), 0.0);
  if (total > 0.0) {
    for (size_t i = 0; i < out.scores.size(); ++i) out.weights[i] = out.scores[i] / total;
  }

  out.features = internal::TopFeatures(out.weights, inst, m, l, allow_delete, exclude);
  return out;
}

PullResult BestValuePull(ClassifierHandle& handle, const Instance& current, int feature, double lambda,
                         RewardVariant variant, std::span<const double> base_conf, bool allow_delete) {
  const auto& m = handle.model().values_per_feature();
  if (feature < 0 || feature >= current.num_features()) {
    throw Error(ErrorCode::kInvalidArg, "feature index out of range");
  }
  const std::vector<int> alternatives = AlternativeValues(current, feature, m[feature], allow_delete);
  if (alternatives.empty()) {
    throw Error(ErrorCode::kNoAlternatives, "feature " + std::to_string(feature) + " has no alternative value");
  }
  PullResult out;
  out.reward = -std::numeric_limits<double>::infinity();
  Instance probe = current;
  for (int v : alternatives) {
    probe.categories[feature] = v;
    ConfidenceVector conf = handle.Predict(probe);
    ++out.queries_used;
    const double g = Reward(conf, internal::RewardBase(variant, conf, base_conf), current.label, lambda);
    if (g > out.reward) {
      out.reward = g;
      out.best_value = v;
      out.confidences = std::move(conf);
    }
  }
  return out;
}

int64_t ExhaustiveEvaluationCount(const Instance& inst, std::span<const int> values_per_feature, int budget,
                                  bool allow_delete) {
  constexpr int64_t kMax = std::numeric_limits<int64_t>::max();
  const int n = inst.num_features();
  const int depth = std::min(budget, n);
  // e[k] = sum over k-subsets of the product of alternative counts.
  std::vector<int64_t> e(depth + 1, 0);
  e[0] = 1;
  for (int i = 0; i < n; ++i) {
    const int64_t a = static_cast<int64_t>(AlternativeValues(inst, i, values_per_feature[i], allow_delete).size());
    for (int k = depth; k >= 1; --k) {
      if (e[k - 1] == 0 || a == 0) continue;
      const int64_t term = e[k - 1] > kMax / a ? kMax : e[k - 1] * a;
      e[k] = term > kMax - e[k] ? kMax : e[k] + term;
    }
  }
  int64_t total = 0;
  for (int64_t v : e) total = v > kMax - total ? kMax : total + v;
  return total;
}

AttackResult RunAttack(Method method, ClassifierHandle& handle, const Instance& inst, const AttackConfig& config) {
  switch (method) {
    case Method::kFeat: return FeatAttack(handle, inst, config);
    case Method::kFeatB: return FeatBAttack(handle, inst, config);
    case Method::kFsgs: return FsgsAttack(handle, inst, config);
    case Method::kOmpgs: return OmpgsAttack(handle, inst, config);
    case Method::kGradAttack: return GradAttack(handle, inst, config);
    case Method::kExhaustive: return ExhaustiveAttack(handle, inst, config);
  }
  throw Error(ErrorCode::kInvalidArg, "unknown method");
}

namespace internal {

void Finish(AttackResult& result, const ClassifierHandle& handle, const RunStart& start, const Stopwatch& clock,
            const Instance& clean, const Instance& current, double margin) {
  result.perturbation = PerturbationBetween(clean, current);
  result.changed = static_cast<int>(result.perturbation.size());
  result.margin = margin;
  result.success = margin >= 0.0;
  result.queries = handle.query_count() - start.queries;
  result.grad_passes = handle.grad_count() - start.grads;
  result.wall_time_s = clock.Seconds();
}

double FirstOrderGain(const IndicatorGrid& grad, const Instance& inst, int feature, int value) {
  const int current = inst.categories[feature];
  const double from = current == kAbsent ? 0.0 : grad(feature, current);
  const double to = value == kAbsent ? 0.0 : grad(feature, value);
  return to - from;
}

std::vector<int> TopFeatures(std::span<const double> scores, const Instance& inst,
                             std::span<const int> values_per_feature, int l, bool allow_delete,
                             std::span<const int> exclude) {
  std::vector<char> skip(inst.num_features(), 0);
  for (int f : exclude) skip.at(f) = 1;
  std::vector<int> order;
  for (int i = 0; i < inst.num_features(); ++i) {
    if (!skip[i] && !AlternativeValues(inst, i, values_per_feature[i], allow_delete).empty()) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return scores[a] > scores[b]; });
  if (static_cast<int>(order.size()) > l) order.resize(l);
  return order;
}

bool ForEachCombination(const std::vector<std::vector<int>>& options, int k,
                        const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& visit) {
  const int n = static_cast<int>(options.size());
  if (k < 0 || k > n) return true;
  std::vector<int> lists(k);
  std::iota(lists.begin(), lists.end(), 0);
  std::vector<int> digit(k, 0);
  std::vector<int> picks(k);
  while (true) {
    bool empty = false;
    for (int a = 0; a < k; ++a) empty = empty || options[lists[a]].empty();
    if (!empty) {
      std::fill(digit.begin(), digit.end(), 0);
      while (true) {
        for (int a = 0; a < k; ++a) picks[a] = options[lists[a]][digit[a]];
        if (!visit(lists, picks)) return false;
        int a = k - 1;
        while (a >= 0 && ++digit[a] == static_cast<int>(options[lists[a]].size())) digit[a--] = 0;
        if (a < 0) break;
      }
    }
    int a = k - 1;
    while (a >= 0 && lists[a] == n - k + a) --a;
    if (a < 0) break;
    ++lists[a];
    for (int b = a + 1; b < k; ++b) lists[b] = lists[b - 1] + 1;
  }
  return true;
}

}  // namespace internal
}  // namespace catbreak
