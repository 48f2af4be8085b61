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

// Budgeted evasion attacks on categorical classifiers.
//
// Every method shares one contract: it receives a per-run ClassifierHandle
// (whose counters are the query accounting), the clean instance with its
// true label, and an AttackConfig; it returns an AttackResult whose
// perturbation never changes more than `budget` features. A success means the
// returned perturbation makes the best wrong class at least as confident as
// the true class.
//
//   FeatAttack        gradient-ranked top-L arms + variance-aware UCB, re-ranked
//                     and re-initialised every tau rounds.
//   FeatBAttack       same bandit over L uniformly sampled features.
//   FsgsAttack        forward stepwise greedy over every subset of the
//                     already-chosen features.
//   OmpgsAttack       FSGS restricted to the gradient top-L candidates.
//   GradAttack        greedy single flip of the best gradient slot.
//   ExhaustiveAttack  enumerates every perturbation within the budget.

#ifndef CATBREAK_ATTACKS_H_
#define CATBREAK_ATTACKS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "catbreak/bandit.h"
#include "catbreak/categorical.h"
#include "catbreak/classifier.h"

namespace catbreak {

enum class Method { kFeat, kFeatB, kFsgs, kOmpgs, kGradAttack, kExhaustive };

std::string_view MethodName(Method method);
// Accepts the CLI spellings: feat, feat-b, fsgs, ompgs, gradattack, exhaustive.
// Throws kInvalidArg otherwise.
Method ParseMethod(std::string_view name);

// How a gradient row is collapsed into one feature score for ranking.
enum class OmpScore {
  // Largest |first-order change| over the feature's admissible edits:
  // |g_iv - g_ic| for a substitution c -> v, |g_iv| for an insertion,
  // |g_ic| for a deletion.
  kEditDirectional,
  // Largest |g_ij| over admissible values j.
  kMaxAbsSlot,
  // Euclidean norm of the row over the feature's value slots.
  kRowNorm,
};

struct AttackConfig {
  int budget = 6;              // Max distinct modified features.
  double time_limit_s = 1000;  // Checked between pulls.
  int top_l = 10;
  int tau = 0;  // Inner UCB rounds per re-ranking; 0 means max(1, budget / 3).
  double alpha = 4.0;
  double lambda = 1.0;
  RewardVariant reward_variant = RewardVariant::kPerturbedBase;
  bool appendix_bonus = false;
  uint64_t seed = 0;
  bool allow_delete = false;
  Objective objective = Objective::MarginObjective();
  OmpScore omp_score = OmpScore::kEditDirectional;
  // FEAT/FEAT-B outer re-ranking rounds; 0 means ceil(budget / tau).
  int max_outer = 0;
  // Stop as soon as an applied modification misclassifies.
  bool stop_on_success = true;
  // FSGS/OMPGS: maximum number of subsets enumerated in one iteration.
  int64_t subset_cap = int64_t{1} << 12;
  // GradAttack: 0 = single best flip per iteration; d >= 1 enumerates value
  // combinations of up to d top-L features per iteration.
  int grad_combo_depth = 0;
  // Exhaustive: maximum number of evaluations.
  int64_t exhaustive_cap = 1'000'000;

  int EffectiveTau() const { return tau > 0 ? tau : (budget / 3 > 1 ? budget / 3 : 1); }
  int EffectiveMaxOuter() const;
  // Throws kInvalidArg on out-of-range fields.
  void Validate() const;
};

struct TraceStep {
  int outer = 0;     // Outer iteration (FEAT re-ranking round, greedy step).
  int inner = 0;     // Inner UCB round; 0 for greedy methods.
  int feature = -1;  // Selected arm / chosen feature.
  int value = kAbsent;
  double reward = 0.0;
  double margin = 0.0;         // Margin of the current perturbed instance.
  int64_t queries = 0;         // Cumulative confidence queries after the step.
  int64_t step_queries = 0;    // Queries spent in this step.
  std::vector<int> arms;       // FEAT: arm features of the window, arm order.
  std::vector<double> scores;  // FEAT: UCB score of every arm at selection.
  bool success_check_fired = false;
};

struct AttackResult {
  Method method = Method::kFeat;
  bool success = false;
  Perturbation perturbation;
  int changed = 0;  // |diff| between clean and returned instance.
  int64_t queries = 0;
  int64_t grad_passes = 0;
  double wall_time_s = 0.0;
  int outer_iterations = 0;
  double margin = 0.0;
  std::vector<TraceStep> trace;
};

// margin = max wrong confidence - true confidence; success iff >= 0. One query.
struct SuccessCheck {
  bool success = false;
  double margin = 0.0;
  ConfidenceVector confidences;
};
SuccessCheck CheckSuccess(ClassifierHandle& handle, const Instance& inst);

struct RankedFeatures {
  std::vector<int> features;    // At most L, best first.
  std::vector<double> scores;   // Per-feature score for every feature (0 if no alternatives).
  std::vector<double> weights;  // scores / sum(scores), all 0 when the sum is 0.
};

// Per-feature scores from a gradient grid (no classifier access).
std::vector<double> FeatureScores(const IndicatorGrid& grad, const Instance& inst,
                                  std::span<const int> values_per_feature, OmpScore score, bool allow_delete);

// Top-`l` features of `inst` by gradient score; ties go to the lower index.
// Features without admissible edits and those in `exclude` are skipped.
// One gradient pass, no confidence queries. Throws kBlackBoxModel.
RankedFeatures OmpRank(ClassifierHandle& handle, const Instance& inst, const Objective& objective, int l,
                       OmpScore score = OmpScore::kEditDirectional, bool allow_delete = false,
                       std::span<const int> exclude = {});

struct PullResult {
  int best_value = kAbsent;
  double reward = 0.0;
  int64_t queries_used = 0;
  ConfidenceVector confidences;  // Of the best alternative.
};

// Evaluates every admissible alternative of `feature` on `current` and
// returns the one with the highest reward (first on ties). `base_conf` is
// only used by kOriginalBase. Throws kNoAlternatives when there is none.
PullResult BestValuePull(ClassifierHandle& handle, const Instance& current, int feature, double lambda,
                         RewardVariant variant, std::span<const double> base_conf, bool allow_delete = false);

// Called before every FEAT inner round with the current perturbed instance.
using InnerRoundObserver = std::function<void(const Instance& current, int outer, int inner)>;

AttackResult FeatAttack(ClassifierHandle& handle, const Instance& inst, const AttackConfig& config,
                        const InnerRoundObserver& observer = {});
AttackResult FeatBAttack(ClassifierHandle& handle, const Instance& inst, const AttackConfig& config,
                         const InnerRoundObserver& observer = {});
AttackResult FsgsAttack(ClassifierHandle& handle, const Instance& inst, const AttackConfig& config);
AttackResult OmpgsAttack(ClassifierHandle& handle, const Instance& inst, const AttackConfig& config);
AttackResult GradAttack(ClassifierHandle& handle, const Instance& inst, const AttackConfig& config);
AttackResult ExhaustiveAttack(ClassifierHandle& handle, const Instance& inst, const AttackConfig& config);

AttackResult RunAttack(Method method, ClassifierHandle& handle, const Instance& inst, const AttackConfig& config);

// Evaluations ExhaustiveAttack needs for `inst` under `budget`, saturating at
// INT64_MAX.
int64_t ExhaustiveEvaluationCount(const Instance& inst, std::span<const int> values_per_feature, int budget,
                                  bool allow_delete);

}  // namespace catbreak

#endif  // CATBREAK_ATTACKS_H_
