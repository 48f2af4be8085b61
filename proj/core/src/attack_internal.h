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

// Shared plumbing for the attack implementations. Not installed.

#ifndef CATBREAK_SRC_ATTACK_INTERNAL_H_
#define CATBREAK_SRC_ATTACK_INTERNAL_H_

#include <chrono>
#include <functional>
#include <span>
#include <vector>

#include "catbreak/attacks.h"

namespace catbreak::internal {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Counters at the start of a run, so results report per-run deltas even on a
// reused handle.
struct RunStart {
  explicit RunStart(const ClassifierHandle& handle) : queries(handle.query_count()), grads(handle.grad_count()) {}
  int64_t queries;
  int64_t grads;
};

// Fills the bookkeeping fields of `result` from the final perturbed state.
void Finish(AttackResult& result, const ClassifierHandle& handle, const RunStart& start, const Stopwatch& clock,
            const Instance& clean, const Instance& current, double margin);

// Confidences the reward baselines against: the perturbed instance's own
// (kPerturbedBase) or the clean instance's.
inline std::span<const double> RewardBase(RewardVariant variant, std::span<const double> perturbed,
                                          std::span<const double> clean) {
  return variant == RewardVariant::kPerturbedBase ? perturbed : clean;
}

// First-order change of the objective when `feature` takes `value`
// (kAbsent = delete) given the gradient at `inst`.
double FirstOrderGain(const IndicatorGrid& grad, const Instance& inst, int feature, int value);

// Indices of the top-`l` features by `scores` (stable, lower index first on
// ties), skipping `exclude` and features without admissible edits.
std::vector<int> TopFeatures(std::span<const double> scores, const Instance& inst,
                             std::span<const int> values_per_feature, int l, bool allow_delete,
                             std::span<const int> exclude);

// Visits every way of choosing exactly `k` of the option lists in `options`
// (lexicographic in list index) and one entry from each chosen list
// (odometer order). `visit(lists, picks)` receives the chosen list indices
// and the entry picked from each; returning false stops the enumeration.
// Returns false iff stopped early.
bool ForEachCombination(const std::vector<std::vector<int>>& options, int k,
                        const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& visit);

}  // namespace catbreak::internal

#endif  // CATBREAK_SRC_ATTACK_INTERNAL_H_
