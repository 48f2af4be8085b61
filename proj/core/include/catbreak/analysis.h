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

// Empirical diagnostics: per-feature sensitivity, how well gradient scores
// rank true single-edit effects, reward stationarity inside one FEAT window,
// and closed-form query counts of the attack methods.

#ifndef CATBREAK_ANALYSIS_H_
#define CATBREAK_ANALYSIS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "catbreak/attacks.h"
#include "catbreak/categorical.h"
#include "catbreak/classifier.h"

namespace catbreak {

enum class SensitivityRule {
  kMaxValue,  // Largest change over the feature's admissible values.
  kFirstAlt,  // Change for the first admissible value only.
};

enum class SensitivityTarget {
  kBestWrong,  // Rise of the instance's best wrong class.
  kTrueDrop,   // Fall of the true class.
};

struct SensitivityReport {
  std::vector<double> fs;  // One entry per feature, in [-1, 1].
  int instances = 0;
  SensitivityRule rule = SensitivityRule::kMaxValue;
  SensitivityTarget target = SensitivityTarget::kBestWrong;
};

// FS_i = mean over instances of the confidence change of the target class
// when only feature i is edited. Throws kEmptyDataset.
SensitivityReport FeatureSensitivity(const Classifier& model, std::span<const Instance> dataset,
                                     SensitivityRule rule = SensitivityRule::kMaxValue,
                                     SensitivityTarget target = SensitivityTarget::kBestWrong,
                                     bool allow_delete = false);

// Indices of the `k` largest FS_i, largest first (lower index on ties).
std::vector<int> TopSensitiveFeatures(const SensitivityReport& report, int k);

struct FidelityReport {
  double correlation = 0.0;  // NaN when every instance is degenerate.
  bool degenerate = false;
  int used_instances = 0;            // Instances with non-constant scores and changes.
  std::vector<double> per_instance;  // NaN marks a degenerate instance.
};

// Spearman rank correlation (average ranks for ties) between the gradient
// feature scores and max_v |obj(x with feature i = v) - obj(x)|, averaged
// over instances. Throws kBlackBoxModel, kEmptyDataset.
FidelityReport GradientIndicatorFidelity(const Classifier& model, std::span<const Instance> dataset,
                                         const Objective& objective = Objective::MarginObjective(),
                                         OmpScore score = OmpScore::kEditDirectional, bool allow_delete = false);

// Spearman correlation with average ranks; NaN if either side is constant.
double SpearmanCorrelation(std::span<const double> a, std::span<const double> b);

enum class DispersionRatio { kStdOverMean, kVarianceOverMean };

struct StationarityReport {
  std::vector<int> features;
  std::vector<double> ratios;  // Per feature, >= 0.
  // rewards[f][r]: best-pull reward of features[f] before inner round r.
  std::vector<std::vector<double>> rewards;
  int window = 0;
  DispersionRatio ratio = DispersionRatio::kStdOverMean;
};

// Runs one FEAT window of `window` inner rounds on `inst` (no early stop on
// success) and, before every round, measures each listed feature's best-pull
// reward on the current perturbed instance outside the attack's accounting.
// `config` supplies L, alpha, lambda, the reward variant and the objective.
// Throws kInvalidArg if window < 2.
StationarityReport StationarityRatio(const Classifier& model, const Instance& inst, std::span<const int> features,
                                     int window, const AttackConfig& config = {},
                                     DispersionRatio ratio = DispersionRatio::kStdOverMean);

struct ComplexityParams {
  int64_t n = 0;    // Features.
  int64_t m = 0;    // Values per feature.
  int64_t l = 0;    // Top-L candidates.
  int64_t t = 0;    // Iterations.
  int64_t tau = 0;  // FEAT inner rounds.
};

// Closed-form confidence-query counts:
//   FSGS        sum_{t=0..T} (N - t) * M * 2^t
//   GradAttack  T * sum_{k=0..L} C(L, k) * M^k
//   OMPGS       sum_{t=0..T} L * 2^t
//   FEAT-B      L * M + T
//   FEAT        (L * M + tau) * T
// Throws kInvalidArg for other methods, non-positive sizes, negative T and
// results beyond 2^64 - 1.
uint64_t ComplexityFormula(Method method, const ComplexityParams& params);

}  // namespace catbreak

#endif  // CATBREAK_ANALYSIS_H_
