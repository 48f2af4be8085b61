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

// Target-classifier contract: confidences, relaxed-indicator gradients and
// per-run query accounting.

#ifndef CATBREAK_CLASSIFIER_H_
#define CATBREAK_CLASSIFIER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "catbreak/categorical.h"

namespace catbreak {

// Class probabilities; entries in [0, 1] summing to 1.
using ConfidenceVector = std::vector<double>;

// Best wrong-class confidence minus the true-class confidence. >= 0 means the
// instance is misclassified.
double Margin(std::span<const double> conf, int true_label);

// Index of the most confident class other than `true_label` (lowest index on
// ties).
int BestWrongClass(std::span<const double> conf, int true_label);

// Index of the most confident class (lowest index on ties).
int Argmax(std::span<const double> conf);

// What a gradient pass differentiates.
struct Objective {
  enum class Kind { kMargin, kClass };
  Kind kind = Kind::kMargin;
  int target_class = 0;  // kClass only.

  static Objective MarginObjective() { return {Kind::kMargin, 0}; }
  static Objective ClassObjective(int k) { return {Kind::kClass, k}; }
};

// Value of `objective` at confidences `conf` for an instance labelled
// `true_label`.
double ObjectiveValue(std::span<const double> conf, const Objective& objective, int true_label);

// A trained decision function over categorical instances. Implementations
// are immutable; Predict and GradIndicators are pure and thread-safe.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual const std::vector<int>& values_per_feature() const = 0;
  virtual int num_classes() const = 0;
  virtual bool white_box() const = 0;

  virtual ConfidenceVector Predict(const Instance& inst) const = 0;

  // Confidences at arbitrary real indicator values (not range-checked, so
  // central differences may step past [0, 1]).
  virtual ConfidenceVector PredictRelaxed(const IndicatorGrid& b) const = 0;

  // d(objective)/d b^j_i at the instance's indicators, [N][max M]. The
  // objective's true label is `inst.label`. Throws kBlackBoxModel when not
  // white-box.
  virtual IndicatorGrid GradIndicators(const Instance& inst, const Objective& objective) const = 0;

  int num_features() const { return static_cast<int>(values_per_feature().size()); }
  int num_values(int feature) const { return values_per_feature()[feature]; }
  int max_values() const;
};

// Per-attack-run view of a classifier that counts confidence queries and
// gradient passes. A handle can hide gradients from a white-box model to
// run black-box methods against it. Not thread-safe; one per run.
class ClassifierHandle {
 public:
  explicit ClassifierHandle(const Classifier& model, bool expose_gradients = true)
      : model_(&model), white_box_(expose_gradients && model.white_box()) {}

  const Classifier& model() const { return *model_; }
  bool white_box() const { return white_box_; }

  ConfidenceVector Predict(const Instance& inst) {
    ++query_count_;
    return model_->Predict(inst);
  }

  IndicatorGrid Grad(const Instance& inst, const Objective& objective);

  int64_t query_count() const { return query_count_; }
  int64_t grad_count() const { return grad_count_; }

 private:
  const Classifier* model_;
  bool white_box_;
  int64_t query_count_ = 0;
  int64_t grad_count_ = 0;
};

// Two-class classifier whose confidences are affine in the indicators:
// p_1 = 0.5 + sum_ij w_ij b_ij, p_0 = 1 - p_1. Weights are rejected unless
// every one-hot or partially absent instance keeps p_1 in [0, 1]. Gradients
// are exact, which makes it the reference case for gradient-based ranking.
class AffineClassifier final : public Classifier {
 public:
  AffineClassifier(std::vector<int> values_per_feature, IndicatorGrid weights);

  const std::vector<int>& values_per_feature() const override { return values_per_feature_; }
  int num_classes() const override { return 2; }
  bool white_box() const override { return true; }

  ConfidenceVector Predict(const Instance& inst) const override;
  ConfidenceVector PredictRelaxed(const IndicatorGrid& b) const override;
  IndicatorGrid GradIndicators(const Instance& inst, const Objective& objective) const override;

  const IndicatorGrid& weights() const { return weights_; }

 private:
  std::vector<int> values_per_feature_;
  IndicatorGrid weights_;
};

}  // namespace catbreak

#endif  // CATBREAK_CLASSIFIER_H_
