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

#include "catbreak/classifier.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "catbreak/error.h"

namespace catbreak {

int BestWrongClass(std::span<const double> conf, int true_label) {
  int best = -1;
  for (int k = 0; k < static_cast<int>(conf.size()); ++k) {
    if (k == true_label) continue;
    if (best < 0 || conf[k] > conf[best]) best = k;
  }
  return best;
}

int Argmax(std::span<const double> conf) {
  return static_cast<int>(std::max_element(conf.begin(), conf.end()) - conf.begin());
}

double Margin(std::span<const double> conf, int true_label) {
  if (true_label < 0 || true_label >= static_cast<int>(conf.size()) || conf.size() < 2) {
    throw Error(ErrorCode::kShapeMismatch,
                "label " + std::to_string(true_label) + " invalid for " + std::to_string(conf.size()) + " classes");
  }
  return conf[BestWrongClass(conf, true_label)] - conf[true_label];
}

double ObjectiveValue(std::span<const double> conf, const Objective& objective, int true_label) {
  if (objective.kind == Objective::Kind::kMargin) return Margin(conf, true_label);
  if (objective.target_class < 0 || objective.target_class >= static_cast<int>(conf.size())) {
    throw Error(ErrorCode::kShapeMismatch, "objective class out of range");
  }
  return conf[objective.target_class];
}

int Classifier::max_values() const {
  const auto& m = values_per_feature();
  return m.empty() ? 0 : *std::max_element(m.begin(), m.end());
}

IndicatorGrid ClassifierHandle::Grad(const Instance& inst, const Objective& objective) {
  if (!white_box_) throw Error(ErrorCode::kBlackBoxModel, "gradients are not exposed by this classifier handle");
  ++grad_count_;
  return model_->GradIndicators(inst, objective);
}

AffineClassifier::AffineClassifier(std::vector<int> values_per_feature, IndicatorGrid weights)
    : values_per_feature_(std::move(values_per_feature)), weights_(std::move(weights)) {
  const int n = static_cast<int>(values_per_feature_.size());
  const int max_m = n == 0 ? 0 : *std::max_element(values_per_feature_.begin(), values_per_feature_.end());
  if (weights_.rows() != n || weights_.cols() != max_m) {
    throw Error(ErrorCode::kShapeMismatch, "affine weights do not match the feature layout");
  }
  double reach = 0.0;
  for (int i = 0; i < n; ++i) {
    double row_max = 0.0;
    for (int j = 0; j < max_m; ++j) {
      const double w = weights_(i, j);
      if (!std::isfinite(w)) throw Error(ErrorCode::kNonFinite, "affine weight is not finite");
      if (j >= values_per_feature_[i] && w != 0.0) {
        throw Error(ErrorCode::kShapeMismatch, "nonzero weight at a nonexistent value slot");
      }
      row_max = std::max(row_max, std::abs(w));
    }
    reach += row_max;
  }
  if (reach > 0.5) throw Error(ErrorCode::kInvalidArg, "affine weights can push p_1 outside [0, 1]");
}

ConfidenceVector AffineClassifier::Predict(const Instance& inst) const {
  ValidateInstance(inst, values_per_feature_);
  double p1 = 0.5;
  for (int i = 0; i < inst.num_features(); ++i) {
    if (inst.categories[i] != kAbsent) p1 += weights_(i, inst.categories[i]);
  }
  return {1.0 - p1, p1};
}

ConfidenceVector AffineClassifier::PredictRelaxed(const IndicatorGrid& b) const {
  if (b.rows() != weights_.rows() || b.cols() != weights_.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "relaxed indicators do not match the affine classifier");
  }
  double p1 = 0.5;
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) p1 += weights_(i, j) * b(i, j);
  }
  return {1.0 - p1, p1};
}

IndicatorGrid AffineClassifier::GradIndicators(const Instance& inst, const Objective& objective) const {
  ValidateInstance(inst, values_per_feature_);
  // d p_1 / d b = w, d p_0 / d b = -w.
  double coef = 0.0;
  if (objective.kind == Objective::Kind::kMargin) {
    if (inst.label < 0 || inst.label > 1) throw Error(ErrorCode::kShapeMismatch, "label out of range");
    coef = inst.label == 1 ? -2.0 : 2.0;
  } else {
    if (objective.target_class < 0 || objective.target_class > 1) {
      throw Error(ErrorCode::kShapeMismatch, "objective class out of range");
    }
    coef = objective.target_class == 1 ? 1.0 : -1.0;
  }
  IndicatorGrid g(weights_.rows(), weights_.cols());
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) g(i, j) = coef * weights_(i, j);
  }
  return g;
}

}  // namespace catbreak
