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

// Embedding-sum MLP target classifier with hand-written backprop, plus
// synthetic generators with planted feature sensitivity.
//
// Forward pass on relaxed indicators b:
//   z_i     = sum_j b_ij e_ij                 (per-feature pooled embedding)
//   h_0     = concat_i z_i                    (length N*D)
//   h_{l+1} = relu(W_l h_l + c_l)             (hidden layers)
//   logits  = W_out h_L + c_out,  p = softmax(logits)
// With no hidden layers the first layer is the output layer.

#ifndef CATBREAK_EMBED_MLP_H_
#define CATBREAK_EMBED_MLP_H_

#include <cstdint>
#include <string>
#include <vector>

#include "catbreak/categorical.h"
#include "catbreak/classifier.h"

namespace catbreak {

// Dense layer; `weights` is row-major [out][in].
struct DenseLayer {
  int in = 0;
  int out = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  double w(int o, int i) const { return weights[static_cast<size_t>(o) * in + i]; }
};

class EmbedMlpModel final : public Classifier {
 public:
  // `layers` chain from N*D inputs to `num_classes` outputs; every layer but
  // the last is followed by a rectifier. Throws kInvalidArg on shape errors
  // and kNonFinite on non-finite parameters.
  EmbedMlpModel(EmbeddingTable embeddings, std::vector<DenseLayer> layers, uint64_t seed = 0);

  const std::vector<int>& values_per_feature() const override { return embeddings_.values_per_feature(); }
  int num_classes() const override { return layers_.back().out; }
  bool white_box() const override { return true; }

  ConfidenceVector Predict(const Instance& inst) const override;
  ConfidenceVector PredictRelaxed(const IndicatorGrid& b) const override;
  IndicatorGrid GradIndicators(const Instance& inst, const Objective& objective) const override;

  const EmbeddingTable& embeddings() const { return embeddings_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  uint64_t seed() const { return seed_; }
  int dim() const { return embeddings_.dim(); }

 private:
  // Output of the first layer (before its activation) for value j of
  // feature i at indicator 1.
  const double* Projection(int feature, int value) const {
    return projections_.data() + (proj_offsets_[feature] + static_cast<size_t>(value)) * layers_[0].out;
  }
  // Runs layers from the first-layer pre-activation onward. When
  // `pre_activations` is non-null it receives every layer's pre-activation.
  ConfidenceVector Head(std::vector<double> first, std::vector<std::vector<double>>* pre_activations) const;

  EmbeddingTable embeddings_;
  std::vector<DenseLayer> layers_;
  uint64_t seed_;
  std::vector<size_t> proj_offsets_;
  std::vector<double> projections_;
};

// Central differences of the objective through PredictRelaxed, one slot at a
// time; slots past M_i are left at 0. Throws kInvalidArg unless step > 0.
IndicatorGrid FiniteDiffGrad(const Classifier& model, const Instance& inst, const Objective& objective, double step);

struct Sensitivity {
  enum class Kind { kSkewed, kUniform };
  Kind kind = Kind::kUniform;
  int top = 0;  // kSkewed: number of planted features (features 0..top-1).

  static Sensitivity Skewed(int top) { return {Kind::kSkewed, top}; }
  static Sensitivity Uniform() { return {Kind::kUniform, 0}; }
};

struct PlantedModelSpec {
  int num_features = 20;
  int num_values = 5;
  int num_classes = 2;
  int dim = 8;
  std::vector<int> hidden = {16};
  Sensitivity sensitivity = Sensitivity::Uniform();
  // Ratio between planted and ordinary feature scales for kSkewed (>= 10).
  double planted_scale = 10.0;
  uint64_t seed = 0;
};

// Random embedding MLP. The first-layer block of every feature is first
// calibrated on a fixed random sample so that single-feature edits move the
// prediction equally, then scaled: kSkewed plants features 0..top-1 at
// `planted_scale` times the rest; kUniform draws every feature's scale from
// [0.9, 1.1]. Deterministic in `seed`.
EmbedMlpModel MakePlantedClassifier(const PlantedModelSpec& spec);

// Fully random model with Gaussian parameters, for property tests.
EmbedMlpModel MakeRandomClassifier(std::vector<int> values_per_feature, int dim, std::vector<int> hidden,
                                   int num_classes, uint64_t seed);

// Model whose prediction ignores the input: zero embeddings and weights,
// output bias = log(probs).
EmbedMlpModel MakeConstantClassifier(std::vector<int> values_per_feature, int dim, const ConfidenceVector& probs);

}  // namespace catbreak

#endif  // CATBREAK_EMBED_MLP_H_
