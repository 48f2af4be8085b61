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

#include "catbreak/embed_mlp.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "catbreak/error.h"

namespace catbreak {
namespace {

void Softmax(std::vector<double>& logits) {
  for (double z : logits) {
    if (!std::isfinite(z)) throw Error(ErrorCode::kNonFinite, "logit is not finite");
  }
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double& z : logits) {
    z = std::exp(z - top);
    sum += z;
  }
  for (double& z : logits) z /= sum;
}

void Relu(std::vector<double>& v) {
  for (double& x : v) x = x > 0.0 ? x : 0.0;
}

std::vector<double> Affine(const DenseLayer& layer, const std::vector<double>& in) {
  std::vector<double> out(layer.bias);
  for (int o = 0; o < layer.out; ++o) {
    const double* row = layer.weights.data() + static_cast<size_t>(o) * layer.in;
    double acc = 0.0;
    for (int i = 0; i < layer.in; ++i) acc += row[i] * in[i];
    out[o] += acc;
  }
  return out;
}

DenseLayer GaussianLayer(int in, int out, double weight_std, double bias_std, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseLayer layer{in, out, std::vector<double>(static_cast<size_t>(in) * out), std::vector<double>(out)};
  for (double& w : layer.weights) w = weight_std * normal(rng);
  for (double& b : layer.bias) b = bias_std * normal(rng);
  return layer;
}

}  // namespace

EmbedMlpModel::EmbedMlpModel(EmbeddingTable embeddings, std::vector<DenseLayer> layers, uint64_t seed)
    : embeddings_(std::move(embeddings)), layers_(std::move(layers)), seed_(seed) {
  if (layers_.empty()) throw Error(ErrorCode::kInvalidArg, "model needs at least one layer");
  const int input = embeddings_.num_features() * embeddings_.dim();
  int expected_in = input;
  for (const DenseLayer& layer : layers_) {
    if (layer.in != expected_in || layer.out <= 0 ||
        layer.weights.size() != static_cast<size_t>(layer.in) * layer.out ||
        layer.bias.size() != static_cast<size_t>(layer.out)) {
      throw Error(ErrorCode::kInvalidArg, "layer shapes do not chain from N*D=" + std::to_string(input));
    }
    for (double w : layer.weights) {
      if (!std::isfinite(w)) throw Error(ErrorCode::kNonFinite, "weight is not finite");
    }
    for (double b : layer.bias) {
      if (!std::isfinite(b)) throw Error(ErrorCode::kNonFinite, "bias is not finite");
    }
    expected_in = layer.out;
  }
  if (layers_.back().out < 2) throw Error(ErrorCode::kInvalidArg, "model needs at least two classes");

  // projections_[(i, j)] = W_0[:, block i] * e_ij.
  const DenseLayer& first = layers_[0];
  const int d = embeddings_.dim();
  size_t slots = 0;
  proj_offsets_.reserve(embeddings_.num_features());
  for (int i = 0; i < embeddings_.num_features(); ++i) {
    proj_offsets_.push_back(slots);
    slots += embeddings_.num_values(i);
  }
  projections_.assign(slots * first.out, 0.0);
  for (int i = 0; i < embeddings_.num_features(); ++i) {
    for (int j = 0; j < embeddings_.num_values(i); ++j) {
      auto e = embeddings_.vector(i, j);
      double* out = projections_.data() + (proj_offsets_[i] + j) * first.out;
      for (int o = 0; o < first.out; ++o) {
        const double* w = first.weights.data() + static_cast<size_t>(o) * first.in + static_cast<size_t>(i) * d;
        double acc = 0.0;
        for (int k = 0; k < d; ++k) acc += w[k] * e[k];
        out[o] = acc;
      }
    }
  }
}

ConfidenceVector EmbedMlpModel::Head(std::vector<double> first,
                                     std::vector<std::vector<double>>* pre_activations) const {
  std::vector<double> h = std::move(first);
  for (size_t l = 1; l < layers_.size(); ++l) {
    if (pre_activations != nullptr) pre_activations->push_back(h);
    Relu(h);
    h = Affine(layers_[l], h);
  }
  if (pre_activations != nullptr) pre_activations->push_back(h);
  Softmax(h);
  return h;
}

ConfidenceVector EmbedMlpModel::Predict(const Instance& inst) const {
  ValidateInstance(inst, embeddings_.values_per_feature());
  const int width = layers_[0].out;
  std::vector<double> first(layers_[0].bias);
  for (int i = 0; i < inst.num_features(); ++i) {
    const int c = inst.categories[i];
    if (c == kAbsent) continue;
    const double* p = Projection(i, c);
    for (int o = 0; o < width; ++o) first[o] += p[o];
  }
  return Head(std::move(first), nullptr);
}

ConfidenceVector EmbedMlpModel::PredictRelaxed(const IndicatorGrid& b) const {
  if (b.rows() != embeddings_.num_features() || b.cols() != embeddings_.max_values()) {
    throw Error(ErrorCode::kShapeMismatch, "relaxed indicators do not match the model");
  }
  const int width = layers_[0].out;
  std::vector<double> first(layers_[0].bias);
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < embeddings_.num_values(i); ++j) {
      const double v = b(i, j);
      if (v == 0.0) continue;
      const double* p = Projection(i, j);
      for (int o = 0; o < width; ++o) first[o] += v * p[o];
    }
  }
  return Head(std::move(first), nullptr);
}

IndicatorGrid EmbedMlpModel::GradIndicators(const Instance& inst, const Objective& objective) const {
  ValidateInstance(inst, embeddings_.values_per_feature());
  const int width = layers_[0].out;
  std::vector<double> first(layers_[0].bias);
  for (int i = 0; i < inst.num_features(); ++i) {
    const int c = inst.categories[i];
    if (c == kAbsent) continue;
    const double* p = Projection(i, c);
    for (int o = 0; o < width; ++o) first[o] += p[o];
  }
  std::vector<std::vector<double>> pre;
  const ConfidenceVector probs = Head(std::move(first), &pre);
  const int k_classes = static_cast<int>(probs.size());
  if (inst.label < 0 || inst.label >= k_classes) throw Error(ErrorCode::kShapeMismatch, "label out of range");

  // Objective = sum_k coef_k p_k; through softmax d/dz_m = p_m (coef_m - sum_k coef_k p_k).
  std::vector<double> coef(k_classes, 0.0);
  if (objective.kind == Objective::Kind::kMargin) {
    coef[BestWrongClass(probs, inst.label)] = 1.0;
    coef[inst.label] = -1.0;
  } else {
    if (objective.target_class < 0 || objective.target_class >= k_classes) {
      throw Error(ErrorCode::kShapeMismatch, "objective class out of range");
    }
    coef[objective.target_class] = 1.0;
  }
  double mean = 0.0;
  for (int k = 0; k < k_classes; ++k) mean += coef[k] * probs[k];
  std::vector<double> delta(k_classes);
  for (int k = 0; k < k_classes; ++k) delta[k] = probs[k] * (coef[k] - mean);

  // Back through layers L-1..1 to the first layer's pre-activation.
  for (size_t l = layers_.size() - 1; l >= 1; --l) {
    const DenseLayer& layer = layers_[l];
    const std::vector<double>& below = pre[l - 1];
    std::vector<double> next(layer.in, 0.0);
    for (int o = 0; o < layer.out; ++o) {
      const double d = delta[o];
      if (d == 0.0) continue;
      const double* row = layer.weights.data() + static_cast<size_t>(o) * layer.in;
      for (int i = 0; i < layer.in; ++i) next[i] += row[i] * d;
    }
    for (int i = 0; i < layer.in; ++i) {
      if (below[i] <= 0.0) next[i] = 0.0;
    }
    delta = std::move(next);
  }

  IndicatorGrid grad(embeddings_.num_features(), embeddings_.max_values());
  for (int i = 0; i < grad.rows(); ++i) {
    for (int j = 0; j < embeddings_.num_values(i); ++j) {
      const double* p = Projection(i, j);
      double acc = 0.0;
      for (int o = 0; o < width; ++o) acc += p[o] * delta[o];
      grad(i, j) = acc;
    }
  }
  return grad;
}

IndicatorGrid FiniteDiffGrad(const Classifier& model, const Instance& inst, const Objective& objective, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::kInvalidArg, "finite-difference step must be positive");
  const IndicatorGrid base = [&] {
    ValidateInstance(inst, model.values_per_feature());
    IndicatorGrid b(model.num_features(), model.max_values());
    for (int i = 0; i < inst.num_features(); ++i) {
      if (inst.categories[i] != kAbsent) b(i, inst.categories[i]) = 1.0;
    }
    return b;
  }();
  IndicatorGrid grad(base.rows(), base.cols());
  IndicatorGrid probe = base;
  for (int i = 0; i < base.rows(); ++i) {
    for (int j = 0; j < model.num_values(i); ++j) {
      probe(i, j) = base(i, j) + step;
      const double up = ObjectiveValue(model.PredictRelaxed(probe), objective, inst.label);
      probe(i, j) = base(i, j) - step;
      const double down = ObjectiveValue(model.PredictRelaxed(probe), objective, inst.label);
      probe(i, j) = base(i, j);
      grad(i, j) = (up - down) / (2.0 * step);
    }
  }
  return grad;
}

namespace {

void ScaleFeatureBlock(DenseLayer& layer, int feature, int dim, double factor) {
  for (int o = 0; o < layer.out; ++o) {
    for (int k = 0; k < dim; ++k) layer.weights[static_cast<size_t>(o) * layer.in + feature * dim + k] *= factor;
  }
}

// Mean over `sample` of the largest rise of the best wrong class when only
// feature i changes, per feature.
std::vector<double> SingleEditSensitivity(const EmbedMlpModel& model, const std::vector<Instance>& sample) {
  const int n = model.num_features();
  std::vector<double> fs(n, 0.0);
  for (const Instance& base : sample) {
    const ConfidenceVector p = model.Predict(base);
    const int y = Argmax(p);
    const int wrong = BestWrongClass(p, y);
    Instance probe = base;
    for (int i = 0; i < n; ++i) {
      double best = -1.0;
      for (int v = 0; v < model.num_values(i); ++v) {
        if (v == base.categories[i]) continue;
        probe.categories[i] = v;
        best = std::max(best, model.Predict(probe)[wrong] - p[wrong]);
      }
      probe.categories[i] = base.categories[i];
      fs[i] += std::max(best, 0.0) / sample.size();
    }
  }
  return fs;
}

// Rescales the first-layer block of every feature so that all features move
// the prediction by about the same amount on random inputs.
void CalibrateFeatureBlocks(const EmbeddingTable& table, std::vector<DenseLayer>& layers, int num_values,
                            uint64_t seed) {
  constexpr int kSample = 64;
  constexpr int kRounds = 6;
  if (num_values < 2) return;
  const int n = table.num_features();
  std::mt19937_64 rng(seed ^ 0x5eed5eed5eed5eedULL);
  std::uniform_int_distribution<int> value(0, num_values - 1);
  std::vector<Instance> sample(kSample);
  for (Instance& inst : sample) {
    for (int i = 0; i < n; ++i) inst.categories.push_back(value(rng));
  }
  for (int round = 0; round < kRounds; ++round) {
    const EmbedMlpModel model(table, layers);
    const std::vector<double> fs = SingleEditSensitivity(model, sample);
    double log_mean = 0.0;
    int positive = 0;
    for (double f : fs) {
      if (f > 0.0) {
        log_mean += std::log(f);
        ++positive;
      }
    }
    if (positive == 0) return;
    const double target = std::exp(log_mean / positive);
    for (int i = 0; i < n; ++i) {
      if (fs[i] > 0.0) ScaleFeatureBlock(layers.front(), i, table.dim(), std::clamp(target / fs[i], 0.25, 4.0));
    }
  }
}

}  // namespace

EmbedMlpModel MakePlantedClassifier(const PlantedModelSpec& spec) {
  if (spec.num_features <= 0 || spec.num_values <= 0 || spec.num_classes < 2 || spec.dim <= 0) {
    throw Error(ErrorCode::kInvalidArg, "planted model needs positive n, m, d and k >= 2");
  }
  if (spec.sensitivity.kind == Sensitivity::Kind::kSkewed &&
      (spec.sensitivity.top < 1 || spec.sensitivity.top > spec.num_features)) {
    throw Error(ErrorCode::kInvalidArg, "planted feature count must lie in [1, n]");
  }
  if (spec.planted_scale < 10.0) throw Error(ErrorCode::kInvalidArg, "planted scale must be at least 10");
  for (int h : spec.hidden) {
    if (h <= 0) throw Error(ErrorCode::kInvalidArg, "hidden widths must be positive");
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> band(0.9, 1.1);

  const int n = spec.num_features;
  const int d = spec.dim;
  std::vector<double> vectors(static_cast<size_t>(n) * spec.num_values * d);
  for (double& v : vectors) v = normal(rng);
  EmbeddingTable table(std::vector<int>(n, spec.num_values), d, std::move(vectors));

  std::vector<double> feature_scale(n, 1.0);
  if (spec.sensitivity.kind == Sensitivity::Kind::kSkewed) {
    for (int i = 0; i < spec.sensitivity.top; ++i) feature_scale[i] = spec.planted_scale;
  } else {
    for (double& s : feature_scale) s = band(rng);
  }

  // Unit-scale features each add O(1/sqrt(n)) to a first-layer unit.
  std::vector<DenseLayer> layers;
  int in = n * d;
  const int first_out = spec.hidden.empty() ? spec.num_classes : spec.hidden.front();
  DenseLayer first = GaussianLayer(in, first_out, 1.0 / std::sqrt(static_cast<double>(n) * d), 0.1, rng);
  layers.push_back(std::move(first));
  in = first_out;
  for (size_t l = 1; l <= spec.hidden.size(); ++l) {
    const int out = l < spec.hidden.size() ? spec.hidden[l] : spec.num_classes;
    layers.push_back(GaussianLayer(in, out, std::sqrt(2.0 / in), 0.1, rng));
    in = out;
  }
  CalibrateFeatureBlocks(table, layers, spec.num_values, spec.seed);
  for (int i = 0; i < n; ++i) ScaleFeatureBlock(layers.front(), i, d, feature_scale[i]);
  return EmbedMlpModel(std::move(table), std::move(layers), spec.seed);
}

EmbedMlpModel MakeRandomClassifier(std::vector<int> values_per_feature, int dim, std::vector<int> hidden,
                                   int num_classes, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  size_t total = 0;
  for (int m : values_per_feature) total += static_cast<size_t>(m) * dim;
  std::vector<double> vectors(total);
  for (double& v : vectors) v = normal(rng);
  const int n = static_cast<int>(values_per_feature.size());
  EmbeddingTable table(std::move(values_per_feature), dim, std::move(vectors));
  std::vector<DenseLayer> layers;
  int in = n * dim;
  for (size_t l = 0; l <= hidden.size(); ++l) {
    const int out = l < hidden.size() ? hidden[l] : num_classes;
    layers.push_back(GaussianLayer(in, out, std::sqrt(2.0 / in), 0.5, rng));
    in = out;
  }
  return EmbedMlpModel(std::move(table), std::move(layers), seed);
}

EmbedMlpModel MakeConstantClassifier(std::vector<int> values_per_feature, int dim, const ConfidenceVector& probs) {
  const int n = static_cast<int>(values_per_feature.size());
  const int k = static_cast<int>(probs.size());
  DenseLayer out{n * dim, k, std::vector<double>(static_cast<size_t>(n) * dim * k, 0.0), std::vector<double>(k)};
  for (int c = 0; c < k; ++c) {
    if (!(probs[c] > 0.0)) throw Error(ErrorCode::kInvalidArg, "constant probabilities must be positive");
    out.bias[c] = std::log(probs[c]);
  }
  return EmbedMlpModel(EmbeddingTable::Zeros(std::move(values_per_feature), dim), {std::move(out)}, 0);
}

}  // namespace catbreak
