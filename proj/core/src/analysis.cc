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

#include "catbreak/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "catbreak/error.h"

namespace catbreak {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> AverageRanks(std::span<const double> x) {
  const size_t n = x.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

uint64_t CheckedAdd(uint64_t a, uint64_t b) {
  uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::kInvalidArg, "query count overflows 64 bits");
  return out;
}

uint64_t CheckedMul(uint64_t a, uint64_t b) {
  uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::kInvalidArg, "query count overflows 64 bits");
  return out;
}

uint64_t Pow2(int64_t t) {
  if (t >= 64) throw Error(ErrorCode::kInvalidArg, "query count overflows 64 bits");
  return uint64_t{1} << t;
}

}  // namespace

SensitivityReport FeatureSensitivity(const Classifier& model, std::span<const Instance> dataset, SensitivityRule rule,
                                     SensitivityTarget target, bool allow_delete) {
  if (dataset.empty()) throw Error(ErrorCode::kEmptyDataset, "sensitivity needs at least one instance");
  const auto& m = model.values_per_feature();
  const int n = model.num_features();
  SensitivityReport report;
  report.fs.assign(n, 0.0);
  report.instances = static_cast<int>(dataset.size());
  report.rule = rule;
  report.target = target;

  for (const Instance& inst : dataset) {
    ValidateInstance(inst, m);
    const ConfidenceVector base = model.Predict(inst);
    const int k = target == SensitivityTarget::kBestWrong ? BestWrongClass(base, inst.label) : inst.label;
    const double sign = target == SensitivityTarget::kBestWrong ? 1.0 : -1.0;
    Instance probe = inst;
    for (int i = 0; i < n; ++i) {
      std::vector<int> alternatives = AlternativeValues(inst, i, m[i], allow_delete);
      if (alternatives.empty()) continue;
      if (rule == SensitivityRule::kFirstAlt) alternatives.resize(1);
      double best = -std::numeric_limits<double>::infinity();
      for (int v : alternatives) {
        probe.categories[i] = v;
        best = std::max(best, sign * (model.Predict(probe)[k] - base[k]));
      }
      probe.categories[i] = inst.categories[i];
      report.fs[i] += best;
    }
  }
  for (double& v : report.fs) v /= static_cast<double>(dataset.size());
  return report;
}

std::vector<int> TopSensitiveFeatures(const SensitivityReport& report, int k) {
  std::vector<int> order(report.fs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return report.fs[a] > report.fs[b]; });
  if (k >= 0 && static_cast<size_t>(k) < order.size()) order.resize(k);
  return order;
}

double SpearmanCorrelation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kShapeMismatch, "correlation inputs differ in length");
  if (a.size() < 2) return kNaN;
  const std::vector<double> ra = AverageRanks(a);
  const std::vector<double> rb = AverageRanks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double cov = 0.0;
  double va = 0.0;
  double vb = 0.0;
  for (size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - mean) * (rb[i] - mean);
    va += (ra[i] - mean) * (ra[i] - mean);
    vb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (va == 0.0 || vb == 0.0) return kNaN;
  return cov / std::sqrt(va * vb);
}

FidelityReport GradientIndicatorFidelity(const Classifier& model, std::span<const Instance> dataset,
                                         const Objective& objective, OmpScore score, bool allow_delete) {
  if (!model.white_box()) throw Error(ErrorCode::kBlackBoxModel, "fidelity needs gradients");
  if (dataset.empty()) throw Error(ErrorCode::kEmptyDataset, "fidelity needs at least one instance");
  const auto& m = model.values_per_feature();
  const int n = model.num_features();

  FidelityReport report;
  double sum = 0.0;
  for (const Instance& inst : dataset) {
    ValidateInstance(inst, m);
    const IndicatorGrid grad = model.GradIndicators(inst, objective);
    const std::vector<double> scores = FeatureScores(grad, inst, m, score, allow_delete);
    const double base = ObjectiveValue(model.Predict(inst), objective, inst.label);
    std::vector<double> changes(n, 0.0);
    Instance probe = inst;
    for (int i = 0; i < n; ++i) {
      for (int v : AlternativeValues(inst, i, m[i], allow_delete)) {
        probe.categories[i] = v;
        changes[i] = std::max(changes[i], std::abs(ObjectiveValue(model.Predict(probe), objective, inst.label) - base));
      }
      probe.categories[i] = inst.categories[i];
    }
    const double rho = SpearmanCorrelation(scores, changes);
    report.per_instance.push_back(rho);
    if (!std::isnan(rho)) {
      sum += rho;
      ++report.used_instances;
    }
  }
  report.degenerate = report.used_instances == 0;
  report.correlation = report.degenerate ? kNaN : sum / report.used_instances;
  return report;
}

StationarityReport StationarityRatio(const Classifier& model, const Instance& inst, std::span<const int> features,
                                     int window, const AttackConfig& config, DispersionRatio ratio) {
  if (window < 2) throw Error(ErrorCode::kInvalidArg, "stationarity window must be at least 2");
  for (int f : features) {
    if (f < 0 || f >= model.num_features()) throw Error(ErrorCode::kInvalidArg, "feature index out of range");
  }
  StationarityReport report;
  report.features.assign(features.begin(), features.end());
  report.rewards.assign(features.size(), {});
  report.window = window;
  report.ratio = ratio;

  AttackConfig run = config;
  run.tau = window;
  run.max_outer = 1;
  run.stop_on_success = false;
  run.budget = std::max(run.budget, window);

  ClassifierHandle attack_handle(model);
  ClassifierHandle probe_handle(model);
  const ConfidenceVector clean = model.Predict(inst);
  FeatAttack(attack_handle, inst, run, [&](const Instance& current, int, int) {
    for (size_t f = 0; f < features.size(); ++f) {
      const PullResult pull =
          BestValuePull(probe_handle, current, features[f], run.lambda, run.reward_variant, clean, run.allow_delete);
      report.rewards[f].push_back(pull.reward);
    }
  });

  for (const std::vector<double>& g : report.rewards) {
    if (g.empty()) {
      report.ratios.push_back(0.0);
      continue;
    }
    const double count = static_cast<double>(g.size());
    const double mean = std::accumulate(g.begin(), g.end(), 0.0) / count;
    double var = 0.0;
    for (double x : g) var += (x - mean) * (x - mean);
    var /= count;
    const double spread = ratio == DispersionRatio::kStdOverMean ? std::sqrt(var) : var;
    report.ratios.push_back(mean > 0.0 ? spread / mean : std::numeric_limits<double>::infinity());
  }
  return report;
}

uint64_t ComplexityFormula(Method method, const ComplexityParams& p) {
  if (p.t < 0) throw Error(ErrorCode::kInvalidArg, "T must be >= 0");
  auto require = [](int64_t v, const char* name) {
    if (v < 1) throw Error(ErrorCode::kInvalidArg, std::string(name) + " must be positive");
    return static_cast<uint64_t>(v);
  };
  const uint64_t t = static_cast<uint64_t>(p.t);
  switch (method) {
    case Method::kFsgs: {
      const uint64_t n = require(p.n, "N");
      const uint64_t m = require(p.m, "M");
      uint64_t total = 0;
      for (uint64_t s = 0; s <= t && s < n; ++s) total = CheckedAdd(total, CheckedMul(CheckedMul(n - s, m), Pow2(s)));
      return total;
    }
    case Method::kGradAttack: {
      const uint64_t l = require(p.l, "L");
      const uint64_t m = require(p.m, "M");
      uint64_t sum = 0;
      uint64_t binom = 1;
      uint64_t power = 1;
      for (uint64_t k = 0; k <= l; ++k) {
        sum = CheckedAdd(sum, CheckedMul(binom, power));
        if (k == l) break;
        // C(L, k+1) = C(L, k) * (L - k) / (k + 1), exact in this order.
        binom = CheckedMul(binom, l - k) / (k + 1);
        power = CheckedMul(power, m);
      }
      return CheckedMul(t, sum);
    }
    case Method::kOmpgs: {
      const uint64_t l = require(p.l, "L");
      uint64_t total = 0;
      for (uint64_t s = 0; s <= t; ++s) total = CheckedAdd(total, CheckedMul(l, Pow2(static_cast<int64_t>(s))));
      return total;
    }
    case Method::kFeatB: return CheckedAdd(CheckedMul(require(p.l, "L"), require(p.m, "M")), t);
    case Method::kFeat:
      return CheckedMul(CheckedAdd(CheckedMul(require(p.l, "L"), require(p.m, "M")), require(p.tau, "tau")), t);
    case Method::kExhaustive: break;
  }
  throw Error(ErrorCode::kInvalidArg, "no closed-form count for " + std::string(MethodName(method)));
}

}  // namespace catbreak
