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

#include "catbreak/bandit.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "catbreak/error.h"

namespace catbreak {

double Reward(std::span<const double> conf_pert, std::span<const double> conf_base, int true_label, double lambda) {
  const int k = static_cast<int>(conf_pert.size());
  if (conf_base.size() != conf_pert.size() || k < 2 || true_label < 0 || true_label >= k) {
    throw Error(ErrorCode::kShapeMismatch, "reward needs two confidence vectors of equal length and a valid label");
  }
  double best_wrong = -1.0;
  for (int c = 0; c < k; ++c) {
    if (c != true_label) best_wrong = std::max(best_wrong, conf_pert[c]);
  }
  return best_wrong - conf_base[true_label] + lambda;
}

double ArmStats::mean() const {
  if (pulls_ == 0) throw Error(ErrorCode::kUnpulledArm, "arm has no observed reward");
  return mean_;
}

double ArmStats::variance() const {
  if (pulls_ == 0) throw Error(ErrorCode::kUnpulledArm, "arm has no observed reward");
  return m2_ / static_cast<double>(pulls_);
}

void ArmStats::Update(double reward) {
  if (!std::isfinite(reward)) throw Error(ErrorCode::kNonFinite, "reward is not finite");
  ++pulls_;
  const double delta = reward - mean_;
  mean_ += delta / static_cast<double>(pulls_);
  m2_ += delta * (reward - mean_);
}

double UcbScore(const ArmStats& stats, int64_t t, double alpha, bool appendix_bonus) {
  if (stats.unpulled()) throw Error(ErrorCode::kUnpulledArm, "UCB score of an unpulled arm");
  if (t < stats.pulls()) throw Error(ErrorCode::kInvalidArg, "round count below the arm's pull count");
  const double log_t = std::log(static_cast<double>(t));
  const double pulls = static_cast<double>(stats.pulls());
  const double bonus = appendix_bonus ? alpha * alpha * log_t / pulls : log_t / pulls;
  return stats.mean() + std::sqrt(alpha * stats.variance() * log_t / pulls) + bonus;
}

int SelectArm(std::span<const ArmStats> arms, int64_t t, const BanditConfig& config, std::vector<double>* scores) {
  if (scores != nullptr) scores->clear();
  int best = -1;
  double best_score = 0.0;
  for (int l = 0; l < static_cast<int>(arms.size()); ++l) {
    const double b = UcbScore(arms[l], t, config.alpha, config.appendix_bonus);
    if (scores != nullptr) scores->push_back(b);
    if (best < 0 || b > best_score) {
      best = l;
      best_score = b;
    }
  }
  return best;
}

double RegretBound(std::span<const ArmGap> arms, int64_t horizon, double alpha) {
  if (!(alpha > 2.0)) throw Error(ErrorCode::kInvalidAlpha, "the regret bound needs alpha > 2");
  if (horizon < 1) throw Error(ErrorCode::kInvalidArg, "horizon must be at least 1");
  const double log_t = std::log(static_cast<double>(horizon));
  const double tail = alpha / (alpha - 2.0);
  double total = 0.0;
  for (const ArmGap& arm : arms) {
    if (!(arm.gap > 0.0)) throw Error(ErrorCode::kInvalidGap, "included arms need a positive gap");
    total += 8.0 * (arm.variance / arm.gap + 2.0) * log_t + tail * arm.gap;
  }
  return total;
}

double RegretBoundForMeans(std::span<const double> means, std::span<const double> variances, int64_t horizon,
                           double alpha) {
  if (means.size() != variances.size() || means.empty()) {
    throw Error(ErrorCode::kInvalidArg, "need one variance per arm mean");
  }
  const double best = *std::max_element(means.begin(), means.end());
  std::vector<ArmGap> gaps;
  for (size_t l = 0; l < means.size(); ++l) {
    if (best - means[l] > 0.0) gaps.push_back({best - means[l], variances[l]});
  }
  return RegretBound(gaps, horizon, alpha);
}

SimulationReport SimulateBandit(std::span<const ArmSpec> arms, int64_t horizon, const BanditConfig& config,
                                std::span<const uint64_t> seeds) {
  const int num_arms = static_cast<int>(arms.size());
  if (num_arms < 2) throw Error(ErrorCode::kInvalidArg, "simulation needs at least two arms");
  if (horizon < num_arms) throw Error(ErrorCode::kInvalidArg, "horizon must cover one pull per arm");
  if (seeds.empty()) throw Error(ErrorCode::kInvalidArg, "simulation needs at least one seed");

  std::vector<double> means;
  std::vector<double> variances;
  for (const ArmSpec& arm : arms) {
    if (arm.distribution == ArmDistribution::kBernoulli) {
      if (arm.mean < 0.0 || arm.mean > 1.0) throw Error(ErrorCode::kInvalidArg, "Bernoulli mean outside [0, 1]");
      means.push_back(arm.mean);
      variances.push_back(arm.mean * (1.0 - arm.mean));
    } else {
      if (arm.variance < 0.0) throw Error(ErrorCode::kInvalidArg, "negative arm variance");
      means.push_back(arm.mean);
      variances.push_back(arm.variance);
    }
  }
  const double best_mean = *std::max_element(means.begin(), means.end());

  SimulationReport report;
  report.per_arm_pulls.assign(num_arms, 0.0);
  for (uint64_t seed : seeds) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    auto draw = [&](int l) {
      const ArmSpec& arm = arms[l];
      if (arm.distribution == ArmDistribution::kBernoulli) return uniform(rng) < arm.mean ? 1.0 : 0.0;
      const double x = arm.mean + std::sqrt(arm.variance) * normal(rng);
      return std::clamp(x, 0.0, 2.0 * config.lambda);
    };

    std::vector<ArmStats> stats(num_arms);
    int64_t t = 0;
    for (int l = 0; l < num_arms; ++l) {
      stats[l].Update(draw(l));
      ++t;
    }
    for (; t < horizon; ++t) {
      const int l = SelectArm(stats, t, config);
      stats[l].Update(draw(l));
    }
    double regret = 0.0;
    for (int l = 0; l < num_arms; ++l) {
      regret += static_cast<double>(stats[l].pulls()) * (best_mean - means[l]);
      report.per_arm_pulls[l] += static_cast<double>(stats[l].pulls());
    }
    report.per_seed_regret.push_back(regret);
  }

  const double count = static_cast<double>(seeds.size());
  for (double& p : report.per_arm_pulls) p /= count;
  double sum = 0.0;
  for (double r : report.per_seed_regret) sum += r;
  report.empirical_regret_mean = sum / count;
  double sq = 0.0;
  for (double r : report.per_seed_regret) sq += (r - report.empirical_regret_mean) * (r - report.empirical_regret_mean);
  report.empirical_regret_stddev = std::sqrt(sq / count);
  report.bound = config.alpha > 2.0 ? RegretBoundForMeans(means, variances, horizon, config.alpha) : 0.0;
  return report;
}

}  // namespace catbreak
