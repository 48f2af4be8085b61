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

// Variance-aware UCB machinery: the attack reward, arm statistics, the UCB
// score, the expected-regret bound and a stationary bandit simulator used to
// check that bound.

#ifndef CATBREAK_BANDIT_H_
#define CATBREAK_BANDIT_H_

#include <cstdint>
#include <span>
#include <vector>

namespace catbreak {

enum class RewardVariant {
  // Baseline the true-class confidence on the perturbed instance, so that
  // reward >= lambda exactly when the perturbed instance is misclassified.
  kPerturbedBase,
  // Baseline the true-class confidence on the unperturbed instance.
  kOriginalBase,
};

// max_{k != true} conf_pert[k] - conf_base[true_label] + lambda. Lies in
// [lambda - 1, lambda + 1] for probability vectors.
double Reward(std::span<const double> conf_pert, std::span<const double> conf_base, int true_label, double lambda);

// Running reward statistics of one arm (Welford).
class ArmStats {
 public:
  int64_t pulls() const { return pulls_; }
  bool unpulled() const { return pulls_ == 0; }
  // Throw kUnpulledArm when no reward has been observed.
  double mean() const;
  // Population variance m2 / pulls.
  double variance() const;

  // Throws kNonFinite for NaN/inf rewards.
  void Update(double reward);

 private:
  int64_t pulls_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct BanditConfig {
  double alpha = 4.0;
  double lambda = 1.0;
  // Use alpha^2 * ln t / t_l as the last UCB term instead of ln t / t_l.
  bool appendix_bonus = false;
};

// B = mean + sqrt(alpha * var * ln t / t_l) + ln t / t_l, natural log.
// Throws kUnpulledArm if the arm has no pulls and kInvalidArg if t < t_l.
double UcbScore(const ArmStats& stats, int64_t t, double alpha, bool appendix_bonus = false);

// Index of the highest UCB score, lowest index on ties. Every arm must have
// been pulled.
int SelectArm(std::span<const ArmStats> arms, int64_t t, const BanditConfig& config,
              std::vector<double>* scores = nullptr);

struct ArmGap {
  double gap = 0.0;       // Delta_l = mu* - mu_l.
  double variance = 0.0;  // delta^2_l.
};

// sum_l [8 (var_l / gap_l + 2) ln T + alpha / (alpha - 2) gap_l] over the
// given arms. Throws kInvalidAlpha when alpha <= 2, kInvalidGap when a gap is
// not positive and kInvalidArg when T < 1.
double RegretBound(std::span<const ArmGap> arms, int64_t horizon, double alpha);

// Bound over the suboptimal arms of a stationary bandit (optimal arms have a
// zero gap and contribute nothing).
double RegretBoundForMeans(std::span<const double> means, std::span<const double> variances, int64_t horizon,
                           double alpha);

enum class ArmDistribution {
  kBernoulli,  // rewards in {0, 1} with P(1) = mean; variance is mean (1 - mean).
  kGaussian,   // N(mean, variance) clamped to [0, 2 lambda].
};

struct ArmSpec {
  double mean = 0.0;
  double variance = 0.0;
  ArmDistribution distribution = ArmDistribution::kGaussian;
};

struct SimulationReport {
  double empirical_regret_mean = 0.0;
  double empirical_regret_stddev = 0.0;
  double bound = 0.0;
  // Mean pull count per arm over seeds.
  std::vector<double> per_arm_pulls;
  std::vector<double> per_seed_regret;
};

// Runs the UCB policy for `horizon` pulls (each arm once first) for every seed
// and reports sum_l pulls_l * gap_l averaged over seeds, next to the bound.
// The bound is only computed when alpha > 2 (0 otherwise). Throws
// kInvalidArg on fewer than two arms, horizon < #arms or no seeds.
SimulationReport SimulateBandit(std::span<const ArmSpec> arms, int64_t horizon, const BanditConfig& config,
                                std::span<const uint64_t> seeds);

}  // namespace catbreak

#endif  // CATBREAK_BANDIT_H_
