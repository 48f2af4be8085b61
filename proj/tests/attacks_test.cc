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

#include "catbreak/attacks.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "catbreak/bench.h"
#include "catbreak/classifier.h"
#include "catbreak/embed_mlp.h"
#include "catbreak/error.h"
#include "catbreak/io.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace catbreak {
namespace {

constexpr Method kAllMethods[] = {Method::kFeat,  Method::kFeatB,      Method::kFsgs,
                                  Method::kOmpgs, Method::kGradAttack, Method::kExhaustive};

ErrorCode CodeOf(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kIo;
}

// Instance relabelled with the model's own prediction so it starts correctly
// classified.
Instance Correct(const Classifier& model, Instance inst) {
  inst.label = Argmax(model.Predict(inst));
  return inst;
}

struct Case {
  EmbedMlpModel model;
  Instance inst;
};

std::vector<Case> SmallSuite(int count, int n, int m, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Case> out;
  const std::vector<int> vpf(n, m);
  for (int c = 0; c < count; ++c) {
    const int k = 2 + c % 2;
    EmbedMlpModel model = MakeRandomClassifier(vpf, 3, {6}, k, rng());
    Instance inst = Correct(model, testing::RandomInstance(vpf, k, rng));
    out.push_back({std::move(model), std::move(inst)});
  }
  return out;
}

// A model that ignores its input, already misclassifying label 1.
EmbedMlpModel ConstantModel(int n, int m) { return MakeConstantClassifier(std::vector<int>(n, m), 2, {0.9, 0.1}); }

TEST(MethodNameTest, RoundTrips) {
  for (Method method : kAllMethods) EXPECT_EQ(ParseMethod(MethodName(method)), method);
  EXPECT_EQ(ParseMethod("feat-b"), Method::kFeatB);
  EXPECT_EQ(CodeOf([] { ParseMethod("nope"); }), ErrorCode::kInvalidArg);
}

TEST(AttackConfigTest, DefaultsAndValidation) {
  AttackConfig config;
  EXPECT_EQ(config.EffectiveTau(), 2);
  EXPECT_EQ(config.EffectiveMaxOuter(), 3);
  config.budget = 1;
  EXPECT_EQ(config.EffectiveTau(), 1);
  config.top_l = 0;
  EXPECT_EQ(CodeOf([&] { config.Validate(); }), ErrorCode::kInvalidArg);
  config = AttackConfig();
  config.budget = -1;
  EXPECT_EQ(CodeOf([&] { config.Validate(); }), ErrorCode::kInvalidArg);
  config = AttackConfig();
  config.time_limit_s = 0.0;
  EXPECT_EQ(CodeOf([&] { config.Validate(); }), ErrorCode::kInvalidArg);
}

TEST(CheckSuccessTest, Examples) {
  const EmbedMlpModel even = MakeConstantClassifier({2}, 1, {0.5, 0.5});
  ClassifierHandle h(even);
  const SuccessCheck a = CheckSuccess(h, {{0}, 1});
  EXPECT_TRUE(a.success);
  EXPECT_EQ(a.margin, 0.0);
  EXPECT_EQ(h.query_count(), 1);

  const EmbedMlpModel skew = MakeConstantClassifier({2}, 1, {0.1, 0.9});
  ClassifierHandle hs(skew);
  const SuccessCheck b = CheckSuccess(hs, {{0}, 1});
  EXPECT_FALSE(b.success);
  EXPECT_NEAR(b.margin, -0.8, 1e-12);
  const SuccessCheck c = CheckSuccess(hs, {{0}, 0});
  EXPECT_TRUE(c.success);
  EXPECT_NEAR(c.margin, 0.8, 1e-12);
}

TEST(OmpRankTest, OrdersByScoreWithOneGradientPass) {
  // Margin gradients are 2 w for this affine model, so the row maxima are
  // proportional to {3, 1, 0, 2}.
  IndicatorGrid w(4, 2);
  const double scale[] = {3, 1, 0, 2};
  for (int i = 0; i < 4; ++i) w(i, 1) = 0.02 * scale[i];
  const AffineClassifier model({2, 2, 2, 2}, w);
  ClassifierHandle h(model);
  const Instance inst{{0, 0, 0, 0}, 0};
  for (OmpScore score : {OmpScore::kEditDirectional, OmpScore::kMaxAbsSlot, OmpScore::kRowNorm}) {
    const RankedFeatures r = OmpRank(h, inst, Objective::MarginObjective(), 2, score);
    EXPECT_EQ(r.features, (std::vector<int>{0, 3}));
    ASSERT_EQ(r.weights.size(), 4u);
    EXPECT_NEAR(r.weights[0], 0.5, 1e-12);
    EXPECT_EQ(r.weights[2], 0.0);
  }
  EXPECT_EQ(h.grad_count(), 3);
  EXPECT_EQ(h.query_count(), 0);
}

TEST(OmpRankTest, ZeroGradientFallsBackToIndexOrder) {
  const EmbedMlpModel model = ConstantModel(5, 3);
  ClassifierHandle h(model);
  const RankedFeatures r = OmpRank(h, {{0, 1, 2, 0, 1}, 0}, Objective::MarginObjective(), 3);
  EXPECT_EQ(r.features, (std::vector<int>{0, 1, 2}));
  for (double w : r.weights) EXPECT_EQ(w, 0.0);
}

TEST(OmpRankTest, ExcludesFeaturesAndRefusesBlackBox) {
  const EmbedMlpModel model = ConstantModel(4, 1);
  ClassifierHandle h(model);
  // A single-valued present feature has nothing to substitute.
  EXPECT_TRUE(OmpRank(h, {{0, 0, 0, 0}, 0}, Objective::MarginObjective(), 3).features.empty());
  const EmbedMlpModel other = ConstantModel(4, 2);
  ClassifierHandle h2(other);
  const std::vector<int> exclude = {0, 2};
  EXPECT_EQ(OmpRank(h2, {{0, 0, 0, 0}, 0}, Objective::MarginObjective(), 3, OmpScore::kEditDirectional, false, exclude)
                .features,
            (std::vector<int>{1, 3}));
  ClassifierHandle black(other, false);
  EXPECT_EQ(CodeOf([&] { OmpRank(black, {{0, 0, 0, 0}, 0}, Objective::MarginObjective(), 3); }),
            ErrorCode::kBlackBoxModel);
}

TEST(OmpRankTest, PlantedFeatureRanksFirst) {
  PlantedModelSpec spec;
  spec.sensitivity = Sensitivity::Skewed(1);
  spec.seed = 5;
  const EmbedMlpModel model = MakePlantedClassifier(spec);
  std::mt19937_64 rng(8);
  const std::vector<int> vpf(spec.num_features, spec.num_values);
  int first = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = Correct(model, testing::RandomInstance(vpf, 2, rng));
    ClassifierHandle h(model);
    if (OmpRank(h, inst, Objective::MarginObjective(), 10).features.front() == 0) ++first;
  }
  EXPECT_GE(first, 95);
}

TEST(BestValuePullTest, BinaryFeatureCostsOneQuery) {
  const EmbedMlpModel model = MakeRandomClassifier({2, 2}, 2, {}, 2, 4);
  ClassifierHandle h(model);
  const Instance inst = Correct(model, {{0, 1}, 0});
  const PullResult r = BestValuePull(h, inst, 1, 1.0, RewardVariant::kPerturbedBase, {});
  EXPECT_EQ(r.queries_used, 1);
  EXPECT_EQ(r.best_value, 0);
  EXPECT_EQ(h.query_count(), 1);
}

TEST(BestValuePullTest, MatchesBruteForceAndFlagsSuccess) {
  for (const Case& c : SmallSuite(50, 4, 4, 21)) {
    ClassifierHandle h(c.model);
    const ConfidenceVector base = c.model.Predict(c.inst);
    for (int f = 0; f < 4; ++f) {
      const PullResult r = BestValuePull(h, c.inst, f, 1.0, RewardVariant::kOriginalBase, base);
      double best = -INFINITY;
      int best_value = kAbsent;
      bool any_success = false;
      for (int v = 0; v < 4; ++v) {
        if (v == c.inst.categories[f]) continue;
        Instance probe = c.inst;
        probe.categories[f] = v;
        const ConfidenceVector conf = c.model.Predict(probe);
        const double g = Reward(conf, base, c.inst.label, 1.0);
        any_success = any_success || Margin(conf, c.inst.label) >= 0.0;
        if (g > best) {
          best = g;
          best_value = v;
        }
      }
      EXPECT_EQ(r.best_value, best_value);
      EXPECT_DOUBLE_EQ(r.reward, best);
      EXPECT_EQ(r.queries_used, 3);
      ClassifierHandle hp(c.model);
      const PullResult rp = BestValuePull(hp, c.inst, f, 1.0, RewardVariant::kPerturbedBase, {});
      if (any_success) {
        EXPECT_GE(rp.reward, 1.0);
      }
    }
  }
}

TEST(BestValuePullTest, AbsentFeatureTriesEveryValue) {
  const EmbedMlpModel model = ConstantModel(2, 3);
  ClassifierHandle h(model);
  EXPECT_EQ(BestValuePull(h, {{kAbsent, 0}, 0}, 0, 1.0, RewardVariant::kPerturbedBase, {}).queries_used, 3);
  const EmbedMlpModel single = ConstantModel(2, 1);
  ClassifierHandle hs(single);
  EXPECT_EQ(CodeOf([&] { BestValuePull(hs, {{0, 0}, 0}, 0, 1.0, RewardVariant::kPerturbedBase, {}); }),
            ErrorCode::kNoAlternatives);
}

TEST(AttackTest, AlreadyMisclassifiedCostsOneQuery) {
  const EmbedMlpModel model = ConstantModel(3, 2);
  const Instance inst{{0, 1, 0}, 1};
  for (Method method : kAllMethods) {
    ClassifierHandle h(model);
    const AttackResult r = RunAttack(method, h, inst, {});
    EXPECT_TRUE(r.success) << MethodName(method);
    EXPECT_TRUE(r.perturbation.empty()) << MethodName(method);
    EXPECT_EQ(r.queries, 1) << MethodName(method);
    EXPECT_EQ(h.query_count(), 1) << MethodName(method);
  }
}

TEST(AttackTest, ZeroBudgetFails) {
  const EmbedMlpModel model = ConstantModel(3, 2);
  const Instance inst{{0, 1, 0}, 0};
  AttackConfig config;
  config.budget = 0;
  for (Method method : kAllMethods) {
    ClassifierHandle h(model);
    const AttackResult r = RunAttack(method, h, inst, config);
    EXPECT_FALSE(r.success) << MethodName(method);
    EXPECT_EQ(r.changed, 0) << MethodName(method);
  }
}

TEST(AttackTest, SoundAccountedAndDeterministic) {
  AttackConfig config;
  config.budget = 2;
  config.top_l = 4;
  config.seed = 99;
  int successes = 0;
  for (const Case& c : SmallSuite(60, 6, 3, 31)) {
    for (Method method : kAllMethods) {
      ClassifierHandle h(c.model);
      const AttackResult r = RunAttack(method, h, c.inst, config);
      EXPECT_EQ(r.queries, h.query_count());
      EXPECT_EQ(r.grad_passes, h.grad_count());
      const Instance out = ApplyPerturbation(c.inst, r.perturbation);
      EXPECT_EQ(r.changed, static_cast<int>(Diff(c.inst, out).size()));
      EXPECT_LE(r.changed, config.budget);
      if (r.success) {
        ++successes;
        EXPECT_GE(r.margin, 0.0);
        EXPECT_GE(Margin(c.model.Predict(out), c.inst.label), 0.0) << MethodName(method);
      }
      ClassifierHandle again(c.model);
      EXPECT_EQ(AttackResultToJson(RunAttack(method, again, c.inst, config), false), AttackResultToJson(r, false));
    }
  }
  EXPECT_GT(successes, 0);
}

TEST(AttackTest, NoMethodBeatsTheExhaustiveOracle) {
  AttackConfig config;
  config.budget = 2;
  config.top_l = 4;
  for (const Case& c : SmallSuite(60, 4, 2, 41)) {
    ClassifierHandle ho(c.model);
    const AttackResult oracle = ExhaustiveAttack(ho, c.inst, config);
    for (Method method : kAllMethods) {
      ClassifierHandle h(c.model);
      const AttackResult r = RunAttack(method, h, c.inst, config);
      if (r.success) {
        EXPECT_TRUE(oracle.success) << MethodName(method);
        EXPECT_GE(r.changed, oracle.changed) << MethodName(method);
      }
    }
  }
}

TEST(AttackTest, BlackBoxHandles) {
  const EmbedMlpModel model = ConstantModel(3, 2);
  const Instance inst{{0, 1, 0}, 0};
  for (Method method : {Method::kFeat, Method::kOmpgs, Method::kGradAttack}) {
    ClassifierHandle h(model, false);
    EXPECT_EQ(CodeOf([&] { RunAttack(method, h, inst, {}); }), ErrorCode::kBlackBoxModel);
  }
  for (Method method : {Method::kFeatB, Method::kFsgs, Method::kExhaustive}) {
    ClassifierHandle h(model, false);
    EXPECT_NO_THROW(RunAttack(method, h, inst, {}));
  }
}

TEST(ExhaustiveTest, ConstantModelEnumeratesEverything) {
  const EmbedMlpModel model = ConstantModel(3, 2);
  const Instance inst{{0, 1, 0}, 0};
  AttackConfig config;
  config.budget = 3;
  ClassifierHandle h(model);
  const AttackResult r = ExhaustiveAttack(h, inst, config);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.queries, 8);
  EXPECT_EQ(ExhaustiveEvaluationCount(inst, model.values_per_feature(), 3, false), 8);
  EXPECT_EQ(ExhaustiveEvaluationCount(inst, model.values_per_feature(), 3, true), 27);
  EXPECT_EQ(ExhaustiveEvaluationCount(inst, model.values_per_feature(), 1, false), 4);
}

TEST(ExhaustiveTest, CapAndZeroBudget) {
  const EmbedMlpModel model = ConstantModel(3, 2);
  AttackConfig config;
  config.budget = 3;
  config.exhaustive_cap = 7;
  ClassifierHandle h(model);
  EXPECT_EQ(CodeOf([&] { ExhaustiveAttack(h, {{0, 1, 0}, 0}, config); }), ErrorCode::kTooLarge);
  EXPECT_EQ(h.query_count(), 0);
  config = AttackConfig();
  config.budget = 0;
  EXPECT_TRUE(ExhaustiveAttack(h, {{0, 1, 0}, 1}, config).success);
  EXPECT_FALSE(ExhaustiveAttack(h, {{0, 1, 0}, 0}, config).success);
}

TEST(ExhaustiveTest, FindsMinimalCardinality) {
  AttackConfig config;
  config.budget = 3;
  for (const Case& c : SmallSuite(30, 4, 3, 51)) {
    ClassifierHandle h(c.model);
    const AttackResult r = ExhaustiveAttack(h, c.inst, config);
    if (!r.success) continue;
    // Nothing smaller succeeds.
    AttackConfig smaller = config;
    smaller.budget = r.changed - 1;
    ClassifierHandle hs(c.model);
    EXPECT_FALSE(ExhaustiveAttack(hs, c.inst, smaller).success);
  }
}

TEST(FsgsTest, IterationQueriesMatchClosedForm) {
  AttackConfig config;
  config.budget = 3;
  for (const Case& c : SmallSuite(20, 5, 3, 61)) {
    ClassifierHandle h(c.model);
    const AttackResult r = FsgsAttack(h, c.inst, config);
    for (size_t t = 0; t < r.trace.size(); ++t) {
      EXPECT_EQ(r.trace[t].step_queries, (5 - static_cast<int64_t>(t)) * 3 * (int64_t{1} << t));
    }
  }
  const EmbedMlpModel model = ConstantModel(5, 3);
  ClassifierHandle h(model);
  const AttackResult r = FsgsAttack(h, {{0, 1, 2, 0, 1}, 0}, config);
  ASSERT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(r.trace[0].step_queries, 15);
  EXPECT_EQ(r.trace[1].step_queries, 24);
  EXPECT_EQ(r.trace[2].step_queries, 36);
  EXPECT_EQ(r.queries, 1 + 15 + 24 + 36);
}

TEST(FsgsTest, SubsetCap) {
  const EmbedMlpModel model = ConstantModel(5, 3);
  AttackConfig config;
  config.budget = 3;
  config.subset_cap = 2;
  ClassifierHandle h(model);
  EXPECT_EQ(CodeOf([&] { FsgsAttack(h, {{0, 1, 2, 0, 1}, 0}, config); }), ErrorCode::kCapExceeded);
}

TEST(OmpgsTest, IterationQueriesWithinBound) {
  AttackConfig config;
  config.budget = 4;
  config.top_l = 3;
  for (const Case& c : SmallSuite(30, 8, 3, 71)) {
    ClassifierHandle h(c.model);
    const AttackResult r = OmpgsAttack(h, c.inst, config);
    for (size_t t = 0; t < r.trace.size(); ++t) {
      EXPECT_LE(r.trace[t].step_queries, config.top_l * (int64_t{1} << t));
    }
    EXPECT_EQ(r.grad_passes, static_cast<int64_t>(r.trace.size()));
  }
}

TEST(GradAttackTest, LinearModelTakesTheBestSingleFlip) {
  IndicatorGrid w(3, 3);
  w(0, 0) = -0.1;
  w(0, 1) = 0.05;
  w(1, 2) = 0.12;
  w(1, 1) = -0.02;
  w(2, 0) = 0.08;
  const AffineClassifier model({3, 3, 3}, w);
  const Instance inst{{0, 0, 2}, 0};
  ClassifierHandle h(model);
  AttackConfig config;
  config.budget = 1;
  const AttackResult r = GradAttack(h, inst, config);
  ASSERT_EQ(r.trace.size(), 1u);
  double best = -INFINITY;
  int best_f = -1, best_v = -1;
  for (int f = 0; f < 3; ++f) {
    for (int v = 0; v < 3; ++v) {
      if (v == inst.categories[f]) continue;
      Instance probe = inst;
      probe.categories[f] = v;
      const double margin = Margin(model.Predict(probe), 0);
      if (margin > best) {
        best = margin;
        best_f = f;
        best_v = v;
      }
    }
  }
  EXPECT_EQ(r.trace[0].feature, best_f);
  EXPECT_EQ(r.trace[0].value, best_v);
}

TEST(GradAttackTest, OneQueryAndOneGradientPerIteration) {
  AttackConfig config;
  config.budget = 3;
  for (const Case& c : SmallSuite(30, 6, 3, 81)) {
    ClassifierHandle h(c.model);
    const AttackResult r = GradAttack(h, c.inst, config);
    for (const TraceStep& s : r.trace) EXPECT_EQ(s.step_queries, 1);
    EXPECT_EQ(r.queries, 1 + static_cast<int64_t>(r.trace.size()));
    EXPECT_EQ(r.grad_passes, static_cast<int64_t>(r.trace.size()));
  }
}

TEST(GradAttackTest, ComboDepthEnumeratesCombinations) {
  const EmbedMlpModel model = ConstantModel(4, 3);
  AttackConfig config;
  config.budget = 2;
  config.top_l = 3;
  config.grad_combo_depth = 2;
  ClassifierHandle h(model);
  const AttackResult r = GradAttack(h, {{0, 0, 0, 0}, 0}, config);
  // One iteration: 3 * 2 singles + C(3, 2) * 2^2 pairs, then the budget is used up.
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(r.trace[0].step_queries, 6 + 12);
}

struct PlantedSuite {
  EmbedMlpModel model;
  std::vector<Instance> data;
};

PlantedSuite MakePlantedSuite(int n, int m, int top, int count, uint64_t seed, bool balance = true) {
  PlantedModelSpec spec;
  spec.num_features = n;
  spec.num_values = m;
  spec.sensitivity = Sensitivity::Skewed(top);
  spec.seed = seed;
  EmbedMlpModel model = MakePlantedClassifier(spec);
  std::vector<Instance> data = GenDataset(model, count, balance, seed + 1);
  return {std::move(model), std::move(data)};
}

TEST(FeatTest, QueryBoundHolds) {
  const PlantedSuite suite = MakePlantedSuite(30, 6, 3, 60, 3);
  AttackConfig config;
  config.budget = 6;
  for (const Instance& inst : suite.data) {
    ClassifierHandle h(suite.model);
    const AttackResult r = FeatAttack(h, inst, config);
    const int64_t bound =
        (int64_t{config.top_l} * 6 + config.EffectiveTau()) * r.outer_iterations + r.outer_iterations + 1;
    EXPECT_LE(r.queries, bound);
    EXPECT_EQ(r.grad_passes, r.outer_iterations);
    EXPECT_LE(r.outer_iterations, config.EffectiveMaxOuter());
  }
}

TEST(FeatTest, SinglePlantedFlipSucceedsCheaply) {
  const PlantedSuite suite = MakePlantedSuite(20, 5, 1, 100, 13);
  AttackConfig config;
  int checked = 0;
  for (const Instance& inst : suite.data) {
    if (Argmax(suite.model.Predict(inst)) != inst.label) continue;
    bool single = false;
    for (int v = 0; v < 5 && !single; ++v) {
      Instance probe = inst;
      probe.categories[0] = v;
      single = v != inst.categories[0] && Margin(suite.model.Predict(probe), inst.label) >= 0.0;
    }
    if (!single) continue;
    ++checked;
    ClassifierHandle h(suite.model);
    const AttackResult r = FeatAttack(h, inst, config);
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.changed, 1);
    EXPECT_LE(r.queries, config.top_l * 5 + 1);
  }
  EXPECT_GT(checked, 10);
}

TEST(FeatTest, ArmSequenceIgnoresLambdaShift) {
  const PlantedSuite suite = MakePlantedSuite(20, 5, 2, 40, 23);
  AttackConfig a;
  a.lambda = 1.0;
  AttackConfig b = a;
  b.lambda = 3.0;
  for (const Instance& inst : suite.data) {
    ClassifierHandle ha(suite.model), hb(suite.model);
    const AttackResult ra = FeatAttack(ha, inst, a);
    const AttackResult rb = FeatAttack(hb, inst, b);
    ASSERT_EQ(ra.trace.size(), rb.trace.size());
    for (size_t s = 0; s < ra.trace.size(); ++s) {
      EXPECT_EQ(ra.trace[s].feature, rb.trace[s].feature);
      EXPECT_EQ(ra.trace[s].value, rb.trace[s].value);
      EXPECT_NEAR(rb.trace[s].reward - ra.trace[s].reward, 2.0, 1e-12);
    }
  }
}

TEST(FeatTest, ObserverSeesEveryRound) {
  const PlantedSuite suite = MakePlantedSuite(20, 5, 2, 5, 33);
  AttackConfig config;
  config.stop_on_success = false;
  for (const Instance& inst : suite.data) {
    ClassifierHandle h(suite.model);
    int calls = 0;
    const AttackResult r = FeatAttack(h, inst, config, [&](const Instance&, int, int) { ++calls; });
    EXPECT_GE(calls, static_cast<int>(r.trace.size()));
  }
}

TEST(FeatBTest, FullCoverageAndDeterminism) {
  const PlantedSuite suite = MakePlantedSuite(8, 4, 1, 20, 43, false);
  AttackConfig config;
  config.top_l = 8;
  config.seed = 5;
  for (const Instance& inst : suite.data) {
    ClassifierHandle a(suite.model), b(suite.model);
    const AttackResult ra = FeatBAttack(a, inst, config);
    if (!ra.trace.empty()) {
      EXPECT_EQ(ra.trace.front().arms, (std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7}));
    }
    EXPECT_EQ(AttackResultToJson(ra, false), AttackResultToJson(FeatBAttack(b, inst, config), false));
  }
}

TEST(FeatBTest, RandomArmsTrailGradientArms) {
  const PlantedSuite suite = MakePlantedSuite(100, 5, 1, 200, 53);
  AttackConfig config;
  config.top_l = 5;
  int feat = 0, feat_b = 0;
  for (size_t i = 0; i < suite.data.size(); ++i) {
    config.seed = i;
    ClassifierHandle a(suite.model), b(suite.model);
    feat += FeatAttack(a, suite.data[i], config).success;
    feat_b += FeatBAttack(b, suite.data[i], config).success;
  }
  EXPECT_LT(feat_b, feat);
}

TEST(TrendTest, GreedyBaselinesChangeCounts) {
  const PlantedSuite suite = MakePlantedSuite(50, 10, 3, 200, 7);
  AttackConfig config;
  int grad_changed = 0, grad_successes = 0, feat_changed = 0, feat_successes = 0;
  int ompgs_not_worse = 0;
  for (const Instance& inst : suite.data) {
    ClassifierHandle hf(suite.model), hg(suite.model), ho(suite.model), hs(suite.model);
    const AttackResult f = FeatAttack(hf, inst, config);
    const AttackResult g = GradAttack(hg, inst, config);
    const AttackResult o = OmpgsAttack(ho, inst, config);
    const AttackResult s = FsgsAttack(hs, inst, config);
    if (f.success) {
      feat_changed += f.changed;
      ++feat_successes;
    }
    if (g.success) {
      grad_changed += g.changed;
      ++grad_successes;
    }
    ompgs_not_worse += o.changed <= s.changed;
  }
  ASSERT_GT(feat_successes, 0);
  ASSERT_GT(grad_successes, 0);
  EXPECT_GE(static_cast<double>(grad_changed) / grad_successes, static_cast<double>(feat_changed) / feat_successes);
  EXPECT_GE(ompgs_not_worse, 160);
}

}  // namespace
}  // namespace catbreak
