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

#include "catbreak/bench.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "catbreak/embed_mlp.h"
#include "catbreak/error.h"
#include "catbreak/io.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace catbreak {
namespace {

using nlohmann::json;

ErrorCode CodeOf(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kIo;
}

EmbedMlpModel SkewedModel(int n, int m, int top, uint64_t seed) {
  PlantedModelSpec spec;
  spec.num_features = n;
  spec.num_values = m;
  spec.sensitivity = Sensitivity::Skewed(top);
  spec.seed = seed;
  return MakePlantedClassifier(spec);
}

std::string TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("catbreak_bench_test_" + name);
  std::filesystem::remove_all(dir);
  return dir.string();
}

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(GenDatasetTest, ReproducibleValidAndLabelledByTheModel) {
  const EmbedMlpModel model = SkewedModel(10, 4, 2, 1);
  const std::vector<Instance> a = GenDataset(model, 50, false, 9);
  EXPECT_EQ(a, GenDataset(model, 50, false, 9));
  EXPECT_NE(a, GenDataset(model, 50, false, 10));
  ASSERT_EQ(a.size(), 50u);
  for (const Instance& inst : a) {
    EXPECT_NO_THROW(ValidateInstance(inst, model.values_per_feature()));
    EXPECT_EQ(inst.label, Argmax(model.Predict(inst)));
  }
}

TEST(GenDatasetTest, BalancedClassCounts) {
  PlantedModelSpec spec;
  spec.num_classes = 3;
  spec.seed = 4;
  const EmbedMlpModel model = MakePlantedClassifier(spec);
  for (int count : {30, 31, 32}) {
    std::vector<int> per_class(3, 0);
    for (const Instance& inst : GenDataset(model, count, true, 2)) ++per_class[inst.label];
    const auto [lo, hi] = std::minmax_element(per_class.begin(), per_class.end());
    EXPECT_LE(*hi - *lo, 1) << count;
  }
  const EmbedMlpModel constant = MakeConstantClassifier({3, 3}, 2, {0.8, 0.2});
  EXPECT_EQ(CodeOf([&] { GenDataset(constant, 10, true, 1); }), ErrorCode::kInvalidArg);
}

TEST(SeedTest, RunSeedsAreDistinctAndStable) {
  EXPECT_EQ(RunSeed(5, 3), RunSeed(5, 3));
  std::vector<uint64_t> seeds;
  for (uint64_t i = 0; i < 1000; ++i) seeds.push_back(RunSeed(5, i));
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::unique(seeds.begin(), seeds.end()), seeds.end());
  EXPECT_NE(RunSeed(5, 0), RunSeed(6, 0));
}

TEST(FormatCellTest, EmptyCellsAreNotZero) {
  EXPECT_EQ(FormatCell(std::nullopt), "N/A");
  EXPECT_EQ(FormatCell(0.0), "0.000000");
  EXPECT_EQ(FormatCell(12.3456789), "12.345679");
}

TEST(BenchmarkSpecTest, ParseAndValidate) {
  const BenchmarkSpec spec = ParseBenchmarkSpec(R"({
    "model": "m.bin", "data": "d.jsonl", "methods": ["feat", "fsgs"], "budgets": [2, 4],
    "config": {"top_l": 7, "alpha": 8, "reward_variant": "original"},
    "overrides": {"fsgs": {"subset_cap": 64}},
    "repetitions": 2, "seed": 11, "threads": 3, "sr_denominator": "all", "max_instances": 5})");
  EXPECT_EQ(spec.methods, (std::vector<Method>{Method::kFeat, Method::kFsgs}));
  EXPECT_EQ(spec.budgets, (std::vector<int>{2, 4}));
  EXPECT_EQ(spec.base.top_l, 7);
  EXPECT_EQ(spec.base.alpha, 8.0);
  EXPECT_EQ(spec.base.reward_variant, RewardVariant::kOriginalBase);
  EXPECT_EQ(spec.overrides.at(Method::kFsgs).subset_cap, 64);
  EXPECT_EQ(spec.repetitions, 2);
  EXPECT_EQ(spec.seed, 11u);
  EXPECT_EQ(spec.threads, 3);
  EXPECT_EQ(spec.sr_denominator, SrDenominator::kAll);
  EXPECT_EQ(spec.max_instances, 5);

  const AttackConfig c = spec.ConfigFor(Method::kFeat, 4, 99);
  EXPECT_EQ(c.budget, 4);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.top_l, 7);

  EXPECT_EQ(CodeOf([] { ParseBenchmarkSpec("{"); }), ErrorCode::kIo);
  EXPECT_EQ(CodeOf([] { ParseBenchmarkSpec(R"({"methods": ["feat"]})"); }), ErrorCode::kIo);
  BenchmarkSpec empty;
  empty.budgets = {1};
  EXPECT_EQ(CodeOf([&] { empty.Validate(); }), ErrorCode::kInvalidArg);
}

class BenchmarkTest : public ::testing::Test {
 protected:
  BenchmarkTest() : model_(SkewedModel(12, 4, 2, 21)), data_(GenDataset(model_, 40, false, 22)) {
    spec_.methods = {Method::kFeat, Method::kFsgs};
    spec_.budgets = {1, 3};
    spec_.seed = 5;
  }

  EmbedMlpModel model_;
  std::vector<Instance> data_;
  BenchmarkSpec spec_;
};

TEST_F(BenchmarkTest, CellsRunsAndAccounting) {
  const BenchmarkReport report = RunBenchmark(model_, data_, spec_);
  ASSERT_EQ(report.rows.size(), 4u);
  EXPECT_EQ(report.rows[0].method, Method::kFeat);
  EXPECT_EQ(report.rows[1].budget, 3);
  EXPECT_EQ(report.rows[2].method, Method::kFsgs);
  EXPECT_EQ(report.dataset_size, 40);
  const int attacked = 40 - report.excluded_misclassified;
  EXPECT_EQ(report.runs.size(), static_cast<size_t>(4 * attacked));
  EXPECT_EQ(report.failures, 0);
  for (const RunRecord& run : report.runs) {
    ASSERT_TRUE(run.ok);
    EXPECT_EQ(run.handle_queries, run.result.queries);
    EXPECT_EQ(run.verified, run.result.success);
    // Only correctly classified instances are attacked.
    EXPECT_LT(Margin(model_.Predict(data_[run.instance]), data_[run.instance].label), 0.0);
  }
  for (const MetricsRow& row : report.rows) {
    EXPECT_EQ(row.attempted, attacked);
    EXPECT_GE(row.sr, 0.0);
    EXPECT_LE(row.sr, 1.0);
    EXPECT_EQ(row.queries.has_value(), row.successes > 0);
  }
}

TEST_F(BenchmarkTest, DeterministicAcrossRerunsAndThreads) {
  const BenchmarkReport a = RunBenchmark(model_, data_, spec_);
  spec_.threads = 3;
  const BenchmarkReport b = RunBenchmark(model_, data_, spec_);
  ASSERT_EQ(a.runs.size(), b.runs.size());
  for (size_t r = 0; r < a.runs.size(); ++r) {
    EXPECT_EQ(RunRecordToJson(a.runs[r], true), RunRecordToJson(b.runs[r], true));
  }
  for (size_t r = 0; r < a.rows.size(); ++r) {
    EXPECT_EQ(a.rows[r].sr, b.rows[r].sr);
    EXPECT_EQ(a.rows[r].queries, b.rows[r].queries);
    EXPECT_EQ(a.rows[r].changed, b.rows[r].changed);
  }
}

TEST_F(BenchmarkTest, AllDenominatorCountsEveryInstance) {
  spec_.sr_denominator = SrDenominator::kAll;
  spec_.max_instances = 25;
  const BenchmarkReport report = RunBenchmark(model_, data_, spec_);
  for (const MetricsRow& row : report.rows) EXPECT_EQ(row.attempted, 25);
}

TEST_F(BenchmarkTest, ReportsReaggregateExactly) {
  spec_.repetitions = 2;
  const BenchmarkReport report = RunBenchmark(model_, data_, spec_);
  const std::string dir = TempDir("reports");
  WriteBenchmarkReports(report, spec_, dir);

  const std::string csv = Slurp(std::filesystem::path(dir) / "metrics.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "method,budget,attempted,successes,errors,sr,no_query,no_change,runtime_s");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);

  const json doc = json::parse(Slurp(std::filesystem::path(dir) / "report.json"));
  EXPECT_EQ(doc["version"], std::string(kReportVersion));
  EXPECT_EQ(doc["config"]["seed"], 5);
  EXPECT_EQ(doc["rows"].size(), 4u);

  // Rebuild every cell from runs.jsonl alone.
  std::map<std::pair<std::string, int>, std::vector<json>> cells;
  std::ifstream runs(std::filesystem::path(dir) / "runs.jsonl");
  std::string line;
  while (std::getline(runs, line)) {
    const json j = json::parse(line);
    cells[{j["method"].get<std::string>(), j["budget"].get<int>()}].push_back(j);
  }
  for (const MetricsRow& row : report.rows) {
    const auto& runs_of = cells[{std::string(MethodName(row.method)), row.budget}];
    int successes = 0;
    double queries = 0.0, changed = 0.0, runtime = 0.0;
    for (const json& j : runs_of) {
      EXPECT_EQ(j["handle_queries"], j["result"]["queries"]);
      if (!j["result"]["success"].get<bool>()) continue;
      ++successes;
      queries += j["result"]["queries"].get<double>();
      changed += j["result"]["changed"].get<double>();
      runtime += j["result"]["wall_time_s"].get<double>();
    }
    EXPECT_EQ(static_cast<int>(runs_of.size()), row.attempted);
    EXPECT_EQ(successes, row.successes);
    if (successes > 0) {
      EXPECT_EQ(queries / successes, *row.queries);
      EXPECT_EQ(changed / successes, *row.changed);
      EXPECT_EQ(runtime / successes, *row.runtime_s);
    }
  }
  EXPECT_EQ(AggregateRuns(report.runs, spec_.methods, spec_.budgets).size(), report.rows.size());
  std::filesystem::remove_all(dir);
}

TEST(BenchmarkPropertyTest, SuccessRateGrowsWithBudget) {
  const EmbedMlpModel model = SkewedModel(20, 5, 3, 31);
  const std::vector<Instance> data = GenDataset(model, 200, false, 32);
  BenchmarkSpec spec;
  spec.methods = {Method::kFeat, Method::kFeatB, Method::kFsgs, Method::kOmpgs, Method::kGradAttack};
  spec.budgets = {1, 2, 3, 4};
  spec.seed = 3;
  const BenchmarkReport report = RunBenchmark(model, data, spec);
  for (size_t m = 0; m < spec.methods.size(); ++m) {
    for (size_t b = 1; b < spec.budgets.size(); ++b) {
      EXPECT_GE(report.rows[m * 4 + b].sr, report.rows[m * 4 + b - 1].sr)
          << MethodName(spec.methods[m]) << " budget " << spec.budgets[b];
    }
  }
}

TEST(AlphaSweepTest, RowsMirrorPlainBenchmarks) {
  const EmbedMlpModel model = SkewedModel(12, 4, 2, 41);
  const std::vector<Instance> data = GenDataset(model, 30, false, 42);
  BenchmarkSpec spec;
  spec.methods = {Method::kFeat, Method::kFsgs};
  spec.budgets = {3};
  const std::vector<double> alphas = {0, 2, 4, 8};
  std::vector<BenchmarkReport> reports;
  const std::vector<AlphaRow> rows = AlphaSweep(model, data, spec, alphas, &reports);
  ASSERT_EQ(rows.size(), 4u);
  ASSERT_EQ(reports.size(), 4u);
  for (size_t a = 0; a < rows.size(); ++a) {
    EXPECT_EQ(rows[a].alpha, alphas[a]);
    EXPECT_EQ(rows[a].metrics.method, Method::kFeat);
  }
  BenchmarkSpec plain = spec;
  plain.methods = {Method::kFeat};
  plain.base.alpha = 4;
  const BenchmarkReport direct = RunBenchmark(model, data, plain);
  EXPECT_EQ(rows[2].metrics.sr, direct.rows[0].sr);
  EXPECT_EQ(rows[2].metrics.queries, direct.rows[0].queries);

  spec.methods = {Method::kFsgs};
  EXPECT_EQ(CodeOf([&] { AlphaSweep(model, data, spec, alphas); }), ErrorCode::kInvalidArg);
}

TEST(AlphaSweepTest, ModerateAlphasAgreeOnUniformSuite) {
  PlantedModelSpec ms;
  ms.seed = 51;
  const EmbedMlpModel model = MakePlantedClassifier(ms);
  const std::vector<Instance> data = GenDataset(model, 200, true, 52);
  BenchmarkSpec spec;
  spec.methods = {Method::kFeat};
  spec.budgets = {6};
  const std::vector<double> alphas = {2, 8};
  const std::vector<AlphaRow> rows = AlphaSweep(model, data, spec, alphas);
  EXPECT_LE(std::abs(rows[0].metrics.sr - rows[1].metrics.sr), 0.05);
}

}  // namespace
}  // namespace catbreak
