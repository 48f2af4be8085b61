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

// Synthetic datasets and the benchmark harness: runs every (method, budget)
// cell over a dataset and reports SR, No.query, No.change and Runtime.

#ifndef CATBREAK_BENCH_H_
#define CATBREAK_BENCH_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catbreak/attacks.h"
#include "catbreak/categorical.h"
#include "catbreak/classifier.h"

namespace catbreak {

inline constexpr std::string_view kReportVersion = "catbreak-report-v1";

// Uniformly sampled categories labelled by the model's argmax. With
// `balance`, samples whose class quota is full are rejected so class counts
// differ by at most one; throws kInvalidArg if that needs more than
// 1000 * count draws.
std::vector<Instance> GenDataset(const Classifier& model, int count, bool balance, uint64_t seed);

// SplitMix64 finaliser, used to derive independent per-run seeds.
uint64_t SplitMix64(uint64_t x);
// Seed of run `index` under `master`.
uint64_t RunSeed(uint64_t master, uint64_t index);

enum class SrDenominator {
  kCorrect,  // Only instances the model classifies correctly are attacked.
  kAll,      // Every instance is attacked; misclassified ones succeed at once.
};

struct BenchmarkSpec {
  std::string model_path;  // Informational; echoed in reports.
  std::string data_path;
  std::vector<Method> methods;
  std::vector<int> budgets;
  AttackConfig base;
  // Per-method configurations replacing `base` (budget and seed are still set
  // per run).
  std::map<Method, AttackConfig> overrides;
  int repetitions = 1;
  uint64_t seed = 0;
  int threads = 1;
  SrDenominator sr_denominator = SrDenominator::kCorrect;
  int max_instances = 0;  // 0 = whole dataset.

  // Throws kInvalidArg unless there is at least one method and budget.
  void Validate() const;
  AttackConfig ConfigFor(Method method, int budget, uint64_t run_seed) const;
};

// Parses a JSON spec. Keys: model, data, methods, budgets, config,
// overrides {method: config}, repetitions, seed, threads, sr_denominator
// ("correct" | "all"), max_instances. Throws kIo on malformed input.
BenchmarkSpec ParseBenchmarkSpec(const std::string& json_text);
// Reads an AttackConfig from a JSON object text; absent keys keep `base`.
AttackConfig ParseAttackConfig(const std::string& json_text, const AttackConfig& base = {});

struct RunRecord {
  Method method = Method::kFeat;
  int budget = 0;
  int instance = 0;  // Index into the dataset.
  int repetition = 0;
  uint64_t seed = 0;
  bool ok = true;  // False if the run threw.
  std::string error;
  int64_t handle_queries = 0;  // Counter delta of the run's own handle.
  bool verified = false;       // Success re-checked outside the accounting.
  AttackResult result;
};

struct MetricsRow {
  Method method = Method::kFeat;
  int budget = 0;
  int attempted = 0;
  int successes = 0;
  int errors = 0;
  double sr = 0.0;
  // Means over successful runs; empty when there were none.
  std::optional<double> queries;
  std::optional<double> changed;
  std::optional<double> runtime_s;
};

struct BenchmarkReport {
  std::vector<MetricsRow> rows;  // Method-major, budgets in spec order.
  std::vector<RunRecord> runs;   // Same order as rows, then instance, repetition.
  int dataset_size = 0;
  int excluded_misclassified = 0;
  int failures = 0;
};

BenchmarkReport RunBenchmark(const Classifier& model, std::span<const Instance> dataset, const BenchmarkSpec& spec);

// Rebuilds the metrics table from run records alone.
std::vector<MetricsRow> AggregateRuns(std::span<const RunRecord> runs, std::span<const Method> methods,
                                      std::span<const int> budgets);

struct AlphaRow {
  double alpha = 0.0;
  MetricsRow metrics;
};

// FEAT benchmark per alpha (other methods in the spec are ignored). Throws
// kInvalidArg if FEAT is not in the spec.
std::vector<AlphaRow> AlphaSweep(const Classifier& model, std::span<const Instance> dataset, const BenchmarkSpec& spec,
                                 std::span<const double> alphas, std::vector<BenchmarkReport>* reports = nullptr);

// "N/A" for an empty cell, otherwise fixed six decimals.
std::string FormatCell(const std::optional<double>& value);

// metrics.csv, runs.jsonl and report.json under `out_dir` (created if
// missing). Throws kIo.
void WriteBenchmarkReports(const BenchmarkReport& report, const BenchmarkSpec& spec, const std::string& out_dir);
void WriteAlphaSweep(std::span<const AlphaRow> rows, const BenchmarkSpec& spec, const std::string& out_dir);

// Per-run JSON line (wall time included unless `deterministic`).
std::string RunRecordToJson(const RunRecord& run, bool deterministic = false);

}  // namespace catbreak

#endif  // CATBREAK_BENCH_H_
