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
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "catbreak/error.h"
#include "catbreak/io.h"
#include "json.hpp"

namespace catbreak {
namespace {

using nlohmann::json;

const char* RewardVariantName(RewardVariant v) { return v == RewardVariant::kPerturbedBase ? "perturbed" : "original"; }

const char* OmpScoreName(OmpScore s) {
  switch (s) {
    case OmpScore::kEditDirectional: return "edit";
    case OmpScore::kMaxAbsSlot: return "max-slot";
    case OmpScore::kRowNorm: return "row-norm";
  }
  return "?";
}

json ConfigJson(const AttackConfig& c) {
  return {
      {"budget", c.budget},
      {"time_limit", c.time_limit_s},
      {"top_l", c.top_l},
      {"tau", c.EffectiveTau()},
      {"alpha", c.alpha},
      {"lambda", c.lambda},
      {"reward_variant", RewardVariantName(c.reward_variant)},
      {"appendix_bonus", c.appendix_bonus},
      {"allow_delete", c.allow_delete},
      {"objective", c.objective.kind == Objective::Kind::kMargin ? std::string("margin")
                                                                 : "class:" + std::to_string(c.objective.target_class)},
      {"omp_score", OmpScoreName(c.omp_score)},
      {"max_outer", c.EffectiveMaxOuter()},
      {"stop_on_success", c.stop_on_success},
      {"subset_cap", c.subset_cap},
      {"grad_combo_depth", c.grad_combo_depth},
      {"exhaustive_cap", c.exhaustive_cap}};
}

AttackConfig ConfigFromJson(const json& j, AttackConfig c) {
  if (!j.is_object()) throw Error(ErrorCode::kIo, "attack config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "budget")
      c.budget = v.get<int>();
    else if (key == "time_limit")
      c.time_limit_s = v.get<double>();
    else if (key == "top_l")
      c.top_l = v.get<int>();
    else if (key == "tau")
      c.tau = v.get<int>();
    else if (key == "alpha")
      c.alpha = v.get<double>();
    else if (key == "lambda")
      c.lambda = v.get<double>();
    else if (key == "appendix_bonus")
      c.appendix_bonus = v.get<bool>();
    else if (key == "seed")
      c.seed = v.get<uint64_t>();
    else if (key == "allow_delete")
      c.allow_delete = v.get<bool>();
    else if (key == "max_outer")
      c.max_outer = v.get<int>();
    else if (key == "stop_on_success")
      c.stop_on_success = v.get<bool>();
    else if (key == "subset_cap")
      c.subset_cap = v.get<int64_t>();
    else if (key == "grad_combo_depth")
      c.grad_combo_depth = v.get<int>();
    else if (key == "exhaustive_cap")
      c.exhaustive_cap = v.get<int64_t>();
    else if (key == "reward_variant") {
      const auto s = v.get<std::string>();
      if (s == "perturbed")
        c.reward_variant = RewardVariant::kPerturbedBase;
      else if (s == "original")
        c.reward_variant = RewardVariant::kOriginalBase;
      else
        throw Error(ErrorCode::kIo, "reward_variant must be perturbed or original");
    } else if (key == "omp_score") {
      const auto s = v.get<std::string>();
      if (s == "edit")
        c.omp_score = OmpScore::kEditDirectional;
      else if (s == "max-slot")
        c.omp_score = OmpScore::kMaxAbsSlot;
      else if (s == "row-norm")
        c.omp_score = OmpScore::kRowNorm;
      else
        throw Error(ErrorCode::kIo, "omp_score must be edit, max-slot or row-norm");
    } else if (key == "objective") {
      const auto s = v.get<std::string>();
      if (s == "margin")
        c.objective = Objective::MarginObjective();
      else if (s.rfind("class:", 0) == 0)
        c.objective = Objective::ClassObjective(std::stoi(s.substr(6)));
      else
        throw Error(ErrorCode::kIo, "objective must be margin or class:K");
    } else {
      throw Error(ErrorCode::kIo, "unknown attack config key '" + key + "'");
    }
  }
  return c;
}

json CellJson(const std::optional<double>& v) { return v ? json(*v) : json("N/A"); }

json RowJson(const MetricsRow& r) {
  return {{"method", MethodName(r.method)},
          {"budget", r.budget},
          {"attempted", r.attempted},
          {"successes", r.successes},
          {"errors", r.errors},
          {"sr", r.sr},
          {"no_query", CellJson(r.queries)},
          {"no_change", CellJson(r.changed)},
          {"runtime_s", CellJson(r.runtime_s)}};
}

json HardwareJson() {
  return {{"hardware_concurrency", std::thread::hardware_concurrency()},
#if defined(__VERSION__)
          {"compiler", __VERSION__}
#else
          {"compiler", "unknown"}
#endif
  };
}

std::ofstream OpenReport(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  return out;
}

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + dir + "': " + ec.message());
}

}  // namespace

std::vector<Instance> GenDataset(const Classifier& model, int count, bool balance, uint64_t seed) {
  if (count < 0) throw Error(ErrorCode::kInvalidArg, "instance count must be >= 0");
  const auto& m = model.values_per_feature();
  const int k = model.num_classes();
  std::vector<int> quota(k, count / k);
  for (int c = 0; c < count % k; ++c) ++quota[c];
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  out.reserve(count);
  const int64_t max_draws = 1000 * static_cast<int64_t>(std::max(count, 1));
  for (int64_t draws = 0; static_cast<int>(out.size()) < count; ++draws) {
    if (draws >= max_draws) throw Error(ErrorCode::kInvalidArg, "cannot balance classes: a class is too rare");
    Instance inst;
    for (int mi : m) inst.categories.push_back(std::uniform_int_distribution<int>(0, mi - 1)(rng));
    inst.label = Argmax(model.Predict(inst));
    if (balance) {
      if (quota[inst.label] == 0) continue;
      --quota[inst.label];
    }
    out.push_back(std::move(inst));
  }
  return out;
}

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t RunSeed(uint64_t master, uint64_t index) { return SplitMix64(SplitMix64(master) + index); }

void BenchmarkSpec::Validate() const {
  if (methods.empty()) throw Error(ErrorCode::kInvalidArg, "benchmark needs at least one method");
  if (budgets.empty()) throw Error(ErrorCode::kInvalidArg, "benchmark needs at least one budget");
  if (repetitions < 1) throw Error(ErrorCode::kInvalidArg, "repetitions must be >= 1");
  if (threads < 1) throw Error(ErrorCode::kInvalidArg, "threads must be >= 1");
  for (int b : budgets) {
    if (b < 0) throw Error(ErrorCode::kInvalidArg, "budgets must be >= 0");
  }
}

AttackConfig BenchmarkSpec::ConfigFor(Method method, int budget, uint64_t run_seed) const {
  auto it = overrides.find(method);
  AttackConfig c = it == overrides.end() ? base : it->second;
  c.budget = budget;
  c.seed = run_seed;
  return c;
}

AttackConfig ParseAttackConfig(const std::string& json_text, const AttackConfig& base) {
  try {
    return ConfigFromJson(json::parse(json_text), base);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("bad attack config: ") + e.what());
  }
}

BenchmarkSpec ParseBenchmarkSpec(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    BenchmarkSpec spec;
    spec.model_path = j.value("model", "");
    spec.data_path = j.value("data", "");
    for (const json& m : j.at("methods")) spec.methods.push_back(ParseMethod(m.get<std::string>()));
    spec.budgets = j.at("budgets").get<std::vector<int>>();
    if (j.contains("config")) spec.base = ConfigFromJson(j["config"], spec.base);
    if (j.contains("overrides")) {
      for (const auto& [name, cfg] : j["overrides"].items()) {
        spec.overrides[ParseMethod(name)] = ConfigFromJson(cfg, spec.base);
      }
    }
    spec.repetitions = j.value("repetitions", 1);
    spec.seed = j.value("seed", uint64_t{0});
    spec.threads = j.value("threads", 1);
    spec.max_instances = j.value("max_instances", 0);
    const std::string denom = j.value("sr_denominator", "correct");
    if (denom == "correct")
      spec.sr_denominator = SrDenominator::kCorrect;
    else if (denom == "all")
      spec.sr_denominator = SrDenominator::kAll;
    else
      throw Error(ErrorCode::kIo, "sr_denominator must be correct or all");
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("bad benchmark spec: ") + e.what());
  }
}

BenchmarkReport RunBenchmark(const Classifier& model, std::span<const Instance> dataset, const BenchmarkSpec& spec) {
  spec.Validate();
  BenchmarkReport report;
  if (spec.max_instances > 0 && static_cast<size_t>(spec.max_instances) < dataset.size()) {
    dataset = dataset.first(spec.max_instances);
  }
  report.dataset_size = static_cast<int>(dataset.size());

  std::vector<int> attacked;
  for (int i = 0; i < static_cast<int>(dataset.size()); ++i) {
    ValidateInstance(dataset[i], model.values_per_feature());
    const bool correct = Margin(model.Predict(dataset[i]), dataset[i].label) < 0.0;
    if (correct || spec.sr_denominator == SrDenominator::kAll) attacked.push_back(i);
    if (!correct) ++report.excluded_misclassified;
  }
  if (spec.sr_denominator == SrDenominator::kAll) report.excluded_misclassified = 0;

  for (Method method : spec.methods) {
    for (int budget : spec.budgets) {
      for (int i : attacked) {
        for (int rep = 0; rep < spec.repetitions; ++rep) {
          RunRecord run;
          run.method = method;
          run.budget = budget;
          run.instance = i;
          run.repetition = rep;
          run.seed = RunSeed(spec.seed, report.runs.size());
          report.runs.push_back(std::move(run));
        }
      }
    }
  }

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t r = next++; r < report.runs.size(); r = next++) {
      RunRecord& run = report.runs[r];
      const Instance& inst = dataset[run.instance];
      try {
        ClassifierHandle handle(model);
        run.result = RunAttack(run.method, handle, inst, spec.ConfigFor(run.method, run.budget, run.seed));
        run.handle_queries = handle.query_count();
        if (run.result.success) {
          const Instance perturbed = ApplyPerturbation(inst, run.result.perturbation);
          run.verified = Margin(model.Predict(perturbed), inst.label) >= 0.0 &&
                         static_cast<int>(Diff(inst, perturbed).size()) <= run.budget;
        }
      } catch (const std::exception& e) {
        run.ok = false;
        run.error = e.what();
      }
    }
  };
  const int threads = std::min<int>(spec.threads, std::max<size_t>(1, report.runs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (const RunRecord& run : report.runs) report.failures += run.ok ? 0 : 1;
  report.rows = AggregateRuns(report.runs, spec.methods, spec.budgets);
  return report;
}

std::vector<MetricsRow> AggregateRuns(std::span<const RunRecord> runs, std::span<const Method> methods,
                                      std::span<const int> budgets) {
  std::vector<MetricsRow> rows;
  for (Method method : methods) {
    for (int budget : budgets) {
      MetricsRow row;
      row.method = method;
      row.budget = budget;
      double queries = 0.0;
      double changed = 0.0;
      double runtime = 0.0;
      for (const RunRecord& run : runs) {
        if (run.method != method || run.budget != budget) continue;
        if (!run.ok) {
          ++row.errors;
          continue;
        }
        ++row.attempted;
        if (!run.result.success) continue;
        ++row.successes;
        queries += static_cast<double>(run.result.queries);
        changed += run.result.changed;
        runtime += run.result.wall_time_s;
      }
      row.sr = row.attempted > 0 ? static_cast<double>(row.successes) / row.attempted : 0.0;
      if (row.successes > 0) {
        row.queries = queries / row.successes;
        row.changed = changed / row.successes;
        row.runtime_s = runtime / row.successes;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<AlphaRow> AlphaSweep(const Classifier& model, std::span<const Instance> dataset, const BenchmarkSpec& spec,
                                 std::span<const double> alphas, std::vector<BenchmarkReport>* reports) {
  if (std::find(spec.methods.begin(), spec.methods.end(), Method::kFeat) == spec.methods.end()) {
    throw Error(ErrorCode::kInvalidArg, "alpha sweep needs feat among the methods");
  }
  if (alphas.empty()) throw Error(ErrorCode::kInvalidArg, "alpha sweep needs at least one alpha");
  std::vector<AlphaRow> out;
  for (double alpha : alphas) {
    BenchmarkSpec one = spec;
    one.methods = {Method::kFeat};
    auto it = one.overrides.find(Method::kFeat);
    (it == one.overrides.end() ? one.base : it->second).alpha = alpha;
    BenchmarkReport report = RunBenchmark(model, dataset, one);
    for (const MetricsRow& row : report.rows) out.push_back({alpha, row});
    if (reports != nullptr) reports->push_back(std::move(report));
  }
  return out;
}

std::string FormatCell(const std::optional<double>& value) {
  if (!value) return "N/A";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", *value);
  return buf;
}

std::string RunRecordToJson(const RunRecord& run, bool deterministic) {
  json j = {{"method", MethodName(run.method)}, {"budget", run.budget}, {"instance", run.instance},
            {"repetition", run.repetition},     {"seed", run.seed},     {"status", run.ok ? "ok" : "error"}};
  if (!run.ok) {
    j["error"] = run.error;
  } else {
    j["handle_queries"] = run.handle_queries;
    j["verified"] = run.verified;
    j["result"] = json::parse(AttackResultToJson(run.result, !deterministic));
  }
  return j.dump();
}

void WriteBenchmarkReports(const BenchmarkReport& report, const BenchmarkSpec& spec, const std::string& out_dir) {
  EnsureDir(out_dir);
  const std::filesystem::path dir(out_dir);
  {
    std::ofstream csv = OpenReport(dir / "metrics.csv");
    csv << "method,budget,attempted,successes,errors,sr,no_query,no_change,runtime_s\n";
    for (const MetricsRow& r : report.rows) {
      char sr[32];
      std::snprintf(sr, sizeof(sr), "%.6f", r.sr);
      csv << MethodName(r.method) << ',' << r.budget << ',' << r.attempted << ',' << r.successes << ',' << r.errors
          << ',' << sr << ',' << FormatCell(r.queries) << ',' << FormatCell(r.changed) << ',' << FormatCell(r.runtime_s)
          << '\n';
    }
  }
  {
    std::ofstream runs = OpenReport(dir / "runs.jsonl");
    for (const RunRecord& run : report.runs) runs << RunRecordToJson(run) << '\n';
  }
  json methods = json::array();
  for (Method m : spec.methods) methods.push_back(MethodName(m));
  json overrides = json::object();
  for (const auto& [m, c] : spec.overrides) overrides[std::string(MethodName(m))] = ConfigJson(c);
  json rows = json::array();
  for (const MetricsRow& r : report.rows) rows.push_back(RowJson(r));
  const json doc = {{"version", kReportVersion},
                    {"config",
                     {{"model", spec.model_path},
                      {"data", spec.data_path},
                      {"methods", methods},
                      {"budgets", spec.budgets},
                      {"base", ConfigJson(spec.base)},
                      {"overrides", overrides},
                      {"repetitions", spec.repetitions},
                      {"seed", spec.seed},
                      {"threads", spec.threads},
                      {"sr_denominator", spec.sr_denominator == SrDenominator::kCorrect ? "correct" : "all"}}},
                    {"hardware", HardwareJson()},
                    {"notes",
                     {"no_query, no_change and runtime_s are means over successful runs only",
                      "runtime_s is wall-clock and machine-dependent"}},
                    {"dataset_size", report.dataset_size},
                    {"excluded_misclassified", report.excluded_misclassified},
                    {"failures", report.failures},
                    {"rows", rows}};
  std::ofstream out = OpenReport(dir / "report.json");
  out << doc.dump(2) << '\n';
}

void WriteAlphaSweep(std::span<const AlphaRow> rows, const BenchmarkSpec& spec, const std::string& out_dir) {
  EnsureDir(out_dir);
  const std::filesystem::path dir(out_dir);
  std::ofstream csv = OpenReport(dir / "alpha_sweep.csv");
  csv << "alpha,budget,runtime_s,no_query,sr\n";
  json table = json::array();
  for (const AlphaRow& r : rows) {
    char alpha[32];
    char sr[32];
    std::snprintf(alpha, sizeof(alpha), "%g", r.alpha);
    std::snprintf(sr, sizeof(sr), "%.6f", r.metrics.sr);
    csv << alpha << ',' << r.metrics.budget << ',' << FormatCell(r.metrics.runtime_s) << ','
        << FormatCell(r.metrics.queries) << ',' << sr << '\n';
    json row = RowJson(r.metrics);
    row["alpha"] = r.alpha;
    table.push_back(std::move(row));
  }
  const json doc = {{"version", kReportVersion},
                    {"seed", spec.seed},
                    {"base", ConfigJson(spec.base)},
                    {"hardware", HardwareJson()},
                    {"rows", table}};
  std::ofstream out = OpenReport(dir / "alpha_sweep.json");
  out << doc.dump(2) << '\n';
}

}  // namespace catbreak
