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

// catbreak: command-line front end for model/data generation, attacks,
// benchmarks and the analysis tools.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catbreak/analysis.h"
#include "catbreak/attacks.h"
#include "catbreak/bandit.h"
#include "catbreak/bench.h"
#include "catbreak/embed_mlp.h"
#include "catbreak/error.h"
#include "catbreak/io.h"
#include "json.hpp"

namespace catbreak {
namespace {

using nlohmann::json;

struct GlobalOptions {
  uint64_t seed = 0;
  int threads = 1;
  std::string out_dir = ".";
};

// Relative output paths land under --out-dir.
std::string OutPath(const GlobalOptions& g, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  std::filesystem::create_directories(g.out_dir);
  return (std::filesystem::path(g.out_dir) / p).string();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json NullIfNaN(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

// ---------------------------------------------------------------------------
// gen-model

struct GenModelOptions {
  std::string kind = "planted";
  int features = 20;
  int values = 5;
  int dim = 8;
  std::vector<int> hidden = {16};
  int classes = 2;
  std::string sensitivity = "uniform";
  int top = 3;
  double planted_scale = 10.0;
  std::string out = "model.bin";
};

int RunGenModel(const GlobalOptions& g, const GenModelOptions& o) {
  EmbedMlpModel model = [&] {
    if (o.kind == "random") {
      return MakeRandomClassifier(std::vector<int>(o.features, o.values), o.dim, o.hidden, o.classes, g.seed);
    }
    PlantedModelSpec spec;
    spec.num_features = o.features;
    spec.num_values = o.values;
    spec.num_classes = o.classes;
    spec.dim = o.dim;
    spec.hidden = o.hidden;
    spec.sensitivity = o.sensitivity == "skewed" ? Sensitivity::Skewed(o.top) : Sensitivity::Uniform();
    spec.planted_scale = o.planted_scale;
    spec.seed = g.seed;
    return MakePlantedClassifier(spec);
  }();
  const std::string path = OutPath(g, o.out);
  SaveModel(model, path);
  std::cout << "wrote " << path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// gen-data

struct GenDataOptions {
  std::string model;
  int count = 200;
  bool balance = false;
  std::string out = "data.jsonl";
};

int RunGenData(const GlobalOptions& g, const GenDataOptions& o) {
  const EmbedMlpModel model = LoadModel(o.model);
  const std::vector<Instance> data = GenDataset(model, o.count, o.balance, g.seed);
  const std::string path = OutPath(g, o.out);
  SaveDataset(data, path);
  std::cout << "wrote " << data.size() << " instances to " << path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// Shared attack flags.

struct AttackFlags {
  int budget = 6;
  double time_limit = 1000;
  int top_l = 10;
  int tau = 0;
  double alpha = 4.0;
  double lambda = 1.0;
  std::string reward_variant = "perturbed";
  std::string omp_score = "edit";
  bool appendix_bonus = false;
  bool allow_delete = false;
  int grad_combo_depth = 0;

  void Register(CLI::App* app) {
    app->add_option("--budget", budget, "Max modified features")->check(CLI::NonNegativeNumber);
    app->add_option("--time-limit", time_limit, "Wall-clock limit per attack, seconds");
    app->add_option("--top-l", top_l, "Gradient top-L candidates / bandit arms");
    app->add_option("--tau", tau, "FEAT inner rounds per re-ranking (0 = budget/3)");
    app->add_option("--alpha", alpha, "UCB exploration weight");
    app->add_option("--lambda", lambda, "Reward offset");
    app->add_option("--reward-variant", reward_variant, "Reward baseline")
        ->check(CLI::IsMember({"perturbed", "original"}));
    app->add_option("--omp-score", omp_score, "Gradient feature score")
        ->check(CLI::IsMember({"edit", "max-slot", "row-norm"}));
    app->add_flag("--appendix-bonus", appendix_bonus, "Use the alpha^2 ln t / t_l exploration term");
    app->add_flag("--allow-delete", allow_delete, "Allow deleting present features");
    app->add_option("--grad-combo-depth", grad_combo_depth, "GradAttack combination depth (0 = single flip)");
  }

  AttackConfig ToConfig() const {
    AttackConfig c;
    c.budget = budget;
    c.time_limit_s = time_limit;
    c.top_l = top_l;
    c.tau = tau;
    c.alpha = alpha;
    c.lambda = lambda;
    c.reward_variant = reward_variant == "original" ? RewardVariant::kOriginalBase : RewardVariant::kPerturbedBase;
    c.omp_score = omp_score == "max-slot"   ? OmpScore::kMaxAbsSlot
                  : omp_score == "row-norm" ? OmpScore::kRowNorm
                                            : OmpScore::kEditDirectional;
    c.appendix_bonus = appendix_bonus;
    c.allow_delete = allow_delete;
    c.grad_combo_depth = grad_combo_depth;
    return c;
  }
};

// ---------------------------------------------------------------------------
// attack

struct AttackOptions {
  std::string method = "feat";
  std::string model;
  std::string data;
  std::string out = "attack.jsonl";
  AttackFlags flags;
};

int RunAttackCommand(const GlobalOptions& g, const AttackOptions& o) {
  const EmbedMlpModel model = LoadModel(o.model);
  const std::vector<Instance> data = LoadDataset(o.data);
  BenchmarkSpec spec;
  spec.model_path = o.model;
  spec.data_path = o.data;
  spec.methods = {ParseMethod(o.method)};
  spec.base = o.flags.ToConfig();
  spec.budgets = {spec.base.budget};
  spec.seed = g.seed;
  spec.threads = g.threads;
  spec.sr_denominator = SrDenominator::kAll;
  const BenchmarkReport report = RunBenchmark(model, data, spec);

  std::vector<RunRecord> correct;
  std::ostringstream out;
  for (const RunRecord& run : report.runs) {
    out << RunRecordToJson(run) << '\n';
    if (Margin(model.Predict(data[run.instance]), data[run.instance].label) < 0.0) correct.push_back(run);
  }
  const std::vector<MetricsRow> rows = AggregateRuns(correct, spec.methods, spec.budgets);
  const MetricsRow& row = rows.front();
  const auto cell = [](const std::optional<double>& v) { return v ? json(*v) : json("N/A"); };
  const json aggregate = {{"aggregate",
                           {{"method", o.method},
                            {"budget", spec.base.budget},
                            {"instances", report.runs.size()},
                            {"attempted_correct", row.attempted},
                            {"successes", row.successes},
                            {"errors", report.failures},
                            {"sr", row.sr},
                            {"no_query", cell(row.queries)},
                            {"no_change", cell(row.changed)},
                            {"runtime_s", cell(row.runtime_s)}}}};
  out << aggregate.dump() << '\n';
  const std::string path = OutPath(g, o.out);
  WriteText(path, out.str());
  std::cout << MethodName(row.method) << " budget=" << row.budget << " SR=" << row.sr
            << " No.query=" << FormatCell(row.queries) << " No.change=" << FormatCell(row.changed) << "\n";
  return report.failures > 0 ? 2 : 0;
}

// ---------------------------------------------------------------------------
// bench / alpha-sweep

struct BenchOptions {
  std::string spec_file;
  std::string model;
  std::string data;
  std::string methods;
  std::string budgets;
  std::string alphas = "0,2,4,8";
  int repetitions = 0;
  int max_instances = -1;
  std::string sr_denominator;
  AttackFlags flags;
};

BenchmarkSpec BuildSpec(const GlobalOptions& g, const BenchOptions& o, const CLI::App* app) {
  BenchmarkSpec spec;
  if (!o.spec_file.empty()) {
    spec = ParseBenchmarkSpec(ReadText(o.spec_file));
  } else {
    spec.base = o.flags.ToConfig();
  }
  if (!o.model.empty()) spec.model_path = o.model;
  if (!o.data.empty()) spec.data_path = o.data;
  if (!o.methods.empty()) {
    spec.methods.clear();
    for (const std::string& m : SplitList(o.methods)) spec.methods.push_back(ParseMethod(m));
  }
  if (!o.budgets.empty()) {
    spec.budgets.clear();
    for (const std::string& b : SplitList(o.budgets)) spec.budgets.push_back(std::stoi(b));
  }
  if (spec.budgets.empty()) spec.budgets = {spec.base.budget};
  if (o.repetitions > 0) spec.repetitions = o.repetitions;
  if (o.max_instances >= 0) spec.max_instances = o.max_instances;
  if (!o.sr_denominator.empty()) {
    spec.sr_denominator = o.sr_denominator == "all" ? SrDenominator::kAll : SrDenominator::kCorrect;
  }
  if (app->get_parent()->count("--seed") > 0 || o.spec_file.empty()) spec.seed = g.seed;
  if (app->get_parent()->count("--threads") > 0 || o.spec_file.empty()) spec.threads = g.threads;
  if (spec.model_path.empty() || spec.data_path.empty()) {
    throw Error(ErrorCode::kInvalidArg, "a model and a dataset are required (--model/--data or the spec file)");
  }
  return spec;
}

void RegisterBenchFlags(CLI::App* app, BenchOptions& o) {
  app->add_option("--spec", o.spec_file, "Benchmark spec JSON");
  app->add_option("--model", o.model, "Model file");
  app->add_option("--data", o.data, "Dataset JSONL");
  app->add_option("--methods", o.methods, "Comma-separated methods");
  app->add_option("--budgets", o.budgets, "Comma-separated budgets");
  app->add_option("--repetitions", o.repetitions, "Runs per (instance, method, budget)");
  app->add_option("--max-instances", o.max_instances, "Use only the first N instances");
  app->add_option("--sr-denominator", o.sr_denominator, "SR denominator")->check(CLI::IsMember({"correct", "all"}));
  o.flags.Register(app);
}

void PrintRows(const std::vector<MetricsRow>& rows) {
  std::printf("%-12s %6s %8s %12s %10s %12s\n", "method", "budget", "SR", "No.query", "No.change", "Runtime(s)");
  for (const MetricsRow& r : rows) {
    std::printf("%-12s %6d %8.4f %12s %10s %12s\n", std::string(MethodName(r.method)).c_str(), r.budget, r.sr,
                FormatCell(r.queries).c_str(), FormatCell(r.changed).c_str(), FormatCell(r.runtime_s).c_str());
  }
}

int RunBench(const GlobalOptions& g, const BenchOptions& o, const CLI::App* app) {
  const BenchmarkSpec spec = BuildSpec(g, o, app);
  const EmbedMlpModel model = LoadModel(spec.model_path);
  const std::vector<Instance> data = LoadDataset(spec.data_path);
  const BenchmarkReport report = RunBenchmark(model, data, spec);
  WriteBenchmarkReports(report, spec, g.out_dir);
  PrintRows(report.rows);
  if (report.failures > 0) {
    std::cerr << report.failures << " run(s) failed; see runs.jsonl\n";
    return 2;
  }
  return 0;
}

int RunAlphaSweep(const GlobalOptions& g, const BenchOptions& o, const CLI::App* app) {
  const BenchmarkSpec spec = BuildSpec(g, o, app);
  const EmbedMlpModel model = LoadModel(spec.model_path);
  const std::vector<Instance> data = LoadDataset(spec.data_path);
  std::vector<double> alphas;
  for (const std::string& a : SplitList(o.alphas)) alphas.push_back(std::stod(a));
  std::vector<BenchmarkReport> reports;
  const std::vector<AlphaRow> rows = AlphaSweep(model, data, spec, alphas, &reports);
  WriteAlphaSweep(rows, spec, g.out_dir);
  std::printf("%8s %6s %12s %12s %8s\n", "alpha", "budget", "Runtime(s)", "No.query", "SR");
  int failures = 0;
  for (const AlphaRow& r : rows) {
    std::printf("%8g %6d %12s %12s %8.4f\n", r.alpha, r.metrics.budget, FormatCell(r.metrics.runtime_s).c_str(),
                FormatCell(r.metrics.queries).c_str(), r.metrics.sr);
  }
  for (const BenchmarkReport& rep : reports) failures += rep.failures;
  return failures > 0 ? 2 : 0;
}

// ---------------------------------------------------------------------------
// sensitivity / fidelity / stationarity

struct SensitivityOptions {
  std::string model;
  std::string data;
  std::string rule = "max-value";
  std::string target = "best-wrong";
  bool allow_delete = false;
  std::string out = "sensitivity.json";
  std::string csv;
};

int RunSensitivity(const GlobalOptions& g, const SensitivityOptions& o) {
  const EmbedMlpModel model = LoadModel(o.model);
  const std::vector<Instance> data = LoadDataset(o.data);
  const SensitivityReport report = FeatureSensitivity(
      model, data, o.rule == "first-alt" ? SensitivityRule::kFirstAlt : SensitivityRule::kMaxValue,
      o.target == "true-drop" ? SensitivityTarget::kTrueDrop : SensitivityTarget::kBestWrong, o.allow_delete);
  const json doc = {{"version", kReportVersion},
                    {"rule", o.rule},
                    {"target", o.target},
                    {"aggregation", "mean"},
                    {"instances", report.instances},
                    {"fs", report.fs},
                    {"ranking", TopSensitiveFeatures(report, -1)}};
  WriteText(OutPath(g, o.out), doc.dump(2) + "\n");
  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << "feature,fs\n";
    for (size_t i = 0; i < report.fs.size(); ++i) csv << i << ',' << report.fs[i] << '\n';
    WriteText(OutPath(g, o.csv), csv.str());
  }
  for (int f : TopSensitiveFeatures(report, 10)) std::printf("feature %3d  FS=%.6f\n", f, report.fs[f]);
  return 0;
}

struct FidelityOptions {
  std::string model;
  std::string data;
  int samples = 100;
  std::string omp_score = "edit";
  std::string out = "fidelity.json";
};

int RunFidelity(const GlobalOptions& g, const FidelityOptions& o) {
  const EmbedMlpModel model = LoadModel(o.model);
  std::vector<Instance> data = LoadDataset(o.data);
  if (o.samples > 0 && static_cast<size_t>(o.samples) < data.size()) data.resize(o.samples);
  const OmpScore score = o.omp_score == "max-slot"   ? OmpScore::kMaxAbsSlot
                         : o.omp_score == "row-norm" ? OmpScore::kRowNorm
                                                     : OmpScore::kEditDirectional;
  const FidelityReport report = GradientIndicatorFidelity(model, data, Objective::MarginObjective(), score);
  json per = json::array();
  for (double r : report.per_instance) per.push_back(NullIfNaN(r));
  const json doc = {{"version", kReportVersion},
                    {"omp_score", o.omp_score},
                    {"correlation", NullIfNaN(report.correlation)},
                    {"degenerate", report.degenerate},
                    {"used_instances", report.used_instances},
                    {"per_instance", per}};
  WriteText(OutPath(g, o.out), doc.dump(2) + "\n");
  std::printf("spearman=%s over %d instances%s\n",
              report.degenerate ? "NaN" : std::to_string(report.correlation).c_str(), report.used_instances,
              report.degenerate ? " (degenerate)" : "");
  return 0;
}

struct StationarityOptions {
  std::string model;
  std::string data;
  int instances = 20;
  int top_k = 10;
  int window = 6;
  bool variance = false;
  std::string out = "stationarity.json";
  AttackFlags flags;
};

int RunStationarity(const GlobalOptions& g, const StationarityOptions& o) {
  const EmbedMlpModel model = LoadModel(o.model);
  std::vector<Instance> data = LoadDataset(o.data);
  if (o.instances > 0 && static_cast<size_t>(o.instances) < data.size()) data.resize(o.instances);
  const std::vector<int> top = TopSensitiveFeatures(FeatureSensitivity(model, data), o.top_k);
  AttackConfig config = o.flags.ToConfig();
  config.seed = g.seed;
  json per = json::array();
  int below = 0;
  int total = 0;
  for (const Instance& inst : data) {
    const StationarityReport r =
        StationarityRatio(model, inst, top, o.window, config,
                          o.variance ? DispersionRatio::kVarianceOverMean : DispersionRatio::kStdOverMean);
    for (double x : r.ratios) {
      ++total;
      below += x <= 1e-2 ? 1 : 0;
    }
    per.push_back({{"ratios", r.ratios}, {"rewards", r.rewards}});
  }
  const json doc = {{"version", kReportVersion},
                    {"ratio", o.variance ? "variance/mean" : "std/mean"},
                    {"window", o.window},
                    {"features", top},
                    {"fraction_below_1e-2", total > 0 ? static_cast<double>(below) / total : 0.0},
                    {"instances", per}};
  WriteText(OutPath(g, o.out), doc.dump(2) + "\n");
  std::printf("%d of %d ratios <= 1e-2\n", below, total);
  return 0;
}

// ---------------------------------------------------------------------------
// regret-sim

struct RegretOptions {
  std::string arms;
  std::string bernoulli;
  int64_t horizon = 10000;
  double alpha = 4.0;
  double lambda = 1.0;
  int seeds = 100;
  bool appendix_bonus = false;
  std::string out = "regret.json";
};

int RunRegretSim(const GlobalOptions& g, const RegretOptions& o) {
  std::vector<ArmSpec> arms;
  for (const std::string& item : SplitList(o.arms)) {
    const size_t colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::kInvalidArg, "arm '" + item + "' is not mu:var");
    arms.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)), ArmDistribution::kGaussian});
  }
  for (const std::string& item : SplitList(o.bernoulli)) {
    arms.push_back({std::stod(item), 0.0, ArmDistribution::kBernoulli});
  }
  std::vector<uint64_t> seeds;
  for (int s = 0; s < o.seeds; ++s) seeds.push_back(RunSeed(g.seed, static_cast<uint64_t>(s)));
  const BanditConfig config{o.alpha, o.lambda, o.appendix_bonus};
  const SimulationReport report = SimulateBandit(arms, o.horizon, config, seeds);
  const json doc = {{"version", kReportVersion},
                    {"horizon", o.horizon},
                    {"alpha", o.alpha},
                    {"seeds", o.seeds},
                    {"empirical_regret_mean", report.empirical_regret_mean},
                    {"empirical_regret_stddev", report.empirical_regret_stddev},
                    {"bound", o.alpha > 2.0 ? json(report.bound) : json(nullptr)},
                    {"per_arm_pulls", report.per_arm_pulls},
                    {"per_seed_regret", report.per_seed_regret}};
  WriteText(OutPath(g, o.out), doc.dump(2) + "\n");
  std::printf("mean regret %.4f (sd %.4f), bound %s\n", report.empirical_regret_mean, report.empirical_regret_stddev,
              o.alpha > 2.0 ? std::to_string(report.bound).c_str() : "n/a (alpha<=2)");
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"catbreak: budgeted evasion attacks on categorical classifiers"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--threads", g.threads, "Worker threads for benchmarks")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", g.out_dir, "Directory for outputs");

  GenModelOptions gen_model;
  CLI::App* cmd_gen_model = app.add_subcommand("gen-model", "Generate a planted or random embedding MLP");
  cmd_gen_model->add_option("--kind", gen_model.kind)->check(CLI::IsMember({"planted", "random"}));
  cmd_gen_model->add_option("--features", gen_model.features);
  cmd_gen_model->add_option("--values", gen_model.values);
  cmd_gen_model->add_option("--dim", gen_model.dim);
  cmd_gen_model->add_option("--hidden", gen_model.hidden)->delimiter(',');
  cmd_gen_model->add_option("--classes", gen_model.classes);
  cmd_gen_model->add_option("--sensitivity", gen_model.sensitivity)->check(CLI::IsMember({"uniform", "skewed"}));
  cmd_gen_model->add_option("--top", gen_model.top, "Planted features for --sensitivity skewed");
  cmd_gen_model->add_option("--planted-scale", gen_model.planted_scale);
  cmd_gen_model->add_option("--out", gen_model.out);

  GenDataOptions gen_data;
  CLI::App* cmd_gen_data = app.add_subcommand("gen-data", "Sample a model-labelled dataset");
  cmd_gen_data->add_option("--model", gen_data.model)->required();
  cmd_gen_data->add_option("--count", gen_data.count);
  cmd_gen_data->add_flag("--balance", gen_data.balance);
  cmd_gen_data->add_option("--out", gen_data.out);

  AttackOptions attack;
  CLI::App* cmd_attack = app.add_subcommand("attack", "Attack every instance of a dataset");
  cmd_attack->add_option("--method", attack.method)
      ->check(CLI::IsMember({"feat", "feat-b", "fsgs", "ompgs", "gradattack", "exhaustive"}));
  cmd_attack->add_option("--model", attack.model)->required();
  cmd_attack->add_option("--data", attack.data)->required();
  cmd_attack->add_option("--out", attack.out);
  attack.flags.Register(cmd_attack);

  BenchOptions bench;
  CLI::App* cmd_bench = app.add_subcommand("bench", "Benchmark methods x budgets");
  RegisterBenchFlags(cmd_bench, bench);

  BenchOptions sweep;
  sweep.methods = "feat";
  CLI::App* cmd_sweep = app.add_subcommand("alpha-sweep", "FEAT benchmark over several alphas");
  RegisterBenchFlags(cmd_sweep, sweep);
  cmd_sweep->add_option("--alphas", sweep.alphas, "Comma-separated alphas");

  SensitivityOptions sens;
  CLI::App* cmd_sens = app.add_subcommand("sensitivity", "Per-feature sensitivity");
  cmd_sens->add_option("--model", sens.model)->required();
  cmd_sens->add_option("--data", sens.data)->required();
  cmd_sens->add_option("--rule", sens.rule)->check(CLI::IsMember({"max-value", "first-alt"}));
  cmd_sens->add_option("--target", sens.target)->check(CLI::IsMember({"best-wrong", "true-drop"}));
  cmd_sens->add_flag("--allow-delete", sens.allow_delete);
  cmd_sens->add_option("--out", sens.out);
  cmd_sens->add_option("--csv", sens.csv, "Also write feature,fs CSV");

  FidelityOptions fid;
  CLI::App* cmd_fid = app.add_subcommand("fidelity", "Rank agreement of gradient scores and single-edit changes");
  cmd_fid->add_option("--model", fid.model)->required();
  cmd_fid->add_option("--data", fid.data)->required();
  cmd_fid->add_option("--samples", fid.samples);
  cmd_fid->add_option("--omp-score", fid.omp_score)->check(CLI::IsMember({"edit", "max-slot", "row-norm"}));
  cmd_fid->add_option("--out", fid.out);

  StationarityOptions stat;
  CLI::App* cmd_stat = app.add_subcommand("stationarity", "Reward dispersion inside one FEAT window");
  cmd_stat->add_option("--model", stat.model)->required();
  cmd_stat->add_option("--data", stat.data)->required();
  cmd_stat->add_option("--instances", stat.instances);
  cmd_stat->add_option("--top-k", stat.top_k);
  cmd_stat->add_option("--window", stat.window);
  cmd_stat->add_flag("--variance", stat.variance, "Report variance/mean instead of std/mean");
  cmd_stat->add_option("--out", stat.out);
  stat.flags.Register(cmd_stat);

  RegretOptions regret;
  CLI::App* cmd_regret = app.add_subcommand("regret-sim", "Simulate the variance-aware UCB bandit");
  cmd_regret->add_option("--arms", regret.arms, "Gaussian arms as mu:var,...");
  cmd_regret->add_option("--bernoulli", regret.bernoulli, "Bernoulli arms as mu,...");
  cmd_regret->add_option("--horizon", regret.horizon);
  cmd_regret->add_option("--alpha", regret.alpha);
  cmd_regret->add_option("--lambda", regret.lambda);
  cmd_regret->add_option("--seeds", regret.seeds);
  cmd_regret->add_flag("--appendix-bonus", regret.appendix_bonus);
  cmd_regret->add_option("--out", regret.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_gen_model) return RunGenModel(g, gen_model);
    if (*cmd_gen_data) return RunGenData(g, gen_data);
    if (*cmd_attack) return RunAttackCommand(g, attack);
    if (*cmd_bench) return RunBench(g, bench, cmd_bench);
    if (*cmd_sweep) return RunAlphaSweep(g, sweep, cmd_sweep);
    if (*cmd_sens) return RunSensitivity(g, sens);
    if (*cmd_fid) return RunFidelity(g, fid);
    if (*cmd_stat) return RunStationarity(g, stat);
    if (*cmd_regret) return RunRegretSim(g, regret);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace
}  // namespace catbreak

int main(int argc, char** argv) { return catbreak::Main(argc, argv); }
