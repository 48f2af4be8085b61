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

#include <map>
#include <utility>
#include <vector>

#include "benchmark/benchmark.h"
#include "catbreak/attacks.h"
#include "catbreak/bench.h"
#include "catbreak/embed_mlp.h"

namespace catbreak {
namespace {

struct Fixture {
  EmbedMlpModel model;
  std::vector<Instance> data;
};

const Fixture& Skewed(int n, int m) {
  static std::map<std::pair<int, int>, Fixture> cache;
  auto it = cache.find({n, m});
  if (it != cache.end()) return it->second;
  PlantedModelSpec spec;
  spec.num_features = n;
  spec.num_values = m;
  spec.sensitivity = Sensitivity::Skewed(3);
  spec.seed = 1;
  EmbedMlpModel model = MakePlantedClassifier(spec);
  std::vector<Instance> data = GenDataset(model, 64, false, 2);
  return cache.emplace(std::make_pair(n, m), Fixture{std::move(model), std::move(data)}).first->second;
}

void BM_Predict(benchmark::State& state) {
  const Fixture& f = Skewed(static_cast<int>(state.range(0)), 10);
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(f.model.Predict(f.data[i++ % f.data.size()]));
}
BENCHMARK(BM_Predict)->Arg(20)->Arg(50)->Arg(200);

void BM_GradIndicators(benchmark::State& state) {
  const Fixture& f = Skewed(static_cast<int>(state.range(0)), 10);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.model.GradIndicators(f.data[i++ % f.data.size()], Objective::MarginObjective()));
  }
}
BENCHMARK(BM_GradIndicators)->Arg(20)->Arg(50)->Arg(200);

void BM_Attack(benchmark::State& state, Method method) {
  const Fixture& f = Skewed(50, 10);
  AttackConfig config;
  config.budget = static_cast<int>(state.range(0));
  size_t i = 0;
  int64_t queries = 0;
  for (auto _ : state) {
    ClassifierHandle handle(f.model);
    queries += RunAttack(method, handle, f.data[i++ % f.data.size()], config).queries;
  }
  state.counters["queries"] = benchmark::Counter(static_cast<double>(queries), benchmark::Counter::kAvgIterations);
}
BENCHMARK_CAPTURE(BM_Attack, feat, Method::kFeat)->Arg(6);
BENCHMARK_CAPTURE(BM_Attack, feat_b, Method::kFeatB)->Arg(6);
BENCHMARK_CAPTURE(BM_Attack, fsgs, Method::kFsgs)->Arg(2)->Arg(4);
BENCHMARK_CAPTURE(BM_Attack, ompgs, Method::kOmpgs)->Arg(6);
BENCHMARK_CAPTURE(BM_Attack, gradattack, Method::kGradAttack)->Arg(6);

void BM_SelectArm(benchmark::State& state) {
  std::vector<ArmStats> arms(static_cast<size_t>(state.range(0)));
  for (size_t l = 0; l < arms.size(); ++l) {
    arms[l].Update(0.5 + 0.01 * static_cast<double>(l));
    arms[l].Update(0.4);
  }
  const int64_t t = 2 * static_cast<int64_t>(arms.size());
  for (auto _ : state) benchmark::DoNotOptimize(SelectArm(arms, t, {}));
}
BENCHMARK(BM_SelectArm)->Arg(10)->Arg(100);

}  // namespace
}  // namespace catbreak

BENCHMARK_MAIN();
