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

// Brute force over every perturbation of at most `budget` features, by
// increasing cardinality. The first cardinality with any misclassifying
// perturbation wins, and within it the highest margin. Without a success the
// highest-margin perturbation seen is returned. The empty perturbation counts
// as one evaluation, so no separate clean check is made.

#include <algorithm>
#include <string>

#include "attack_internal.h"
#include "catbreak/attacks.h"
#include "catbreak/error.h"

namespace catbreak {

AttackResult ExhaustiveAttack(ClassifierHandle& handle, const Instance& inst, const AttackConfig& config) {
  config.Validate();
  const auto& m = handle.model().values_per_feature();
  ValidateInstance(inst, m);
  const int64_t count = ExhaustiveEvaluationCount(inst, m, config.budget, config.allow_delete);
  if (count > config.exhaustive_cap) {
    throw Error(ErrorCode::kTooLarge,
                std::to_string(count) + " evaluations exceed the cap of " + std::to_string(config.exhaustive_cap));
  }

  internal::Stopwatch clock;
  internal::RunStart start(handle);
  AttackResult result;
  result.method = Method::kExhaustive;

  std::vector<std::vector<int>> options;
  for (int i = 0; i < inst.num_features(); ++i) {
    options.push_back(AlternativeValues(inst, i, m[i], config.allow_delete));
  }

  Instance best = inst;
  double best_margin = 0.0;
  bool have_best = false;
  bool found = false;
  const int depth = std::min(config.budget, inst.num_features());
  for (int k = 0; k <= depth && !found; ++k) {
    const bool finished =
        internal::ForEachCombination(options, k, [&](const std::vector<int>& lists, const std::vector<int>& picks) {
          Instance probe = inst;
          for (size_t a = 0; a < lists.size(); ++a) probe.categories[lists[a]] = picks[a];
          const double margin = Margin(handle.Predict(probe), inst.label);
          const bool success = margin >= 0.0;
          // A success beats any failure; otherwise the higher margin wins.
          if (!have_best || (success && !found) || (success == found && margin > best_margin)) {
            best = std::move(probe);
            best_margin = margin;
            have_best = true;
            found = found || success;
          }
          return clock.Seconds() < config.time_limit_s;
        });
    result.outer_iterations = k;
    if (!finished) break;
  }

  internal::Finish(result, handle, start, clock, inst, best, best_margin);
  return result;
}

}  // namespace catbreak
