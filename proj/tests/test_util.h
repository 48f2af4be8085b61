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

#ifndef CATBREAK_TESTS_TEST_UTIL_H_
#define CATBREAK_TESTS_TEST_UTIL_H_

#include <random>
#include <span>
#include <vector>

#include "catbreak/categorical.h"
#include "catbreak/embed_mlp.h"

namespace catbreak::testing {

inline Instance RandomInstance(std::span<const int> m, int num_classes, std::mt19937_64& rng,
                               double absent_prob = 0.0) {
  Instance inst;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int mi : m) {
    inst.categories.push_back(u(rng) < absent_prob ? kAbsent : std::uniform_int_distribution<int>(0, mi - 1)(rng));
  }
  inst.label = std::uniform_int_distribution<int>(0, num_classes - 1)(rng);
  return inst;
}

// N=2, M=[2,3], D=2, one hidden layer of 3, K=3. Reference outputs for this
// model were computed with an independent autodiff implementation.
inline EmbedMlpModel HandModel() {
  EmbeddingTable table({2, 3}, 2, {0.5, -1.0, 1.5, 0.25, -0.75, 0.5, 0.2, 0.3, 1.0, -2.0});
  DenseLayer l0{4, 3, {0.3, -0.2, 0.5, 0.1, -0.4, 0.6, 0.2, -0.3, 0.1, 0.1, -0.5, 0.7}, {0.05, -0.1, 0.2}};
  DenseLayer l1{3, 3, {1.0, -0.5, 0.3, -0.2, 0.8, 0.4, 0.6, 0.1, -0.9}, {0.1, 0.0, -0.2}};
  return EmbedMlpModel(std::move(table), {l0, l1}, 0);
}

}  // namespace catbreak::testing

#endif  // CATBREAK_TESTS_TEST_UTIL_H_
