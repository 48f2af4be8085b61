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

// File formats.
//
// Model file: one JSON header line
//   {"version":"catbreak-model-v1","values_per_feature":[...],"dim":D,
//    "layers":[[in,out],...],"num_classes":K,"seed":S,"dtype":"float64-le",
//    "payload_values":P}
// followed by P little-endian float64 values: the embedding table (feature,
// value, dim order), then for every layer its weights ([out][in]) and bias.
//
// Embedding file: the same layout with version "catbreak-embedding-v1" and
// only the embedding payload.
//
// Dataset: JSON Lines, {"categories":[int or null,...],"label":int}; null is
// an absent feature.

#ifndef CATBREAK_IO_H_
#define CATBREAK_IO_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catbreak/attacks.h"
#include "catbreak/categorical.h"
#include "catbreak/embed_mlp.h"

namespace catbreak {

inline constexpr std::string_view kModelVersion = "catbreak-model-v1";
inline constexpr std::string_view kEmbeddingVersion = "catbreak-embedding-v1";

// All functions throw kIo on unreadable/unwritable files or malformed content.
void SaveModel(const EmbedMlpModel& model, const std::string& path);
EmbedMlpModel LoadModel(const std::string& path);

void SaveEmbeddings(const EmbeddingTable& table, const std::string& path);
EmbeddingTable LoadEmbeddings(const std::string& path);

std::string InstanceToJson(const Instance& inst);
Instance InstanceFromJson(std::string_view line);
void SaveDataset(std::span<const Instance> dataset, const std::string& path);
std::vector<Instance> LoadDataset(const std::string& path);

// One-line JSON rendering of an attack result including its trace. The wall
// time is omitted when `include_wall_time` is false so that reruns compare
// byte for byte.
std::string AttackResultToJson(const AttackResult& result, bool include_wall_time = true);

}  // namespace catbreak

#endif  // CATBREAK_IO_H_
