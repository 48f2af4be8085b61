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

#include "catbreak/io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "catbreak/error.h"
#include "json.hpp"

namespace catbreak {
namespace {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little, "payload I/O assumes a little-endian host");

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  return out;
}

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return in;
}

void WritePayload(std::ostream& out, std::span<const double> values) {
  out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
}

std::vector<double> ReadPayload(std::istream& in, size_t count, const std::string& path) {
  std::vector<double> values(count);
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<size_t>(in.gcount()) != count * sizeof(double)) {
    throw Error(ErrorCode::kIo, "'" + path + "' has a truncated payload");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorCode::kIo, "'" + path + "' has trailing bytes after the payload");
  }
  return values;
}

json ReadHeader(std::istream& in, const std::string& path, std::string_view version) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kIo, "'" + path + "' is empty");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, "'" + path + "': bad header: " + e.what());
  }
  if (!header.is_object() || header.value("version", "") != version) {
    throw Error(ErrorCode::kIo, "'" + path + "': expected version " + std::string(version));
  }
  return header;
}

template <typename T>
T Field(const json& j, const char* key, const std::string& path) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, "'" + path + "': field '" + key + "': " + e.what());
  }
}

const char* EditKindName(EditKind kind) {
  switch (kind) {
    case EditKind::kInsert: return "insert";
    case EditKind::kDelete: return "delete";
    case EditKind::kSubstitute: return "substitute";
  }
  return "?";
}

json ValueJson(int v) { return v == kAbsent ? json(nullptr) : json(v); }

}  // namespace

void SaveModel(const EmbedMlpModel& model, const std::string& path) {
  const EmbeddingTable& table = model.embeddings();
  json layers = json::array();
  size_t payload = table.flat().size();
  for (const DenseLayer& layer : model.layers()) {
    layers.push_back({layer.in, layer.out});
    payload += layer.weights.size() + layer.bias.size();
  }
  const json header = {{"version", kModelVersion},
                       {"values_per_feature", table.values_per_feature()},
                       {"dim", table.dim()},
                       {"layers", layers},
                       {"num_classes", model.num_classes()},
                       {"seed", model.seed()},
                       {"dtype", "float64-le"},
                       {"payload_values", payload}};
  std::ofstream out = OpenOut(path);
  out << header.dump() << '\n';
  WritePayload(out, table.flat());
  for (const DenseLayer& layer : model.layers()) {
    WritePayload(out, layer.weights);
    WritePayload(out, layer.bias);
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

EmbedMlpModel LoadModel(const std::string& path) {
  std::ifstream in = OpenIn(path);
  const json header = ReadHeader(in, path, kModelVersion);
  auto vpf = Field<std::vector<int>>(header, "values_per_feature", path);
  const int dim = Field<int>(header, "dim", path);
  const auto shapes = Field<std::vector<std::pair<int, int>>>(header, "layers", path);
  const auto seed = Field<uint64_t>(header, "seed", path);
  const auto declared = Field<size_t>(header, "payload_values", path);

  size_t table_size = 0;
  for (int m : vpf) {
    if (m < 1 || dim < 1) throw Error(ErrorCode::kIo, "'" + path + "': bad shapes");
    table_size += static_cast<size_t>(m) * dim;
  }
  size_t expected = table_size;
  for (const auto& [in_dim, out_dim] : shapes) {
    if (in_dim < 1 || out_dim < 1) throw Error(ErrorCode::kIo, "'" + path + "': bad layer shape");
    expected += static_cast<size_t>(in_dim) * out_dim + out_dim;
  }
  if (expected != declared) throw Error(ErrorCode::kIo, "'" + path + "': payload size disagrees with shapes");
  std::vector<double> payload = ReadPayload(in, declared, path);

  size_t pos = 0;
  auto take = [&](size_t count) {
    std::vector<double> out(payload.begin() + static_cast<ptrdiff_t>(pos),
                            payload.begin() + static_cast<ptrdiff_t>(pos + count));
    pos += count;
    return out;
  };
  EmbeddingTable table(std::move(vpf), dim, take(table_size));
  std::vector<DenseLayer> layers;
  for (const auto& [in_dim, out_dim] : shapes) {
    DenseLayer layer{in_dim, out_dim, take(static_cast<size_t>(in_dim) * out_dim), take(out_dim)};
    layers.push_back(std::move(layer));
  }
  return EmbedMlpModel(std::move(table), std::move(layers), seed);
}

void SaveEmbeddings(const EmbeddingTable& table, const std::string& path) {
  const json header = {{"version", kEmbeddingVersion},
                       {"values_per_feature", table.values_per_feature()},
                       {"dim", table.dim()},
                       {"dtype", "float64-le"},
                       {"payload_values", table.flat().size()}};
  std::ofstream out = OpenOut(path);
  out << header.dump() << '\n';
  WritePayload(out, table.flat());
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

EmbeddingTable LoadEmbeddings(const std::string& path) {
  std::ifstream in = OpenIn(path);
  const json header = ReadHeader(in, path, kEmbeddingVersion);
  auto vpf = Field<std::vector<int>>(header, "values_per_feature", path);
  const int dim = Field<int>(header, "dim", path);
  const auto declared = Field<size_t>(header, "payload_values", path);
  return EmbeddingTable(std::move(vpf), dim, ReadPayload(in, declared, path));
}

std::string InstanceToJson(const Instance& inst) {
  json cats = json::array();
  for (int v : inst.categories) cats.push_back(ValueJson(v));
  return json{{"categories", cats}, {"label", inst.label}}.dump();
}

Instance InstanceFromJson(std::string_view line) {
  try {
    const json j = json::parse(line);
    Instance inst;
    for (const json& v : j.at("categories")) inst.categories.push_back(v.is_null() ? kAbsent : v.get<int>());
    inst.label = j.at("label").get<int>();
    return inst;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("bad instance record: ") + e.what());
  }
}

void SaveDataset(std::span<const Instance> dataset, const std::string& path) {
  std::ofstream out = OpenOut(path);
  for (const Instance& inst : dataset) out << InstanceToJson(inst) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

std::vector<Instance> LoadDataset(const std::string& path) {
  std::ifstream in = OpenIn(path);
  std::vector<Instance> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(InstanceFromJson(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::kIo, path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string AttackResultToJson(const AttackResult& r, bool include_wall_time) {
  json edits = json::array();
  for (const Edit& e : r.perturbation.edits) {
    edits.push_back({{"feature", e.feature},
                     {"kind", EditKindName(e.kind)},
                     {"value", e.new_value ? ValueJson(*e.new_value) : json(nullptr)}});
  }
  json trace = json::array();
  for (const TraceStep& s : r.trace) {
    json step = {{"outer", s.outer},   {"inner", s.inner},   {"feature", s.feature}, {"value", ValueJson(s.value)},
                 {"reward", s.reward}, {"margin", s.margin}, {"queries", s.queries}, {"step_queries", s.step_queries}};
    if (!s.arms.empty()) step["arms"] = s.arms;
    if (!s.scores.empty()) step["scores"] = s.scores;
    if (s.success_check_fired) step["success_check_fired"] = true;
    trace.push_back(std::move(step));
  }
  json out = {{"method", MethodName(r.method)},
              {"success", r.success},
              {"margin", r.margin},
              {"changed", r.changed},
              {"queries", r.queries},
              {"grad_passes", r.grad_passes},
              {"outer_iterations", r.outer_iterations},
              {"perturbation", edits},
              {"trace", trace}};
  if (include_wall_time) out["wall_time_s"] = r.wall_time_s;
  return out.dump();
}

}  // namespace catbreak
