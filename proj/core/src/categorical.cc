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

#include "catbreak/categorical.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "catbreak/error.h"

namespace catbreak {

EmbeddingTable::EmbeddingTable(std::vector<int> values_per_feature, int dim, std::vector<double> vectors)
    : values_per_feature_(std::move(values_per_feature)), dim_(dim), data_(std::move(vectors)) {
  if (values_per_feature_.empty()) throw Error(ErrorCode::kInvalidArg, "embedding table needs at least one feature");
  if (dim_ <= 0) throw Error(ErrorCode::kInvalidArg, "embedding dim must be positive");
  offsets_.reserve(values_per_feature_.size());
  size_t offset = 0;
  for (int m : values_per_feature_) {
    if (m <= 0) throw Error(ErrorCode::kInvalidArg, "every feature needs at least one value");
    offsets_.push_back(offset);
    offset += static_cast<size_t>(m) * dim_;
    max_values_ = std::max(max_values_, m);
  }
  if (data_.size() != offset) {
    throw Error(ErrorCode::kInvalidArg, "embedding payload has " + std::to_string(data_.size()) + " values, expected " +
                                            std::to_string(offset));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "embedding component is not finite");
  }
}

EmbeddingTable EmbeddingTable::Zeros(std::vector<int> values_per_feature, int dim) {
  size_t total = 0;
  for (int m : values_per_feature) total += static_cast<size_t>(std::max(m, 0)) * std::max(dim, 0);
  return EmbeddingTable(std::move(values_per_feature), dim, std::vector<double>(total, 0.0));
}

void ValidateInstance(const Instance& inst, std::span<const int> values_per_feature) {
  if (inst.categories.size() != values_per_feature.size()) {
    throw Error(ErrorCode::kShapeMismatch, "instance has " + std::to_string(inst.categories.size()) +
                                               " features, expected " + std::to_string(values_per_feature.size()));
  }
  for (size_t i = 0; i < inst.categories.size(); ++i) {
    const int c = inst.categories[i];
    if (c != kAbsent && (c < 0 || c >= values_per_feature[i])) {
      throw Error(ErrorCode::kShapeMismatch,
                  "feature " + std::to_string(i) + " has out-of-range value " + std::to_string(c));
    }
  }
}

Instance ApplyPerturbation(const Instance& inst, const Perturbation& p) {
  Instance out = inst;
  std::vector<bool> seen(inst.categories.size(), false);
  for (const Edit& e : p.edits) {
    if (e.feature < 0 || e.feature >= inst.num_features()) {
      throw Error(ErrorCode::kInvalidEdit, "feature index " + std::to_string(e.feature) + " out of range");
    }
    if (seen[e.feature]) {
      throw Error(ErrorCode::kDuplicateFeature, "feature " + std::to_string(e.feature) + " edited twice");
    }
    seen[e.feature] = true;
    const int current = inst.categories[e.feature];
    switch (e.kind) {
      case EditKind::kInsert:
        if (current != kAbsent || !e.new_value || *e.new_value < 0) {
          throw Error(ErrorCode::kInvalidEdit, "insert needs an absent feature and a value");
        }
        break;
      case EditKind::kDelete:
        if (current == kAbsent || e.new_value) {
          throw Error(ErrorCode::kInvalidEdit, "delete needs a present feature and no value");
        }
        break;
      case EditKind::kSubstitute:
        if (current == kAbsent || !e.new_value || *e.new_value < 0 || *e.new_value == current) {
          throw Error(ErrorCode::kInvalidEdit, "substitute needs a present feature and a different value");
        }
        break;
    }
    out.categories[e.feature] = e.kind == EditKind::kDelete ? kAbsent : *e.new_value;
  }
  return out;
}

std::vector<int> Diff(const Instance& a, const Instance& b) {
  if (a.categories.size() != b.categories.size()) {
    throw Error(ErrorCode::kShapeMismatch, "diff of instances with different feature counts");
  }
  std::vector<int> out;
  for (size_t i = 0; i < a.categories.size(); ++i) {
    if (a.categories[i] != b.categories[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

Perturbation PerturbationBetween(const Instance& from, const Instance& to) {
  Perturbation p;
  for (int i : Diff(from, to)) {
    const int before = from.categories[i];
    const int after = to.categories[i];
    if (before == kAbsent) {
      p.edits.push_back({i, EditKind::kInsert, after});
    } else if (after == kAbsent) {
      p.edits.push_back({i, EditKind::kDelete, std::nullopt});
    } else {
      p.edits.push_back({i, EditKind::kSubstitute, after});
    }
  }
  return p;
}

Perturbation Inverse(const Perturbation& p, const Instance& original) {
  Perturbation inv;
  for (const Edit& e : p.edits) {
    const int before = original.categories.at(e.feature);
    switch (e.kind) {
      case EditKind::kInsert: inv.edits.push_back({e.feature, EditKind::kDelete, std::nullopt}); break;
      case EditKind::kDelete: inv.edits.push_back({e.feature, EditKind::kInsert, before}); break;
      case EditKind::kSubstitute: inv.edits.push_back({e.feature, EditKind::kSubstitute, before}); break;
    }
  }
  return inv;
}

std::vector<int> AlternativeValues(const Instance& inst, int feature, int num_values, bool allow_delete) {
  const int current = inst.categories[feature];
  std::vector<int> out;
  out.reserve(num_values + 1);
  for (int v = 0; v < num_values; ++v) {
    if (v != current) out.push_back(v);
  }
  if (allow_delete && current != kAbsent) out.push_back(kAbsent);
  return out;
}

IndicatorGrid Indicators(const Instance& inst, const EmbeddingTable& table) {
  ValidateInstance(inst, table.values_per_feature());
  IndicatorGrid b(table.num_features(), table.max_values());
  for (int i = 0; i < inst.num_features(); ++i) {
    if (inst.categories[i] != kAbsent) b(i, inst.categories[i]) = 1.0;
  }
  return b;
}

void ValidateRelaxed(const IndicatorGrid& relaxed, const EmbeddingTable& table) {
  if (relaxed.rows() != table.num_features() || relaxed.cols() != table.max_values()) {
    throw Error(ErrorCode::kShapeMismatch, "relaxed indicators do not match the embedding table");
  }
  for (int i = 0; i < relaxed.rows(); ++i) {
    for (int j = 0; j < relaxed.cols(); ++j) {
      const double v = relaxed(i, j);
      if (j >= table.num_values(i)) {
        if (v != 0.0) throw Error(ErrorCode::kShapeMismatch, "nonzero indicator at a nonexistent value slot");
      } else if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kInvalidArg, "relaxed indicator outside [0, 1]");
      }
    }
  }
}

StackedTensor StackTensor(const IndicatorGrid& relaxed, const EmbeddingTable& table) {
  ValidateRelaxed(relaxed, table);
  StackedTensor x{table.num_features(), table.max_values(), table.dim(), {}};
  x.data.assign(static_cast<size_t>(x.num_features) * x.max_values * x.dim, 0.0);
  for (int i = 0; i < x.num_features; ++i) {
    for (int j = 0; j < table.num_values(i); ++j) {
      const double b = relaxed(i, j);
      if (b == 0.0) continue;
      auto e = table.vector(i, j);
      double* out = x.data.data() + (static_cast<size_t>(i) * x.max_values + j) * x.dim;
      for (int d = 0; d < x.dim; ++d) out[d] = b * e[d];
    }
  }
  return x;
}

StackedTensor StackTensor(const Instance& inst, const EmbeddingTable& table) {
  return StackTensor(Indicators(inst, table), table);
}

}  // namespace catbreak
