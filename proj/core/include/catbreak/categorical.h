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

// Categorical instances, their one-hot indicator and stacked-embedding
// views, and the insert/delete/substitute edits that perturb them.

#ifndef CATBREAK_CATEGORICAL_H_
#define CATBREAK_CATEGORICAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace catbreak {

// Category value of a feature that is not present in the instance. Its
// indicator row is all zeros.
inline constexpr int kAbsent = -1;

// Dense row-major [rows][cols] array of doubles. Used for relaxed indicator
// values and for indicator gradients, where row i is feature i and column j
// is category value j; slots with j >= M_i are kept at exactly 0.
class IndicatorGrid {
 public:
  IndicatorGrid() = default;
  IndicatorGrid(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  std::span<const double> row(int i) const {
    return {data_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)};
  }
  std::span<const double> values() const { return data_; }

  bool operator==(const IndicatorGrid&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Per-feature embedding vectors e^j_i in R^D. Value counts may differ
// between features.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  // `vectors` is the flat row-major (i, j, d) payload of length
  // sum_i M_i * D. Throws kInvalidArg on inconsistent sizes and kNonFinite on
  // NaN/inf components.
  EmbeddingTable(std::vector<int> values_per_feature, int dim, std::vector<double> vectors);

  // Zero-filled table.
  static EmbeddingTable Zeros(std::vector<int> values_per_feature, int dim);

  int num_features() const { return static_cast<int>(values_per_feature_.size()); }
  int num_values(int feature) const { return values_per_feature_[feature]; }
  int max_values() const { return max_values_; }
  int dim() const { return dim_; }
  const std::vector<int>& values_per_feature() const { return values_per_feature_; }

  std::span<const double> vector(int feature, int value) const {
    return {data_.data() + offsets_[feature] + static_cast<size_t>(value) * dim_, static_cast<size_t>(dim_)};
  }
  std::span<double> mutable_vector(int feature, int value) {
    return {data_.data() + offsets_[feature] + static_cast<size_t>(value) * dim_, static_cast<size_t>(dim_)};
  }
  const std::vector<double>& flat() const { return data_; }

 private:
  std::vector<int> values_per_feature_;
  std::vector<size_t> offsets_;
  int max_values_ = 0;
  int dim_ = 0;
  std::vector<double> data_;
};

struct Instance {
  // One entry per feature: a value index in [0, M_i) or kAbsent.
  std::vector<int> categories;
  int label = 0;

  int num_features() const { return static_cast<int>(categories.size()); }
  bool operator==(const Instance&) const = default;
};

enum class EditKind { kInsert, kDelete, kSubstitute };

struct Edit {
  int feature = 0;
  EditKind kind = EditKind::kSubstitute;
  // Empty for kDelete.
  std::optional<int> new_value;

  bool operator==(const Edit&) const = default;
};

struct Perturbation {
  std::vector<Edit> edits;

  size_t size() const { return edits.size(); }
  bool empty() const { return edits.empty(); }
  bool operator==(const Perturbation&) const = default;
};

// Throws kShapeMismatch when `inst` does not fit `values_per_feature`.
void ValidateInstance(const Instance& inst, std::span<const int> values_per_feature);

// Returns a copy of `inst` with every edit of `p` applied. Throws
// kDuplicateFeature if a feature is edited twice and kInvalidEdit if an
// edit's kind does not match the feature's current state.
Instance ApplyPerturbation(const Instance& inst, const Perturbation& p);

// Features whose indicator rows differ, ascending. Symmetric.
std::vector<int> Diff(const Instance& a, const Instance& b);

// The perturbation that turns `from` into `to` (one edit per differing
// feature, kind inferred from presence).
Perturbation PerturbationBetween(const Instance& from, const Instance& to);

// Undoes `p` on the instance it was applied to. Only substitutions,
// insertions and deletions whose original values are recoverable from
// `original` are supported.
Perturbation Inverse(const Perturbation& p, const Instance& original);

// Alternative assignments a single edit may give `feature`: every other
// value when present (plus kAbsent when `allow_delete`), every value when
// absent. Ascending, with kAbsent last.
std::vector<int> AlternativeValues(const Instance& inst, int feature, int num_values, bool allow_delete);

// One-hot indicator view of `inst`, [N][max M_i].
IndicatorGrid Indicators(const Instance& inst, const EmbeddingTable& table);

// Stacked tensor x[i][j][:] = b^j_i e^j_i, flat (i, j, d) with the j axis
// padded to max M_i.
struct StackedTensor {
  int num_features = 0;
  int max_values = 0;
  int dim = 0;
  std::vector<double> data;

  double at(int i, int j, int d) const { return data[(static_cast<size_t>(i) * max_values + j) * dim + d]; }
};

// Throws kShapeMismatch on wrong dimensions or a nonzero slot past M_i, and
// kInvalidArg on values outside [0, 1].
void ValidateRelaxed(const IndicatorGrid& relaxed, const EmbeddingTable& table);

StackedTensor StackTensor(const Instance& inst, const EmbeddingTable& table);
// Relaxed overload: slot (i, j) is scaled by the indicator value.
StackedTensor StackTensor(const IndicatorGrid& relaxed, const EmbeddingTable& table);

}  // namespace catbreak

#endif  // CATBREAK_CATEGORICAL_H_
