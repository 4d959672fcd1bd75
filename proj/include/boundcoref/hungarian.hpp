// Copyright 2026 The boundcoref Authors.
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

#ifndef BOUNDCOREF_HUNGARIAN_HPP_
#define BOUNDCOREF_HUNGARIAN_HPP_

#include <cstddef>
#include <optional>
#include <vector>

namespace boundcoref {

// Dense row-major matrix of assignment weights.
class WeightMatrix {
 public:
  WeightMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct Assignment {
  // row_to_col[r] is the column matched to row r, if any.
  std::vector<std::optional<std::size_t>> row_to_col;
  double total = 0.0;
};

// Exact maximum-weight one-to-one assignment (rectangular allowed) using the
// O(n^3) shortest augmenting path form of the Hungarian method.
Assignment max_weight_assignment(const WeightMatrix& weights);

}  // namespace boundcoref

#endif  // BOUNDCOREF_HUNGARIAN_HPP_
