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

#include "boundcoref/hungarian.hpp"

#include <algorithm>
#include <limits>

namespace boundcoref {

Assignment max_weight_assignment(const WeightMatrix& weights) {
  Assignment result;
  result.row_to_col.assign(weights.rows(), std::nullopt);
  const std::size_t n = std::max(weights.rows(), weights.cols());
  if (n == 0) return result;

  // Square cost matrix (1-based in the solver) minimizing max_w - w; padded
  // entries cost max_w, i.e. weight 0.
  double max_w = 0.0;
  for (std::size_t r = 0; r < weights.rows(); ++r) {
    for (std::size_t c = 0; c < weights.cols(); ++c) {
      max_w = std::max(max_w, weights.at(r, c));
    }
  }
  auto cost = [&](std::size_t r, std::size_t c) {
    double w = (r < weights.rows() && c < weights.cols()) ? weights.at(r, c) : 0.0;
    return max_w - w;
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  // p[j]: row matched to column j (0 = none); way[j]: previous column on path.
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      std::size_t i0 = p[j0];
      std::size_t j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    std::size_t r = p[j] - 1;
    std::size_t c = j - 1;
    if (r < weights.rows() && c < weights.cols()) {
      result.row_to_col[r] = c;
      result.total += weights.at(r, c);
    }
  }
  return result;
}

}  // namespace boundcoref
