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


#include "boundcoref/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "boundcoref/hungarian.hpp"
#include "brute_force.hpp"
#include "boundcoref/synthetic.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace boundcoref {
namespace {

using testing::m;
using testing::brute_b3_side;
using testing::brute_ceaf_sum;
using testing::brute_muc_side;

Cluster c(const char* letters) {
  Cluster out;
  for (const char* p = letters; *p; ++p) out.push_back(m(*p));
  return out;
}

constexpr double kTol = 1e-9;

void check_prf(const PRF& got, double p, double r) {
  CHECK(std::abs(got.precision - p) < kTol);
  CHECK(std::abs(got.recall - r) < kTol);
  double f = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
  CHECK(std::abs(got.f1 - f) < kTol);
}

// Random clustering over mentions a..j: each mention joins with probability
// `keep`, into one of up to `max_clusters` clusters.
Clustering random_clustering(SeededRng& rng, std::size_t max_clusters, double keep) {
  std::vector<Cluster> out(rng.between(1, max_clusters));
  for (char x = 'a'; x <= 'j'; ++x) {
    if (rng.unit() < keep) out[rng.below(out.size())].push_back(m(x));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Cluster& k) { return k.empty(); }),
            out.end());
  return out;
}

std::set<std::set<MentionSpan>> as_sets(const Clustering& cl) {
  std::set<std::set<MentionSpan>> out;
  for (const Cluster& k : cl) out.insert(std::set<MentionSpan>(k.begin(), k.end()));
  return out;
}

TEST_CASE("identical clusterings score one") {
  Clustering g{c("abc"), c("de"), c("f")};
  check_prf(muc(g, g), 1, 1);
  check_prf(b_cubed(g, g), 1, 1);
  check_prf(ceaf_phi4(g, g), 1, 1);
}

TEST_CASE("muc split cluster") { check_prf(muc({c("abc")}, {c("ab"), c("c")}), 1, 0.5); }

TEST_CASE("muc all-singleton response") {
  check_prf(muc({c("abc")}, {c("a"), c("b"), c("c")}), 0, 0);
}

TEST_CASE("muc two halves") { check_prf(muc({c("abcd")}, {c("ab"), c("cd")}), 1, 2.0 / 3); }

TEST_CASE("muc spurious mention") { check_prf(muc({c("ab")}, {c("abc")}), 0.5, 1); }

TEST_CASE("b3 merged clusters") { check_prf(b_cubed({c("ab"), c("c")}, {c("abc")}), 5.0 / 9, 1); }

TEST_CASE("b3 empty response") { check_prf(b_cubed({c("ab")}, {}), 0, 0); }

TEST_CASE("b3 missing mention") { check_prf(b_cubed({c("abc")}, {c("ab")}), 1, 4.0 / 9); }

TEST_CASE("b3 large merge") {
  check_prf(b_cubed({c("abcde"), c("fg")}, {c("abcdefg")}), 29.0 / 49, 1);
}

TEST_CASE("ceaf crossing pairs") {
  check_prf(ceaf_phi4({c("ab"), c("cd")}, {c("ac"), c("bd")}), 0.5, 0.5);
  CHECK(brute_ceaf_sum({c("ab"), c("cd")}, {c("ac"), c("bd")}) == doctest::Approx(1.0));
}

TEST_CASE("ceaf split cluster") { check_prf(ceaf_phi4({c("abc")}, {c("ab"), c("c")}), 0.4, 0.8); }

TEST_CASE("ceaf singletons against one merge") {
  check_prf(ceaf_phi4({c("a"), c("b"), c("c")}, {c("abc")}), 0.5, 0.5 / 3);
}

TEST_CASE("conll average") {
  ScoreReport r = conll_f1(PRF::from(0.6, 0.6), PRF::from(0.9, 0.9), PRF::from(0.3, 0.3));
  CHECK(std::abs(r.conll_f1 - 0.6) < kTol);
  ScoreReport one = conll_f1(PRF::from(1, 1), PRF::from(1, 1), PRF::from(1, 1));
  CHECK(one.conll_f1 == 1.0);
}

TEST_CASE("singleton filter") {
  CHECK(filter_singletons({c("a"), c("bc")}, SingletonMode::kDropSingletons) ==
        Clustering{c("bc")});
  CHECK(filter_singletons({c("a"), c("b")}, SingletonMode::kDropSingletons).empty());
  CHECK(filter_singletons({c("a"), c("bc")}, SingletonMode::kKeepSingletons) ==
        Clustering{c("a"), c("bc")});
}

TEST_CASE("corpus scores sum numerators and denominators") {
  CorpusEvaluator eval(SingletonMode::kKeepSingletons);
  eval.add({c("abc")}, {c("ab"), c("c")});  // muc recall 1/2
  eval.add({c("ab")}, {c("ab")});           // muc recall 1/1
  CHECK(std::abs(eval.report().muc.recall - 2.0 / 3) < kTol);
}

TEST_CASE("metrics match brute force on random clusterings") {
  SeededRng rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    Clustering g = random_clustering(rng, 6, 0.8);
    Clustering p = random_clustering(rng, 6, 0.8);
    PRF mu = muc(g, p), b3 = b_cubed(g, p), ce = ceaf_phi4(g, p);
    CHECK(std::abs(mu.recall - brute_muc_side(g, p)) < kTol);
    CHECK(std::abs(mu.precision - brute_muc_side(p, g)) < kTol);
    CHECK(std::abs(b3.recall - brute_b3_side(g, p)) < kTol);
    CHECK(std::abs(b3.precision - brute_b3_side(p, g)) < kTol);
    const double best = brute_ceaf_sum(g, p);
    CHECK(std::abs(ce.recall - (g.empty() ? 0 : best / g.size())) < kTol);
    CHECK(std::abs(ce.precision - (p.empty() ? 0 : best / p.size())) < kTol);

    // Swapping sides swaps precision and recall.
    PRF mu2 = muc(p, g), b32 = b_cubed(p, g), ce2 = ceaf_phi4(p, g);
    CHECK(mu2.precision == doctest::Approx(mu.recall));
    CHECK(b32.recall == doctest::Approx(b3.precision));
    CHECK(ce2.precision == doctest::Approx(ce.recall));

    // Reordering clusters and mentions changes nothing.
    Clustering shuffled = p;
    std::reverse(shuffled.begin(), shuffled.end());
    for (Cluster& k : shuffled) std::reverse(k.begin(), k.end());
    ScoreReport a = evaluate(g, p, SingletonMode::kKeepSingletons);
    ScoreReport b = evaluate(g, shuffled, SingletonMode::kKeepSingletons);
    CHECK(a.conll_f1 == doctest::Approx(b.conll_f1));

    // B3 and CEAF reach one exactly when the partitions agree.
    if (!g.empty()) {
      bool same = as_sets(g) == as_sets(p);
      CHECK((b3.f1 == doctest::Approx(1.0) && ce.f1 == doctest::Approx(1.0)) == same);
    }
  }
}

TEST_CASE("assignment solver matches factorial enumeration") {
  SeededRng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = rng.between(0, 6), cols = rng.between(0, 6);
    WeightMatrix w(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < cols; ++k) w.at(r, k) = rng.below(4) == 0 ? 0.0 : rng.unit();
    }
    Assignment a = max_weight_assignment(w);
    const std::size_t n = std::max(rows, cols);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 0;
    do {
      double sum = 0;
      for (std::size_t r = 0; r < rows; ++r) {
        if (perm[r] < cols) sum += w.at(r, perm[r]);
      }
      best = std::max(best, sum);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(std::abs(a.total - best) < kTol);

    // The reported matching is one-to-one and sums to the total.
    REQUIRE(a.row_to_col.size() == rows);
    std::set<std::size_t> used;
    double sum = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (!a.row_to_col[r]) continue;
      CHECK(used.insert(*a.row_to_col[r]).second);
      sum += w.at(r, *a.row_to_col[r]);
    }
    CHECK(std::abs(sum - a.total) < kTol);
  }
}

}  // namespace
}  // namespace boundcoref
