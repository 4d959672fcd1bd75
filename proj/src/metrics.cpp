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
#include <map>
#include <set>

#include "boundcoref/hungarian.hpp"

namespace boundcoref {

namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

using MentionIndex = std::map<MentionSpan, std::size_t>;

MentionIndex index_mentions(const Clustering& clusters) {
  MentionIndex index;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (const MentionSpan& m : clusters[c]) index.emplace(m, c);
  }
  return index;
}

// Link-based recall numerator and denominator of key against response.
std::pair<double, double> muc_side(const Clustering& key,
                                   const MentionIndex& response) {
  double num = 0.0, den = 0.0;
  for (const Cluster& cluster : key) {
    if (cluster.empty()) continue;
    std::set<std::size_t> parts;
    std::size_t unaligned = 0;
    for (const MentionSpan& m : cluster) {
      auto it = response.find(m);
      if (it == response.end()) {
        ++unaligned;
      } else {
        parts.insert(it->second);
      }
    }
    double partitions = static_cast<double>(parts.size() + unaligned);
    num += static_cast<double>(cluster.size()) - partitions;
    den += static_cast<double>(cluster.size()) - 1.0;
  }
  return {num, den};
}

std::pair<double, double> b_cubed_side(const Clustering& key,
                                       const MentionIndex& response) {
  double num = 0.0, den = 0.0;
  for (const Cluster& cluster : key) {
    if (cluster.empty()) continue;
    std::map<std::size_t, std::size_t> overlap;
    for (const MentionSpan& m : cluster) {
      auto it = response.find(m);
      if (it != response.end()) ++overlap[it->second];
    }
    double correct = 0.0;
    for (const auto& [c, count] : overlap) {
      correct += static_cast<double>(count) * static_cast<double>(count);
    }
    num += correct / static_cast<double>(cluster.size());
    den += static_cast<double>(cluster.size());
  }
  return {num, den};
}

}  // namespace

PRF PRF::from(double precision, double recall) {
  PRF out;
  out.precision = precision;
  out.recall = recall;
  out.f1 = precision + recall > 0.0
               ? 2.0 * precision * recall / (precision + recall)
               : 0.0;
  return out;
}

PRF MetricTally::prf() const {
  return PRF::from(ratio(p_num, p_den), ratio(r_num, r_den));
}

MetricTally& MetricTally::operator+=(const MetricTally& other) {
  p_num += other.p_num;
  p_den += other.p_den;
  r_num += other.r_num;
  r_den += other.r_den;
  return *this;
}

Clustering filter_singletons(Clustering clusters, SingletonMode mode) {
  if (mode == SingletonMode::kKeepSingletons) return clusters;
  std::erase_if(clusters, [](const Cluster& c) { return c.size() <= 1; });
  return clusters;
}

MetricTally muc_tally(const Clustering& gold, const Clustering& pred) {
  MetricTally t;
  std::tie(t.r_num, t.r_den) = muc_side(gold, index_mentions(pred));
  std::tie(t.p_num, t.p_den) = muc_side(pred, index_mentions(gold));
  return t;
}

MetricTally b_cubed_tally(const Clustering& gold, const Clustering& pred) {
  MetricTally t;
  std::tie(t.r_num, t.r_den) = b_cubed_side(gold, index_mentions(pred));
  std::tie(t.p_num, t.p_den) = b_cubed_side(pred, index_mentions(gold));
  return t;
}

double phi4(const Cluster& key, const Cluster& response) {
  if (key.empty() && response.empty()) return 0.0;
  std::set<MentionSpan> k(key.begin(), key.end());
  std::size_t common = 0;
  for (const MentionSpan& m : response) common += k.count(m);
  return 2.0 * static_cast<double>(common) /
         static_cast<double>(key.size() + response.size());
}

MetricTally ceaf_phi4_tally(const Clustering& gold, const Clustering& pred) {
  WeightMatrix sim(gold.size(), pred.size());
  MentionIndex pred_index = index_mentions(pred);
  // Only clusters sharing a mention have non-zero similarity.
  for (std::size_t g = 0; g < gold.size(); ++g) {
    std::map<std::size_t, std::size_t> common;
    for (const MentionSpan& m : gold[g]) {
      auto it = pred_index.find(m);
      if (it != pred_index.end()) ++common[it->second];
    }
    for (const auto& [p, count] : common) {
      sim.at(g, p) = 2.0 * static_cast<double>(count) /
                     static_cast<double>(gold[g].size() + pred[p].size());
    }
  }
  Assignment best = max_weight_assignment(sim);
  MetricTally t;
  t.r_num = t.p_num = best.total;
  t.r_den = static_cast<double>(gold.size());
  t.p_den = static_cast<double>(pred.size());
  return t;
}

ScoreReport conll_f1(const PRF& muc, const PRF& b_cubed, const PRF& ceaf_phi4) {
  ScoreReport r;
  r.muc = muc;
  r.b_cubed = b_cubed;
  r.ceaf_phi4 = ceaf_phi4;
  r.conll_f1 = (muc.f1 + b_cubed.f1 + ceaf_phi4.f1) / 3.0;
  return r;
}

ScoreReport DocumentTally::report() const {
  return conll_f1(muc.prf(), b_cubed.prf(), ceaf_phi4.prf());
}

DocumentTally document_tally(const Clustering& gold, const Clustering& pred,
                             SingletonMode mode) {
  Clustering g = filter_singletons(gold, mode);
  Clustering p = filter_singletons(pred, mode);
  return DocumentTally{muc_tally(g, p), b_cubed_tally(g, p), ceaf_phi4_tally(g, p)};
}

ScoreReport CorpusEvaluator::add(const Clustering& gold, const Clustering& pred) {
  DocumentTally t = document_tally(gold, pred, mode_);
  add(t);
  return t.report();
}

void CorpusEvaluator::add(const DocumentTally& tally) {
  muc_ += tally.muc;
  b_cubed_ += tally.b_cubed;
  ceaf_ += tally.ceaf_phi4;
}

ScoreReport CorpusEvaluator::report() const {
  return conll_f1(muc_.prf(), b_cubed_.prf(), ceaf_.prf());
}

ScoreReport evaluate(const Clustering& gold, const Clustering& pred,
                     SingletonMode mode) {
  CorpusEvaluator eval(mode);
  return eval.add(gold, pred);
}

}  // namespace boundcoref
