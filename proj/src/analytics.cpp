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

#include "boundcoref/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace boundcoref {

MentionSpan entity_spread(const GoldCluster& cluster) {
  if (cluster.mentions.empty()) {
    throw std::invalid_argument("entity spread of an empty cluster");
  }
  MentionSpan spread = cluster.mentions.front();
  for (const MentionSpan& m : cluster.mentions) {
    spread.start = std::min(spread.start, m.start);
    spread.end = std::max(spread.end, m.end);
  }
  return spread;
}

std::vector<SpreadRecord> spread_records(const Document& doc) {
  std::vector<SpreadRecord> records;
  records.reserve(doc.gold_clusters.size());
  const double n = static_cast<double>(doc.size());
  for (const GoldCluster& cluster : doc.gold_clusters) {
    if (cluster.mentions.empty()) continue;
    SpreadRecord r;
    r.entity_id = cluster.entity_id;
    r.spread = entity_spread(cluster);
    r.mention_count = cluster.mentions.size();
    r.spread_fraction = static_cast<double>(r.spread.length()) / n;
    records.push_back(r);
  }
  return records;
}

std::size_t active_entity_count(const Document& doc, std::size_t t) {
  if (t >= doc.size()) {
    throw std::out_of_range("token " + std::to_string(t) +
                            " outside document of length " +
                            std::to_string(doc.size()));
  }
  std::size_t count = 0;
  for (const GoldCluster& cluster : doc.gold_clusters) {
    if (!cluster.mentions.empty() && entity_spread(cluster).contains(t)) ++count;
  }
  return count;
}

std::size_t max_active_entities(const Document& doc, bool include_singletons) {
  // (position, delta): +1 at spread start, -1 one past spread end. Sorting
  // puts -1 before +1 at equal positions, so touching intervals don't stack.
  std::vector<std::pair<std::size_t, int>> events;
  events.reserve(2 * doc.gold_clusters.size());
  for (const GoldCluster& cluster : doc.gold_clusters) {
    if (cluster.mentions.empty()) continue;
    if (!include_singletons && cluster.is_singleton()) continue;
    MentionSpan s = entity_spread(cluster);
    events.emplace_back(s.start, +1);
    events.emplace_back(s.end + 1, -1);
  }
  std::sort(events.begin(), events.end());
  std::size_t active = 0;
  std::size_t best = 0;
  for (const auto& [pos, delta] : events) {
    if (delta > 0) {
      best = std::max(best, ++active);
    } else {
      --active;
    }
  }
  return best;
}

std::size_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

std::size_t spread_bucket(std::size_t length, std::size_t doc_len,
                          std::size_t buckets) {
  // ceil(length * B / doc_len) - 1, clamped into [0, B).
  std::size_t scaled = (length * buckets + doc_len - 1) / doc_len;
  if (scaled == 0) return 0;
  return std::min(scaled - 1, buckets - 1);
}

Histogram spread_histogram(std::span<const Document> corpus,
                           std::size_t buckets, bool exclude_singletons) {
  if (buckets == 0) throw std::invalid_argument("buckets must be >= 1");
  Histogram h;
  h.counts.assign(buckets, 0);
  for (const Document& doc : corpus) {
    if (doc.size() == 0) continue;
    for (const GoldCluster& cluster : doc.gold_clusters) {
      if (cluster.mentions.empty()) continue;
      if (exclude_singletons && cluster.is_singleton()) continue;
      MentionSpan s = entity_spread(cluster);
      ++h.counts[spread_bucket(s.length(), doc.size(), buckets)];
    }
  }
  return h;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share the mean of ranks i+1..j+1.
    double rank = (static_cast<double>(i + j) + 2.0) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman(std::span<const double> xs,
                               std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("spearman: length mismatch");
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("spearman: need at least two points");
  }
  std::vector<double> rx = average_ranks(xs);
  std::vector<double> ry = average_ranks(ys);
  const double n = static_cast<double>(xs.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    double dx = rx[i] - mean;
    double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  double rho = sxy / std::sqrt(sxx * syy);
  return std::clamp(rho, -1.0, 1.0);
}

}  // namespace boundcoref
