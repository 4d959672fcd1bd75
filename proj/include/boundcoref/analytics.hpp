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

// Corpus statistics over gold entities: entity spread, active entity counts
// and their maximum, spread histograms, and Spearman rank correlation.

#ifndef BOUNDCOREF_ANALYTICS_HPP_
#define BOUNDCOREF_ANALYTICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "boundcoref/core.hpp"

namespace boundcoref {

// Interval from the start of the first mention to the end of the last.
// Throws std::invalid_argument for an empty cluster.
MentionSpan entity_spread(const GoldCluster& cluster);

struct SpreadRecord {
  int entity_id = 0;
  MentionSpan spread;
  std::size_t mention_count = 0;
  // Spread length divided by document length, in (0, 1].
  double spread_fraction = 0.0;
};

std::vector<SpreadRecord> spread_records(const Document& doc);

// Number of entities whose spread covers token t. Singletons count.
// Throws std::out_of_range when t >= doc.size().
std::size_t active_entity_count(const Document& doc, std::size_t t);

// Maximum active entity count over all tokens, computed with an endpoint
// sweep in O(M log M). Zero for a document without entities.
std::size_t max_active_entities(const Document& doc,
                                 bool include_singletons = true);

struct Histogram {
  std::vector<std::size_t> counts;

  // Bucket b covers (b/B, (b+1)/B]; bucket 0 also takes 0.
  double lower(std::size_t b) const {
    return static_cast<double>(b) / static_cast<double>(counts.size());
  }
  double upper(std::size_t b) const {
    return static_cast<double>(b + 1) / static_cast<double>(counts.size());
  }
  std::size_t total() const;
};

// Throws std::invalid_argument when buckets == 0.
Histogram spread_histogram(std::span<const Document> corpus,
                           std::size_t buckets, bool exclude_singletons);

// Histogram bucket index of length/doc_len using exact integer arithmetic.
std::size_t spread_bucket(std::size_t length, std::size_t doc_len,
                          std::size_t buckets);

// Spearman rank correlation with average ranks for ties. Returns nullopt
// when either side is constant. Throws std::invalid_argument on a length
// mismatch or fewer than two points.
std::optional<double> spearman(std::span<const double> xs,
                               std::span<const double> ys);

// Average (fractional) ranks, 1-based.
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace boundcoref

#endif  // BOUNDCOREF_ANALYTICS_HPP_
