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

// Teacher-forcing ground truth for the clustering engine.
//
// The oracle keeps, for every tracked gold entity, how many of its mentions
// are still to come. When an untracked entity arrives with memory full, it
// competes with its own remaining count (current mention included):
//
//   lb  evict the tracked entity with the fewest remaining mentions (ties:
//       least recently seen) if that count is <= the newcomer's, else ignore
//       the mention for capacity;
//   rb  the same test against the least recently seen entity only.
//
// Mentions outside every gold cluster are ignored as invalid.

#ifndef BOUNDCOREF_ORACLE_HPP_
#define BOUNDCOREF_ORACLE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "boundcoref/core.hpp"
#include "boundcoref/scoring.hpp"

namespace boundcoref {

struct OracleStep {
  Action action;
  // Mentions of this mention's entity still to come after it; 0 if invalid.
  std::size_t remaining = 0;
};

struct TrackedEntity {
  int gold_entity_id = 0;
  std::size_t remaining_mentions = 0;
  std::size_t last_seen_ordinal = 0;
};

struct OracleState {
  std::vector<TrackedEntity> tracked;
  std::optional<std::size_t> capacity;
};

std::vector<OracleStep> oracle_actions(std::span<const MentionSpan> mentions,
                                       std::span<const GoldCluster> gold,
                                       const PolicyConfig& policy);

// Oracle over the document's gold mentions in processing order.
std::vector<OracleStep> oracle_actions(const Document& doc,
                                       const PolicyConfig& policy);

// Counts over a set of oracle runs.
struct TrackableCount {
  std::size_t gold_mentions = 0;
  std::size_t tracked_mentions = 0;

  double fraction() const {
    return gold_mentions == 0 ? 1.0
                              : static_cast<double>(tracked_mentions) /
                                    static_cast<double>(gold_mentions);
  }
};

TrackableCount trackable_count(std::span<const OracleStep> steps);

// Fraction of gold mentions the oracle does not ignore for capacity. An
// empty corpus yields 1.
double oracle_trackable_fraction(std::span<const Document> corpus,
                                 const PolicyConfig& policy);

// Replay rows that make the engine reproduce `steps`: coreference +1 only
// for the target cell, eviction target f_r 0 with everything else 2, and
// s_m = -1 only for invalid mentions.
std::vector<ReplayRow> oracle_score_rows(std::span<const MentionSpan> mentions,
                                         std::span<const OracleStep> steps);

}  // namespace boundcoref

#endif  // BOUNDCOREF_ORACLE_HPP_
