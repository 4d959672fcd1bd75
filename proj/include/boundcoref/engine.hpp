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

// Incremental entity-mention clustering with a bounded entity memory.
//
// Mentions are processed left to right. For each mention the engine first
// scores it against every tracked cell and joins the best cell when that
// score is strictly positive. Otherwise the memory policy decides:
//
//   unbounded  new entity iff s_m > 0, else ignore as invalid
//   ustar      always a new entity
//   lb / rb    like unbounded while memory has room; when full, take the
//              argmin of [f_r(cells...), f_r(x), s_m] (rb: only the least
//              recently used cell competes) and evict that cell, ignore x
//              for capacity, or ignore x as invalid.
//
// Every argmax/argmin tie goes to the lowest index. A run over a document
// costs O(capacity) per mention for the bounded policies.

#ifndef BOUNDCOREF_ENGINE_HPP_
#define BOUNDCOREF_ENGINE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boundcoref/core.hpp"
#include "boundcoref/scoring.hpp"

namespace boundcoref {

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

struct MemoryState {
  // Creation order; an evicted cell is reinitialized in place.
  std::vector<EntityCell> cells;
  std::optional<std::size_t> capacity;
  std::size_t next_ordinal = 0;
  std::size_t next_cell_id = 0;

  bool full() const { return capacity && cells.size() >= *capacity; }
  // Position of the cell with the smallest last_use_ordinal.
  std::size_t lru_position() const;
};

struct RunStats {
  double avg_entities_in_memory = 0.0;
  std::size_t max_entities_in_memory = 0;
  std::size_t ignored_capacity_count = 0;
  std::size_t ignored_invalid_count = 0;
  std::size_t eviction_count = 0;
  std::vector<Action> actions;
};

struct ClusteringResult {
  Clustering predicted_clusters;
  RunStats stats;
};

// Weighted running mean: (n * e + x) / (n + 1), then n += 1.
void update_entity(EntityCell& cell, std::span<const double> mention_repr);

// Index of the first maximum when it is strictly positive.
std::optional<std::size_t> coref_target(std::span<const double> scores);

// Second-step decisions. They read scores and state but do not mutate state.
Action decide_unbounded(const MemoryState& state, const MentionContext& m,
                        ScoreProvider& scores, bool star);
Action decide_lb(const MemoryState& state, const MentionContext& m,
                 ScoreProvider& scores);
Action decide_rb(const MemoryState& state, const MentionContext& m,
                 ScoreProvider& scores);

// Processes one mention: scores it against all cells, picks an action, and
// applies it to `state`. When a cell is evicted its member list is moved
// into `retired`, if given.
Action step(MemoryState& state, const MentionContext& m, ScoreProvider& scores,
            const PolicyConfig& policy,
            std::vector<std::vector<std::size_t>>* retired = nullptr);

// Runs the engine over `mentions` (already in processing order) starting
// from empty memory.
ClusteringResult run_document(const Document& doc,
                              std::span<const MentionSpan> mentions,
                              ScoreProvider& scores, const PolicyConfig& policy);

// Rebuilds the clustering implied by an action trace: each NewEntity or
// EvictAndReplace opens a cluster, Coref extends the cell's open cluster.
// Clusters are ordered by their first mention.
Clustering assemble_clusters(std::span<const MentionSpan> mentions,
                             std::span<const Action> actions);

// One JSON object per mention:
// {"doc_id":..,"mention":[s,e],"action":"coref|new|evict|ignore_cap|ignore_inv","cell":i}
std::string action_trace_line(const std::string& doc_id, const MentionSpan& mention,
                              const Action& action,
                              std::optional<std::size_t> remaining = std::nullopt);

struct TraceEntry {
  std::string doc_id;
  MentionSpan mention;
  Action action;
};

TraceEntry parse_action_trace_line(std::string_view line);

}  // namespace boundcoref

#endif  // BOUNDCOREF_ENGINE_HPP_
