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

#include "boundcoref/oracle.hpp"

#include <map>
#include <unordered_map>

#include "boundcoref/ingest.hpp"

namespace boundcoref {

std::vector<OracleStep> oracle_actions(std::span<const MentionSpan> mentions,
                                       std::span<const GoldCluster> gold,
                                       const PolicyConfig& policy) {
  validate_policy(policy);
  std::map<MentionSpan, int> entity_of;
  for (const GoldCluster& cluster : gold) {
    for (const MentionSpan& span : cluster.mentions) entity_of[span] = cluster.entity_id;
  }
  std::unordered_map<int, std::size_t> total;
  std::vector<std::optional<int>> entity_at(mentions.size());
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    auto it = entity_of.find(mentions[i]);
    if (it == entity_of.end()) continue;
    entity_at[i] = it->second;
    ++total[it->second];
  }

  OracleState state;
  if (policy.bounded()) state.capacity = policy.capacity;
  std::unordered_map<int, std::size_t> seen;
  std::unordered_map<int, std::size_t> position;  // tracked entity -> cell

  std::vector<OracleStep> steps;
  steps.reserve(mentions.size());
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    if (!entity_at[i]) {
      steps.push_back({Action::ignore_invalid(), 0});
      continue;
    }
    const int entity = *entity_at[i];
    const std::size_t remaining = total[entity] - ++seen[entity];
    const TrackedEntity incoming{entity, remaining, i};

    if (auto it = position.find(entity); it != position.end()) {
      state.tracked[it->second] = incoming;
      steps.push_back({Action::coref(it->second), remaining});
      continue;
    }
    if (!state.capacity || state.tracked.size() < *state.capacity) {
      position[entity] = state.tracked.size();
      state.tracked.push_back(incoming);
      steps.push_back({Action::new_entity(), remaining});
      continue;
    }

    // Memory full: find the eviction candidate.
    std::size_t victim = 0;
    for (std::size_t c = 1; c < state.tracked.size(); ++c) {
      const TrackedEntity& a = state.tracked[c];
      const TrackedEntity& b = state.tracked[victim];
      bool better = policy.policy == Policy::kLearnedBounded
                        ? (a.remaining_mentions < b.remaining_mentions ||
                           (a.remaining_mentions == b.remaining_mentions &&
                            a.last_seen_ordinal < b.last_seen_ordinal))
                        : a.last_seen_ordinal < b.last_seen_ordinal;
      if (better) victim = c;
    }
    const std::size_t new_count = remaining + 1;
    if (state.tracked[victim].remaining_mentions <= new_count) {
      position.erase(state.tracked[victim].gold_entity_id);
      position[entity] = victim;
      state.tracked[victim] = incoming;
      steps.push_back({Action::evict(victim), remaining});
    } else {
      steps.push_back({Action::ignore_capacity(), remaining});
    }
  }
  return steps;
}

std::vector<OracleStep> oracle_actions(const Document& doc,
                                       const PolicyConfig& policy) {
  std::vector<MentionSpan> mentions = order_mentions(gold_mentions(doc)).mentions;
  return oracle_actions(mentions, doc.gold_clusters, policy);
}

TrackableCount trackable_count(std::span<const OracleStep> steps) {
  TrackableCount count;
  for (const OracleStep& s : steps) {
    if (s.action.kind() == ActionKind::kIgnoreInvalid) continue;
    ++count.gold_mentions;
    if (s.action.kind() != ActionKind::kIgnoreCapacity) ++count.tracked_mentions;
  }
  return count;
}

double oracle_trackable_fraction(std::span<const Document> corpus,
                                 const PolicyConfig& policy) {
  TrackableCount total;
  for (const Document& doc : corpus) {
    TrackableCount c = trackable_count(oracle_actions(doc, policy));
    total.gold_mentions += c.gold_mentions;
    total.tracked_mentions += c.tracked_mentions;
  }
  return total.fraction();
}

std::vector<ReplayRow> oracle_score_rows(std::span<const MentionSpan> mentions,
                                         std::span<const OracleStep> steps) {
  std::vector<ReplayRow> rows;
  rows.reserve(steps.size());
  std::size_t cells = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Action& a = steps[i].action;
    ReplayRow row;
    if (i < mentions.size()) row.mention = mentions[i];
    row.s_c.assign(cells, -1.0);
    row.f_r_cells.assign(cells, 2.0);
    row.f_r_mention = 2.0;
    row.s_m = 1.0;
    switch (a.kind()) {
      case ActionKind::kCoref: row.s_c[*a.cell()] = 1.0; break;
      case ActionKind::kNewEntity: ++cells; break;
      case ActionKind::kEvictAndReplace: row.f_r_cells[*a.cell()] = 0.0; break;
      case ActionKind::kIgnoreCapacity: row.f_r_mention = 0.0; break;
      case ActionKind::kIgnoreInvalid: row.s_m = -1.0; break;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace boundcoref
