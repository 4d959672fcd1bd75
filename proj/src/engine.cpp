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

#include "boundcoref/engine.hpp"

#include <algorithm>

#include "json.hpp"

namespace boundcoref {

namespace {

// Index of the first minimum.
std::size_t argmin(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

EntityCell fresh_cell(MemoryState& state, const MentionContext& m,
                      ScoreProvider& scores) {
  EntityCell cell;
  cell.cell_id = state.next_cell_id++;
  cell.representation = scores.mention_representation(m);
  cell.mention_count = 1;
  cell.last_use_ordinal = m.index;
  cell.gold_entity_id = scores.entity_hint(m);
  cell.members.push_back(m.index);
  return cell;
}

void apply(MemoryState& state, const MentionContext& m, ScoreProvider& scores,
           const Action& action, std::vector<std::vector<std::size_t>>* retired) {
  switch (action.kind()) {
    case ActionKind::kCoref: {
      EntityCell& cell = state.cells[*action.cell()];
      update_entity(cell, scores.mention_representation(m));
      cell.last_use_ordinal = m.index;
      cell.members.push_back(m.index);
      break;
    }
    case ActionKind::kNewEntity:
      state.cells.push_back(fresh_cell(state, m, scores));
      break;
    case ActionKind::kEvictAndReplace: {
      EntityCell& cell = state.cells[*action.cell()];
      if (retired != nullptr) retired->push_back(std::move(cell.members));
      cell = fresh_cell(state, m, scores);
      break;
    }
    case ActionKind::kIgnoreCapacity:
    case ActionKind::kIgnoreInvalid:
      break;
  }
  state.next_ordinal = m.index + 1;
}

}  // namespace

std::size_t MemoryState::lru_position() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].last_use_ordinal < cells[best].last_use_ordinal) best = i;
  }
  return best;
}

void update_entity(EntityCell& cell, std::span<const double> mention_repr) {
  if (cell.representation.size() != mention_repr.size()) {
    throw DimensionMismatch("entity representation has dimension " +
                            std::to_string(cell.representation.size()) +
                            ", mention has " + std::to_string(mention_repr.size()));
  }
  const double n = static_cast<double>(cell.mention_count);
  for (std::size_t i = 0; i < mention_repr.size(); ++i) {
    cell.representation[i] = (n * cell.representation[i] + mention_repr[i]) / (n + 1.0);
  }
  ++cell.mention_count;
}

std::optional<std::size_t> coref_target(std::span<const double> scores) {
  if (scores.empty()) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t j = 1; j < scores.size(); ++j) {
    if (scores[j] > scores[best]) best = j;
  }
  if (scores[best] > 0.0) return best;
  return std::nullopt;
}

Action decide_unbounded(const MemoryState&, const MentionContext& m,
                        ScoreProvider& scores, bool star) {
  if (star) return Action::new_entity();
  return scores.mention_score(m) > 0.0 ? Action::new_entity() : Action::ignore_invalid();
}

Action decide_lb(const MemoryState& state, const MentionContext& m,
                 ScoreProvider& scores) {
  if (!state.full()) return decide_unbounded(state, m, scores, false);
  const std::size_t cells = state.cells.size();
  std::vector<double> candidates(cells + 2);
  scores.cell_remaining_scores(m, state.cells,
                               std::span<double>(candidates).first(cells));
  candidates[cells] = scores.mention_remaining_score(m);
  candidates[cells + 1] = scores.mention_score(m);
  const std::size_t d = argmin(candidates);
  if (d < cells) return Action::evict(d);
  return d == cells ? Action::ignore_capacity() : Action::ignore_invalid();
}

Action decide_rb(const MemoryState& state, const MentionContext& m,
                 ScoreProvider& scores) {
  if (!state.full()) return decide_unbounded(state, m, scores, false);
  const std::size_t lru = state.lru_position();
  // Providers score the whole memory; only the LRU cell competes.
  std::vector<double> cell_scores(state.cells.size());
  scores.cell_remaining_scores(m, state.cells, cell_scores);
  const double candidates[3] = {cell_scores[lru], scores.mention_remaining_score(m),
                                scores.mention_score(m)};
  switch (argmin(candidates)) {
    case 0: return Action::evict(lru);
    case 1: return Action::ignore_capacity();
    default: return Action::ignore_invalid();
  }
}

Action step(MemoryState& state, const MentionContext& m, ScoreProvider& scores,
            const PolicyConfig& policy,
            std::vector<std::vector<std::size_t>>* retired) {
  std::vector<double> coref(state.cells.size());
  scores.coref_scores(m, state.cells, coref);
  std::optional<Action> action;
  if (auto target = coref_target(coref)) {
    action = Action::coref(*target);
  } else {
    switch (policy.policy) {
      case Policy::kUnbounded:
        action = decide_unbounded(state, m, scores, false);
        break;
      case Policy::kUnboundedStar:
        action = decide_unbounded(state, m, scores, true);
        break;
      case Policy::kLearnedBounded:
        action = decide_lb(state, m, scores);
        break;
      case Policy::kRuleBounded:
        action = decide_rb(state, m, scores);
        break;
    }
  }
  apply(state, m, scores, *action, retired);
  return *action;
}

ClusteringResult run_document(const Document& doc,
                              std::span<const MentionSpan> mentions,
                              ScoreProvider& scores, const PolicyConfig& policy) {
  validate_policy(policy);
  MemoryState state;
  if (policy.bounded()) state.capacity = policy.capacity;

  ClusteringResult result;
  RunStats& stats = result.stats;
  stats.actions.reserve(mentions.size());
  std::vector<std::vector<std::size_t>> lineages;
  double occupancy = 0.0;

  scores.begin_document(doc, mentions);
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    MentionContext m{doc, mentions, i};
    Action action = step(state, m, scores, policy, &lineages);
    switch (action.kind()) {
      case ActionKind::kEvictAndReplace: ++stats.eviction_count; break;
      case ActionKind::kIgnoreCapacity: ++stats.ignored_capacity_count; break;
      case ActionKind::kIgnoreInvalid: ++stats.ignored_invalid_count; break;
      default: break;
    }
    stats.actions.push_back(action);
    occupancy += static_cast<double>(state.cells.size());
    stats.max_entities_in_memory =
        std::max(stats.max_entities_in_memory, state.cells.size());
  }
  if (!mentions.empty()) {
    stats.avg_entities_in_memory = occupancy / static_cast<double>(mentions.size());
  }

  for (EntityCell& cell : state.cells) lineages.push_back(std::move(cell.members));
  std::sort(lineages.begin(), lineages.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  result.predicted_clusters.reserve(lineages.size());
  for (const auto& lineage : lineages) {
    Cluster cluster;
    cluster.reserve(lineage.size());
    for (std::size_t i : lineage) cluster.push_back(mentions[i]);
    result.predicted_clusters.push_back(std::move(cluster));
  }
  return result;
}

Clustering assemble_clusters(std::span<const MentionSpan> mentions,
                             std::span<const Action> actions) {
  std::vector<std::vector<std::size_t>> lineages;
  // Open lineage index per cell position.
  std::vector<std::size_t> open;
  const std::size_t n = std::min(mentions.size(), actions.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Action& a = actions[i];
    switch (a.kind()) {
      case ActionKind::kCoref:
        lineages.at(open.at(*a.cell())).push_back(i);
        break;
      case ActionKind::kNewEntity:
        open.push_back(lineages.size());
        lineages.push_back({i});
        break;
      case ActionKind::kEvictAndReplace:
        open.at(*a.cell()) = lineages.size();
        lineages.push_back({i});
        break;
      default:
        break;
    }
  }
  Clustering clusters;
  clusters.reserve(lineages.size());
  for (const auto& lineage : lineages) {
    Cluster cluster;
    for (std::size_t i : lineage) cluster.push_back(mentions[i]);
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

std::string action_trace_line(const std::string& doc_id, const MentionSpan& mention,
                              const Action& action,
                              std::optional<std::size_t> remaining) {
  nlohmann::ordered_json j;
  j["doc_id"] = doc_id;
  j["mention"] = {mention.start, mention.end};
  j["action"] = std::string(action_tag(action.kind()));
  if (action.cell()) j["cell"] = *action.cell();
  if (remaining) j["remaining"] = *remaining;
  return j.dump();
}

TraceEntry parse_action_trace_line(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line);
  const auto& m = j.at("mention");
  MentionSpan span{m.at(0).get<std::size_t>(), m.at(1).get<std::size_t>()};
  ActionKind kind = action_kind_from_tag(j.at("action").get<std::string>());
  std::optional<std::size_t> cell;
  if (j.contains("cell")) cell = j["cell"].get<std::size_t>();
  auto need_cell = [&] {
    if (!cell) throw Error("trace action without a cell");
    return *cell;
  };
  std::optional<Action> action;
  switch (kind) {
    case ActionKind::kCoref: action = Action::coref(need_cell()); break;
    case ActionKind::kNewEntity: action = Action::new_entity(); break;
    case ActionKind::kEvictAndReplace: action = Action::evict(need_cell()); break;
    case ActionKind::kIgnoreCapacity: action = Action::ignore_capacity(); break;
    case ActionKind::kIgnoreInvalid: action = Action::ignore_invalid(); break;
  }
  return TraceEntry{j.value("doc_id", std::string()), span, *action};
}

}  // namespace boundcoref
