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

#ifndef BOUNDCOREF_CORE_HPP_
#define BOUNDCOREF_CORE_HPP_

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boundcoref {

// Closed token interval [start, end] over document-global token indices.
struct MentionSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start + 1; }
  bool contains(std::size_t t) const { return start <= t && t <= end; }

  friend auto operator<=>(const MentionSpan&, const MentionSpan&) = default;
};

std::string to_string(const MentionSpan& span);

struct ScoredSpan {
  MentionSpan span;
  double score = 0.0;

  friend bool operator==(const ScoredSpan&, const ScoredSpan&) = default;
};

struct GoldCluster {
  int entity_id = 0;
  std::vector<MentionSpan> mentions;

  bool is_singleton() const { return mentions.size() == 1; }

  friend bool operator==(const GoldCluster&, const GoldCluster&) = default;
};

struct Document {
  std::string doc_id;
  std::vector<std::string> tokens;
  // Token index at which each sentence begins.
  std::vector<std::size_t> sentence_boundaries;
  std::optional<std::string> genre;
  std::vector<ScoredSpan> candidate_mentions;
  std::vector<GoldCluster> gold_clusters;

  std::size_t size() const { return tokens.size(); }

  // Space-joined surface text of a span.
  std::string span_text(const MentionSpan& span) const;

  friend bool operator==(const Document&, const Document&) = default;
};

using Cluster = std::vector<MentionSpan>;
using Clustering = std::vector<Cluster>;

Clustering gold_clustering(const Document& doc);
std::vector<MentionSpan> gold_mentions(const Document& doc);

// Returns one human-readable violation per broken invariant; empty when the
// document is well formed.
std::vector<std::string> validate_document(const Document& doc);

// Per-mention clustering decision.
enum class ActionKind {
  kCoref,
  kNewEntity,
  kEvictAndReplace,
  kIgnoreCapacity,
  kIgnoreInvalid,
};

class Action {
 public:
  static Action coref(std::size_t cell) { return {ActionKind::kCoref, cell}; }
  static Action new_entity() { return {ActionKind::kNewEntity, std::nullopt}; }
  static Action evict(std::size_t cell) {
    return {ActionKind::kEvictAndReplace, cell};
  }
  static Action ignore_capacity() {
    return {ActionKind::kIgnoreCapacity, std::nullopt};
  }
  static Action ignore_invalid() {
    return {ActionKind::kIgnoreInvalid, std::nullopt};
  }

  ActionKind kind() const { return kind_; }
  // Cell position; present only for Coref and EvictAndReplace.
  std::optional<std::size_t> cell() const { return cell_; }

  bool is_ignore() const {
    return kind_ == ActionKind::kIgnoreCapacity ||
           kind_ == ActionKind::kIgnoreInvalid;
  }

  friend bool operator==(const Action&, const Action&) = default;

 private:
  Action(ActionKind kind, std::optional<std::size_t> cell)
      : kind_(kind), cell_(cell) {}

  ActionKind kind_;
  std::optional<std::size_t> cell_;
};

// Trace tags: coref, new, evict, ignore_cap, ignore_inv.
std::string_view action_tag(ActionKind kind);
ActionKind action_kind_from_tag(std::string_view tag);
std::string to_string(const Action& action);

enum class Policy { kUnbounded, kUnboundedStar, kLearnedBounded, kRuleBounded };
enum class SingletonMode { kKeepSingletons, kDropSingletons };

std::string_view policy_name(Policy policy);
Policy policy_from_name(std::string_view name);

struct PolicyConfig {
  Policy policy = Policy::kUnbounded;
  // nullopt means unbounded.
  std::optional<std::size_t> capacity;
  SingletonMode singleton_mode = SingletonMode::kKeepSingletons;

  bool bounded() const {
    return policy == Policy::kLearnedBounded || policy == Policy::kRuleBounded;
  }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Throws ConfigError when the combination is not allowed.
void validate_policy(const PolicyConfig& config);

}  // namespace boundcoref

#endif  // BOUNDCOREF_CORE_HPP_
