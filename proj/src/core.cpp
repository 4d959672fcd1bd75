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

#include "boundcoref/core.hpp"

#include <set>

namespace boundcoref {

std::string to_string(const MentionSpan& span) {
  return "(" + std::to_string(span.start) + "," + std::to_string(span.end) +
         ")";
}

std::string Document::span_text(const MentionSpan& span) const {
  std::string text;
  for (std::size_t t = span.start; t <= span.end && t < tokens.size(); ++t) {
    if (t != span.start) text += ' ';
    text += tokens[t];
  }
  return text;
}

Clustering gold_clustering(const Document& doc) {
  Clustering clusters;
  clusters.reserve(doc.gold_clusters.size());
  for (const GoldCluster& cluster : doc.gold_clusters) {
    clusters.push_back(cluster.mentions);
  }
  return clusters;
}

std::vector<MentionSpan> gold_mentions(const Document& doc) {
  std::vector<MentionSpan> mentions;
  for (const GoldCluster& cluster : doc.gold_clusters) {
    mentions.insert(mentions.end(), cluster.mentions.begin(),
                    cluster.mentions.end());
  }
  return mentions;
}

namespace {

void check_span(const MentionSpan& span, std::size_t doc_len,
                const std::string& label, std::vector<std::string>* out) {
  if (span.start > span.end) {
    out->push_back(label + ": start > end");
  } else if (span.end >= doc_len) {
    out->push_back(label + ": end " + std::to_string(span.end) +
                   " outside document of length " + std::to_string(doc_len));
  }
}

}  // namespace

std::vector<std::string> validate_document(const Document& doc) {
  std::vector<std::string> violations;
  const std::size_t n = doc.size();

  for (std::size_t i = 0; i < doc.sentence_boundaries.size(); ++i) {
    std::size_t b = doc.sentence_boundaries[i];
    if (i > 0 && b <= doc.sentence_boundaries[i - 1]) {
      violations.push_back("sentence boundary " + std::to_string(i) +
                           ": not strictly increasing");
    }
    if (b >= n && !(b == 0 && n == 0)) {
      violations.push_back("sentence boundary " + std::to_string(i) +
                           ": outside document");
    }
  }

  std::size_t index = 0;
  std::set<MentionSpan> seen;
  for (std::size_t c = 0; c < doc.gold_clusters.size(); ++c) {
    const GoldCluster& cluster = doc.gold_clusters[c];
    if (cluster.mentions.empty()) {
      violations.push_back("gold cluster " + std::to_string(c) + ": empty");
    }
    for (const MentionSpan& span : cluster.mentions) {
      check_span(span, n, "mention " + std::to_string(index), &violations);
      if (!seen.insert(span).second) {
        violations.push_back("duplicate gold mention " + to_string(span));
      }
      ++index;
    }
  }

  seen.clear();
  for (std::size_t i = 0; i < doc.candidate_mentions.size(); ++i) {
    const MentionSpan& span = doc.candidate_mentions[i].span;
    check_span(span, n, "candidate " + std::to_string(i), &violations);
    if (!seen.insert(span).second) {
      violations.push_back("duplicate candidate mention " + to_string(span));
    }
  }
  return violations;
}

std::string_view action_tag(ActionKind kind) {
  switch (kind) {
    case ActionKind::kCoref: return "coref";
    case ActionKind::kNewEntity: return "new";
    case ActionKind::kEvictAndReplace: return "evict";
    case ActionKind::kIgnoreCapacity: return "ignore_cap";
    case ActionKind::kIgnoreInvalid: return "ignore_inv";
  }
  return "?";
}

ActionKind action_kind_from_tag(std::string_view tag) {
  if (tag == "coref") return ActionKind::kCoref;
  if (tag == "new") return ActionKind::kNewEntity;
  if (tag == "evict") return ActionKind::kEvictAndReplace;
  if (tag == "ignore_cap") return ActionKind::kIgnoreCapacity;
  if (tag == "ignore_inv") return ActionKind::kIgnoreInvalid;
  throw Error("unknown action tag: " + std::string(tag));
}

std::string to_string(const Action& action) {
  std::string out(action_tag(action.kind()));
  if (action.cell()) out += "(" + std::to_string(*action.cell()) + ")";
  return out;
}

std::string_view policy_name(Policy policy) {
  switch (policy) {
    case Policy::kUnbounded: return "unbounded";
    case Policy::kUnboundedStar: return "ustar";
    case Policy::kLearnedBounded: return "lb";
    case Policy::kRuleBounded: return "rb";
  }
  return "?";
}

Policy policy_from_name(std::string_view name) {
  if (name == "unbounded" || name == "u-mem") return Policy::kUnbounded;
  if (name == "ustar" || name == "u-mem*") return Policy::kUnboundedStar;
  if (name == "lb" || name == "lb-mem") return Policy::kLearnedBounded;
  if (name == "rb" || name == "rb-mem") return Policy::kRuleBounded;
  throw ConfigError("unknown policy: " + std::string(name));
}

void validate_policy(const PolicyConfig& config) {
  if (config.capacity && *config.capacity == 0) {
    throw ConfigError("capacity must be at least 1");
  }
  if (config.bounded() && !config.capacity) {
    throw ConfigError(std::string(policy_name(config.policy)) +
                      " requires a finite capacity");
  }
  if (config.policy == Policy::kUnboundedStar &&
      config.singleton_mode == SingletonMode::kKeepSingletons) {
    throw ConfigError(
        "ustar adds every non-coreferent mention as an entity and cannot be "
        "evaluated with singletons kept");
  }
}

}  // namespace boundcoref
