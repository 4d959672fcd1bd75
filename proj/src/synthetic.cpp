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

#include "boundcoref/synthetic.hpp"

#include <algorithm>
#include <set>

namespace boundcoref {

namespace {

MentionSpan random_span(SeededRng& rng, std::size_t n_tokens, std::size_t max_len) {
  std::size_t start = rng.below(n_tokens);
  std::size_t len = rng.between(1, max_len);
  return MentionSpan{start, std::min(start + len - 1, n_tokens - 1)};
}

}  // namespace

Document make_random_document(SeededRng& rng, const RandomDocumentOptions& options,
                              const std::string& doc_id) {
  Document doc;
  doc.doc_id = doc_id;
  const std::size_t min_tokens = options.require_link ? 2 : 1;
  const std::size_t n_tokens = rng.between(min_tokens, std::max(min_tokens, options.max_tokens));
  for (std::size_t t = 0; t < n_tokens; ++t) {
    doc.tokens.push_back("w" + std::to_string(rng.below(20)));
    if (t == 0 || rng.below(12) == 0) doc.sentence_boundaries.push_back(t);
  }

  const std::size_t min_mentions = options.require_link ? 2 : 1;
  const std::size_t target =
      rng.between(min_mentions, std::max(min_mentions, options.max_mentions));
  std::set<MentionSpan> spans;
  for (std::size_t attempt = 0; spans.size() < target && attempt < 50 * target; ++attempt) {
    spans.insert(random_span(rng, n_tokens, options.max_span_length));
  }
  std::vector<MentionSpan> mentions(spans.begin(), spans.end());
  // Fisher-Yates so entity assignment is independent of position.
  for (std::size_t i = mentions.size(); i > 1; --i) {
    std::swap(mentions[i - 1], mentions[rng.below(i)]);
  }

  std::size_t n_entities =
      rng.between(1, std::max<std::size_t>(1, std::min(options.max_entities, mentions.size())));
  if (options.require_link && n_entities == mentions.size() && n_entities > 1) --n_entities;

  std::vector<GoldCluster> clusters(n_entities);
  for (std::size_t e = 0; e < n_entities; ++e) clusters[e].entity_id = static_cast<int>(e);
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    std::size_t e = i < n_entities ? i : rng.below(n_entities);
    clusters[e].mentions.push_back(mentions[i]);
  }
  for (GoldCluster& c : clusters) std::sort(c.mentions.begin(), c.mentions.end());
  doc.gold_clusters = std::move(clusters);

  std::vector<ScoredSpan> candidates;
  for (const MentionSpan& m : spans) candidates.push_back(ScoredSpan{m, 1.0});
  if (options.invalid_rate > 0.0) {
    const std::size_t extra = static_cast<std::size_t>(
        options.invalid_rate * static_cast<double>(spans.size()) + rng.unit());
    std::set<MentionSpan> taken = spans;
    for (std::size_t k = 0, attempt = 0; k < extra && attempt < 50 * extra + 50; ++attempt) {
      MentionSpan s = random_span(rng, n_tokens, options.max_span_length);
      if (taken.insert(s).second) {
        candidates.push_back(ScoredSpan{s, -1.0});
        ++k;
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const ScoredSpan& a, const ScoredSpan& b) { return a.span < b.span; });
  doc.candidate_mentions = std::move(candidates);
  return doc;
}

std::vector<Document> make_random_corpus(std::uint64_t seed, std::size_t count,
                                         const RandomDocumentOptions& options) {
  SeededRng rng(seed);
  std::vector<Document> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    corpus.push_back(make_random_document(rng, options, "synth_" + std::to_string(i)));
  }
  return corpus;
}

Document make_long_document(std::uint64_t seed, const LongDocumentOptions& options,
                            const std::string& doc_id) {
  static const char* const kFiller[] = {"the", "of", "and", "to", "in", "was", "had", "said"};
  SeededRng rng(seed);
  Document doc;
  doc.doc_id = doc_id;
  doc.sentence_boundaries.push_back(0);

  struct Live {
    int id;
    std::size_t left;
  };
  int next_id = 0;
  auto spawn = [&] {
    return Live{next_id++, rng.between(1, 2 * std::max<std::size_t>(1, options.mean_entity_mentions) - 1)};
  };
  std::vector<Live> live;
  for (std::size_t k = 0; k < std::max<std::size_t>(1, options.concurrent_entities); ++k) {
    live.push_back(spawn());
  }

  std::vector<std::vector<MentionSpan>> by_entity;
  for (std::size_t m = 0; m < options.mentions; ++m) {
    for (std::size_t f = 0; f < options.filler_tokens; ++f) {
      doc.tokens.emplace_back(kFiller[rng.below(std::size(kFiller))]);
    }
    std::size_t slot = rng.below(live.size());
    Live& e = live[slot];
    const std::size_t t = doc.tokens.size();
    doc.tokens.push_back("E" + std::to_string(e.id));
    if (static_cast<std::size_t>(e.id) >= by_entity.size()) by_entity.resize(e.id + 1);
    by_entity[e.id].push_back(MentionSpan{t, t});
    if (--e.left == 0) e = spawn();
    if (rng.below(10) == 0) doc.sentence_boundaries.push_back(doc.tokens.size());
  }
  if (!doc.sentence_boundaries.empty() && doc.sentence_boundaries.back() >= doc.tokens.size()) {
    doc.sentence_boundaries.pop_back();
  }

  for (std::size_t id = 0; id < by_entity.size(); ++id) {
    if (by_entity[id].empty()) continue;
    doc.gold_clusters.push_back(GoldCluster{static_cast<int>(id), std::move(by_entity[id])});
  }
  for (const GoldCluster& c : doc.gold_clusters) {
    for (const MentionSpan& s : c.mentions) doc.candidate_mentions.push_back(ScoredSpan{s, 1.0});
  }
  std::sort(doc.candidate_mentions.begin(), doc.candidate_mentions.end(),
            [](const ScoredSpan& a, const ScoredSpan& b) { return a.span < b.span; });
  return doc;
}

}  // namespace boundcoref
