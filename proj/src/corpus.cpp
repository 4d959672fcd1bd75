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


#include "boundcoref/corpus.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#include <omp.h>

#include "boundcoref/ingest.hpp"

namespace boundcoref {

namespace {

// Runs fn(i) for i in [0, n) across `jobs` threads. Exceptions are caught
// per index and the lowest-index one is rethrown after the loop.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  return std::max(1, omp_get_max_threads());
}

DocumentStats analyze_document(const Document& doc) {
  DocumentStats s;
  s.doc_id = doc.doc_id;
  s.tokens = doc.size();
  for (const GoldCluster& c : doc.gold_clusters) {
    if (c.mentions.empty()) continue;
    ++s.entities;
    s.gold_mentions += c.mentions.size();
    if (c.is_singleton()) ++s.singletons;
  }
  s.mae = max_active_entities(doc, true);
  s.mae_no_singletons = max_active_entities(doc, false);
  return s;
}

CorpusStats merge_document_stats(std::vector<DocumentStats> docs,
                                 std::vector<Histogram> spreads, std::size_t buckets) {
  CorpusStats out;
  out.spread.counts.assign(buckets, 0);
  for (const Histogram& h : spreads) {
    for (std::size_t b = 0; b < buckets; ++b) out.spread.counts[b] += h.counts[b];
  }
  for (const DocumentStats& d : docs) {
    out.corpus_mae = std::max(out.corpus_mae, d.mae);
    out.corpus_mae_no_singletons = std::max(out.corpus_mae_no_singletons, d.mae_no_singletons);
    out.max_total_entities = std::max(out.max_total_entities, d.entities);
    out.max_total_entities_no_singletons =
        std::max(out.max_total_entities_no_singletons, d.entities - d.singletons);
  }
  out.documents = std::move(docs);
  return out;
}

CorpusStats analyze_corpus(std::span<const Document> corpus,
                           const AnalyzeOptions& options) {
  if (options.buckets == 0) throw std::invalid_argument("buckets must be >= 1");
  std::vector<DocumentStats> docs(corpus.size());
  std::vector<Histogram> spreads(corpus.size());
  parallel_for(corpus.size(), resolve_jobs(options.jobs), [&](std::size_t i) {
    docs[i] = analyze_document(corpus[i]);
    spreads[i] = spread_histogram(corpus.subspan(i, 1), options.buckets,
                                  options.exclude_singletons);
  });
  return merge_document_stats(std::move(docs), std::move(spreads), options.buckets);
}

DocumentRun run_one(const Document& doc, const ScorerFactory& factory,
                    const RunOptions& options) {
  PolicyConfig policy = options.policy;
  if (options.capacity_for && policy.bounded()) policy.capacity = options.capacity_for(doc);

  DocumentRun run;
  run.doc_id = doc.doc_id;
  run.mentions = select_mentions(doc, options.top_ratio);
  std::unique_ptr<ScoreProvider> scorer = factory(doc);
  if (options.record) {
    RecordingScorer recorder(*scorer);
    run.result = run_document(doc, run.mentions, recorder, policy);
    run.recorded = recorder.rows();
  } else {
    run.result = run_document(doc, run.mentions, *scorer, policy);
  }
  run.tally = document_tally(gold_clustering(doc), run.result.predicted_clusters,
                             policy.singleton_mode);
  return run;
}

CorpusRun merge_runs(std::vector<DocumentRun> runs, SingletonMode mode) {
  CorpusEvaluator eval(mode);
  for (const DocumentRun& r : runs) eval.add(r.tally);
  return CorpusRun{std::move(runs), eval.report()};
}

CorpusRun run_corpus(std::span<const Document> corpus, const ScorerFactory& factory,
                     const RunOptions& options) {
  // With a per-document capacity each run validates its own config.
  if (!options.capacity_for) validate_policy(options.policy);
  std::vector<DocumentRun> runs(corpus.size());
  parallel_for(corpus.size(), resolve_jobs(options.jobs),
               [&](std::size_t i) { runs[i] = run_one(corpus[i], factory, options); });
  return merge_runs(std::move(runs), options.policy.singleton_mode);
}

DocumentOracle oracle_one(const Document& doc, const PolicyConfig& policy) {
  DocumentOracle out;
  out.doc_id = doc.doc_id;
  out.mentions = order_mentions(gold_mentions(doc)).mentions;
  out.steps = oracle_actions(out.mentions, doc.gold_clusters, policy);
  return out;
}

std::vector<DocumentOracle> oracle_corpus(std::span<const Document> corpus,
                                          const PolicyConfig& policy, int jobs) {
  validate_policy(policy);
  std::vector<DocumentOracle> out(corpus.size());
  parallel_for(corpus.size(), resolve_jobs(jobs),
               [&](std::size_t i) { out[i] = oracle_one(corpus[i], policy); });
  return out;
}

}  // namespace boundcoref
