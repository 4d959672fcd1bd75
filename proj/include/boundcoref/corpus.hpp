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

// Corpus-level drivers. Each document is an independent job: the parallel
// versions spread documents over an OpenMP team while every single engine
// run stays sequential. Results are stored by input index and merged in
// input order, so the output never depends on the thread count. The
// `reference` namespace holds plain serial loops over the same per-document
// kernels and is what the tests and the benchmark compare against.

#ifndef BOUNDCOREF_CORPUS_HPP_
#define BOUNDCOREF_CORPUS_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boundcoref/analytics.hpp"
#include "boundcoref/core.hpp"
#include "boundcoref/engine.hpp"
#include "boundcoref/metrics.hpp"
#include "boundcoref/oracle.hpp"
#include "boundcoref/scoring.hpp"

namespace boundcoref {

// Worker count for `requested`; 0 means the OpenMP default. Never below 1.
int resolve_jobs(int requested);

struct DocumentStats {
  std::string doc_id;
  std::size_t tokens = 0;
  std::size_t gold_mentions = 0;
  std::size_t entities = 0;
  std::size_t singletons = 0;
  std::size_t mae = 0;
  std::size_t mae_no_singletons = 0;
};

struct CorpusStats {
  std::vector<DocumentStats> documents;
  std::size_t corpus_mae = 0;
  std::size_t corpus_mae_no_singletons = 0;
  std::size_t max_total_entities = 0;
  std::size_t max_total_entities_no_singletons = 0;
  Histogram spread;
};

struct AnalyzeOptions {
  std::size_t buckets = 10;
  bool exclude_singletons = false;
  int jobs = 0;
};

DocumentStats analyze_document(const Document& doc);
CorpusStats analyze_corpus(std::span<const Document> corpus,
                           const AnalyzeOptions& options);

using ScorerFactory = std::function<std::unique_ptr<ScoreProvider>(const Document&)>;

struct RunOptions {
  PolicyConfig policy;
  // Per-document capacity override for bounded policies.
  std::function<std::size_t(const Document&)> capacity_for;
  std::optional<double> top_ratio;
  // Keep one replay row per mention.
  bool record = false;
  int jobs = 0;
};

struct DocumentRun {
  std::string doc_id;
  std::vector<MentionSpan> mentions;
  ClusteringResult result;
  std::vector<ReplayRow> recorded;
  DocumentTally tally;
};

struct CorpusRun {
  std::vector<DocumentRun> documents;
  ScoreReport score;
};

DocumentRun run_one(const Document& doc, const ScorerFactory& factory,
                    const RunOptions& options);
CorpusRun run_corpus(std::span<const Document> corpus, const ScorerFactory& factory,
                     const RunOptions& options);

struct DocumentOracle {
  std::string doc_id;
  std::vector<MentionSpan> mentions;
  std::vector<OracleStep> steps;
};

DocumentOracle oracle_one(const Document& doc, const PolicyConfig& policy);
std::vector<DocumentOracle> oracle_corpus(std::span<const Document> corpus,
                                          const PolicyConfig& policy, int jobs = 0);

namespace reference {

CorpusStats analyze_corpus(std::span<const Document> corpus,
                           const AnalyzeOptions& options);
CorpusRun run_corpus(std::span<const Document> corpus, const ScorerFactory& factory,
                     const RunOptions& options);
std::vector<DocumentOracle> oracle_corpus(std::span<const Document> corpus,
                                          const PolicyConfig& policy);

}  // namespace reference

// Shared merge steps, exposed so both drivers fold results identically.
CorpusStats merge_document_stats(std::vector<DocumentStats> docs,
                                 std::vector<Histogram> spreads, std::size_t buckets);
CorpusRun merge_runs(std::vector<DocumentRun> runs, SingletonMode mode);

}  // namespace boundcoref

#endif  // BOUNDCOREF_CORPUS_HPP_
