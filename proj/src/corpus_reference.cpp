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


// Serial drivers. Kept deliberately plain: they are the baseline the
// parallel drivers must match exactly.

#include "boundcoref/corpus.hpp"

#include <stdexcept>

#include "boundcoref/ingest.hpp"

namespace boundcoref::reference {

CorpusStats analyze_corpus(std::span<const Document> corpus,
                           const AnalyzeOptions& options) {
  if (options.buckets == 0) throw std::invalid_argument("buckets must be >= 1");
  std::vector<DocumentStats> docs;
  std::vector<Histogram> spreads;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    docs.push_back(analyze_document(corpus[i]));
    spreads.push_back(spread_histogram(corpus.subspan(i, 1), options.buckets,
                                       options.exclude_singletons));
  }
  return merge_document_stats(std::move(docs), std::move(spreads), options.buckets);
}

CorpusRun run_corpus(std::span<const Document> corpus, const ScorerFactory& factory,
                     const RunOptions& options) {
  if (!options.capacity_for) validate_policy(options.policy);
  std::vector<DocumentRun> runs;
  runs.reserve(corpus.size());
  for (const Document& doc : corpus) runs.push_back(run_one(doc, factory, options));
  return merge_runs(std::move(runs), options.policy.singleton_mode);
}

std::vector<DocumentOracle> oracle_corpus(std::span<const Document> corpus,
                                          const PolicyConfig& policy) {
  validate_policy(policy);
  std::vector<DocumentOracle> out;
  out.reserve(corpus.size());
  for (const Document& doc : corpus) out.push_back(oracle_one(doc, policy));
  return out;
}

}  // namespace boundcoref::reference
