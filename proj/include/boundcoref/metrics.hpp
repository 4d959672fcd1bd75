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

// Coreference evaluation: MUC, B-cubed, entity-based CEAF (phi4) and their
// unweighted mean. Mentions are matched by exact span. Corpus scores sum
// numerators and denominators across documents before dividing.

#ifndef BOUNDCOREF_METRICS_HPP_
#define BOUNDCOREF_METRICS_HPP_

#include "boundcoref/core.hpp"

namespace boundcoref {

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static PRF from(double precision, double recall);
};

// Numerators and denominators of precision and recall; 0/0 reads as 0.
struct MetricTally {
  double p_num = 0.0;
  double p_den = 0.0;
  double r_num = 0.0;
  double r_den = 0.0;

  PRF prf() const;
  MetricTally& operator+=(const MetricTally& other);
};

struct ScoreReport {
  PRF muc;
  PRF b_cubed;
  PRF ceaf_phi4;
  double conll_f1 = 0.0;
};

Clustering filter_singletons(Clustering clusters, SingletonMode mode);

MetricTally muc_tally(const Clustering& gold, const Clustering& pred);
MetricTally b_cubed_tally(const Clustering& gold, const Clustering& pred);
MetricTally ceaf_phi4_tally(const Clustering& gold, const Clustering& pred);

inline PRF muc(const Clustering& gold, const Clustering& pred) {
  return muc_tally(gold, pred).prf();
}
inline PRF b_cubed(const Clustering& gold, const Clustering& pred) {
  return b_cubed_tally(gold, pred).prf();
}
inline PRF ceaf_phi4(const Clustering& gold, const Clustering& pred) {
  return ceaf_phi4_tally(gold, pred).prf();
}

// phi4(K, R) = 2 |K n R| / (|K| + |R|).
double phi4(const Cluster& key, const Cluster& response);

ScoreReport conll_f1(const PRF& muc, const PRF& b_cubed, const PRF& ceaf_phi4);

// The three tallies of one document.
struct DocumentTally {
  MetricTally muc;
  MetricTally b_cubed;
  MetricTally ceaf_phi4;

  ScoreReport report() const;
};

DocumentTally document_tally(const Clustering& gold, const Clustering& pred,
                             SingletonMode mode);

// Accumulates documents and reports corpus-level scores.
class CorpusEvaluator {
 public:
  explicit CorpusEvaluator(SingletonMode mode) : mode_(mode) {}

  // Returns the document-level report.
  ScoreReport add(const Clustering& gold, const Clustering& pred);
  void add(const DocumentTally& tally);
  ScoreReport report() const;

 private:
  SingletonMode mode_;
  MetricTally muc_;
  MetricTally b_cubed_;
  MetricTally ceaf_;
};

ScoreReport evaluate(const Clustering& gold, const Clustering& pred,
                     SingletonMode mode);

}  // namespace boundcoref

#endif  // BOUNDCOREF_METRICS_HPP_
