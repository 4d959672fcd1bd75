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


// Serial reference drivers against the OpenMP drivers on a synthetic corpus.
//
//   corpus_bench [--docs N] [--jobs J] [--reps R] [--seed S]
//
// Prints best-of-R wall time for each driver and checks that both produced
// the same result.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "boundcoref/corpus.hpp"
#include "boundcoref/synthetic.hpp"

namespace bc = boundcoref;

namespace {

double best_of(int reps, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto start = std::chrono::steady_clock::now();
    body();
    best = std::min(best,
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-8s serial %9.3f ms  parallel %9.3f ms  speedup %5.2fx  %s\n", name,
              serial * 1e3, parallel * 1e3, serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel corpus drivers"};
  std::size_t docs = 400;
  int jobs = 0, reps = 3;
  std::uint64_t seed = 1;
  app.add_option("--docs", docs, "Synthetic documents");
  app.add_option("--jobs", jobs, "Worker threads; 0 uses all cores");
  app.add_option("--reps", reps, "Repetitions per measurement")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Corpus seed");
  CLI11_PARSE(app, argc, argv);

  bc::RandomDocumentOptions opts;
  opts.max_tokens = 2000;
  opts.max_entities = 60;
  opts.max_mentions = 400;
  opts.invalid_rate = 0.3;
  const std::vector<bc::Document> corpus = bc::make_random_corpus(seed, docs, opts);
  std::printf("documents %zu, threads %d\n", corpus.size(), bc::resolve_jobs(jobs));

  bool all_same = true;

  bc::AnalyzeOptions analyze{10, false, jobs};
  bc::CorpusStats sa, pa;
  double ts = best_of(reps, [&] { sa = bc::reference::analyze_corpus(corpus, analyze); });
  double tp = best_of(reps, [&] { pa = bc::analyze_corpus(corpus, analyze); });
  bool same = sa.corpus_mae == pa.corpus_mae && sa.spread.counts == pa.spread.counts;
  all_same &= same;
  report("analyze", ts, tp, same);

  bc::RunOptions run;
  run.policy = bc::PolicyConfig{bc::Policy::kLearnedBounded, 10,
                                bc::SingletonMode::kKeepSingletons};
  run.jobs = jobs;
  bc::ScorerFactory factory = [](const bc::Document&) {
    return std::make_unique<bc::StringMatchScorer>();
  };
  bc::CorpusRun sr, pr;
  ts = best_of(reps, [&] { sr = bc::reference::run_corpus(corpus, factory, run); });
  tp = best_of(reps, [&] { pr = bc::run_corpus(corpus, factory, run); });
  same = sr.score.conll_f1 == pr.score.conll_f1;
  all_same &= same;
  report("run", ts, tp, same);

  std::vector<bc::DocumentOracle> so, po;
  ts = best_of(reps, [&] { so = bc::reference::oracle_corpus(corpus, run.policy); });
  tp = best_of(reps, [&] { po = bc::oracle_corpus(corpus, run.policy, jobs); });
  same = so.size() == po.size();
  for (std::size_t i = 0; same && i < so.size(); ++i) {
    same = so[i].steps.size() == po[i].steps.size();
    for (std::size_t k = 0; same && k < so[i].steps.size(); ++k) {
      same = so[i].steps[k].action == po[i].steps[k].action;
    }
  }
  all_same &= same;
  report("oracle", ts, tp, same);
  return all_same ? 0 : 1;
}
