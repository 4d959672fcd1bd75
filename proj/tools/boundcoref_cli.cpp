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


// boundcoref: batch driver for corpus analysis, bounded-memory clustering
// runs, oracle traces and scoring.
//
// Exit codes: 0 ok, 1 other failure, 2 input parse error, 3 configuration
// error, 4 replay score shape mismatch, 5 document id mismatch.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "boundcoref/analytics.hpp"
#include "boundcoref/corpus.hpp"
#include "boundcoref/engine.hpp"
#include "boundcoref/ingest.hpp"
#include "boundcoref/metrics.hpp"
#include "boundcoref/oracle.hpp"
#include "boundcoref/scoring.hpp"
#include "boundcoref/synthetic.hpp"
#include "json.hpp"

namespace bc = boundcoref;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kParseFailure = 2,
  kConfigFailure = 3,
  kReplayShape = 4,
  kAlignment = 5,
};

class AlignmentError : public bc::Error {
 public:
  using bc::Error::Error;
};

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::ofstream open_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bc::Error("cannot write " + path);
  return out;
}

// --format auto picks by extension: .jsonl/.json are JSON lines, anything
// else is CoNLL.
bc::CorpusFormat format_for(const std::string& format, const std::string& path) {
  if (format != "auto") return bc::corpus_format_from_name(format);
  const std::string ext = std::filesystem::path(path).extension().string();
  return ext == ".jsonl" || ext == ".json" ? bc::CorpusFormat::kJsonLines
                                           : bc::CorpusFormat::kConll2012;
}

std::vector<bc::Document> load_corpus(const std::vector<std::string>& paths,
                                      const std::string& format) {
  std::vector<bc::Document> docs;
  for (const std::string& path : paths) {
    bc::CorpusSource source{format_for(format, path), {path}};
    for (bc::Document& d : bc::read_corpus(source)) docs.push_back(std::move(d));
  }
  return docs;
}

bc::SingletonMode singleton_mode(const std::string& name) {
  if (name == "keep") return bc::SingletonMode::kKeepSingletons;
  if (name == "drop") return bc::SingletonMode::kDropSingletons;
  throw bc::ConfigError("--singletons must be keep or drop");
}

json spans_json(const bc::Cluster& cluster) {
  json out = json::array();
  for (const bc::MentionSpan& s : cluster) out.push_back({s.start, s.end});
  return out;
}

json clusters_json(const bc::Clustering& clusters) {
  json out = json::array();
  for (const bc::Cluster& c : clusters) out.push_back(spans_json(c));
  return out;
}

json prf_json(const bc::PRF& p) {
  return json{{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

json report_json(const bc::ScoreReport& r) {
  return json{{"muc", prf_json(r.muc)},
              {"b_cubed", prf_json(r.b_cubed)},
              {"ceaf_phi4", prf_json(r.ceaf_phi4)},
              {"conll_f1", r.conll_f1}};
}

// Percentages to one decimal in the usual MUC | B3 | CEAF | Avg. F1 layout.
void print_report(std::ostream& out, const bc::ScoreReport& r) {
  auto pct = [](double v) { return fixed(100.0 * v, 1); };
  auto cell = [&](const std::string& s) {
    std::string padded(std::max<std::size_t>(7, s.size() + 1) - s.size(), ' ');
    return padded + s;
  };
  auto right = [](const std::string& s, std::size_t width) {
    return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
  };
  out << cell("") << right("MUC", 21) << right("B3", 21) << right("CEAF_phi4", 21)
      << right("Avg.", 7) << "\n";
  out << cell("");
  for (int k = 0; k < 3; ++k) out << cell("P") << cell("R") << cell("F1");
  out << cell("F1") << "\n";
  out << cell("score");
  for (const bc::PRF* p : {&r.muc, &r.b_cubed, &r.ceaf_phi4}) {
    out << cell(pct(p->precision)) << cell(pct(p->recall)) << cell(pct(p->f1));
  }
  out << cell(pct(r.conll_f1)) << "\n";
}

// Parses "5", "1,2,8" or "1..32".
std::vector<std::size_t> parse_capacity_list(const std::string& text) {
  std::vector<std::size_t> out;
  auto number = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw bc::ConfigError("bad capacity '" + text + "'");
    }
    return std::stoul(s);
  };
  if (auto dots = text.find(".."); dots != std::string::npos) {
    std::size_t lo = number(text.substr(0, dots)), hi = number(text.substr(dots + 2));
    if (lo > hi) throw bc::ConfigError("empty capacity range '" + text + "'");
    for (std::size_t c = lo; c <= hi; ++c) out.push_back(c);
    return out;
  }
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(number(part));
  if (out.empty()) throw bc::ConfigError("empty capacity");
  return out;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::vector<std::string> inputs;
  std::string format = "auto";
  std::size_t buckets = 10;
  bool exclude_singletons = false;
  std::string out_dir;
  int jobs = 0;
};

int cmd_analyze(const AnalyzeArgs& args) {
  std::vector<bc::Document> corpus = load_corpus(args.inputs, args.format);
  if (args.buckets == 0) throw bc::ConfigError("--buckets must be at least 1");
  bc::CorpusStats stats =
      bc::analyze_corpus(corpus, {args.buckets, args.exclude_singletons, args.jobs});

  if (!args.out_dir.empty()) {
    std::filesystem::create_directories(args.out_dir);
    std::ofstream docs = open_output(args.out_dir + "/doc_stats.csv");
    docs << "doc_id,mae,total_entities,doc_len,mae_no_singletons,total_entities_no_singletons\n";
    for (const bc::DocumentStats& d : stats.documents) {
      docs << csv_field(d.doc_id) << ',' << d.mae << ',' << d.entities << ',' << d.tokens << ','
           << d.mae_no_singletons << ',' << d.entities - d.singletons << '\n';
    }
    std::ofstream hist = open_output(args.out_dir + "/spread_histogram.csv");
    hist << "bucket_lo,bucket_hi,count\n";
    for (std::size_t b = 0; b < stats.spread.counts.size(); ++b) {
      hist << fixed(stats.spread.lower(b), 4) << ',' << fixed(stats.spread.upper(b), 4) << ','
           << stats.spread.counts[b] << '\n';
    }
  }

  std::cout << "Documents: " << stats.documents.size() << "\n";
  std::cout << "Max Active: " << stats.corpus_mae << ", Max Total: " << stats.max_total_entities
            << "\n";
  std::cout << "Without singletons: Max Active: " << stats.corpus_mae_no_singletons
            << ", Max Total: " << stats.max_total_entities_no_singletons << "\n";
  return kOk;
}

// -------------------------------------------------------------------- run

struct RunArgs {
  std::vector<std::string> inputs;
  std::string format = "auto";
  std::string policy;
  std::string capacity;
  std::string scorer = "gold";
  std::string singletons = "keep";
  bool strip_determiners = false;
  std::optional<double> top_ratio;
  std::string trace_path;
  std::string out_path;
  std::string record_path;
  std::string manifest_path;
  int jobs = 0;
};

bc::ScorerFactory make_factory(const std::string& name, bool strip_determiners) {
  if (name == "gold") {
    return [](const bc::Document&) { return std::make_unique<bc::GoldScorer>(); };
  }
  if (name == "string-match") {
    bc::StringMatchConfig config{true, strip_determiners};
    return [config](const bc::Document&) {
      return std::make_unique<bc::StringMatchScorer>(config);
    };
  }
  if (name.rfind("replay:", 0) == 0) {
    auto table = std::make_shared<const bc::ReplayTable>(bc::ReplayTable::load(name.substr(7)));
    return [table](const bc::Document&) { return std::make_unique<bc::ReplayScorer>(table); };
  }
  throw bc::ConfigError("unknown scorer '" + name + "' (gold, string-match or replay:PATH)");
}

std::string spearman_text(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2) return "n/a";
  std::optional<double> rho = bc::spearman(xs, ys);
  return rho ? fixed(*rho, 2) : "n/a";
}

int cmd_run(const RunArgs& args) {
  bc::RunOptions options;
  options.policy.policy = bc::policy_from_name(args.policy);
  options.policy.singleton_mode = singleton_mode(args.singletons);
  const bool per_doc_capacity = args.capacity == "mae";
  if (per_doc_capacity) {
    if (!options.policy.bounded()) throw bc::ConfigError("--capacity mae needs lb or rb");
    options.capacity_for = [](const bc::Document& d) {
      return std::max<std::size_t>(1, bc::max_active_entities(d));
    };
  } else if (!args.capacity.empty()) {
    std::vector<std::size_t> caps = parse_capacity_list(args.capacity);
    if (caps.size() != 1) throw bc::ConfigError("run takes a single --capacity");
    // Unbounded policies never consult the capacity.
    if (options.policy.bounded() || caps[0] == 0) options.policy.capacity = caps[0];
  }
  if (!per_doc_capacity) bc::validate_policy(options.policy);
  if (args.top_ratio && !(*args.top_ratio > 0.0)) {
    throw bc::ConfigError("--top-ratio must be positive");
  }
  options.top_ratio = args.top_ratio;
  options.record = !args.record_path.empty();
  options.jobs = args.jobs;

  bc::ScorerFactory factory = make_factory(args.scorer, args.strip_determiners);
  std::vector<bc::Document> corpus = load_corpus(args.inputs, args.format);
  bc::CorpusRun run = bc::run_corpus(corpus, factory, options);

  std::optional<std::ofstream> trace, out, record;
  if (!args.trace_path.empty()) trace = open_output(args.trace_path);
  if (!args.out_path.empty()) out = open_output(args.out_path);
  if (!args.record_path.empty()) record = open_output(args.record_path);

  json digests = json::array();
  double avg_sum = 0.0;
  std::size_t max_in_memory = 0, ignored_cap = 0, ignored_inv = 0, evictions = 0;
  std::vector<double> f1s, lengths, entity_counts;
  for (std::size_t i = 0; i < run.documents.size(); ++i) {
    const bc::DocumentRun& d = run.documents[i];
    const bc::RunStats& s = d.result.stats;
    std::string trace_text;
    for (std::size_t k = 0; k < d.mentions.size(); ++k) {
      trace_text += bc::action_trace_line(d.doc_id, d.mentions[k], s.actions[k]) + "\n";
    }
    std::string cluster_line =
        json{{"doc_id", d.doc_id}, {"clusters", clusters_json(d.result.predicted_clusters)}}
            .dump() +
        "\n";
    if (trace) *trace << trace_text;
    if (out) *out << cluster_line;
    if (record) {
      for (const bc::ReplayRow& row : d.recorded) *record << bc::replay_row_jsonl(d.doc_id, row) << "\n";
    }
    digests.push_back(json{{"doc_id", d.doc_id},
                           {"digest", hex64(bc::fnv1a64(trace_text + cluster_line))}});

    avg_sum += s.avg_entities_in_memory;
    max_in_memory = std::max(max_in_memory, s.max_entities_in_memory);
    ignored_cap += s.ignored_capacity_count;
    ignored_inv += s.ignored_invalid_count;
    evictions += s.eviction_count;
    f1s.push_back(d.tally.report().conll_f1);
    lengths.push_back(static_cast<double>(corpus[i].size()));
    entity_counts.push_back(static_cast<double>(
        bc::filter_singletons(bc::gold_clustering(corpus[i]), options.policy.singleton_mode)
            .size()));
  }

  const double docs = static_cast<double>(std::max<std::size_t>(1, run.documents.size()));
  std::string cap_text = per_doc_capacity ? "mae"
                         : options.policy.capacity ? std::to_string(*options.policy.capacity)
                                                   : "inf";
  std::cout << "policy   capacity  docs  avg_in_memory  max_in_memory  ignored_cap  "
               "ignored_inv  evictions\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%-8s %8s %5zu %14s %14zu %12s %12s %10zu\n",
                std::string(bc::policy_name(options.policy.policy)).c_str(), cap_text.c_str(),
                run.documents.size(), fixed(avg_sum / docs, 1).c_str(), max_in_memory,
                fixed(static_cast<double>(ignored_cap) / docs, 1).c_str(),
                fixed(static_cast<double>(ignored_inv) / docs, 1).c_str(), evictions);
  std::cout << line;
  std::cout << "(ignored counts are means per document; totals " << ignored_cap << " / "
            << ignored_inv << ")\n\n";
  print_report(std::cout, run.score);
  std::cout << "\nSpearman of document F1 with length: " << spearman_text(f1s, lengths)
            << ", with entities: " << spearman_text(f1s, entity_counts) << "\n";

  if (!args.manifest_path.empty()) {
    json manifest;
    manifest["tool"] = "boundcoref";
    manifest["version"] = kToolVersion;
    manifest["config"] = json{{"policy", bc::policy_name(options.policy.policy)},
                              {"capacity", cap_text},
                              {"scorer", args.scorer},
                              {"strip_determiners", args.strip_determiners},
                              {"singletons", args.singletons},
                              {"top_ratio", args.top_ratio ? json(*args.top_ratio) : json()},
                              {"format", args.format},
                              {"inputs", args.inputs},
                              {"seed", json()}};
    manifest["documents"] = std::move(digests);
    open_output(args.manifest_path) << manifest.dump(2) << "\n";
  }
  return kOk;
}

// ----------------------------------------------------------------- oracle

struct OracleArgs {
  std::vector<std::string> inputs;
  std::string format = "auto";
  std::string policy = "lb";
  std::string capacity;
  std::string out_path;
  int jobs = 0;
};

int cmd_oracle(const OracleArgs& args) {
  bc::PolicyConfig base{bc::policy_from_name(args.policy), std::nullopt,
                        bc::SingletonMode::kKeepSingletons};
  if (base.policy == bc::Policy::kUnboundedStar) {
    throw bc::ConfigError("the oracle supports unbounded, lb and rb");
  }
  std::vector<std::optional<std::size_t>> capacities;
  if (args.capacity.empty()) {
    capacities.push_back(std::nullopt);
  } else {
    for (std::size_t c : parse_capacity_list(args.capacity)) capacities.push_back(c);
  }
  std::vector<bc::PolicyConfig> configs;
  for (auto cap : capacities) {
    bc::PolicyConfig config = base;
    if (base.bounded() || (cap && *cap == 0)) config.capacity = cap;
    bc::validate_policy(config);
    configs.push_back(config);
  }

  std::vector<bc::Document> corpus = load_corpus(args.inputs, args.format);
  std::optional<std::ofstream> out;
  if (!args.out_path.empty()) out = open_output(args.out_path);

  for (std::size_t k = 0; k < configs.size(); ++k) {
    auto results = bc::oracle_corpus(corpus, configs[k], args.jobs);
    bc::TrackableCount total;
    for (const bc::DocumentOracle& d : results) {
      bc::TrackableCount c = bc::trackable_count(d.steps);
      total.gold_mentions += c.gold_mentions;
      total.tracked_mentions += c.tracked_mentions;
      if (!out) continue;
      for (std::size_t i = 0; i < d.steps.size(); ++i) {
        std::string line = bc::action_trace_line(d.doc_id, d.mentions[i], d.steps[i].action,
                                                 d.steps[i].remaining);
        if (capacities.size() > 1) {
          json j = json::parse(line);
          j["capacity"] = *capacities[k];
          line = j.dump();
        }
        *out << line << "\n";
      }
    }
    std::string cap = capacities[k] && base.bounded() ? std::to_string(*capacities[k]) : "inf";
    std::cout << "capacity " << cap << ": trackable fraction " << fixed(total.fraction(), 4)
              << " (" << total.tracked_mentions << "/" << total.gold_mentions << ")\n";
  }
  return kOk;
}

// ------------------------------------------------------------------ score

struct ScoreArgs {
  std::string gold_path;
  std::string pred_path;
  std::string format = "auto";
  std::string singletons = "keep";
  std::string json_path;
};

// Reads {"doc_id":..,"clusters":[[[s,e],..],..]} lines. Document lines
// (with gold_clusters) are accepted too.
std::vector<std::pair<std::string, bc::Clustering>> read_predictions(const std::string& path) {
  std::string text = bc::read_file(path);
  std::vector<std::pair<std::string, bc::Clustering>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string& key) {
      throw bc::ParseError(bc::ParseErrorKind::kSchemaError, line_no, key, path);
    };
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      fail("invalid JSON");
    }
    if (!j.is_object() || !j.contains("doc_id") || !j["doc_id"].is_string()) fail("doc_id");
    const char* key = j.contains("clusters") ? "clusters" : "gold_clusters";
    if (!j.contains(key) || !j[key].is_array()) fail("clusters");
    bc::Clustering clusters;
    for (const auto& c : j[key]) {
      if (!c.is_array()) fail(key);
      bc::Cluster cluster;
      for (const auto& s : c) {
        if (!s.is_array() || s.size() != 2 || !s[0].is_number_unsigned() ||
            !s[1].is_number_unsigned()) {
          fail(key);
        }
        cluster.push_back({s[0].get<std::size_t>(), s[1].get<std::size_t>()});
      }
      clusters.push_back(std::move(cluster));
    }
    out.emplace_back(j["doc_id"].get<std::string>(), std::move(clusters));
  }
  return out;
}

int cmd_score(const ScoreArgs& args) {
  const bc::SingletonMode mode = singleton_mode(args.singletons);
  std::vector<bc::Document> gold = load_corpus({args.gold_path}, args.format);
  auto pred = read_predictions(args.pred_path);

  std::map<std::string, const bc::Clustering*> by_id;
  for (const auto& [id, clusters] : pred) by_id.emplace(id, &clusters);
  std::set<std::string> gold_ids;
  std::vector<std::string> missing, extra;
  for (const bc::Document& d : gold) {
    gold_ids.insert(d.doc_id);
    if (!by_id.count(d.doc_id)) missing.push_back(d.doc_id);
  }
  for (const auto& [id, clusters] : pred) {
    if (!gold_ids.count(id)) extra.push_back(id);
  }
  if (!missing.empty() || !extra.empty()) {
    std::ostringstream msg;
    msg << "document ids do not align";
    if (!missing.empty()) {
      msg << "\n  missing from predictions:";
      for (const auto& id : missing) msg << " " << id;
    }
    if (!extra.empty()) {
      msg << "\n  not in gold:";
      for (const auto& id : extra) msg << " " << id;
    }
    throw AlignmentError(msg.str());
  }

  bc::CorpusEvaluator eval(mode);
  for (const bc::Document& d : gold) eval.add(bc::gold_clustering(d), *by_id[d.doc_id]);
  bc::ScoreReport report = eval.report();
  print_report(std::cout, report);
  json j = report_json(report);
  j["documents"] = gold.size();
  j["singletons"] = args.singletons;
  if (!args.json_path.empty()) {
    open_output(args.json_path) << j.dump(2) << "\n";
  } else {
    std::cout << j.dump() << "\n";
  }
  return kOk;
}

// ------------------------------------------------------------------ synth

struct SynthArgs {
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t long_mentions = 0;
  bc::RandomDocumentOptions options;
  std::string out_path;
};

int cmd_synth(const SynthArgs& args) {
  std::vector<bc::Document> docs;
  if (args.long_mentions > 0) {
    bc::LongDocumentOptions opts;
    opts.mentions = args.long_mentions;
    docs.push_back(bc::make_long_document(args.seed, opts));
  } else {
    docs = bc::make_random_corpus(args.seed, args.count, args.options);
  }
  std::optional<std::ofstream> file;
  if (!args.out_path.empty()) file = open_output(args.out_path);
  std::ostream& out = file ? *file : std::cout;
  for (const bc::Document& d : docs) out << bc::serialize_jsonl(d) << "\n";
  return kOk;
}

void add_common(CLI::App* cmd, std::string* format, int* jobs) {
  cmd->add_option("--format", *format, "Input format: conll, jsonl or auto (by extension)")
      ->check(CLI::IsMember({"auto", "conll", "jsonl"}));
  if (jobs != nullptr) {
    cmd->add_option("--jobs", *jobs, "Worker threads; 0 uses all cores")
        ->envname("COREF_JOBS")
        ->check(CLI::NonNegativeNumber);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-memory incremental coreference clustering", "boundcoref"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  CLI::App* a = app.add_subcommand("analyze", "Entity spread and maximum active entity statistics");
  a->add_option("inputs", analyze.inputs, "Corpus files")->required();
  add_common(a, &analyze.format, &analyze.jobs);
  a->add_option("--buckets", analyze.buckets, "Spread histogram buckets");
  a->add_flag("--exclude-singletons", analyze.exclude_singletons,
              "Leave singleton entities out of the histogram");
  a->add_option("--out", analyze.out_dir, "Directory for doc_stats.csv and spread_histogram.csv");

  RunArgs run;
  CLI::App* r = app.add_subcommand("run", "Cluster mentions with a memory policy");
  r->add_option("inputs", run.inputs, "Corpus files")->required();
  add_common(r, &run.format, &run.jobs);
  r->add_option("--policy", run.policy, "unbounded, ustar, lb or rb")->required();
  r->add_option("--capacity", run.capacity, "Memory cells, or 'mae' for per-document MAE");
  r->add_option("--scorer", run.scorer, "gold, string-match or replay:PATH");
  r->add_option("--singletons", run.singletons, "keep or drop during evaluation");
  r->add_flag("--strip-determiners", run.strip_determiners,
              "string-match: ignore a leading a/an/the");
  r->add_option("--top-ratio", run.top_ratio, "Keep floor(ratio * tokens) top candidates");
  r->add_option("--trace", run.trace_path, "Action trace JSONL");
  r->add_option("--out", run.out_path, "Predicted clusters JSONL");
  r->add_option("--record", run.record_path, "Replay score file to write");
  r->add_option("--manifest", run.manifest_path, "Run manifest JSON");

  OracleArgs oracle;
  CLI::App* o = app.add_subcommand("oracle", "Teacher-forcing oracle traces");
  o->add_option("inputs", oracle.inputs, "Corpus files")->required();
  add_common(o, &oracle.format, &oracle.jobs);
  o->add_option("--policy", oracle.policy, "unbounded, lb or rb");
  o->add_option("--capacity", oracle.capacity, "N, a list N,M,.. or a range A..B");
  o->add_option("--out", oracle.out_path, "Oracle trace JSONL");

  ScoreArgs score;
  CLI::App* s = app.add_subcommand("score", "Score predicted clusters against gold");
  s->add_option("gold", score.gold_path, "Gold corpus")->required();
  s->add_option("pred", score.pred_path, "Predicted clusters JSONL")->required();
  add_common(s, &score.format, nullptr);
  s->add_option("--singletons", score.singletons, "keep or drop");
  s->add_option("--json", score.json_path, "Write the report as JSON here instead of stdout");

  SynthArgs synth;
  CLI::App* y = app.add_subcommand("synth", "Write a seeded synthetic corpus as JSONL");
  y->add_option("--seed", synth.seed, "Generator seed");
  y->add_option("--count", synth.count, "Number of documents");
  y->add_option("--max-tokens", synth.options.max_tokens);
  y->add_option("--max-entities", synth.options.max_entities);
  y->add_option("--max-mentions", synth.options.max_mentions);
  y->add_option("--invalid-rate", synth.options.invalid_rate, "Extra non-gold candidates");
  y->add_option("--long", synth.long_mentions, "One long document with this many mentions");
  y->add_option("--out", synth.out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigFailure;
  }

  try {
    if (*a) return cmd_analyze(analyze);
    if (*r) return cmd_run(run);
    if (*o) return cmd_oracle(oracle);
    if (*s) return cmd_score(score);
    if (*y) return cmd_synth(synth);
  } catch (const bc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseFailure;
  } catch (const bc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const bc::ScoreShapeMismatch& e) {
    std::cerr << "error: mention " << e.mention_index() << ": " << e.what() << "\n";
    return kReplayShape;
  } catch (const AlignmentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAlignment;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
