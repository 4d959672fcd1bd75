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


#include "boundcoref/ingest.hpp"

#include <map>
#include <set>
#include <sstream>
#include <string>

#include "boundcoref/synthetic.hpp"
#include "doctest.h"

namespace boundcoref {
namespace {

// One token line per coref value; all other columns are filler.
std::string conll(const std::vector<std::string>& corefs,
                  const std::string& header = "#begin document (test); part 000") {
  std::ostringstream out;
  out << header << "\n";
  for (std::size_t i = 0; i < corefs.size(); ++i) {
    if (corefs[i].empty()) {
      out << "\n";
      continue;
    }
    out << "test 0 " << i << " w" << i << " NN * - - - - * " << corefs[i] << "\n";
  }
  out << "#end document\n";
  return out.str();
}

// Independent reading of the coref column: a per-id stack of open tokens.
std::multiset<std::pair<int, MentionSpan>> bracket_oracle(const std::vector<std::string>& corefs) {
  std::multiset<std::pair<int, MentionSpan>> out;
  std::map<int, std::vector<std::size_t>> open;
  std::size_t t = 0;
  for (const std::string& col : corefs) {
    if (col.empty()) continue;
    std::string rest = col;
    for (char& c : rest) {
      if (c == '|') c = ' ';
    }
    std::istringstream parts(rest);
    std::string part;
    while (parts >> part) {
      if (part == "-") continue;
      bool opens = part.front() == '(';
      bool closes = part.back() == ')';
      int id = std::stoi(part.substr(opens ? 1 : 0));
      if (opens && closes) {
        out.insert({id, MentionSpan{t, t}});
      } else if (opens) {
        open[id].push_back(t);
      } else {
        out.insert({id, MentionSpan{open[id].back(), t}});
        open[id].pop_back();
      }
    }
    ++t;
  }
  return out;
}

TEST_CASE("three-token mention") {
  auto docs = parse_conll(conll({"(0", "-", "0)"}));
  REQUIRE(docs.size() == 1);
  REQUIRE(docs[0].gold_clusters.size() == 1);
  CHECK(docs[0].gold_clusters[0].mentions == std::vector<MentionSpan>{{0, 2}});
  CHECK(docs[0].candidate_mentions.size() == 1);
  CHECK(docs[0].candidate_mentions[0].score == 0.0);
}

TEST_CASE("nested opens on one token") {
  auto docs = parse_conll(conll({"-", "(0(1)", "0)"}));
  REQUIRE(docs[0].gold_clusters.size() == 2);
  CHECK(docs[0].gold_clusters[0].entity_id == 0);
  CHECK(docs[0].gold_clusters[0].mentions == std::vector<MentionSpan>{{1, 2}});
  CHECK(docs[0].gold_clusters[1].mentions == std::vector<MentionSpan>{{1, 1}});
}

TEST_CASE("same id nests by most recent open") {
  auto docs = parse_conll(conll({"(0", "(0)", "(0", "0)", "0)"}));
  CHECK(docs[0].gold_clusters[0].mentions ==
        std::vector<MentionSpan>{{0, 4}, {1, 1}, {2, 3}});
}

TEST_CASE("no annotations") {
  auto docs = parse_conll(conll({"-", "-", "-"}));
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].gold_clusters.empty());
  CHECK(docs[0].candidate_mentions.empty());
  CHECK(docs[0].size() == 3);
}

TEST_CASE("doc ids, parts and sentence boundaries") {
  std::string text = conll({"(3)", "-", "", "(3)"}, "#begin document (bc/cctv/00/x); part 002") +
                     conll({"-"}, "#begin document (bc/cctv/00/x); part 003");
  auto docs = parse_conll(text);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].doc_id == "bc/cctv/00/x_2");
  CHECK(docs[1].doc_id == "bc/cctv/00/x_3");
  CHECK(docs[0].sentence_boundaries == std::vector<std::size_t>{0, 2});
  CHECK(docs[0].gold_clusters[0].entity_id == 3);
  CHECK(docs[0].gold_clusters[0].mentions.size() == 2);
}

TEST_CASE("unbalanced bracket reports the opening line") {
  try {
    parse_conll(conll({"-", "(4", "-"}));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::kUnbalancedBracket);
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_conll(conll({"4)"})), ParseError);
}

TEST_CASE("malformed coref column") {
  try {
    parse_conll(conll({"-", "(x)"}));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::kMalformedColumn);
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    parse_conll("#begin document (a); part 000\nonly three cols\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::kMalformedColumn);
  }
}

TEST_CASE("parser agrees with a bracket-counting oracle on random columns") {
  SeededRng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.between(1, 30);
    std::vector<std::vector<std::string>> parts(n);
    std::size_t made = rng.between(0, 12);
    for (std::size_t k = 0; k < made; ++k) {
      int id = static_cast<int>(rng.below(4));
      std::size_t s = rng.below(n);
      std::size_t e = std::min(n - 1, s + rng.below(4));
      if (s == e) {
        parts[s].push_back("(" + std::to_string(id) + ")");
      } else {
        // Opens go after closes on the same token so spans stay well nested.
        parts[s].push_back("(" + std::to_string(id));
        parts[e].insert(parts[e].begin(), std::to_string(id) + ")");
      }
    }
    std::vector<std::string> cols;
    for (auto& p : parts) {
      std::string c;
      for (auto& x : p) c += (c.empty() ? "" : "|") + x;
      cols.push_back(c.empty() ? "-" : c);
    }
    std::multiset<std::pair<int, MentionSpan>> expected = bracket_oracle(cols);
    std::vector<Document> docs;
    try {
      docs = parse_conll(conll(cols));
    } catch (const ParseError& e) {
      // Random spans may coincide; the parser rejects that as invalid.
      CHECK(e.kind() == ParseErrorKind::kInvalidDocument);
      continue;
    }
    std::multiset<std::pair<int, MentionSpan>> got;
    for (const GoldCluster& c : docs[0].gold_clusters) {
      for (const MentionSpan& s : c.mentions) got.insert({c.entity_id, s});
    }
    std::set<std::pair<int, MentionSpan>> dedup(expected.begin(), expected.end());
    CHECK(std::multiset<std::pair<int, MentionSpan>>(dedup.begin(), dedup.end()) == got);
  }
}

TEST_CASE("jsonl minimal document") {
  Document d = parse_jsonl(R"({"doc_id":"d","tokens":["a","b"],"gold_clusters":[[[0,0],[1,1]]]})");
  CHECK(d.doc_id == "d");
  REQUIRE(d.gold_clusters.size() == 1);
  CHECK(d.gold_clusters[0].mentions.size() == 2);
  CHECK(d.candidate_mentions.size() == 2);
}

TEST_CASE("jsonl schema errors name the key") {
  try {
    parse_jsonl(R"({"doc_id":"d","gold_clusters":[]})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::kSchemaError);
    CHECK(e.detail() == "tokens");
  }
  try {
    parse_jsonl(R"({"doc_id":"d","tokens":[],"gold_clusters":[[[0]]]})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.detail() == "gold_clusters");
  }
  CHECK_THROWS_AS(parse_jsonl("{not json"), ParseError);
}

TEST_CASE("jsonl candidate scores are preserved exactly") {
  Document d = parse_jsonl(
      R"({"doc_id":"d","tokens":["a","b"],"gold_clusters":[],"candidate_mentions":[[0,1,2.5]]})");
  REQUIRE(d.candidate_mentions.size() == 1);
  CHECK(d.candidate_mentions[0].score == 2.5);
}

TEST_CASE("jsonl invalid document is rejected") {
  try {
    parse_jsonl(R"({"doc_id":"d","tokens":["a"],"gold_clusters":[[[0,3]]]})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::kInvalidDocument);
  }
}

TEST_CASE("jsonl round trip is the identity") {
  RandomDocumentOptions opts;
  opts.invalid_rate = 0.5;
  for (Document doc : make_random_corpus(11, 100, opts)) {
    if (doc.doc_id == "synth_3") doc.genre = "nw";
    if (doc.doc_id == "synth_4") doc.gold_clusters[0].entity_id = 42;
    doc.candidate_mentions[0].score = 0.1 + 0.2;
    CHECK(parse_jsonl(serialize_jsonl(doc)) == doc);
  }
}

TEST_CASE("jsonl text reports line numbers") {
  std::string text = R"({"doc_id":"a","tokens":[],"gold_clusters":[]})"
                     "\n\n"
                     R"({"doc_id":"b","gold_clusters":[]})";
  try {
    parse_jsonl_text(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("order_mentions") {
  CHECK(order_mentions({{2, 5}, {1, 3}}).mentions == std::vector<MentionSpan>{{1, 3}, {2, 5}});
  CHECK(order_mentions({{1, 4}, {1, 2}}).mentions == std::vector<MentionSpan>{{1, 2}, {1, 4}});
  OrderedMentions dup = order_mentions({{0, 0}, {0, 0}});
  CHECK(dup.mentions == std::vector<MentionSpan>{{0, 0}});
  CHECK(dup.duplicates_removed == 1);
}

TEST_CASE("order_mentions is a sorted permutation of the distinct input") {
  SeededRng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<MentionSpan> spans;
    for (std::size_t k = rng.below(30); k > 0; --k) {
      std::size_t s = rng.below(10);
      spans.push_back({s, s + rng.below(3)});
    }
    OrderedMentions out = order_mentions(spans);
    std::set<MentionSpan> distinct(spans.begin(), spans.end());
    CHECK(out.mentions == std::vector<MentionSpan>(distinct.begin(), distinct.end()));
    CHECK(out.duplicates_removed == spans.size() - distinct.size());
  }
}

TEST_CASE("format names") {
  CHECK(corpus_format_from_name("conll") == CorpusFormat::kConll2012);
  CHECK(corpus_format_from_name("jsonl") == CorpusFormat::kJsonLines);
  CHECK_THROWS_AS(corpus_format_from_name("brat"), ConfigError);
}

}  // namespace
}  // namespace boundcoref
