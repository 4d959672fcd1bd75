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


#include "boundcoref/scoring.hpp"

#include <cmath>
#include <memory>

#include "boundcoref/engine.hpp"
#include "boundcoref/ingest.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace boundcoref {
namespace {

using testing::make_doc;

EntityCell cell_for(std::size_t id, std::optional<int> entity,
                    std::vector<std::size_t> members) {
  EntityCell c;
  c.cell_id = id;
  c.representation.assign(kRepresentationDim, 0.0);
  c.gold_entity_id = entity;
  c.members = std::move(members);
  c.mention_count = c.members.size();
  return c;
}

Document words(const std::vector<std::string>& tokens) {
  Document doc;
  doc.doc_id = "w";
  doc.tokens = tokens;
  return doc;
}

TEST_CASE("gold scorer signs and remaining counts") {
  // Entity 0 has five mentions, entity 1 has one; (1,1) is not gold.
  Document doc = make_doc(12, {{{0, 0}, {2, 2}, {4, 4}, {6, 6}, {8, 8}}, {{3, 3}}});
  std::vector<MentionSpan> mentions{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {6, 6}, {8, 8}};
  GoldScorer g;
  g.begin_document(doc, mentions);

  MentionContext invalid{doc, mentions, 1};
  CHECK(g.mention_score(invalid) == -1.0);
  CHECK(g.mention_remaining_score(invalid) == 0.0);

  // At the fourth mention of entity 0, three of five are seen before or at
  // it; it and the one after it remain.
  MentionContext fourth{doc, mentions, 5};
  CHECK(g.mention_score(fourth) == 1.0);
  CHECK(g.mention_remaining_score(fourth) == 2.0);
  CHECK(g.entity_hint(fourth) == 0);

  std::vector<EntityCell> cells{cell_for(0, 1, {3}), cell_for(1, 0, {0, 2, 4})};
  std::vector<double> out(2);
  g.coref_scores(fourth, cells, out);
  CHECK(out == std::vector<double>{-1.0, 1.0});
  g.cell_remaining_scores(fourth, cells, out);
  CHECK(out == std::vector<double>{0.0, 2.0});
}

TEST_CASE("string match scorer") {
  Document doc = words({"Obama", "said", "he", "saw", "obama", "the", "dog", "dog"});
  std::vector<MentionSpan> mentions{{0, 0}, {2, 2}, {4, 4}, {5, 6}, {7, 7}};
  StringMatchScorer s;
  s.begin_document(doc, mentions);
  std::vector<EntityCell> cells{cell_for(0, std::nullopt, {0}), cell_for(1, std::nullopt, {1})};
  std::vector<double> out(2);

  MentionContext he{doc, mentions, 1};
  s.coref_scores(he, std::span(cells).first(1), std::span(out).first(1));
  CHECK(out[0] == -1.0);
  CHECK(s.mention_score(he) == 1.0);

  MentionContext second{doc, mentions, 2};
  s.coref_scores(second, cells, out);
  CHECK(out == std::vector<double>{1.0, -1.0});
  CHECK(s.mention_remaining_score(second) == 0.0);

  MentionContext first{doc, mentions, 0};
  CHECK(s.mention_remaining_score(first) == 1.0);

  // Without determiner stripping "the dog" and "dog" differ.
  std::vector<EntityCell> dogs{cell_for(2, std::nullopt, {3})};
  std::vector<double> one(1);
  MentionContext dog{doc, mentions, 4};
  s.coref_scores(dog, dogs, one);
  CHECK(one[0] == -1.0);

  StringMatchScorer strip(StringMatchConfig{true, true});
  strip.begin_document(doc, mentions);
  strip.coref_scores(dog, dogs, one);
  CHECK(one[0] == 1.0);
  CHECK(normalize_mention(doc, {5, 6}, StringMatchConfig{true, true}) == "dog");
  CHECK(normalize_mention(doc, {5, 5}, StringMatchConfig{true, true}) == "the");
}

TEST_CASE("string match cell cache follows growing cells") {
  Document doc = words({"a", "b", "a", "b"});
  std::vector<MentionSpan> mentions{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  StringMatchScorer s;
  s.begin_document(doc, mentions);
  std::vector<EntityCell> cells{cell_for(0, std::nullopt, {0})};
  std::vector<double> out(1);
  s.coref_scores(MentionContext{doc, mentions, 1}, cells, out);
  CHECK(out[0] == -1.0);
  cells[0].members.push_back(1);  // cell now holds "a" and "b"
  s.coref_scores(MentionContext{doc, mentions, 3}, cells, out);
  CHECK(out[0] == 1.0);
  // A reinitialized cell gets a fresh id and starts over.
  cells[0] = cell_for(7, std::nullopt, {2});
  s.coref_scores(MentionContext{doc, mentions, 3}, cells, out);
  CHECK(out[0] == -1.0);
}

TEST_CASE("hashed representation is a deterministic unit vector") {
  std::vector<double> a = hashed_unit_vector("obama");
  CHECK(a == hashed_unit_vector("obama"));
  CHECK(a != hashed_unit_vector("biden"));
  double norm = 0;
  for (double v : a) norm += v * v;
  CHECK(std::abs(norm - 1.0) < 1e-12);
  CHECK(a.size() == kRepresentationDim);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("replay returns recorded values verbatim") {
  auto table = std::make_shared<ReplayTable>(ReplayTable::parse(
      R"({"s_m":0.7,"s_c":[-0.2,1.3],"f_r_cells":[2.1,0.4],"f_r_mention":1.0})"));
  Document doc = words({"x"});
  std::vector<MentionSpan> mentions{{0, 0}};
  ReplayScorer r(table);
  r.begin_document(doc, mentions);
  MentionContext m{doc, mentions, 0};
  std::vector<EntityCell> cells{cell_for(0, std::nullopt, {}), cell_for(1, std::nullopt, {})};
  std::vector<double> out(2);
  CHECK(r.mention_score(m) == 0.7);
  r.coref_scores(m, cells, out);
  CHECK(out == std::vector<double>{-0.2, 1.3});
  r.cell_remaining_scores(m, cells, out);
  CHECK(out == std::vector<double>{2.1, 0.4});
  CHECK(r.mention_remaining_score(m) == 1.0);

  std::vector<EntityCell> three(3, cell_for(0, std::nullopt, {}));
  std::vector<double> out3(3);
  try {
    r.coref_scores(m, three, out3);
    FAIL("expected ScoreShapeMismatch");
  } catch (const ScoreShapeMismatch& e) {
    CHECK(e.mention_index() == 0);
  }
  std::vector<MentionSpan> two{{0, 0}, {0, 0}};
  CHECK_THROWS_AS(r.mention_score(MentionContext{doc, two, 1}), ScoreShapeMismatch);
}

TEST_CASE("replay rows group by document and check spans") {
  ReplayRow row{1.0, {}, {}, 2.0, MentionSpan{3, 4}};
  std::string text = replay_row_jsonl("a", row) + "\n" + replay_row_jsonl("b", row) + "\n";
  auto table = std::make_shared<ReplayTable>(ReplayTable::parse(text));
  CHECK(table->document_count() == 2);
  REQUIRE(table->find("a") != nullptr);
  CHECK((*table->find("a"))[0] == row);
  CHECK(table->find("c") == nullptr);

  Document doc = make_doc(6, {{{3, 4}}}, "a");
  std::vector<MentionSpan> wrong{{0, 0}};
  ReplayScorer r(table);
  r.begin_document(doc, wrong);
  CHECK_THROWS_AS(r.mention_score(MentionContext{doc, wrong, 0}), ScoreShapeMismatch);
  CHECK_THROWS_AS(ReplayTable::parse(R"({"s_m":1})"), ParseError);
}

TEST_CASE("top span proposal") {
  std::vector<ScoredSpan> eight;
  for (std::size_t i = 0; i < 8; ++i) {
    eight.push_back({{i, i}, static_cast<double>(i % 3)});
  }
  // Scores 0,1,2,0,1,2,0,1: the two 2s and the first 1 win.
  CHECK(propose_top_spans(eight, 0.3, 10) ==
        std::vector<MentionSpan>{{1, 1}, {2, 2}, {5, 5}});
  std::vector<ScoredSpan> two{{{0, 0}, 1.0}, {{1, 1}, 2.0}};
  CHECK(propose_top_spans(two, 0.5, 10).size() == 2);
  std::vector<ScoredSpan> ties{{{4, 4}, 1.0}, {{0, 0}, 1.0}, {{2, 2}, 1.0}};
  CHECK(propose_top_spans(ties, 0.2, 10) == std::vector<MentionSpan>{{0, 0}, {2, 2}});
  CHECK_THROWS(propose_top_spans(two, 0.0, 10));
  CHECK_THROWS(propose_top_spans(two, 0.3, 0));
}

TEST_CASE("select mentions orders and thresholds") {
  Document doc = make_doc(10, {{{5, 5}, {1, 1}}, {{3, 4}}});
  CHECK(select_mentions(doc, std::nullopt) == std::vector<MentionSpan>{{1, 1}, {3, 4}, {5, 5}});
  CHECK(select_mentions(doc, 0.1).size() == 1);
}

}  // namespace
}  // namespace boundcoref
