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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "boundcoref/ingest.hpp"
#include "json.hpp"

namespace boundcoref {

using json = nlohmann::ordered_json;

namespace {

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::uint64_t splitmix64(std::uint64_t* state) {
  std::uint64_t z = (*state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<double> hashed_unit_vector(std::string_view text, std::size_t dim) {
  std::uint64_t state = fnv1a64(text);
  std::vector<double> v(dim);
  double norm = 0.0;
  for (double& x : v) {
    x = static_cast<double>(splitmix64(&state) >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    norm += x * x;
  }
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
  return v;
}

std::vector<double> ScoreProvider::mention_representation(const MentionContext& m) {
  return hashed_unit_vector(lowercase(m.doc.span_text(m.span())));
}

// --- GoldScorer -------------------------------------------------------------

void GoldScorer::begin_document(const Document& doc,
                                std::span<const MentionSpan> mentions) {
  entity_of_.clear();
  positions_.clear();
  for (const GoldCluster& cluster : doc.gold_clusters) {
    for (const MentionSpan& span : cluster.mentions) {
      entity_of_[span] = cluster.entity_id;
    }
  }
  entity_by_index_.assign(mentions.size(), std::nullopt);
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    auto it = entity_of_.find(mentions[i]);
    if (it == entity_of_.end()) continue;
    entity_by_index_[i] = it->second;
    positions_[it->second].push_back(i);
  }
}

std::size_t GoldScorer::remaining_from(int entity, std::size_t index) const {
  auto it = positions_.find(entity);
  if (it == positions_.end()) return 0;
  const auto& pos = it->second;
  return static_cast<std::size_t>(pos.end() -
                                  std::lower_bound(pos.begin(), pos.end(), index));
}

double GoldScorer::mention_score(const MentionContext& m) {
  return entity_by_index_.at(m.index) ? 1.0 : -1.0;
}

void GoldScorer::coref_scores(const MentionContext& m,
                              std::span<const EntityCell> cells,
                              std::span<double> out) {
  const std::optional<int> entity = entity_by_index_.at(m.index);
  for (std::size_t j = 0; j < cells.size(); ++j) {
    out[j] = entity && cells[j].gold_entity_id == entity ? 1.0 : -1.0;
  }
}

void GoldScorer::cell_remaining_scores(const MentionContext& m,
                                       std::span<const EntityCell> cells,
                                       std::span<double> out) {
  for (std::size_t j = 0; j < cells.size(); ++j) {
    out[j] = cells[j].gold_entity_id
                 ? static_cast<double>(remaining_from(*cells[j].gold_entity_id, m.index))
                 : 0.0;
  }
}

double GoldScorer::mention_remaining_score(const MentionContext& m) {
  const std::optional<int> entity = entity_by_index_.at(m.index);
  return entity ? static_cast<double>(remaining_from(*entity, m.index)) : 0.0;
}

std::optional<int> GoldScorer::entity_hint(const MentionContext& m) {
  return entity_by_index_.at(m.index);
}

// --- StringMatchScorer ------------------------------------------------------

std::string normalize_mention(const Document& doc, const MentionSpan& span,
                              const StringMatchConfig& config) {
  std::size_t start = span.start;
  if (config.strip_determiners && span.end > span.start) {
    std::string first = lowercase(doc.tokens[span.start]);
    if (first == "the" || first == "a" || first == "an") ++start;
  }
  std::string text = doc.span_text(MentionSpan{start, span.end});
  return config.lowercase ? lowercase(std::move(text)) : text;
}

void StringMatchScorer::begin_document(const Document& doc,
                                       std::span<const MentionSpan> mentions) {
  strings_.clear();
  positions_.clear();
  cell_keys_.clear();
  string_id_.assign(mentions.size(), 0);
  std::unordered_map<std::string, std::size_t> ids;
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    std::string s = normalize_mention(doc, mentions[i], config_);
    auto [it, inserted] = ids.try_emplace(s, strings_.size());
    if (inserted) {
      strings_.push_back(std::move(s));
      positions_.emplace_back();
    }
    string_id_[i] = it->second;
    positions_[it->second].push_back(i);
  }
}

const std::vector<std::size_t>& StringMatchScorer::keys_of(const EntityCell& cell) {
  CellKeys& keys = cell_keys_[cell.cell_id];
  for (; keys.seen < cell.members.size(); ++keys.seen) {
    std::size_t id = string_id_.at(cell.members[keys.seen]);
    if (std::find(keys.string_ids.begin(), keys.string_ids.end(), id) ==
        keys.string_ids.end()) {
      keys.string_ids.push_back(id);
    }
  }
  return keys.string_ids;
}

std::size_t StringMatchScorer::later_occurrences(std::size_t string_id,
                                                 std::size_t index) const {
  const auto& pos = positions_[string_id];
  return static_cast<std::size_t>(pos.end() -
                                  std::upper_bound(pos.begin(), pos.end(), index));
}

double StringMatchScorer::mention_score(const MentionContext&) { return 1.0; }

void StringMatchScorer::coref_scores(const MentionContext& m,
                                     std::span<const EntityCell> cells,
                                     std::span<double> out) {
  const std::size_t id = string_id_.at(m.index);
  for (std::size_t j = 0; j < cells.size(); ++j) {
    const auto& keys = keys_of(cells[j]);
    out[j] = std::find(keys.begin(), keys.end(), id) != keys.end() ? 1.0 : -1.0;
  }
}

void StringMatchScorer::cell_remaining_scores(const MentionContext& m,
                                              std::span<const EntityCell> cells,
                                              std::span<double> out) {
  for (std::size_t j = 0; j < cells.size(); ++j) {
    std::size_t total = 0;
    for (std::size_t id : keys_of(cells[j])) total += later_occurrences(id, m.index);
    out[j] = static_cast<double>(total);
  }
}

double StringMatchScorer::mention_remaining_score(const MentionContext& m) {
  return static_cast<double>(later_occurrences(string_id_.at(m.index), m.index));
}

std::vector<double> StringMatchScorer::mention_representation(const MentionContext& m) {
  return hashed_unit_vector(strings_[string_id_.at(m.index)]);
}

// --- Replay -----------------------------------------------------------------

ScoreShapeMismatch::ScoreShapeMismatch(std::size_t mention_index,
                                       const std::string& what)
    : Error("score shape mismatch at mention " + std::to_string(mention_index) +
            ": " + what),
      mention_index_(mention_index) {}

namespace {

std::vector<double> read_reals(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ParseError(ParseErrorKind::kSchemaError, 0, key);
  }
  std::vector<double> out;
  for (const json& x : j[key]) {
    if (!x.is_number()) throw ParseError(ParseErrorKind::kSchemaError, 0, key);
    out.push_back(x.get<double>());
  }
  return out;
}

double read_real(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ParseError(ParseErrorKind::kSchemaError, 0, key);
  }
  return j[key].get<double>();
}

}  // namespace

ReplayTable ReplayTable::parse(std::string_view jsonl) {
  ReplayTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t nl = jsonl.find('\n', pos);
    if (nl == std::string_view::npos) nl = jsonl.size();
    std::string_view line = jsonl.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      json j = json::parse(line);
      ReplayRow row;
      row.s_m = read_real(j, "s_m");
      row.s_c = read_reals(j, "s_c");
      row.f_r_cells = read_reals(j, "f_r_cells");
      row.f_r_mention = read_real(j, "f_r_mention");
      if (j.contains("mention")) {
        const json& m = j["mention"];
        if (!m.is_array() || m.size() != 2 || !m[0].is_number_unsigned() ||
            !m[1].is_number_unsigned()) {
          throw ParseError(ParseErrorKind::kSchemaError, 0, "mention");
        }
        row.mention = MentionSpan{m[0].get<std::size_t>(), m[1].get<std::size_t>()};
      }
      std::string doc_id;
      if (j.contains("doc_id")) {
        if (!j["doc_id"].is_string()) throw ParseError(ParseErrorKind::kSchemaError, 0, "doc_id");
        doc_id = j["doc_id"].get<std::string>();
      }
      table.rows_[doc_id].push_back(std::move(row));
    } catch (const json::exception& e) {
      throw ParseError(ParseErrorKind::kSchemaError, line_no,
                       std::string("invalid JSON: ") + e.what());
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), line_no, e.detail());
    }
  }
  return table;
}

ReplayTable ReplayTable::load(const std::string& path) {
  try {
    return parse(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), e.line(), e.detail(), path);
  }
}

void ReplayTable::add(const std::string& doc_id, std::vector<ReplayRow> rows) {
  auto& dest = rows_[doc_id];
  dest.insert(dest.end(), std::make_move_iterator(rows.begin()),
              std::make_move_iterator(rows.end()));
}

const std::vector<ReplayRow>* ReplayTable::find(const std::string& doc_id) const {
  auto it = rows_.find(doc_id);
  if (it == rows_.end()) it = rows_.find("");
  return it == rows_.end() ? nullptr : &it->second;
}

std::string replay_row_jsonl(const std::string& doc_id, const ReplayRow& row) {
  json j;
  j["doc_id"] = doc_id;
  if (row.mention) j["mention"] = {row.mention->start, row.mention->end};
  j["s_m"] = row.s_m;
  j["s_c"] = row.s_c;
  j["f_r_cells"] = row.f_r_cells;
  j["f_r_mention"] = row.f_r_mention;
  return j.dump();
}

void ReplayScorer::begin_document(const Document& doc,
                                  std::span<const MentionSpan>) {
  rows_ = table_->find(doc.doc_id);
}

const ReplayRow& ReplayScorer::row(const MentionContext& m) const {
  if (rows_ == nullptr) {
    throw ScoreShapeMismatch(m.index, "no recorded scores for document " + m.doc.doc_id);
  }
  if (m.index >= rows_->size()) {
    throw ScoreShapeMismatch(m.index, "recording has only " +
                                          std::to_string(rows_->size()) + " mentions");
  }
  const ReplayRow& r = (*rows_)[m.index];
  if (r.mention && *r.mention != m.span()) {
    throw ScoreShapeMismatch(m.index, "recorded span " + to_string(*r.mention) +
                                          " but engine is at " + to_string(m.span()));
  }
  return r;
}

double ReplayScorer::mention_score(const MentionContext& m) { return row(m).s_m; }

void ReplayScorer::coref_scores(const MentionContext& m,
                                std::span<const EntityCell> cells,
                                std::span<double> out) {
  const ReplayRow& r = row(m);
  if (r.s_c.size() != cells.size()) {
    throw ScoreShapeMismatch(m.index, "asked for " + std::to_string(cells.size()) +
                                          " coreference scores, recording has " +
                                          std::to_string(r.s_c.size()));
  }
  std::copy(r.s_c.begin(), r.s_c.end(), out.begin());
}

void ReplayScorer::cell_remaining_scores(const MentionContext& m,
                                         std::span<const EntityCell> cells,
                                         std::span<double> out) {
  const ReplayRow& r = row(m);
  if (r.f_r_cells.size() != cells.size()) {
    throw ScoreShapeMismatch(m.index, "asked for " + std::to_string(cells.size()) +
                                          " remaining scores, recording has " +
                                          std::to_string(r.f_r_cells.size()));
  }
  std::copy(r.f_r_cells.begin(), r.f_r_cells.end(), out.begin());
}

double ReplayScorer::mention_remaining_score(const MentionContext& m) {
  return row(m).f_r_mention;
}

void RecordingScorer::begin_document(const Document& doc,
                                     std::span<const MentionSpan> mentions) {
  rows_.clear();
  rows_.reserve(mentions.size());
  inner_.begin_document(doc, mentions);
}

double RecordingScorer::mention_score(const MentionContext& m) {
  return inner_.mention_score(m);
}

void RecordingScorer::coref_scores(const MentionContext& m,
                                   std::span<const EntityCell> cells,
                                   std::span<double> out) {
  inner_.coref_scores(m, cells, out);
  ReplayRow row;
  row.mention = m.span();
  row.s_m = inner_.mention_score(m);
  row.s_c.assign(out.begin(), out.end());
  row.f_r_cells.resize(cells.size());
  inner_.cell_remaining_scores(m, cells, row.f_r_cells);
  row.f_r_mention = inner_.mention_remaining_score(m);
  rows_.push_back(std::move(row));
}

void RecordingScorer::cell_remaining_scores(const MentionContext& m,
                                            std::span<const EntityCell> cells,
                                            std::span<double> out) {
  inner_.cell_remaining_scores(m, cells, out);
}

double RecordingScorer::mention_remaining_score(const MentionContext& m) {
  return inner_.mention_remaining_score(m);
}

std::vector<double> RecordingScorer::mention_representation(const MentionContext& m) {
  return inner_.mention_representation(m);
}

std::optional<int> RecordingScorer::entity_hint(const MentionContext& m) {
  return inner_.entity_hint(m);
}

// --- Mention proposal -------------------------------------------------------

std::vector<MentionSpan> propose_top_spans(std::span<const ScoredSpan> candidates,
                                           double ratio, std::size_t doc_len) {
  if (!(ratio > 0.0)) throw std::invalid_argument("ratio must be positive");
  if (doc_len == 0) throw std::invalid_argument("document length must be positive");
  // The epsilon absorbs representation error such as 0.3 * 10 = 2.9999...
  const auto budget = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(doc_len) + 1e-9));

  std::vector<ScoredSpan> ordered(candidates.begin(), candidates.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const ScoredSpan& a, const ScoredSpan& b) { return a.span < b.span; });
  ordered.erase(std::unique(ordered.begin(), ordered.end(),
                            [](const ScoredSpan& a, const ScoredSpan& b) {
                              return a.span == b.span;
                            }),
                ordered.end());

  std::vector<std::size_t> idx(ordered.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return ordered[a].score > ordered[b].score;
  });
  if (idx.size() > budget) idx.resize(budget);
  std::sort(idx.begin(), idx.end());

  std::vector<MentionSpan> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(ordered[i].span);
  return out;
}

std::vector<MentionSpan> select_mentions(const Document& doc,
                                         std::optional<double> top_ratio) {
  if (top_ratio) {
    return propose_top_spans(doc.candidate_mentions, *top_ratio,
                             std::max<std::size_t>(doc.size(), 1));
  }
  std::vector<MentionSpan> spans;
  spans.reserve(doc.candidate_mentions.size());
  for (const ScoredSpan& c : doc.candidate_mentions) spans.push_back(c.span);
  return order_mentions(std::move(spans)).mentions;
}

}  // namespace boundcoref
