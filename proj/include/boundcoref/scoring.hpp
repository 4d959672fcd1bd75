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

// Score providers drive the clustering engine. A provider supplies, for the
// mention being processed:
//
//   mention score          s_m(x)      > 0 means "this span is a mention"
//   coreference scores     s_c(x, e_j) one per tracked cell, already
//                                      including the s_m(x) term
//   remaining scores       f_r(e_j), f_r(x)
//                                      anticipated number of mentions still
//                                      to come for a cell or for x's entity
//
// Three providers ship here: a gold oracle, an exact string matcher, and a
// replay provider reading recorded scores from JSONL.

#ifndef BOUNDCOREF_SCORING_HPP_
#define BOUNDCOREF_SCORING_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "boundcoref/core.hpp"

namespace boundcoref {

inline constexpr std::size_t kRepresentationDim = 16;

// One tracked entity.
struct EntityCell {
  std::size_t cell_id = 0;
  std::vector<double> representation;
  std::size_t mention_count = 1;
  // Processing index of the most recent mention that entered the cell.
  std::size_t last_use_ordinal = 0;
  std::optional<int> gold_entity_id;
  // Processing indices of mentions assigned since the cell was (re)initialized.
  std::vector<std::size_t> members;
};

// The mention being scored, within its document's processing order.
struct MentionContext {
  const Document& doc;
  std::span<const MentionSpan> mentions;
  std::size_t index;

  const MentionSpan& span() const { return mentions[index]; }
};

class ScoreProvider {
 public:
  virtual ~ScoreProvider() = default;

  // Called once before the first mention of a run.
  virtual void begin_document(const Document& doc,
                              std::span<const MentionSpan> mentions) {
    (void)doc;
    (void)mentions;
  }

  virtual double mention_score(const MentionContext& m) = 0;
  // Writes s_c(x, cells[j]) into out[j]; out.size() == cells.size().
  virtual void coref_scores(const MentionContext& m,
                            std::span<const EntityCell> cells,
                            std::span<double> out) = 0;
  virtual void cell_remaining_scores(const MentionContext& m,
                                     std::span<const EntityCell> cells,
                                     std::span<double> out) = 0;
  virtual double mention_remaining_score(const MentionContext& m) = 0;

  // Vector folded into a cell's representation; defaults to
  // hashed_unit_vector of the lowercased span text.
  virtual std::vector<double> mention_representation(const MentionContext& m);

  // Gold entity to bind a newly created cell to, if the provider knows it.
  virtual std::optional<int> entity_hint(const MentionContext& m) {
    (void)m;
    return std::nullopt;
  }
};

// Deterministic pseudo-random unit vector derived from a 64-bit FNV-1a hash
// of `text`.
std::vector<double> hashed_unit_vector(std::string_view text,
                                       std::size_t dim = kRepresentationDim);

std::uint64_t fnv1a64(std::string_view text,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);

// Scores +1/-1 from gold annotations:
//   s_m = +1 iff the span is a gold mention;
//   s_c = +1 iff the cell is bound to the span's gold entity;
//   f_r(cell) = mentions of the cell's entity at or after the current index;
//   f_r(x) = mentions of ENT(x) at or after the current index, counting x;
//            0 for a non-gold span.
class GoldScorer : public ScoreProvider {
 public:
  void begin_document(const Document& doc,
                      std::span<const MentionSpan> mentions) override;
  double mention_score(const MentionContext& m) override;
  void coref_scores(const MentionContext& m, std::span<const EntityCell> cells,
                    std::span<double> out) override;
  void cell_remaining_scores(const MentionContext& m,
                             std::span<const EntityCell> cells,
                             std::span<double> out) override;
  double mention_remaining_score(const MentionContext& m) override;
  std::optional<int> entity_hint(const MentionContext& m) override;

 private:
  std::size_t remaining_from(int entity, std::size_t index) const;

  std::map<MentionSpan, int> entity_of_;
  // Processing indices of each entity's mentions, ascending.
  std::unordered_map<int, std::vector<std::size_t>> positions_;
  std::vector<std::optional<int>> entity_by_index_;
};

struct StringMatchConfig {
  bool lowercase = true;
  bool strip_determiners = false;
};

// Normalized surface form used for string matching.
std::string normalize_mention(const Document& doc, const MentionSpan& span,
                              const StringMatchConfig& config);

// Exact string matching:
//   s_m = +1 for every candidate;
//   s_c = +1 iff the span's normalized string equals that of some mention
//         already in the cell;
//   f_r = number of later candidates sharing the normalized string(s).
class StringMatchScorer : public ScoreProvider {
 public:
  explicit StringMatchScorer(StringMatchConfig config = {}) : config_(config) {}

  void begin_document(const Document& doc,
                      std::span<const MentionSpan> mentions) override;
  double mention_score(const MentionContext& m) override;
  void coref_scores(const MentionContext& m, std::span<const EntityCell> cells,
                    std::span<double> out) override;
  void cell_remaining_scores(const MentionContext& m,
                             std::span<const EntityCell> cells,
                             std::span<double> out) override;
  double mention_remaining_score(const MentionContext& m) override;
  std::vector<double> mention_representation(const MentionContext& m) override;

 private:
  struct CellKeys {
    std::size_t seen = 0;
    std::vector<std::size_t> string_ids;
  };

  const std::vector<std::size_t>& keys_of(const EntityCell& cell);
  std::size_t later_occurrences(std::size_t string_id, std::size_t index) const;

  StringMatchConfig config_;
  std::vector<std::string> strings_;
  std::vector<std::size_t> string_id_;  // per processing index
  std::vector<std::vector<std::size_t>> positions_;  // per string id
  std::unordered_map<std::size_t, CellKeys> cell_keys_;
};

// One recorded mention step.
struct ReplayRow {
  double s_m = 0.0;
  std::vector<double> s_c;
  std::vector<double> f_r_cells;
  double f_r_mention = 0.0;
  std::optional<MentionSpan> mention;

  friend bool operator==(const ReplayRow&, const ReplayRow&) = default;
};

class ScoreShapeMismatch : public Error {
 public:
  ScoreShapeMismatch(std::size_t mention_index, const std::string& what);
  std::size_t mention_index() const { return mention_index_; }

 private:
  std::size_t mention_index_;
};

// Rows grouped by doc_id, in file order. Rows without a doc_id go under "".
class ReplayTable {
 public:
  static ReplayTable parse(std::string_view jsonl);
  static ReplayTable load(const std::string& path);

  void add(const std::string& doc_id, std::vector<ReplayRow> rows);
  // Rows for doc_id, falling back to the "" group; nullptr when absent.
  const std::vector<ReplayRow>* find(const std::string& doc_id) const;
  std::size_t document_count() const { return rows_.size(); }

 private:
  std::map<std::string, std::vector<ReplayRow>> rows_;
};

// {"doc_id":..,"mention":[s,e],"s_m":..,"s_c":[..],"f_r_cells":[..],"f_r_mention":..}
std::string replay_row_jsonl(const std::string& doc_id, const ReplayRow& row);

// Returns recorded values verbatim; throws ScoreShapeMismatch when the
// engine asks for a mention or cell count the recording does not contain.
class ReplayScorer : public ScoreProvider {
 public:
  explicit ReplayScorer(std::shared_ptr<const ReplayTable> table)
      : table_(std::move(table)) {}

  void begin_document(const Document& doc,
                      std::span<const MentionSpan> mentions) override;
  double mention_score(const MentionContext& m) override;
  void coref_scores(const MentionContext& m, std::span<const EntityCell> cells,
                    std::span<double> out) override;
  void cell_remaining_scores(const MentionContext& m,
                             std::span<const EntityCell> cells,
                             std::span<double> out) override;
  double mention_remaining_score(const MentionContext& m) override;

 private:
  const ReplayRow& row(const MentionContext& m) const;

  std::shared_ptr<const ReplayTable> table_;
  const std::vector<ReplayRow>* rows_ = nullptr;
};

// Forwards to an inner provider and records one complete ReplayRow per
// mention. The engine queries coreference scores for every mention, which is
// when the row is captured.
class RecordingScorer : public ScoreProvider {
 public:
  explicit RecordingScorer(ScoreProvider& inner) : inner_(inner) {}

  void begin_document(const Document& doc,
                      std::span<const MentionSpan> mentions) override;
  double mention_score(const MentionContext& m) override;
  void coref_scores(const MentionContext& m, std::span<const EntityCell> cells,
                    std::span<double> out) override;
  void cell_remaining_scores(const MentionContext& m,
                             std::span<const EntityCell> cells,
                             std::span<double> out) override;
  double mention_remaining_score(const MentionContext& m) override;
  std::vector<double> mention_representation(const MentionContext& m) override;
  std::optional<int> entity_hint(const MentionContext& m) override;

  const std::vector<ReplayRow>& rows() const { return rows_; }

 private:
  ScoreProvider& inner_;
  std::vector<ReplayRow> rows_;
};

// Keeps the floor(ratio * doc_len) highest-scoring candidates (all of them
// if there are fewer), breaking score ties by processing order, and returns
// them in processing order. Throws std::invalid_argument if ratio <= 0 or
// doc_len == 0.
std::vector<MentionSpan> propose_top_spans(std::span<const ScoredSpan> candidates,
                                           double ratio, std::size_t doc_len);

// Candidate mentions in processing order, optionally thresholded.
std::vector<MentionSpan> select_mentions(const Document& doc,
                                         std::optional<double> top_ratio);

}  // namespace boundcoref

#endif  // BOUNDCOREF_SCORING_HPP_
