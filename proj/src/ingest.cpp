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

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace boundcoref {

using json = nlohmann::ordered_json;

namespace {

std::string locate(std::size_t line, const std::string& what,
                   const std::string& path) {
  std::string where = path;
  if (line > 0) where += (path.empty() ? "line " : ":") + std::to_string(line);
  return where.empty() ? what : where + ": " + what;
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t line,
                       const std::string& what, const std::string& path)
    : Error(locate(line, what, path)),
      kind_(kind),
      line_(line),
      detail_(what),
      path_(path) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_columns(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) cols.push_back(line.substr(i, j - i));
    i = j;
  }
  return cols;
}

// "#begin document (bc/cctv/00/cctv_0001); part 002" -> "bc/cctv/00/cctv_0001_2"
std::string conll_doc_id(std::string_view header) {
  std::string_view rest = trim(header.substr(std::string_view("#begin document").size()));
  std::string name;
  std::size_t open = rest.find('(');
  std::size_t close = rest.find(')', open == std::string_view::npos ? 0 : open);
  if (open != std::string_view::npos && close != std::string_view::npos) {
    name = std::string(rest.substr(open + 1, close - open - 1));
    rest = rest.substr(close + 1);
  } else {
    std::size_t semi = rest.find(';');
    name = std::string(trim(rest.substr(0, semi)));
    rest = semi == std::string_view::npos ? std::string_view() : rest.substr(semi);
  }
  std::size_t part = rest.find("part");
  if (part != std::string_view::npos) {
    std::string_view digits = trim(rest.substr(part + 4));
    std::size_t n = 0;
    while (n < digits.size() && std::isdigit(static_cast<unsigned char>(digits[n]))) ++n;
    if (n > 0) name += "_" + std::to_string(std::stoul(std::string(digits.substr(0, n))));
  }
  return name;
}

struct OpenMention {
  std::size_t token;
  std::size_t line;
};

class ConllDocumentBuilder {
 public:
  explicit ConllDocumentBuilder(std::string doc_id) { doc_.doc_id = std::move(doc_id); }

  void sentence_break() { new_sentence_ = true; }

  void add_token(std::string_view word, std::string_view coref, std::size_t line) {
    const std::size_t t = doc_.tokens.size();
    if (new_sentence_ || t == 0) {
      doc_.sentence_boundaries.push_back(t);
      new_sentence_ = false;
    }
    doc_.tokens.emplace_back(word);
    scan_coref(coref, t, line);
  }

  Document finish(std::size_t line) {
    for (const auto& [id, stack] : open_) {
      if (!stack.empty()) {
        throw ParseError(ParseErrorKind::kUnbalancedBracket, stack.back().line,
                         "mention of entity " + std::to_string(id) +
                             " opened but never closed");
      }
    }
    for (auto& [id, spans] : mentions_) {
      std::sort(spans.begin(), spans.end());
      spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
      doc_.gold_clusters.push_back(GoldCluster{id, std::move(spans)});
    }
    for (const GoldCluster& cluster : doc_.gold_clusters) {
      for (const MentionSpan& span : cluster.mentions) {
        doc_.candidate_mentions.push_back(ScoredSpan{span, 0.0});
      }
    }
    std::sort(doc_.candidate_mentions.begin(), doc_.candidate_mentions.end(),
              [](const ScoredSpan& a, const ScoredSpan& b) { return a.span < b.span; });
    auto violations = validate_document(doc_);
    if (!violations.empty()) {
      throw ParseError(ParseErrorKind::kInvalidDocument, line,
                       "document " + doc_.doc_id + ": " + violations.front());
    }
    return std::move(doc_);
  }

 private:
  int read_id(std::string_view coref, std::size_t* i, std::size_t line) {
    std::size_t j = *i;
    while (j < coref.size() && std::isdigit(static_cast<unsigned char>(coref[j]))) ++j;
    if (j == *i || j - *i > 9) {
      throw ParseError(ParseErrorKind::kMalformedColumn, line,
                       "bad coreference column '" + std::string(coref) + "'");
    }
    int id = std::stoi(std::string(coref.substr(*i, j - *i)));
    *i = j;
    return id;
  }

  void scan_coref(std::string_view coref, std::size_t t, std::size_t line) {
    std::size_t i = 0;
    while (i < coref.size()) {
      char c = coref[i];
      if (c == '-' || c == '|') {
        ++i;
      } else if (c == '(') {
        ++i;
        int id = read_id(coref, &i, line);
        if (i < coref.size() && coref[i] == ')') {
          ++i;
          mentions_[id].push_back(MentionSpan{t, t});
        } else {
          open_[id].push_back(OpenMention{t, line});
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        int id = read_id(coref, &i, line);
        if (i >= coref.size() || coref[i] != ')') {
          throw ParseError(ParseErrorKind::kMalformedColumn, line,
                           "bad coreference column '" + std::string(coref) + "'");
        }
        ++i;
        auto& stack = open_[id];
        if (stack.empty()) {
          throw ParseError(ParseErrorKind::kUnbalancedBracket, line,
                           "close of entity " + std::to_string(id) +
                               " without a matching open");
        }
        mentions_[id].push_back(MentionSpan{stack.back().token, t});
        stack.pop_back();
      } else {
        throw ParseError(ParseErrorKind::kMalformedColumn, line,
                         "bad coreference column '" + std::string(coref) + "'");
      }
    }
  }

  Document doc_;
  bool new_sentence_ = true;
  std::map<int, std::vector<OpenMention>> open_;
  std::map<int, std::vector<MentionSpan>> mentions_;
};

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

[[noreturn]] void schema_error(const std::string& key) {
  throw ParseError(ParseErrorKind::kSchemaError, 0, key);
}

std::size_t read_index(const json& value, const std::string& key) {
  if (!value.is_number_integer() || value.get<long long>() < 0) schema_error(key);
  return value.get<std::size_t>();
}

MentionSpan read_span(const json& value, const std::string& key, std::size_t arity) {
  if (!value.is_array() || value.size() != arity) schema_error(key);
  return MentionSpan{read_index(value[0], key), read_index(value[1], key)};
}

}  // namespace

std::vector<Document> parse_conll(std::string_view text) {
  std::vector<Document> docs;
  std::optional<ConllDocumentBuilder> current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (starts_with(line, "#begin document")) {
      if (current) docs.push_back(current->finish(line_no));
      current.emplace(conll_doc_id(line));
      continue;
    }
    if (starts_with(line, "#end document")) {
      if (current) {
        docs.push_back(current->finish(line_no));
        current.reset();
      }
      continue;
    }
    if (starts_with(line, "#")) continue;
    std::string_view content = trim(line);
    if (!current) continue;
    if (content.empty()) {
      current->sentence_break();
      continue;
    }
    auto cols = split_columns(content);
    if (cols.size() < 5) {
      throw ParseError(ParseErrorKind::kMalformedColumn, line_no,
                       "expected at least 5 columns, found " +
                           std::to_string(cols.size()));
    }
    current->add_token(cols[3], cols.back(), line_no);
  }
  if (current) docs.push_back(current->finish(line_no));
  return docs;
}

Document parse_jsonl(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(ParseErrorKind::kSchemaError, 0,
                     std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) schema_error("<object>");

  Document doc;
  if (!j.contains("doc_id") || !j["doc_id"].is_string()) schema_error("doc_id");
  doc.doc_id = j["doc_id"].get<std::string>();

  if (!j.contains("tokens") || !j["tokens"].is_array()) schema_error("tokens");
  for (const json& token : j["tokens"]) {
    if (!token.is_string()) schema_error("tokens");
    doc.tokens.push_back(token.get<std::string>());
  }

  if (!j.contains("gold_clusters") || !j["gold_clusters"].is_array()) {
    schema_error("gold_clusters");
  }
  std::vector<int> ids;
  if (j.contains("entity_ids")) {
    const json& e = j["entity_ids"];
    if (!e.is_array() || e.size() != j["gold_clusters"].size()) schema_error("entity_ids");
    for (const json& id : e) {
      if (!id.is_number_integer()) schema_error("entity_ids");
      ids.push_back(id.get<int>());
    }
  }
  int next_id = 0;
  for (const json& cluster : j["gold_clusters"]) {
    if (!cluster.is_array()) schema_error("gold_clusters");
    GoldCluster gc;
    gc.entity_id = ids.empty() ? next_id : ids[next_id];
    ++next_id;
    for (const json& span : cluster) {
      gc.mentions.push_back(read_span(span, "gold_clusters", 2));
    }
    doc.gold_clusters.push_back(std::move(gc));
  }

  if (j.contains("candidate_mentions")) {
    const json& cands = j["candidate_mentions"];
    if (!cands.is_array()) schema_error("candidate_mentions");
    for (const json& c : cands) {
      MentionSpan span = read_span(c, "candidate_mentions", 3);
      if (!c[2].is_number()) schema_error("candidate_mentions");
      doc.candidate_mentions.push_back(ScoredSpan{span, c[2].get<double>()});
    }
  } else {
    for (const MentionSpan& span : gold_mentions(doc)) {
      doc.candidate_mentions.push_back(ScoredSpan{span, 0.0});
    }
    std::sort(doc.candidate_mentions.begin(), doc.candidate_mentions.end(),
              [](const ScoredSpan& a, const ScoredSpan& b) { return a.span < b.span; });
  }

  if (j.contains("genre")) {
    if (!j["genre"].is_string()) schema_error("genre");
    doc.genre = j["genre"].get<std::string>();
  }
  if (j.contains("sentence_boundaries")) {
    const json& sb = j["sentence_boundaries"];
    if (!sb.is_array()) schema_error("sentence_boundaries");
    for (const json& b : sb) doc.sentence_boundaries.push_back(read_index(b, "sentence_boundaries"));
  }

  auto violations = validate_document(doc);
  if (!violations.empty()) {
    throw ParseError(ParseErrorKind::kInvalidDocument, 0,
                     "document " + doc.doc_id + ": " + violations.front());
  }
  return doc;
}

std::string serialize_jsonl(const Document& doc) {
  json j;
  j["doc_id"] = doc.doc_id;
  j["tokens"] = doc.tokens;
  json clusters = json::array();
  json ids = json::array();
  bool sequential_ids = true;
  for (std::size_t c = 0; c < doc.gold_clusters.size(); ++c) {
    const GoldCluster& gc = doc.gold_clusters[c];
    json cluster = json::array();
    for (const MentionSpan& span : gc.mentions) cluster.push_back({span.start, span.end});
    clusters.push_back(std::move(cluster));
    ids.push_back(gc.entity_id);
    if (gc.entity_id != static_cast<int>(c)) sequential_ids = false;
  }
  j["gold_clusters"] = std::move(clusters);
  if (!sequential_ids) j["entity_ids"] = std::move(ids);
  json cands = json::array();
  for (const ScoredSpan& c : doc.candidate_mentions) {
    cands.push_back({c.span.start, c.span.end, c.score});
  }
  j["candidate_mentions"] = std::move(cands);
  if (doc.genre) j["genre"] = *doc.genre;
  if (!doc.sentence_boundaries.empty()) j["sentence_boundaries"] = doc.sentence_boundaries;
  return j.dump();
}

std::vector<Document> parse_jsonl_text(std::string_view text) {
  std::vector<Document> docs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      docs.push_back(parse_jsonl(line));
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), line_no, e.detail());
    }
  }
  return docs;
}

OrderedMentions order_mentions(std::vector<MentionSpan> spans) {
  OrderedMentions out;
  std::stable_sort(spans.begin(), spans.end());
  auto last = std::unique(spans.begin(), spans.end());
  out.duplicates_removed = static_cast<std::size_t>(spans.end() - last);
  spans.erase(last, spans.end());
  out.mentions = std::move(spans);
  return out;
}

CorpusFormat corpus_format_from_name(std::string_view name) {
  if (name == "conll" || name == "conll2012") return CorpusFormat::kConll2012;
  if (name == "jsonl" || name == "jsonlines") return CorpusFormat::kJsonLines;
  throw ConfigError("unknown format: " + std::string(name));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(ParseErrorKind::kIo, 0, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Document> read_corpus(const CorpusSource& source) {
  std::vector<Document> docs;
  for (const std::string& path : source.paths) {
    std::string text = read_file(path);
    try {
      auto parsed = source.format == CorpusFormat::kConll2012 ? parse_conll(text)
                                                              : parse_jsonl_text(text);
      for (Document& d : parsed) docs.push_back(std::move(d));
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.line(), e.detail(), path);
    }
  }
  return docs;
}

}  // namespace boundcoref
