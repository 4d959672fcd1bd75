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

// Readers for CoNLL-2012 and JSON-lines corpora.
//
// CoNLL: one token per line, whitespace-separated columns, token text in
// column 3 and coreference brackets in the last column. Documents are
// delimited by "#begin document (name); part NNN" / "#end document" and each
// part becomes its own Document with id "name_N".
//
// JSONL: one object per line with keys doc_id, tokens, gold_clusters
// ([[[start,end],...],...]) and optional candidate_mentions
// ([[start,end,score],...]), genre, sentence_boundaries and entity_ids.

#ifndef BOUNDCOREF_INGEST_HPP_
#define BOUNDCOREF_INGEST_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "boundcoref/core.hpp"

namespace boundcoref {

enum class ParseErrorKind {
  kUnbalancedBracket,
  kMalformedColumn,
  kSchemaError,
  kInvalidDocument,
  kIo,
};

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& what,
             const std::string& path = {});

  ParseErrorKind kind() const { return kind_; }
  // 1-based line number; 0 when not tied to a line.
  std::size_t line() const { return line_; }
  // Key or detail the error is about (SchemaError: the offending key).
  const std::string& detail() const { return detail_; }
  const std::string& path() const { return path_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::string detail_;
  std::string path_;
};

std::vector<Document> parse_conll(std::string_view text);

Document parse_jsonl(std::string_view line);
std::string serialize_jsonl(const Document& doc);

// Parses every non-blank line; line numbers in errors are 1-based.
std::vector<Document> parse_jsonl_text(std::string_view text);

struct OrderedMentions {
  std::vector<MentionSpan> mentions;
  std::size_t duplicates_removed = 0;
};

// Sorts by (start, end) and drops exact duplicates.
OrderedMentions order_mentions(std::vector<MentionSpan> spans);

enum class CorpusFormat { kConll2012, kJsonLines };

CorpusFormat corpus_format_from_name(std::string_view name);

struct CorpusSource {
  CorpusFormat format = CorpusFormat::kJsonLines;
  std::vector<std::string> paths;
};

// Reads and validates every path in order. ParseError messages are prefixed
// with "path:line".
std::vector<Document> read_corpus(const CorpusSource& source);

std::string read_file(const std::string& path);

}  // namespace boundcoref

#endif  // BOUNDCOREF_INGEST_HPP_
