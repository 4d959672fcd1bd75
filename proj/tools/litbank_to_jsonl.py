#!/usr/bin/env python3
# Copyright 2026 The boundcoref Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Convert LitBank coreference TSV files to boundcoref JSONL.

Each input file holds the tokenized text (one sentence per line, tokens
separated by tabs), followed by annotation lines:

  MENTION  <id>  <start sent>  <start tok>  <end sent>  <end tok>  <text> ...
  COREF    <id>  <entity name>

Token offsets are sentence-relative and inclusive. Mentions without a COREF
line become singleton entities.

  litbank_to_jsonl.py litbank/coref/tsv/*.tsv > litbank.jsonl
"""

import json
import os
import sys


def convert(path):
    tokens, sentence_starts, mentions, entity_of = [], [], {}, {}
    with open(path, encoding="utf-8") as f:
        for raw in f:
            line = raw.rstrip("\n")
            fields = line.split("\t")
            if fields[0] == "MENTION" and len(fields) >= 6:
                mentions[fields[1]] = tuple(int(x) for x in fields[2:6])
            elif fields[0] == "COREF" and len(fields) >= 3:
                entity_of[fields[1]] = fields[2]
            elif line.strip() and not mentions and not entity_of:
                sentence_starts.append(len(tokens))
                tokens.extend(t for t in fields if t)

    clusters = {}
    for mention_id, (s_sent, s_tok, e_sent, e_tok) in mentions.items():
        span = [sentence_starts[s_sent] + s_tok, sentence_starts[e_sent] + e_tok]
        entity = entity_of.get(mention_id, "singleton:" + mention_id)
        clusters.setdefault(entity, set()).add(tuple(span))

    ordered = sorted((sorted(spans) for spans in clusters.values()), key=lambda c: c[0])
    return {
        "doc_id": os.path.splitext(os.path.basename(path))[0],
        "tokens": tokens,
        "sentence_boundaries": sentence_starts,
        "gold_clusters": [[list(s) for s in c] for c in ordered],
    }


def main(paths):
    if not paths:
        sys.exit("usage: litbank_to_jsonl.py FILE.tsv... > corpus.jsonl")
    for path in paths:
        sys.stdout.write(json.dumps(convert(path)) + "\n")


if __name__ == "__main__":
    main(sys.argv[1:])
