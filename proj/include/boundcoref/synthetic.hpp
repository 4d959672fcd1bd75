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

// Seeded synthetic documents for tests and benchmarks. Generation only uses
// std::mt19937_64 output bits (no std distributions), so a seed produces the
// same corpus on every platform.

#ifndef BOUNDCOREF_SYNTHETIC_HPP_
#define BOUNDCOREF_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "boundcoref/core.hpp"

namespace boundcoref {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform-ish integer in [0, n); n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  // Integer in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  // Real in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct RandomDocumentOptions {
  std::size_t max_tokens = 64;
  std::size_t max_entities = 8;
  std::size_t max_mentions = 20;
  std::size_t max_span_length = 3;
  // Guarantee at least one entity with two or more mentions.
  bool require_link = true;
  // Expected number of extra non-gold candidate spans per gold mention.
  double invalid_rate = 0.0;
};

Document make_random_document(SeededRng& rng, const RandomDocumentOptions& options,
                              const std::string& doc_id);

std::vector<Document> make_random_corpus(std::uint64_t seed, std::size_t count,
                                         const RandomDocumentOptions& options = {});

struct LongDocumentOptions {
  std::size_t mentions = 1000;
  // Entities alive at once; each lives for a local window of the text.
  std::size_t concurrent_entities = 40;
  // Mean mentions per entity.
  std::size_t mean_entity_mentions = 8;
  std::size_t filler_tokens = 2;
};

// One long document whose gold mentions are single-token entity names, with
// entities born and retired as the text advances.
Document make_long_document(std::uint64_t seed, const LongDocumentOptions& options,
                            const std::string& doc_id = "long");

}  // namespace boundcoref

#endif  // BOUNDCOREF_SYNTHETIC_HPP_
