// Copyright 2026 The asrnoise Authors
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

#ifndef ASRNOISE_TRANSCRIPT_HPP_
#define ASRNOISE_TRANSCRIPT_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace asrnoise {

struct Speaker {
  enum class Kind { Doctor, Patient, Other };

  Kind kind = Kind::Other;
  std::string label;  // original label, kept for Kind::Other

  static Speaker from_label(std::string_view label);
  std::string to_label() const;

  bool operator==(const Speaker&) const = default;
};

/// One speaker-attributed utterance. Text is trimmed and holds no tag-syntax
/// metacharacters; use sanitize_turn_text before constructing from raw data.
struct Turn {
  Speaker speaker;
  std::string text;

  bool operator==(const Turn&) const = default;
};

struct Dialogue {
  std::string id;
  std::vector<Turn> turns;

  bool operator==(const Dialogue&) const = default;
};

using Corpus = std::vector<Dialogue>;

struct PairedDialogue {
  std::string id;
  Dialogue reference;
  Dialogue hypothesis;
};

using PairedCorpus = std::vector<PairedDialogue>;

/// Word normalization applied before alignment and sampling. The default
/// (lowercase, punctuation stripped except intra-word apostrophes/hyphens)
/// is version "v1"; profiles record the version they were estimated under
/// and refuse to mix with another one.
struct TokenizePolicy {
  bool lowercase = true;
  bool strip_punctuation = true;

  std::string version() const;

  bool operator==(const TokenizePolicy&) const = default;
};

inline constexpr const char* kNormalizationPolicyV1 = "v1";

/// Byte span [begin, end) of a token's core inside the raw utterance.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const TokenSpan&) const = default;
};

/// Normalized tokens plus the span map back into the raw text. surface(i)
/// recovers the original casing for rendering tagged text.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<TokenSpan> spans;
  std::string raw;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  std::string surface(std::size_t i) const {
    return raw.substr(spans[i].begin, spans[i].end - spans[i].begin);
  }
};

TokenSequence tokenize(std::string_view text, const TokenizePolicy& policy = {});

/// Removes `{`, `}` and literal `(INSERTION)` tokens, collapses the holes
/// they leave, and trims. Applied to every turn at ingestion so the tag
/// syntax stays unambiguous downstream.
std::string sanitize_turn_text(std::string_view raw);

// --- corpus JSONL I/O ---
// One dialogue per line: {"id": "...", "turns": [{"speaker": "...", "text": "..."}]}
// Paired corpus: {"id": "...", "reference": {dialogue}, "hypothesis": {dialogue}}

Corpus load_corpus(const std::filesystem::path& path);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

PairedCorpus load_paired_corpus(const std::filesystem::path& path);
void save_paired_corpus(const PairedCorpus& corpus, const std::filesystem::path& path);

/// Joins two parallel corpora on dialogue id; requires identical id sets.
PairedCorpus pair_corpora(const Corpus& reference, const Corpus& hypothesis);

std::string dialogue_to_json_line(const Dialogue& dialogue);
Dialogue dialogue_from_json_line(std::string_view line);

}  // namespace asrnoise

#endif  // ASRNOISE_TRANSCRIPT_HPP_
