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

#ifndef ASRNOISE_TAGGING_HPP_
#define ASRNOISE_TAGGING_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "asrnoise/alignment.hpp"
#include "asrnoise/error_profile.hpp"
#include "asrnoise/transcript.hpp"

namespace asrnoise {

// Tag syntax, bit-exact:
//   {w1 w2}      words to replace with phonetically similar ones
//   (INSERTION)  slot where a generic word must be inserted
//   deletions    carry no tag; the word is removed before prompting
inline constexpr std::string_view kInsertionMarker = "(INSERTION)";

/// One sampled corruption decision. For Insertion the word is inserted
/// after token_index; index -1 places it before the first token.
struct ErrorDecision {
  std::int64_t token_index = 0;
  EditKind kind = EditKind::Substitution;

  bool operator==(const ErrorDecision&) const = default;
};

struct ErrorPlan {
  std::vector<ErrorDecision> decisions;  // ordered by token_index, at most one per index
  std::uint64_t rng_seed = 0;
  std::string profile_label;

  bool empty() const { return decisions.empty(); }
};

/// A clean utterance decorated with tags: plain runs, substitution spans,
/// insertion slots. Deleted words are removed from the segments and recorded
/// with their original token index.
struct TaggedText {
  struct Segment {
    enum class Kind { Plain, SubstitutionSpan, InsertionMarker };
    Kind kind = Kind::Plain;
    std::vector<std::string> tokens;  // empty for InsertionMarker

    bool operator==(const Segment&) const = default;
  };

  std::vector<Segment> segments;
  std::vector<std::pair<std::size_t, std::string>> deleted_tokens;

  bool operator==(const TaggedText&) const = default;
};

/// Marks each token corrupted independently with probability min(wer, 1) and
/// draws the error type from the profile's conditional distribution.
/// Deterministic for fixed (tokens, profile, seed); uses the portable
/// generator from rng.hpp, so results are identical across platforms.
ErrorPlan sample_error_plan(const TokenSequence& tokens, const ErrorProfile& profile,
                            std::uint64_t seed);

/// Realizes a plan over the token sequence. Adjacent substitution decisions
/// merge into one brace span; deletions are applied here (removed from the
/// rendered text), not delegated to the LLM. Surface forms are preserved via
/// the span map. Throws DataError on out-of-range indices.
TaggedText apply_plan(const TokenSequence& tokens, const ErrorPlan& plan);

/// Canonical rendering: single spaces, "{w1 w2}" spans, literal
/// "(INSERTION)" markers.
std::string render_tagged(const TaggedText& tagged);

/// Inverse of render_tagged. Throws TagParseError on unbalanced or nested
/// braces and on empty spans.
TaggedText parse_tagged(std::string_view text);

/// Aligns a clean/noisy turn pair and decorates both sides: maximal runs of
/// non-Match ops that consume tokens on both sides become brace spans,
/// ASR-deleted words are removed from the clean side and recorded, and
/// ASR-inserted words become an insertion slot on the clean side with the
/// inserted words braced on the noisy side.
std::pair<TaggedText, TaggedText> decorate_example_pair(
    const Turn& clean, const Turn& noisy, const TokenizePolicy& policy = {});

/// All tokens of the tagged text in order with deletions re-inserted;
/// inverse of apply_plan up to normalization.
std::vector<std::string> restore_tokens(const TaggedText& tagged,
                                        const TokenizePolicy& policy = {});

}  // namespace asrnoise

#endif  // ASRNOISE_TAGGING_HPP_
