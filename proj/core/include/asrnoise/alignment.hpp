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

#ifndef ASRNOISE_ALIGNMENT_HPP_
#define ASRNOISE_ALIGNMENT_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asrnoise/transcript.hpp"

namespace asrnoise {

/// Edit operations are oriented reference -> hypothesis: a Deletion is a
/// reference word absent from the hypothesis, an Insertion a hypothesis word
/// absent from the reference.
enum class EditKind { Match, Substitution, Deletion, Insertion };

const char* to_string(EditKind kind);
EditKind edit_kind_from_string(std::string_view name);

struct EditOp {
  EditKind kind = EditKind::Match;
  std::optional<std::size_t> ref_index;  // set for Match/Substitution/Deletion
  std::optional<std::size_t> hyp_index;  // set for Match/Substitution/Insertion

  bool operator==(const EditOp&) const = default;
};

struct EditScript {
  std::vector<EditOp> ops;
  std::size_t ref_len = 0;
  std::size_t hyp_len = 0;

  /// Unit-cost edit distance realized by this script.
  std::size_t cost() const;
};

struct ErrorCounts {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t matches = 0;
  std::size_t ref_len = 0;

  std::size_t total_errors() const { return substitutions + deletions + insertions; }
  ErrorCounts& operator+=(const ErrorCounts& other);
};

/// Minimal-cost alignment of reference to hypothesis under unit costs
/// (Wagner-Fischer). Tie-breaking is fixed and deterministic across runs
/// and platforms: among cost-minimal scripts the one with the most matches
/// wins, remaining ties resolve per step as
/// Match > Substitution > Deletion > Insertion. O(ref_len * hyp_len) time;
/// cost rows are rolled, the move table is kept for the backtrace.
EditScript align(std::span<const std::string> reference,
                 std::span<const std::string> hypothesis);

EditScript align(const TokenSequence& reference, const TokenSequence& hypothesis);

/// (S + D + I) / ref_len; may exceed 1.0 when insertions dominate.
/// Throws DataError if ref_len is zero.
double word_error_rate(const EditScript& script);

ErrorCounts error_counts(const EditScript& script);

}  // namespace asrnoise

#endif  // ASRNOISE_ALIGNMENT_HPP_
