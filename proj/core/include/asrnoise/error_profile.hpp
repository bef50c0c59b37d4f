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

#ifndef ASRNOISE_ERROR_PROFILE_HPP_
#define ASRNOISE_ERROR_PROFILE_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "asrnoise/alignment.hpp"
#include "asrnoise/transcript.hpp"

namespace asrnoise {

/// Per-word corruption probability (WER) plus the conditional distribution
/// over error types, characterizing one ASR model as a black box.
struct ErrorProfile {
  double wer = 0.0;  // may exceed 1; clamped by corruption_probability()
  std::array<double, 3> conditional{};  // indexed by kind_index(): S, D, I
  std::uint64_t token_count = 0;
  std::string source_label;
  std::string normalization_policy_version = kNormalizationPolicyV1;
  bool zero_error = false;  // set when estimated from an error-free corpus

  double conditional_of(EditKind kind) const;
  double corruption_probability() const { return wer < 1.0 ? wer : 1.0; }

  /// Checks the distribution invariants; throws DataError on violation.
  void validate() const;
};

/// Index of a non-Match kind into ErrorProfile::conditional.
std::size_t kind_index(EditKind kind);

/// Corpus-level estimate with both aggregation granularities, for reports.
/// The profile itself is built from per-turn counts; whole-dialogue counts
/// (each dialogue aligned as one token stream) are carried alongside.
struct ProfileEstimate {
  ErrorProfile profile;
  ErrorCounts per_turn_counts;
  ErrorCounts whole_dialogue_counts;
};

/// Aligns each pair per-turn (by index; mismatched turn counts fall back to
/// whole-dialogue alignment) and aggregates counts corpus-wide.
/// Zero observed errors yield a uniform conditional with zero_error set.
/// Throws DataError on an empty corpus or zero reference tokens.
ProfileEstimate estimate_profile_detailed(const PairedCorpus& pairs,
                                          std::string_view source_label,
                                          const TokenizePolicy& policy = {});

ErrorProfile estimate_profile(const PairedCorpus& pairs,
                              std::string_view source_label = "",
                              const TokenizePolicy& policy = {});

/// p(e_t | c_i) * p(c_i): conditional[kind] times the clamped WER.
/// Throws DataError for EditKind::Match.
double joint_error_probability(const ErrorProfile& profile, EditKind kind);

/// |wer_a - wer_b| + total-variation distance between conditionals.
/// Symmetric, satisfies the triangle inequality, zero iff identical.
double profile_distance(const ErrorProfile& a, const ErrorProfile& b);

std::string profile_to_json(const ErrorProfile& profile);
ErrorProfile profile_from_json(std::string_view text);
void save_profile(const ErrorProfile& profile, const std::filesystem::path& path);
ErrorProfile load_profile(const std::filesystem::path& path);

/// Aggregated alignment counts between two corpora joined per-pair.
ErrorCounts count_pair_errors(const Dialogue& reference, const Dialogue& hypothesis,
                              const TokenizePolicy& policy = {});

}  // namespace asrnoise

#endif  // ASRNOISE_ERROR_PROFILE_HPP_
