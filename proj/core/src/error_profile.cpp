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

#include "asrnoise/error_profile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "asrnoise/errors.hpp"

namespace asrnoise {

namespace {

using nlohmann::json;

constexpr double kSumTolerance = 1e-9;

TokenSequence dialogue_tokens(const Dialogue& d, const TokenizePolicy& policy) {
  std::string joined;
  for (const auto& turn : d.turns) {
    if (!joined.empty()) joined.push_back(' ');
    joined += turn.text;
  }
  return tokenize(joined, policy);
}

}  // namespace

std::size_t kind_index(EditKind kind) {
  switch (kind) {
    case EditKind::Substitution:
      return 0;
    case EditKind::Deletion:
      return 1;
    case EditKind::Insertion:
      return 2;
    case EditKind::Match:
      break;
  }
  throw DataError("Match carries no conditional error probability");
}

double ErrorProfile::conditional_of(EditKind kind) const {
  return conditional[kind_index(kind)];
}

void ErrorProfile::validate() const {
  if (wer < 0.0 || !std::isfinite(wer)) {
    throw DataError("profile wer must be finite and nonnegative");
  }
  double sum = 0.0;
  for (double p : conditional) {
    if (p < 0.0 || p > 1.0 || !std::isfinite(p)) {
      throw DataError("profile conditional probabilities must lie in [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DataError("profile conditional probabilities must sum to 1");
  }
}

ErrorCounts count_pair_errors(const Dialogue& reference, const Dialogue& hypothesis,
                              const TokenizePolicy& policy) {
  ErrorCounts counts;
  if (reference.turns.size() == hypothesis.turns.size()) {
    for (std::size_t t = 0; t < reference.turns.size(); ++t) {
      const TokenSequence ref = tokenize(reference.turns[t].text, policy);
      const TokenSequence hyp = tokenize(hypothesis.turns[t].text, policy);
      counts += error_counts(align(ref, hyp));
    }
  } else {
    // Mismatched turn counts: align the dialogues as whole token streams.
    counts += error_counts(
        align(dialogue_tokens(reference, policy), dialogue_tokens(hypothesis, policy)));
  }
  return counts;
}

ProfileEstimate estimate_profile_detailed(const PairedCorpus& pairs,
                                          std::string_view source_label,
                                          const TokenizePolicy& policy) {
  if (pairs.empty()) throw DataError("estimate_profile: empty corpus");

  ProfileEstimate est;
  for (const auto& pair : pairs) {
    est.per_turn_counts += count_pair_errors(pair.reference, pair.hypothesis, policy);
    est.whole_dialogue_counts += error_counts(align(
        dialogue_tokens(pair.reference, policy), dialogue_tokens(pair.hypothesis, policy)));
  }
  const ErrorCounts& counts = est.per_turn_counts;
  if (counts.ref_len == 0) {
    throw DataError("estimate_profile: reference corpus has no tokens");
  }

  ErrorProfile& profile = est.profile;
  profile.source_label = std::string(source_label);
  profile.normalization_policy_version = policy.version();
  profile.token_count = counts.ref_len;
  const std::size_t total = counts.total_errors();
  profile.wer = static_cast<double>(total) / static_cast<double>(counts.ref_len);
  if (total == 0) {
    profile.conditional = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    profile.zero_error = true;
  } else {
    profile.conditional[0] =
        static_cast<double>(counts.substitutions) / static_cast<double>(total);
    profile.conditional[1] =
        static_cast<double>(counts.deletions) / static_cast<double>(total);
    profile.conditional[2] =
        static_cast<double>(counts.insertions) / static_cast<double>(total);
  }
  profile.validate();
  return est;
}

ErrorProfile estimate_profile(const PairedCorpus& pairs, std::string_view source_label,
                              const TokenizePolicy& policy) {
  return estimate_profile_detailed(pairs, source_label, policy).profile;
}

double joint_error_probability(const ErrorProfile& profile, EditKind kind) {
  if (kind == EditKind::Match) {
    throw DataError("joint_error_probability: kind must be an error type");
  }
  return profile.conditional_of(kind) * profile.corruption_probability();
}

double profile_distance(const ErrorProfile& a, const ErrorProfile& b) {
  double tv = 0.0;
  for (std::size_t k = 0; k < a.conditional.size(); ++k) {
    tv += std::abs(a.conditional[k] - b.conditional[k]);
  }
  return std::abs(a.wer - b.wer) + 0.5 * tv;
}

std::string profile_to_json(const ErrorProfile& profile) {
  json j{
      {"wer", profile.wer},
      {"conditional",
       {{"substitution", profile.conditional[0]},
        {"deletion", profile.conditional[1]},
        {"insertion", profile.conditional[2]}}},
      {"token_count", profile.token_count},
      {"source_label", profile.source_label},
      {"normalization_policy_version", profile.normalization_policy_version},
      {"zero_error", profile.zero_error},
  };
  return j.dump(2);
}

ErrorProfile profile_from_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw DataError("profile: invalid JSON");
  }
  ErrorProfile profile;
  try {
    profile.wer = j.at("wer").get<double>();
    const json& cond = j.at("conditional");
    profile.conditional[0] = cond.at("substitution").get<double>();
    profile.conditional[1] = cond.at("deletion").get<double>();
    profile.conditional[2] = cond.at("insertion").get<double>();
    profile.token_count = j.value("token_count", std::uint64_t{0});
    profile.source_label = j.value("source_label", std::string{});
    profile.normalization_policy_version =
        j.value("normalization_policy_version", std::string(kNormalizationPolicyV1));
    profile.zero_error = j.value("zero_error", false);
  } catch (const json::exception& e) {
    throw DataError(std::string("profile: ") + e.what());
  }
  profile.validate();
  return profile;
}

void save_profile(const ErrorProfile& profile, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << profile_to_json(profile) << '\n';
}

ErrorProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return profile_from_json(buf.str());
}

}  // namespace asrnoise
