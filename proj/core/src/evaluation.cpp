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

#include "asrnoise/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "asrnoise/errors.hpp"
#include "asrnoise/rng.hpp"

namespace asrnoise {

namespace {

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::size_t> prev(m + 1, 0);
  std::vector<std::size_t> cur(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      if (a[i - 1] == b[j - 1]) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

PrfScore prf_from_counts(double overlap, double candidate_count, double reference_count) {
  PrfScore score;
  if (candidate_count == 0.0 && reference_count == 0.0) {
    return PrfScore{1.0, 1.0, 1.0};
  }
  score.precision = candidate_count == 0.0 ? 0.0 : overlap / candidate_count;
  score.recall = reference_count == 0.0 ? 0.0 : overlap / reference_count;
  const double sum = score.precision + score.recall;
  score.f1 = sum == 0.0 ? 0.0 : 2.0 * score.precision * score.recall / sum;
  return score;
}

std::size_t entity_overlap(const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& b) {
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t t : a) ++counts[t];
  std::size_t overlap = 0;
  for (std::size_t t : b) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return overlap;
}

TokenSequence dialogue_tokens(const Dialogue& d, const TokenizePolicy& policy) {
  std::string joined;
  for (const auto& turn : d.turns) {
    if (!joined.empty()) joined.push_back(' ');
    joined += turn.text;
  }
  return tokenize(joined, policy);
}

/// Pairs of token sequences (candidate, reference) for id-joined corpora.
std::vector<std::pair<TokenSequence, TokenSequence>> paired_turn_tokens(
    const Corpus& candidate, const Corpus& reference, const TokenizePolicy& policy) {
  std::unordered_map<std::string, const Dialogue*> by_id;
  for (const auto& d : candidate) by_id.emplace(d.id, &d);

  std::vector<std::pair<TokenSequence, TokenSequence>> pairs;
  std::vector<std::string> missing;
  for (const auto& ref : reference) {
    auto it = by_id.find(ref.id);
    if (it == by_id.end()) {
      missing.push_back(ref.id);
      continue;
    }
    const Dialogue& cand = *it->second;
    if (cand.turns.size() == ref.turns.size()) {
      for (std::size_t t = 0; t < ref.turns.size(); ++t) {
        pairs.emplace_back(tokenize(cand.turns[t].text, policy),
                           tokenize(ref.turns[t].text, policy));
      }
    } else {
      pairs.emplace_back(dialogue_tokens(cand, policy), dialogue_tokens(ref, policy));
    }
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "dialogue ids missing from corpus:";
    for (const auto& id : missing) msg << ' ' << id;
    throw DataError(msg.str());
  }
  return pairs;
}

void check_ids(const Corpus& corpus, const Corpus& reference, const std::string& label) {
  std::unordered_map<std::string, bool> ref_ids;
  for (const auto& d : reference) ref_ids.emplace(d.id, false);
  std::vector<std::string> extra;
  for (const auto& d : corpus) {
    auto it = ref_ids.find(d.id);
    if (it == ref_ids.end()) {
      extra.push_back(d.id);
    } else {
      it->second = true;
    }
  }
  std::vector<std::string> missing;
  for (const auto& [id, seen] : ref_ids) {
    if (!seen) missing.push_back(id);
  }
  std::sort(missing.begin(), missing.end());
  if (missing.empty() && extra.empty()) return;
  std::ostringstream msg;
  msg << "corpus \"" << label << "\" does not share dialogue ids with the reference;";
  if (!missing.empty()) {
    msg << " missing:";
    for (const auto& id : missing) msg << ' ' << id;
    msg << ';';
  }
  if (!extra.empty()) {
    msg << " unknown:";
    for (const auto& id : extra) msg << ' ' << id;
  }
  throw DataError(msg.str());
}

double corpus_wer_vs(const Corpus& corpus, const Corpus& reference,
                     const TokenizePolicy& policy) {
  ErrorCounts counts;
  for (const auto& [cand, ref] : paired_turn_tokens(corpus, reference, policy)) {
    counts += error_counts(align(ref, cand));
  }
  if (counts.ref_len == 0) return 0.0;
  return static_cast<double>(counts.total_errors()) /
         static_cast<double>(counts.ref_len);
}

ErrorProfile profile_vs(const Corpus& corpus, const Corpus& reference,
                        const std::string& label, const TokenizePolicy& policy) {
  PairedCorpus pairs;
  std::unordered_map<std::string, const Dialogue*> by_id;
  for (const auto& d : corpus) by_id.emplace(d.id, &d);
  for (const auto& ref : reference) {
    auto it = by_id.find(ref.id);
    if (it != by_id.end()) {
      pairs.push_back(PairedDialogue{ref.id, ref, *it->second});
    }
  }
  return estimate_profile(pairs, label, policy);
}

}  // namespace

PrfScore rouge_l(std::span<const std::string> candidate,
                 std::span<const std::string> reference) {
  if (reference.empty()) throw DataError("rouge_l: empty reference");
  const double lcs = static_cast<double>(lcs_length(candidate, reference));
  return prf_from_counts(lcs, static_cast<double>(candidate.size()),
                         static_cast<double>(reference.size()));
}

PrfScore entity_f1(std::span<const std::string> candidate,
                   std::span<const std::string> reference,
                   const EntityLexicon& lexicon) {
  if (lexicon.empty()) throw DataError("entity_f1: empty lexicon");
  const std::vector<std::size_t> cand = extract_entities(candidate, lexicon);
  const std::vector<std::size_t> ref = extract_entities(reference, lexicon);
  const double overlap = static_cast<double>(entity_overlap(cand, ref));
  return prf_from_counts(overlap, static_cast<double>(cand.size()),
                         static_cast<double>(ref.size()));
}

PrfScore corpus_rouge_l(const Corpus& candidate, const Corpus& reference,
                        const TokenizePolicy& policy) {
  double lcs = 0.0;
  double cand_count = 0.0;
  double ref_count = 0.0;
  for (const auto& [cand, ref] : paired_turn_tokens(candidate, reference, policy)) {
    lcs += static_cast<double>(lcs_length(cand.tokens, ref.tokens));
    cand_count += static_cast<double>(cand.size());
    ref_count += static_cast<double>(ref.size());
  }
  return prf_from_counts(lcs, cand_count, ref_count);
}

PrfScore corpus_entity_f1(const Corpus& candidate, const Corpus& reference,
                          const EntityLexicon& lexicon, const TokenizePolicy& policy) {
  if (lexicon.empty()) throw DataError("entity_f1: empty lexicon");
  double overlap = 0.0;
  double cand_count = 0.0;
  double ref_count = 0.0;
  for (const auto& [cand, ref] : paired_turn_tokens(candidate, reference, policy)) {
    const auto cand_entities = extract_entities(cand.tokens, lexicon);
    const auto ref_entities = extract_entities(ref.tokens, lexicon);
    overlap += static_cast<double>(entity_overlap(cand_entities, ref_entities));
    cand_count += static_cast<double>(cand_entities.size());
    ref_count += static_cast<double>(ref_entities.size());
  }
  return prf_from_counts(overlap, cand_count, ref_count);
}

const char* to_string(SimilarityMetric metric) {
  switch (metric) {
    case SimilarityMetric::WerAgreement:
      return "wer_agreement";
    case SimilarityMetric::RougeL:
      return "rouge_l";
    case SimilarityMetric::ProfileDistance:
      return "profile_distance";
  }
  return "wer_agreement";
}

SimilarityMetric similarity_metric_from_string(std::string_view name) {
  if (name == "wer_agreement" || name == "wer") return SimilarityMetric::WerAgreement;
  if (name == "rouge_l" || name == "rouge") return SimilarityMetric::RougeL;
  if (name == "profile_distance" || name == "profile") {
    return SimilarityMetric::ProfileDistance;
  }
  throw ConfigError("unknown similarity metric \"" + std::string(name) + "\"");
}

SimilarityMatrix similarity_matrix(const std::vector<LabeledCorpus>& synthetic,
                                   const std::vector<LabeledCorpus>& asr,
                                   const Corpus& reference, SimilarityMetric metric,
                                   const TokenizePolicy& policy) {
  for (const auto& lc : synthetic) check_ids(lc.corpus, reference, lc.label);
  for (const auto& lc : asr) check_ids(lc.corpus, reference, lc.label);

  SimilarityMatrix matrix;
  matrix.metric_name = to_string(metric);
  matrix.higher_is_closer = metric != SimilarityMetric::ProfileDistance;
  for (const auto& lc : asr) matrix.row_labels.push_back(lc.label);
  for (const auto& lc : synthetic) matrix.col_labels.push_back(lc.label);
  matrix.cells.assign(asr.size(), std::vector<double>(synthetic.size(), 0.0));

  switch (metric) {
    case SimilarityMetric::WerAgreement: {
      std::vector<double> asr_wer;
      std::vector<double> syn_wer;
      for (const auto& lc : asr) {
        asr_wer.push_back(corpus_wer_vs(lc.corpus, reference, policy));
      }
      for (const auto& lc : synthetic) {
        syn_wer.push_back(corpus_wer_vs(lc.corpus, reference, policy));
      }
      for (std::size_t i = 0; i < asr.size(); ++i) {
        for (std::size_t j = 0; j < synthetic.size(); ++j) {
          matrix.cells[i][j] = 1.0 - std::abs(asr_wer[i] - syn_wer[j]);
        }
      }
      break;
    }
    case SimilarityMetric::RougeL: {
      for (std::size_t i = 0; i < asr.size(); ++i) {
        for (std::size_t j = 0; j < synthetic.size(); ++j) {
          matrix.cells[i][j] =
              corpus_rouge_l(synthetic[j].corpus, asr[i].corpus, policy).f1;
        }
      }
      break;
    }
    case SimilarityMetric::ProfileDistance: {
      std::vector<ErrorProfile> asr_profiles;
      std::vector<ErrorProfile> syn_profiles;
      for (const auto& lc : asr) {
        asr_profiles.push_back(profile_vs(lc.corpus, reference, lc.label, policy));
      }
      for (const auto& lc : synthetic) {
        syn_profiles.push_back(profile_vs(lc.corpus, reference, lc.label, policy));
      }
      for (std::size_t i = 0; i < asr.size(); ++i) {
        for (std::size_t j = 0; j < synthetic.size(); ++j) {
          matrix.cells[i][j] = profile_distance(asr_profiles[i], syn_profiles[j]);
        }
      }
      break;
    }
  }
  return matrix;
}

SweepReport noise_sweep(const Corpus& clean, const ErrorProfile& base_profile,
                        std::span<const double> scales,
                        const std::vector<DecoratedPair>& examples,
                        const GenerationConfig& config, const EntityLexicon& lexicon,
                        LlmClient* client) {
  if (scales.empty()) throw ConfigError("noise_sweep: scales must not be empty");
  for (double s : scales) {
    if (s < 0.0 || !std::isfinite(s)) {
      throw ConfigError("noise_sweep: scales must be finite and nonnegative");
    }
  }
  if (lexicon.empty()) throw DataError("noise_sweep: empty lexicon");

  std::vector<double> ordered(scales.begin(), scales.end());
  std::sort(ordered.begin(), ordered.end());

  SweepReport report;
  report.profile_label = base_profile.source_label;
  for (std::size_t s = 0; s < ordered.size(); ++s) {
    ErrorProfile scaled = base_profile;
    scaled.wer = std::min(ordered[s] * base_profile.wer, 1.0);

    GenerationConfig scaled_config = config;
    scaled_config.master_seed = mix_seed(config.master_seed, s);
    scaled_config.multiplicity = 1;  // one corpus per scale

    SweepRow row;
    row.scale = ordered[s];
    row.target_wer = scaled.wer;
    GenerationOutput output =
        generate_corpus(clean, examples, scaled, scaled_config, client, &lexicon);
    row.realized_wer = output.summary.realized_wer;
    row.rouge_l_f1 = corpus_rouge_l(output.synthetic, clean, config.policy).f1;
    row.entity_f1 = corpus_entity_f1(output.synthetic, clean, lexicon, config.policy).f1;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace asrnoise
