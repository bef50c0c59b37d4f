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

#ifndef ASRNOISE_EVALUATION_HPP_
#define ASRNOISE_EVALUATION_HPP_

#include <span>
#include <string>
#include <vector>

#include "asrnoise/error_profile.hpp"
#include "asrnoise/generator.hpp"
#include "asrnoise/lexicon.hpp"
#include "asrnoise/transcript.hpp"

namespace asrnoise {

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// LCS-based Rouge-L: P = LCS/|candidate|, R = LCS/|reference|, F harmonic
/// (0 when P + R = 0). Throws DataError on an empty reference.
PrfScore rouge_l(std::span<const std::string> candidate,
                 std::span<const std::string> reference);

/// Entity overlap under greedy longest-match extraction, scored as a
/// multiset P/R/F1. Two empty extractions score perfect, by convention.
/// Throws DataError on an empty lexicon.
PrfScore entity_f1(std::span<const std::string> candidate,
                   std::span<const std::string> reference,
                   const EntityLexicon& lexicon);

struct LabeledCorpus {
  std::string label;
  Corpus corpus;
};

/// How cells are scored; the first two are similarities (higher is closer),
/// profile_distance is a distance (lower is closer).
enum class SimilarityMetric { WerAgreement, RougeL, ProfileDistance };

const char* to_string(SimilarityMetric metric);
SimilarityMetric similarity_metric_from_string(std::string_view name);

struct SimilarityMatrix {
  std::vector<std::string> row_labels;  // ASR corpora
  std::vector<std::string> col_labels;  // synthetic corpora
  std::vector<std::vector<double>> cells;
  std::string metric_name;
  bool higher_is_closer = true;
};

/// Cell (i, j) scores how closely synthetic corpus j matches ASR corpus i:
///   wer_agreement: 1 - |WER_i(vs clean) - WER_j(vs clean)|
///   rouge_l:       corpus Rouge-L F between corpus i and corpus j
///   profile_distance: distance between the profiles estimated vs clean
/// All corpora must share dialogue ids with the reference; mismatches raise
/// a DataError listing the offending ids.
SimilarityMatrix similarity_matrix(const std::vector<LabeledCorpus>& synthetic,
                                   const std::vector<LabeledCorpus>& asr,
                                   const Corpus& reference, SimilarityMetric metric,
                                   const TokenizePolicy& policy = {});

/// Corpus-level micro-averaged Rouge-L between id-joined corpora (per-turn
/// pairs; mismatched turn counts compare whole dialogues).
PrfScore corpus_rouge_l(const Corpus& candidate, const Corpus& reference,
                        const TokenizePolicy& policy = {});

/// Corpus-level micro-averaged entity F1 between id-joined corpora.
PrfScore corpus_entity_f1(const Corpus& candidate, const Corpus& reference,
                          const EntityLexicon& lexicon,
                          const TokenizePolicy& policy = {});

struct SweepRow {
  double scale = 0.0;
  double target_wer = 0.0;
  double realized_wer = 0.0;
  double rouge_l_f1 = 0.0;
  double entity_f1 = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;  // ordered by scale
  std::string profile_label;
};

/// For each scale s, generates a synthetic corpus at wer' = min(s * wer, 1)
/// (conditional distribution unchanged) and reports realized WER, Rouge-L vs
/// clean, and entity F1 vs clean.
SweepReport noise_sweep(const Corpus& clean, const ErrorProfile& base_profile,
                        std::span<const double> scales,
                        const std::vector<DecoratedPair>& examples,
                        const GenerationConfig& config, const EntityLexicon& lexicon,
                        LlmClient* client = nullptr);

}  // namespace asrnoise

#endif  // ASRNOISE_EVALUATION_HPP_
