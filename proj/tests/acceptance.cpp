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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "asrnoise/alignment.hpp"
#include "asrnoise/error_profile.hpp"
#include "asrnoise/errors.hpp"
#include "asrnoise/evaluation.hpp"
#include "asrnoise/generator.hpp"
#include "asrnoise/lexicon.hpp"
#include "asrnoise/tagging.hpp"
#include "asrnoise/transcript.hpp"
#include "test_util.hpp"

using namespace asrnoise;
using namespace asrnoise::testing;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": "
            << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

ErrorProfile make_profile(double wer, double s, double d, double i,
                          std::string label) {
  ErrorProfile p;
  p.wer = wer;
  p.conditional = {s, d, i};
  p.source_label = std::move(label);
  return p;
}

std::vector<DecoratedPair> icl_examples() {
  return {{"I {took a Tylenol}", "I {shook tie-and-all}"},
          {"I just had some {diarrhea} for the last three days",
           "I just had some {diary} for the last three days"}};
}

// --------------------------------------------------------------------------
// 1. Alignment oracle equivalence
// --------------------------------------------------------------------------
bool criterion_alignment_oracle(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  static const std::vector<std::string> alphabet = {"a", "b", "c"};

  // All sequences of length 0..6 over a 3-symbol alphabet.
  std::vector<std::vector<std::string>> sequences = {{}};
  std::vector<std::vector<std::string>> frontier = {{}};
  for (int len = 1; len <= 6; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& seq : frontier) {
      for (const auto& symbol : alphabet) {
        auto extended = seq;
        extended.push_back(symbol);
        next.push_back(extended);
      }
    }
    sequences.insert(sequences.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  std::size_t checked = 0;
  for (const auto& ref : sequences) {
    for (const auto& hyp : sequences) {
      EditDistanceOracle oracle(ref, hyp);
      if (align(ref, hyp).cost() != oracle.distance()) {
        detail = "exhaustive mismatch";
        return false;
      }
      ++checked;
    }
  }

  Rng rng(2026);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto ref = random_tokens(rng, 12, 4);
    const auto hyp = random_tokens(rng, 12, 4);
    EditDistanceOracle oracle(ref, hyp);
    if (align(ref, hyp).cost() != oracle.distance()) {
      detail = "random mismatch";
      return false;
    }
    ++checked;
  }

  const double elapsed = seconds_since(start);
  std::ostringstream out;
  out << checked << " pairs, " << elapsed << " s";
  detail = out.str();
  return elapsed < 60.0;
}

// --------------------------------------------------------------------------
// 3 (and vicariously 2). Round-trip calibration
// --------------------------------------------------------------------------
bool criterion_round_trip(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const Corpus clean = synthetic_corpus(301, 40000);
  const ErrorProfile target = make_profile(0.25, 0.6, 0.3, 0.1, "target");

  GenerationConfig config;
  config.master_seed = 20260809;
  const GenerationOutput output =
      generate_corpus(clean, icl_examples(), target, config);

  PairedCorpus pairs;
  for (std::size_t d = 0; d < clean.size(); ++d) {
    pairs.push_back(PairedDialogue{clean[d].id, clean[d], output.synthetic[d]});
  }
  const ErrorProfile estimated = estimate_profile(pairs, "re-estimated");

  const double wer_gap = std::abs(estimated.wer - target.wer);
  double tv = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    tv += std::abs(estimated.conditional[k] - target.conditional[k]);
  }
  tv *= 0.5;
  const double elapsed = seconds_since(start);

  std::ostringstream out;
  out << "tokens=" << estimated.token_count << " |dWER|=" << wer_gap << " TV=" << tv
      << " " << elapsed << " s";
  detail = out.str();
  return estimated.token_count >= 10000 && wer_gap <= 0.02 && tv <= 0.05 &&
         elapsed < 30.0;
}

// --------------------------------------------------------------------------
// 2. Paper WER anchors (vicarious when no user corpora are supplied)
// --------------------------------------------------------------------------
bool criterion_wer_anchors(bool round_trip_passed, std::string& detail) {
  const char* dir = std::getenv("ASRNOISE_PAIRED_DIR");
  if (dir == nullptr || dir[0] == '\0') {
    detail = "no user-supplied paired corpora; satisfied vicariously by criterion 3";
    return round_trip_passed;
  }
  const std::vector<std::pair<std::string, double>> anchors = {
      {"whisper-large", 0.25}, {"whisper-tiny", 0.44}, {"wav2vec2-base", 0.45}};
  std::ostringstream out;
  bool pass = true;
  for (const auto& [name, expected] : anchors) {
    const std::filesystem::path path = std::filesystem::path(dir) / (name + ".jsonl");
    if (!std::filesystem::exists(path)) {
      out << name << ": missing; ";
      pass = false;
      continue;
    }
    const ErrorProfile profile = estimate_profile(load_paired_corpus(path), name);
    out << name << ": wer=" << profile.wer << "; ";
    if (std::abs(profile.wer - expected) > 0.03) pass = false;
  }
  detail = out.str();
  return pass;
}

// --------------------------------------------------------------------------
// 4. Controllability sweep
// --------------------------------------------------------------------------
bool criterion_controllability(std::string& detail) {
  const Corpus clean = synthetic_corpus(401, 12000);
  const ErrorProfile base = make_profile(0.25, 0.6, 0.3, 0.1, "sweep-base");
  const EntityLexicon lexicon =
      load_lexicon(std::filesystem::path(ASRNOISE_DATA_DIR) / "medical_terms.txt");
  GenerationConfig config;
  config.master_seed = 4040;

  const std::vector<double> scales = {0.0, 0.5, 1.0, 1.5};
  const SweepReport report =
      noise_sweep(clean, base, scales, icl_examples(), config, lexicon);

  std::ostringstream out;
  out << "wer:";
  for (const auto& row : report.rows) out << ' ' << row.realized_wer;
  out << " rouge:";
  for (const auto& row : report.rows) out << ' ' << row.rouge_l_f1;
  detail = out.str();

  if (report.rows.size() != 4) return false;
  if (report.rows[0].realized_wer != 0.0) return false;
  if (report.rows[0].rouge_l_f1 != 1.0) return false;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const bool saturated = report.rows[i - 1].target_wer >= 1.0;
    if (report.rows[i].realized_wer <= report.rows[i - 1].realized_wer && !saturated) {
      return false;
    }
    if (report.rows[i].rouge_l_f1 > report.rows[i - 1].rouge_l_f1) return false;
  }
  return true;
}

// --------------------------------------------------------------------------
// 5. Diagonal dominance of the profile-distance matrix
// --------------------------------------------------------------------------
bool criterion_diagonal_dominance(std::string& detail) {
  const Corpus clean = synthetic_corpus(501, 8000);
  const std::vector<ErrorProfile> profiles = {
      make_profile(0.15, 0.7, 0.2, 0.1, "asr-low"),
      make_profile(0.30, 0.5, 0.3, 0.2, "asr-mid"),
      make_profile(0.45, 0.3, 0.3, 0.4, "asr-high")};

  std::vector<LabeledCorpus> asr;
  std::vector<LabeledCorpus> synthetic;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    GenerationConfig asr_config;
    asr_config.master_seed = 100 + i;
    asr.push_back(LabeledCorpus{
        profiles[i].source_label,
        generate_corpus(clean, icl_examples(), profiles[i], asr_config).synthetic});
    GenerationConfig syn_config;
    syn_config.master_seed = 200 + i;
    synthetic.push_back(LabeledCorpus{
        "syn-" + profiles[i].source_label,
        generate_corpus(clean, icl_examples(), profiles[i], syn_config).synthetic});
  }

  const SimilarityMatrix matrix =
      similarity_matrix(synthetic, asr, clean, SimilarityMetric::ProfileDistance);
  std::ostringstream out;
  bool pass = true;
  for (std::size_t i = 0; i < matrix.cells.size(); ++i) {
    for (std::size_t j = 0; j < matrix.cells[i].size(); ++j) {
      if (j != i && matrix.cells[i][i] >= matrix.cells[i][j]) pass = false;
    }
    out << "row" << i << " diag=" << matrix.cells[i][i] << "; ";
  }
  detail = out.str();
  return pass;
}

// --------------------------------------------------------------------------
// 6. Tag-syntax round trip
// --------------------------------------------------------------------------
bool criterion_tag_round_trip(std::string& detail) {
  Rng rng(606);
  for (int trial = 0; trial < 10000; ++trial) {
    const TaggedText tagged = random_tagged_text(rng);
    const std::string rendered = render_tagged(tagged);
    TaggedText reparsed;
    try {
      reparsed = parse_tagged(rendered);
    } catch (const TagParseError&) {
      detail = "canonical rendering failed to parse";
      return false;
    }
    if (reparsed.segments != tagged.segments ||
        render_tagged(reparsed) != rendered) {
      detail = "round trip diverged: " + rendered;
      return false;
    }
  }

  const std::vector<std::pair<std::string, TagParseError::Code>> malformed = {
      {"a {b", TagParseError::Code::UnbalancedBrace},
      {"}", TagParseError::Code::UnbalancedBrace},
      {"a } b", TagParseError::Code::UnbalancedBrace},
      {"{a {b} c}", TagParseError::Code::NestedBrace},
      {"{{x}}", TagParseError::Code::NestedBrace},
      {"{}", TagParseError::Code::EmptySpan},
      {"{ }", TagParseError::Code::EmptySpan},
      {"x {y} {", TagParseError::Code::UnbalancedBrace}};
  for (const auto& [text, code] : malformed) {
    try {
      parse_tagged(text);
      detail = "no error for: " + text;
      return false;
    } catch (const TagParseError& e) {
      if (e.code() != code) {
        detail = "wrong code for: " + text;
        return false;
      }
    }
  }
  detail = "10000 round trips, 8 malformed fixtures";
  return true;
}

// --------------------------------------------------------------------------
// 7. Validation contract
// --------------------------------------------------------------------------
bool criterion_validation_contract(std::string& detail) {
  Rng rng(707);
  const ErrorProfile profile = make_profile(0.45, 0.5, 0.3, 0.2, "validation");
  for (int trial = 0; trial < 1000; ++trial) {
    std::string text;
    const std::size_t len = 1 + rng.next_below(14);
    for (std::size_t i = 0; i < len; ++i) {
      if (!text.empty()) text.push_back(' ');
      text += rng.pick(word_pool());
    }
    const TokenSequence tokens = tokenize(text);
    const ErrorPlan plan = sample_error_plan(tokens, profile, rng.next_u64());
    const TaggedText tagged = apply_plan(tokens, plan);
    const std::string candidate = fallback_corrupt(tagged, rng.next_u64());
    const ValidationResult result = validate_candidate(candidate, plan, tokens);
    if (!result.accepted) {
      detail = "fallback output rejected: " + candidate;
      return false;
    }
  }

  auto expect_reject = [&](const std::string& candidate, const ErrorPlan& plan,
                           const TokenSequence& tokens, RejectCode code,
                           const char* label) {
    const ValidationResult result = validate_candidate(candidate, plan, tokens);
    if (result.accepted) {
      detail = std::string(label) + ": accepted";
      return false;
    }
    for (const auto& reason : result.reasons) {
      if (reason.code == code) return true;
    }
    detail = std::string(label) + ": wrong reason " +
             to_string(result.reasons.front().code);
    return false;
  };

  const TokenSequence spots = tokenize("any white spots on the back");
  ErrorPlan spots_plan;
  spots_plan.decisions = {{1, EditKind::Substitution}, {2, EditKind::Substitution}};
  if (!expect_reject("any {whish spits} on the bock", spots_plan, spots,
                     RejectCode::UntaggedRegionModified, "altered untagged region")) {
    return false;
  }
  if (!expect_reject("any {white spots} on the back", spots_plan, spots,
                     RejectCode::SubstitutionNotPerformed,
                     "unperformed substitution")) {
    return false;
  }

  const TokenSequence took = tokenize("took a tylenol");
  ErrorPlan took_plan;
  took_plan.decisions = {{0, EditKind::Substitution}, {1, EditKind::Deletion}};
  if (!expect_reject("{a} tylenol", took_plan, took,
                     RejectCode::DeletedTokenResurrected, "resurrected deletion")) {
    return false;
  }

  detail = "1000 fallback outputs accepted; 3 counterexamples rejected";
  return true;
}

// --------------------------------------------------------------------------
// 8. CLI determinism
// --------------------------------------------------------------------------
bool criterion_cli_determinism(std::string& detail) {
  TempDir dir;
  const Corpus clean = synthetic_corpus(801, 2000);
  save_corpus(clean, dir.file("clean.jsonl"));
  save_profile(make_profile(0.25, 0.6, 0.3, 0.1, "determinism"),
               dir.file("profile.json"));
  save_examples(icl_examples(), dir.file("examples.jsonl"));

  const std::string base =
      std::string(ASRNOISE_CLI_PATH) + " generate --clean " +
      shell_quote(dir.file("clean.jsonl").string()) + " --profile " +
      shell_quote(dir.file("profile.json").string()) + " --examples " +
      shell_quote(dir.file("examples.jsonl").string()) +
      " --seed 99 --fallback --multiplicity 2 --out-dir ";

  const CommandResult first =
      run_command(base + shell_quote((dir.path() / "run1").string()));
  const CommandResult second =
      run_command(base + shell_quote((dir.path() / "run2").string()));
  if (first.exit_code != 0 || second.exit_code != 0) {
    detail = "generate exited nonzero";
    return false;
  }
  for (const char* name :
       {"synthetic.jsonl", "records.jsonl", "summary.json", "summary.txt"}) {
    if (read_file(dir.path() / "run1" / name) !=
        read_file(dir.path() / "run2" / name)) {
      detail = std::string(name) + " differs between runs";
      return false;
    }
  }
  detail = "two runs byte-identical across 4 artifacts";
  return true;
}

// --------------------------------------------------------------------------
// 9. Metric unit anchors
// --------------------------------------------------------------------------
bool criterion_metric_anchors(std::string& detail) {
  const PrfScore rouge = rouge_l(words({"a", "c"}), words({"a", "b", "c"}));
  if (std::abs(rouge.precision - 1.0) > 1e-9 ||
      std::abs(rouge.recall - 2.0 / 3.0) > 1e-9 || std::abs(rouge.f1 - 0.8) > 1e-9) {
    std::ostringstream out;
    out << "rouge_l = (" << rouge.precision << ", " << rouge.recall << ", " << rouge.f1
        << ")";
    detail = out.str();
    return false;
  }

  EntityLexicon lexicon;
  lexicon.add_term("diarrhea");
  lexicon.add_term("tylenol");
  const PrfScore entity =
      entity_f1(words({"took", "tylenol"}), words({"had", "diarrhea", "and", "tylenol"}),
                lexicon);
  if (std::abs(entity.precision - 1.0) > 1e-9 || std::abs(entity.recall - 0.5) > 1e-9 ||
      std::abs(entity.f1 - 2.0 / 3.0) > 1e-9) {
    std::ostringstream out;
    out << "entity_f1 = (" << entity.precision << ", " << entity.recall << ", "
        << entity.f1 << ")";
    detail = out.str();
    return false;
  }
  detail = "rouge_l (1, 2/3, 0.8); entity_f1 (1, 0.5, 2/3)";
  return true;
}

// --------------------------------------------------------------------------
// 10. Decoration fidelity
// --------------------------------------------------------------------------
bool criterion_decoration_fidelity(std::string& detail) {
  const Turn clean_a{Speaker::from_label("patient"), "I took a Tylenol"};
  const Turn noisy_a{Speaker::from_label("patient"), "I shook tie-and-all"};
  const auto [tagged_clean_a, tagged_noisy_a] = decorate_example_pair(clean_a, noisy_a);
  if (render_tagged(tagged_clean_a) != "I {took a Tylenol}" ||
      render_tagged(tagged_noisy_a) != "I {shook tie-and-all}") {
    detail = "pair 1 rendered as: " + render_tagged(tagged_clean_a) + " / " +
             render_tagged(tagged_noisy_a);
    return false;
  }

  const Turn clean_b{Speaker::from_label("patient"),
                     "I just had some diarrhea for the last three days"};
  const Turn noisy_b{Speaker::from_label("patient"),
                     "I just had some diary for the last three days"};
  const auto [tagged_clean_b, tagged_noisy_b] = decorate_example_pair(clean_b, noisy_b);
  if (render_tagged(tagged_clean_b) !=
          "I just had some {diarrhea} for the last three days" ||
      render_tagged(tagged_noisy_b) !=
          "I just had some {diary} for the last three days") {
    detail = "pair 2 rendered as: " + render_tagged(tagged_clean_b) + " / " +
             render_tagged(tagged_noisy_b);
    return false;
  }
  detail = "both in-context pairs braced exactly";
  return true;
}

}  // namespace

int main() {
  std::string detail;

  bool pass = criterion_alignment_oracle(detail);
  report(1, "alignment oracle equivalence", pass, detail);

  detail.clear();
  const bool round_trip = criterion_round_trip(detail);
  const std::string round_trip_detail = detail;

  detail.clear();
  pass = criterion_wer_anchors(round_trip, detail);
  report(2, "paper WER anchors", pass, detail);

  report(3, "round-trip calibration", round_trip, round_trip_detail);

  detail.clear();
  pass = criterion_controllability(detail);
  report(4, "controllability sweep", pass, detail);

  detail.clear();
  pass = criterion_diagonal_dominance(detail);
  report(5, "profile-distance diagonal dominance", pass, detail);

  detail.clear();
  pass = criterion_tag_round_trip(detail);
  report(6, "tag-syntax round trip", pass, detail);

  detail.clear();
  pass = criterion_validation_contract(detail);
  report(7, "validation contract", pass, detail);

  detail.clear();
  pass = criterion_cli_determinism(detail);
  report(8, "generation determinism", pass, detail);

  detail.clear();
  pass = criterion_metric_anchors(detail);
  report(9, "metric unit anchors", pass, detail);

  detail.clear();
  pass = criterion_decoration_fidelity(detail);
  report(10, "decoration fidelity", pass, detail);

  if (failures > 0) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
