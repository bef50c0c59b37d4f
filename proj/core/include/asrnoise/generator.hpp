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

#ifndef ASRNOISE_GENERATOR_HPP_
#define ASRNOISE_GENERATOR_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "asrnoise/alignment.hpp"
#include "asrnoise/error_profile.hpp"
#include "asrnoise/lexicon.hpp"
#include "asrnoise/llm_client.hpp"
#include "asrnoise/tagging.hpp"
#include "asrnoise/transcript.hpp"

namespace asrnoise {

/// One in-context example pair, both sides rendered in tag syntax.
struct DecoratedPair {
  std::string input;     // tagged clean rendering
  std::string response;  // tagged noisy rendering
};

std::vector<DecoratedPair> load_examples(const std::filesystem::path& path);
void save_examples(const std::vector<DecoratedPair>& examples,
                   const std::filesystem::path& path);

struct PromptBundle {
  std::string system_instruction;
  std::vector<std::pair<std::string, std::string>> examples;  // (input, response)
  std::string query;  // tagged clean rendering of the target utterance
};

/// Default system instruction explaining the corruption task and the tag
/// syntax; overridable per run.
std::string default_system_instruction();

/// Deterministic bundle in the Input/Response block layout; example order is
/// preserved. Throws ConfigError when examples is empty and DataError when an
/// example does not parse under the tag syntax.
PromptBundle build_prompt(std::span<const DecoratedPair> examples,
                          const TaggedText& tagged_query,
                          std::string_view system_template = {});

/// "### Input:" / "### Response:" blocks, examples first, query last with an
/// open response slot.
std::string render_user_message(const PromptBundle& bundle);

std::vector<ChatMessage> bundle_messages(const PromptBundle& bundle);

enum class RejectCode {
  MalformedOutput,
  UntaggedRegionModified,
  SubstitutionNotPerformed,
  InsertionNotPerformed,
  InsertionCountInvalid,
  InsertionDomainTerm,
  DeletedTokenResurrected,
  StructureMismatch,
};

const char* to_string(RejectCode code);

struct RejectionReason {
  RejectCode code;
  std::string detail;
};

struct ValidationResult {
  bool accepted = false;
  std::vector<RejectionReason> reasons;
};

/// Checks a candidate against the plan it was generated from: tag syntax
/// parses, every requested substitution span is braced with changed content,
/// every insertion slot carries 1-3 generic words, untagged regions match the
/// original tokens after normalization, and deleted words do not resurface
/// next to their site. Returns reasons instead of throwing.
ValidationResult validate_candidate(std::string_view candidate, const ErrorPlan& plan,
                                    const TokenSequence& original,
                                    const EntityLexicon* lexicon = nullptr);

/// Deterministic rule-based stand-in for the LLM: substitution spans get
/// pseudo-phonetic mutations (homophone table, vowel swaps, consonant
/// doubling/dropping), insertion markers become filler words. The output
/// keeps the brace syntax and always passes validate_candidate.
std::string fallback_corrupt(const TaggedText& tagged, std::uint64_t seed,
                             const EntityLexicon* avoid = nullptr);

/// Removes tag decoration from a validated candidate: brace spans are
/// unwrapped, spacing is canonicalized.
std::string strip_tags(std::string_view candidate);

enum class Verdict { Accepted, RepairedByFallback, Failed };

const char* to_string(Verdict verdict);

struct RetryPolicy {
  int retries = 2;  // additional attempts after the first (3 attempts total)
  bool fallback_enabled = true;
};

struct GenerationRecord {
  std::string dialogue_id;
  std::size_t turn_index = 0;
  std::size_t replica = 0;
  std::uint64_t seed = 0;
  ErrorPlan plan;
  PromptBundle prompt;
  std::string raw_output;     // last LLM response, empty when none was made
  std::string accepted_text;  // final noisy text, tags stripped
  Verdict verdict = Verdict::Failed;
  int attempt_count = 0;
  std::vector<RejectionReason> rejection_reasons;  // last attempt's, if any
};

/// One utterance through the retry-then-fallback loop. Transport errors are
/// recorded, never thrown.
GenerationRecord generate_utterance(const PromptBundle& bundle, const ErrorPlan& plan,
                                    const TokenSequence& original,
                                    const TaggedText& tagged, LlmClient* client,
                                    const RetryPolicy& policy, std::uint64_t fallback_seed,
                                    const EntityLexicon* lexicon = nullptr);

struct GenerationConfig {
  std::uint64_t master_seed = 0;
  int retries = 2;
  bool fallback_enabled = true;
  int concurrency = 1;
  int multiplicity = 1;  // synthetic dialogues per clean dialogue
  int examples_in_prompt = 4;
  enum class ExampleSelection { RandomK, FirstK };
  ExampleSelection selection = ExampleSelection::RandomK;
  std::string system_template;  // empty uses default_system_instruction()
  TokenizePolicy policy{};
};

struct GenerationSummary {
  std::size_t dialogues = 0;
  std::size_t turns = 0;
  std::size_t accepted = 0;
  std::size_t repaired_by_fallback = 0;
  std::size_t failed = 0;
  std::size_t passthrough_turns = 0;  // untokenizable turns copied verbatim
  ErrorCounts realized_counts;        // synthetic vs clean, aggregated
  double realized_wer = 0.0;
};

struct GenerationOutput {
  Corpus synthetic;
  std::vector<GenerationRecord> records;
  GenerationSummary summary;
};

/// Algorithm: per clean dialogue and replica, sample a plan per turn from the
/// profile, tag the turn, prompt the client (or the fallback corruptor), and
/// assemble the synthetic corpus with turn structure preserved. Failed turns
/// fall back to the clean text and stay flagged in their record. Per-turn
/// seeds derive from (master seed, dialogue id, turn, replica), so output is
/// independent of worker scheduling; with the fallback corruptor the whole
/// run is bit-reproducible. Bounded concurrent requests when a client is
/// given; results are committed in input order.
GenerationOutput generate_corpus(const Corpus& clean,
                                 const std::vector<DecoratedPair>& examples,
                                 const ErrorProfile& profile,
                                 const GenerationConfig& config,
                                 LlmClient* client = nullptr,
                                 const EntityLexicon* lexicon = nullptr);

std::string record_to_json_line(const GenerationRecord& record);
void save_records(const std::vector<GenerationRecord>& records,
                  const std::filesystem::path& path);

}  // namespace asrnoise

#endif  // ASRNOISE_GENERATOR_HPP_
