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

#include "asrnoise/generator.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "asrnoise/errors.hpp"
#include "asrnoise/rng.hpp"

namespace asrnoise {

namespace {

using nlohmann::json;
using Segment = TaggedText::Segment;

// ---------------------------------------------------------------------------
// Prompt construction
// ---------------------------------------------------------------------------

constexpr std::string_view kDefaultSystemInstruction =
    "You are an AI assistant that simulates the transcription errors made by "
    "automatic speech recognition (ASR) systems. You will be given sentences "
    "annotated with error tags describing which mistakes to make. Corrupt each "
    "sentence exactly as the tags direct: replace every word span enclosed in "
    "curly brackets {} with phonetically similar words, keeping the curly "
    "brackets around the replacement; replace every (INSERTION) marker with one "
    "to three generic filler words that introduce no domain-specific "
    "terminology such as drug names or symptoms; copy every untagged word "
    "unchanged. Reply with the corrupted sentence only.";

}  // namespace

std::string default_system_instruction() {
  return std::string(kDefaultSystemInstruction);
}

std::vector<DecoratedPair> load_examples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open examples file " + path.string());
  std::vector<DecoratedPair> examples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("input") ||
        !j.contains("response") || !j["input"].is_string() ||
        !j["response"].is_string()) {
      throw DataError(where + ": expected {\"input\": str, \"response\": str}");
    }
    examples.push_back(DecoratedPair{j["input"].get<std::string>(),
                                     j["response"].get<std::string>()});
  }
  return examples;
}

void save_examples(const std::vector<DecoratedPair>& examples,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  for (const auto& ex : examples) {
    out << json{{"input", ex.input}, {"response", ex.response}}.dump() << '\n';
  }
}

PromptBundle build_prompt(std::span<const DecoratedPair> examples,
                          const TaggedText& tagged_query,
                          std::string_view system_template) {
  if (examples.empty()) {
    throw ConfigError("build_prompt: at least one in-context example is required");
  }
  PromptBundle bundle;
  bundle.system_instruction = system_template.empty()
                                  ? default_system_instruction()
                                  : std::string(system_template);
  for (const auto& ex : examples) {
    parse_tagged(ex.input);  // malformed examples are data errors, not prompts
    parse_tagged(ex.response);
    bundle.examples.emplace_back(ex.input, ex.response);
  }
  bundle.query = render_tagged(tagged_query);
  return bundle;
}

std::string render_user_message(const PromptBundle& bundle) {
  std::string out;
  for (const auto& [input, response] : bundle.examples) {
    out += "### Input: ";
    out += input;
    out += "\n### Response: ";
    out += response;
    out += "\n\n";
  }
  out += "### Input: ";
  out += bundle.query;
  out += "\n### Response:";
  return out;
}

std::vector<ChatMessage> bundle_messages(const PromptBundle& bundle) {
  return {ChatMessage{"system", bundle.system_instruction},
          ChatMessage{"user", render_user_message(bundle)}};
}

// ---------------------------------------------------------------------------
// Candidate validation
// ---------------------------------------------------------------------------

const char* to_string(RejectCode code) {
  switch (code) {
    case RejectCode::MalformedOutput:
      return "malformed-output";
    case RejectCode::UntaggedRegionModified:
      return "untagged-region-modified";
    case RejectCode::SubstitutionNotPerformed:
      return "substitution-not-performed";
    case RejectCode::InsertionNotPerformed:
      return "insertion-not-performed";
    case RejectCode::InsertionCountInvalid:
      return "insertion-count-invalid";
    case RejectCode::InsertionDomainTerm:
      return "insertion-domain-term";
    case RejectCode::DeletedTokenResurrected:
      return "deleted-token-resurrected";
    case RejectCode::StructureMismatch:
      return "structure-mismatch";
  }
  return "structure-mismatch";
}

namespace {

// Expected utterance structure derived from the plan.
struct Element {
  enum class Kind { Plain, Sub, Ins, Del };
  Kind kind = Kind::Plain;
  std::vector<std::string> tokens;  // Plain: run; Sub: original span; Del: one token
};

std::vector<Element> build_elements(const TokenSequence& tokens, const ErrorPlan& plan) {
  const std::int64_t n = static_cast<std::int64_t>(tokens.size());
  std::map<std::int64_t, EditKind> by_index;
  for (const auto& d : plan.decisions) {
    const std::int64_t lo = d.kind == EditKind::Insertion ? -1 : 0;
    if (d.kind == EditKind::Match || d.token_index < lo || d.token_index >= n ||
        !by_index.emplace(d.token_index, d.kind).second) {
      throw DataError("validate_candidate: plan is inconsistent with the utterance");
    }
  }

  std::vector<Element> elements;
  auto append = [&elements](Element::Kind kind, std::string token) {
    if (kind == Element::Kind::Plain && !elements.empty() &&
        elements.back().kind == Element::Kind::Plain) {
      elements.back().tokens.push_back(std::move(token));
      return;
    }
    elements.push_back(Element{kind, {std::move(token)}});
  };

  if (by_index.count(-1) != 0) {
    elements.push_back(Element{Element::Kind::Ins, {}});
  }
  bool prev_substituted = false;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto it = by_index.find(i);
    const std::string& token = tokens.tokens[static_cast<std::size_t>(i)];
    bool substituted = false;
    if (it == by_index.end()) {
      append(Element::Kind::Plain, token);
    } else {
      switch (it->second) {
        case EditKind::Substitution:
          if (prev_substituted && elements.back().kind == Element::Kind::Sub) {
            elements.back().tokens.push_back(token);
          } else {
            elements.push_back(Element{Element::Kind::Sub, {token}});
          }
          substituted = true;
          break;
        case EditKind::Deletion:
          elements.push_back(Element{Element::Kind::Del, {token}});
          break;
        case EditKind::Insertion:
          append(Element::Kind::Plain, token);
          elements.push_back(Element{Element::Kind::Ins, {}});
          break;
        case EditKind::Match:
          break;
      }
    }
    prev_substituted = substituted;
  }
  return elements;
}

// Candidate flattened into brace-span and plain-run groups of normalized
// tokens.
struct Group {
  bool is_span = false;
  std::vector<std::string> tokens;
};

std::vector<std::string> normalize_words(const std::vector<std::string>& words,
                                         const TokenizePolicy& policy) {
  std::vector<std::string> out;
  for (const auto& word : words) {
    TokenSequence seq = tokenize(word, policy);
    for (auto& token : seq.tokens) out.push_back(std::move(token));
  }
  return out;
}

struct Matcher {
  const std::vector<Element>& elements;
  const std::vector<Group>& groups;
  const EntityLexicon* lexicon;

  // Consumed candidate tokens per element, filled on success.
  std::vector<std::vector<std::string>> matched;
  bool failed = false;
  std::size_t deepest_elem = 0;
  RejectionReason deepest_reason{RejectCode::StructureMismatch, "no match"};
  // Failed (elem, group, offset) states; keeps backtracking over repeated
  // insertion slots polynomial even on adversarial candidates.
  std::unordered_set<std::uint64_t> dead_states;
  std::uint64_t offset_stride = 1;  // max group size + 1

  // The deepest failure wins; at equal depth the first one recorded is the
  // most specific (later same-depth failures come from backtracking).
  void fail(std::size_t elem, RejectCode code, std::string detail) {
    if (!failed || elem > deepest_elem) {
      failed = true;
      deepest_elem = elem;
      deepest_reason = RejectionReason{code, std::move(detail)};
    }
  }

  bool domain_term(const std::string& token) const {
    return lexicon != nullptr && lexicon->contains_token(token);
  }

  bool run(std::size_t elem, std::size_t group, std::size_t offset) {
    while (group < groups.size() && offset == groups[group].tokens.size()) {
      ++group;
      offset = 0;
    }
    if (elem == elements.size()) {
      if (group == groups.size()) return true;
      fail(elem, RejectCode::UntaggedRegionModified, "unexpected trailing words");
      return false;
    }
    const std::uint64_t state =
        (static_cast<std::uint64_t>(elem) * (groups.size() + 1) + group) *
            offset_stride +
        offset;
    if (dead_states.count(state) != 0) return false;
    if (!dispatch(elem, group, offset)) {
      dead_states.insert(state);
      return false;
    }
    return true;
  }

  bool dispatch(std::size_t elem, std::size_t group, std::size_t offset) {
    const Element& e = elements[elem];
    switch (e.kind) {
      case Element::Kind::Del:
        if (run(elem + 1, group, offset)) {
          matched[elem] = {};
          return true;
        }
        return false;

      case Element::Kind::Plain: {
        if (group >= groups.size()) {
          fail(elem, RejectCode::UntaggedRegionModified, "untagged words missing");
          return false;
        }
        const Group& g = groups[group];
        if (g.is_span) {
          fail(elem, RejectCode::UntaggedRegionModified,
               "brace span over an untagged region");
          return false;
        }
        if (g.tokens.size() - offset < e.tokens.size()) {
          fail(elem, RejectCode::UntaggedRegionModified, "untagged words missing");
          return false;
        }
        for (std::size_t k = 0; k < e.tokens.size(); ++k) {
          if (g.tokens[offset + k] != e.tokens[k]) {
            fail(elem, RejectCode::UntaggedRegionModified,
                 "expected \"" + e.tokens[k] + "\", found \"" + g.tokens[offset + k] +
                     "\"");
            return false;
          }
        }
        if (run(elem + 1, group, offset + e.tokens.size())) {
          matched[elem] = e.tokens;
          return true;
        }
        return false;
      }

      case Element::Kind::Sub: {
        if (group >= groups.size() || !groups[group].is_span || offset != 0) {
          fail(elem, RejectCode::SubstitutionNotPerformed,
               "requested substitution span is not braced");
          return false;
        }
        const Group& g = groups[group];
        if (g.tokens == e.tokens) {
          fail(elem, RejectCode::SubstitutionNotPerformed,
               "span content identical to the original");
          return false;
        }
        if (run(elem + 1, group + 1, 0)) {
          matched[elem] = g.tokens;
          return true;
        }
        return false;
      }

      case Element::Kind::Ins: {
        if (group >= groups.size()) {
          fail(elem, RejectCode::InsertionCountInvalid, "no inserted words");
          return false;
        }
        const Group& g = groups[group];
        if (g.is_span && offset == 0) {
          if (g.tokens.empty() || g.tokens.size() > 3) {
            fail(elem, RejectCode::InsertionCountInvalid,
                 "insertions must be 1-3 words");
            return false;
          }
          for (const auto& token : g.tokens) {
            if (domain_term(token)) {
              fail(elem, RejectCode::InsertionDomainTerm,
                   "inserted domain term \"" + token + "\"");
              return false;
            }
          }
          if (run(elem + 1, group + 1, 0)) {
            matched[elem] = g.tokens;
            return true;
          }
          return false;
        }
        // Plain realization: try 1 to 3 words from the current run.
        const std::size_t available = g.tokens.size() - offset;
        bool any_words = false;
        bool domain_blocked = false;
        for (std::size_t k = 1; k <= 3 && k <= available; ++k) {
          const std::string& token = g.tokens[offset + k - 1];
          if (domain_term(token)) {
            fail(elem, RejectCode::InsertionDomainTerm,
                 "inserted domain term \"" + token + "\"");
            domain_blocked = true;
            break;
          }
          any_words = true;
          if (run(elem + 1, group, offset + k)) {
            matched[elem].assign(g.tokens.begin() + offset,
                                 g.tokens.begin() + offset + k);
            return true;
          }
        }
        if (!any_words && !domain_blocked) {
          fail(elem, RejectCode::InsertionCountInvalid, "no inserted words");
        }
        return false;
      }
    }
    return false;
  }
};

}  // namespace

ValidationResult validate_candidate(std::string_view candidate, const ErrorPlan& plan,
                                    const TokenSequence& original,
                                    const EntityLexicon* lexicon) {
  ValidationResult result;

  TaggedText parsed;
  try {
    parsed = parse_tagged(candidate);
  } catch (const TagParseError& e) {
    result.reasons.push_back(RejectionReason{RejectCode::MalformedOutput, e.what()});
    return result;
  }

  const TokenizePolicy policy{};
  std::vector<Group> groups;
  for (const auto& seg : parsed.segments) {
    if (seg.kind == Segment::Kind::InsertionMarker) {
      result.reasons.push_back(RejectionReason{
          RejectCode::InsertionNotPerformed, "(INSERTION) marker left in output"});
      return result;
    }
    Group g;
    g.is_span = seg.kind == Segment::Kind::SubstitutionSpan;
    g.tokens = normalize_words(seg.tokens, policy);
    if (g.is_span && g.tokens.empty()) {
      result.reasons.push_back(RejectionReason{RejectCode::MalformedOutput,
                                               "substitution span normalizes to nothing"});
      return result;
    }
    if (!g.tokens.empty()) groups.push_back(std::move(g));
  }

  const std::vector<Element> elements = build_elements(original, plan);
  Matcher matcher{elements, groups, lexicon, {}, false, 0,
                  RejectionReason{RejectCode::StructureMismatch, "no match"},
                  {}, 1};
  for (const auto& g : groups) {
    matcher.offset_stride = std::max<std::uint64_t>(matcher.offset_stride,
                                                    g.tokens.size() + 1);
  }
  matcher.matched.resize(elements.size());
  if (!matcher.run(0, 0, 0)) {
    result.reasons.push_back(matcher.deepest_reason);
    return result;
  }

  // Deleted words must not resurface in new material bordering their site.
  for (std::size_t e = 0; e < elements.size(); ++e) {
    if (elements[e].kind != Element::Kind::Del) continue;
    const std::string& deleted = elements[e].tokens.front();
    auto is_new_material = [&](std::size_t idx) {
      return elements[idx].kind == Element::Kind::Sub ||
             elements[idx].kind == Element::Kind::Ins;
    };
    for (std::size_t left = e; left-- > 0;) {
      if (elements[left].kind == Element::Kind::Del) continue;
      if (is_new_material(left) && !matcher.matched[left].empty() &&
          matcher.matched[left].back() == deleted) {
        result.reasons.push_back(
            RejectionReason{RejectCode::DeletedTokenResurrected,
                            "deleted word \"" + deleted + "\" reappears"});
        return result;
      }
      break;
    }
    for (std::size_t right = e + 1; right < elements.size(); ++right) {
      if (elements[right].kind == Element::Kind::Del) continue;
      if (is_new_material(right) && !matcher.matched[right].empty() &&
          matcher.matched[right].front() == deleted) {
        result.reasons.push_back(
            RejectionReason{RejectCode::DeletedTokenResurrected,
                            "deleted word \"" + deleted + "\" reappears"});
        return result;
      }
      break;
    }
  }

  result.accepted = true;
  return result;
}

// ---------------------------------------------------------------------------
// Fallback corruptor
// ---------------------------------------------------------------------------

namespace {

const std::unordered_map<std::string, std::string>& homophone_table() {
  static const std::unordered_map<std::string, std::string> table = {
      {"wheezy", "weesy"},       {"tylenol", "tie-and-all"},
      {"diarrhea", "diary"},     {"diarrhoea", "diary"},
      {"white", "whish"},        {"spots", "spits"},
      {"back", "bak"},           {"your", "yer"},
      {"you", "ya"},             {"throat", "throt"},
      {"redness", "reddness"},   {"noticed", "notice"},
      {"toilet", "twolle"},      {"stomach", "stomack"},
      {"pain", "pane"},          {"fever", "feaver"},
      {"cough", "coff"},         {"breathing", "breethin"},
      {"stool", "stall"},        {"kind", "kinda"},
  };
  return table;
}

const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> fillers = {
      "um", "uh", "ah", "er", "well", "so", "like", "okay", "right", "hmm"};
  return fillers;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

std::string lowercase_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

// One pseudo-phonetic mutation; returns empty when the op does not apply.
std::string apply_mutation(const std::string& word, int op, Rng& rng) {
  std::vector<std::size_t> positions;
  switch (op) {
    case 0: {  // vowel swap
      for (std::size_t i = 0; i < word.size(); ++i) {
        if (is_vowel(word[i])) positions.push_back(i);
      }
      if (positions.empty()) return {};
      const std::size_t at = positions[rng.next_below(positions.size())];
      static constexpr char kVowels[] = {'a', 'e', 'i', 'o', 'u'};
      char replacement = kVowels[rng.next_below(5)];
      while (replacement == word[at]) replacement = kVowels[rng.next_below(5)];
      std::string out = word;
      out[at] = replacement;
      return out;
    }
    case 1: {  // consonant doubling
      for (std::size_t i = 0; i < word.size(); ++i) {
        if (!is_vowel(word[i])) positions.push_back(i);
      }
      if (positions.empty()) return {};
      const std::size_t at = positions[rng.next_below(positions.size())];
      std::string out = word;
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), word[at]);
      return out;
    }
    case 2: {  // consonant drop
      if (word.size() < 2) return {};
      for (std::size_t i = 0; i < word.size(); ++i) {
        if (!is_vowel(word[i])) positions.push_back(i);
      }
      if (positions.empty()) return {};
      const std::size_t at = positions[rng.next_below(positions.size())];
      std::string out = word;
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(at));
      return out;
    }
    default: {  // vowel drop
      if (word.size() < 2) return {};
      for (std::size_t i = 0; i < word.size(); ++i) {
        if (is_vowel(word[i])) positions.push_back(i);
      }
      if (positions.empty()) return {};
      const std::size_t at = positions[rng.next_below(positions.size())];
      std::string out = word;
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(at));
      return out;
    }
  }
}

std::string mutate_token(const std::string& surface, Rng& rng,
                         const std::unordered_set<std::string>& avoid) {
  const std::string word = lowercase_ascii(surface);
  auto acceptable = [&](const std::string& m) {
    return !m.empty() && m != word && avoid.count(m) == 0;
  };

  if (auto it = homophone_table().find(word); it != homophone_table().end()) {
    if (acceptable(it->second)) return it->second;
  }
  const int first_op = static_cast<int>(rng.next_below(4));
  for (int round = 0; round < 8; ++round) {
    const int op = (first_op + round) % 4;
    std::string mutated = apply_mutation(word, op, rng);
    if (acceptable(mutated)) return mutated;
  }
  std::string padded = word;
  do {
    padded.push_back('h');
  } while (!acceptable(padded));
  return padded;
}

}  // namespace

std::string fallback_corrupt(const TaggedText& tagged, std::uint64_t seed,
                             const EntityLexicon* avoid) {
  Rng rng(seed);

  // Words that must not be produced: deleted words (they would read as
  // resurrections next to their site) and, for insertions, lexicon terms.
  std::unordered_set<std::string> deleted;
  for (const auto& [index, token] : tagged.deleted_tokens) deleted.insert(token);

  TaggedText corrupted;
  corrupted.segments.reserve(tagged.segments.size());
  for (const auto& seg : tagged.segments) {
    switch (seg.kind) {
      case Segment::Kind::Plain:
        corrupted.segments.push_back(seg);
        break;
      case Segment::Kind::SubstitutionSpan: {
        Segment out{Segment::Kind::SubstitutionSpan, {}};
        for (const auto& token : seg.tokens) {
          out.tokens.push_back(mutate_token(token, rng, deleted));
        }
        corrupted.segments.push_back(std::move(out));
        break;
      }
      case Segment::Kind::InsertionMarker: {
        const auto& fillers = filler_words();
        const std::size_t start = rng.next_below(fillers.size());
        std::string chosen;
        for (std::size_t k = 0; k < fillers.size(); ++k) {
          const std::string& f = fillers[(start + k) % fillers.size()];
          if (deleted.count(f) != 0) continue;
          if (avoid != nullptr && avoid->contains_token(f)) continue;
          chosen = f;
          break;
        }
        if (chosen.empty()) {
          chosen = "mmm";
          while (deleted.count(chosen) != 0 ||
                 (avoid != nullptr && avoid->contains_token(chosen))) {
            chosen.push_back('m');
          }
        }
        corrupted.segments.push_back(Segment{Segment::Kind::Plain, {chosen}});
        break;
      }
    }
  }
  return render_tagged(corrupted);
}

std::string strip_tags(std::string_view candidate) {
  const TaggedText parsed = parse_tagged(candidate);
  std::string out;
  for (const auto& seg : parsed.segments) {
    if (seg.kind == Segment::Kind::InsertionMarker) continue;
    for (const auto& token : seg.tokens) {
      if (!out.empty()) out.push_back(' ');
      out += token;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generation loop
// ---------------------------------------------------------------------------

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Accepted:
      return "accepted";
    case Verdict::RepairedByFallback:
      return "repaired_by_fallback";
    case Verdict::Failed:
      return "failed";
  }
  return "failed";
}

GenerationRecord generate_utterance(const PromptBundle& bundle, const ErrorPlan& plan,
                                    const TokenSequence& original,
                                    const TaggedText& tagged, LlmClient* client,
                                    const RetryPolicy& policy, std::uint64_t fallback_seed,
                                    const EntityLexicon* lexicon) {
  GenerationRecord record;
  record.plan = plan;
  record.prompt = bundle;
  record.seed = fallback_seed;

  if (client != nullptr) {
    const auto messages = bundle_messages(bundle);
    const int attempts = policy.retries + 1;
    for (int attempt = 0; attempt < attempts; ++attempt) {
      record.attempt_count = attempt + 1;
      LlmResult llm = client->complete(messages);
      if (!llm.ok) {
        record.rejection_reasons = {
            RejectionReason{RejectCode::MalformedOutput, llm.error}};
        continue;
      }
      record.raw_output = llm.text;
      ValidationResult verdict = validate_candidate(llm.text, plan, original, lexicon);
      if (verdict.accepted) {
        record.verdict = Verdict::Accepted;
        record.accepted_text = strip_tags(llm.text);
        record.rejection_reasons.clear();
        return record;
      }
      record.rejection_reasons = std::move(verdict.reasons);
    }
  }

  if (policy.fallback_enabled) {
    const std::string candidate = fallback_corrupt(tagged, fallback_seed, lexicon);
    record.verdict = Verdict::RepairedByFallback;
    record.accepted_text = strip_tags(candidate);
    return record;
  }

  record.verdict = Verdict::Failed;
  return record;
}

namespace {

struct TurnTask {
  std::size_t dialogue_index = 0;
  std::size_t replica = 0;
  std::size_t turn_index = 0;
  std::uint64_t seed = 0;
  TokenSequence tokens;
  ErrorPlan plan;
  TaggedText tagged;
  bool passthrough = false;  // untokenizable or untouched by the plan
};

std::vector<DecoratedPair> select_examples(const std::vector<DecoratedPair>& examples,
                                           const GenerationConfig& config) {
  const std::size_t k = std::min<std::size_t>(
      examples.size(), static_cast<std::size_t>(std::max(config.examples_in_prompt, 1)));
  if (config.selection == GenerationConfig::ExampleSelection::FirstK ||
      k == examples.size()) {
    return {examples.begin(), examples.begin() + static_cast<std::ptrdiff_t>(k)};
  }
  // Seeded sample without replacement, order-preserving.
  Rng rng(mix_seed(config.master_seed, std::string_view("example-selection")));
  std::vector<std::size_t> indices(examples.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.next_below(indices.size() - i);
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  std::sort(indices.begin(), indices.end());
  std::vector<DecoratedPair> chosen;
  chosen.reserve(k);
  for (std::size_t i : indices) chosen.push_back(examples[i]);
  return chosen;
}

}  // namespace

GenerationOutput generate_corpus(const Corpus& clean,
                                 const std::vector<DecoratedPair>& examples,
                                 const ErrorProfile& profile,
                                 const GenerationConfig& config, LlmClient* client,
                                 const EntityLexicon* lexicon) {
  profile.validate();
  if (examples.empty()) {
    throw ConfigError("generate_corpus: in-context examples must not be empty");
  }
  if (config.multiplicity < 1) throw ConfigError("multiplicity must be >= 1");
  if (config.concurrency < 1) throw ConfigError("concurrency must be >= 1");
  if (config.retries < 0) throw ConfigError("retries must be >= 0");
  if (client == nullptr && !config.fallback_enabled) {
    throw ConfigError("fallback must be enabled when no LLM endpoint is configured");
  }
  if (profile.normalization_policy_version != config.policy.version()) {
    throw DataError("profile normalization policy \"" +
                    profile.normalization_policy_version +
                    "\" does not match the run policy \"" + config.policy.version() +
                    "\"; mixing policies is not supported");
  }

  const std::vector<DecoratedPair> prompt_examples = select_examples(examples, config);
  const RetryPolicy policy{config.retries, config.fallback_enabled};

  GenerationOutput output;
  output.synthetic.reserve(clean.size() * static_cast<std::size_t>(config.multiplicity));

  // Plans and prompts are sampled up front in input order; only the LLM
  // round-trips run on workers.
  std::vector<TurnTask> tasks;
  for (std::size_t d = 0; d < clean.size(); ++d) {
    for (int replica = 0; replica < config.multiplicity; ++replica) {
      for (std::size_t t = 0; t < clean[d].turns.size(); ++t) {
        TurnTask task;
        task.dialogue_index = d;
        task.replica = static_cast<std::size_t>(replica);
        task.turn_index = t;
        task.seed = derive_seed(config.master_seed, clean[d].id, t,
                                static_cast<std::uint64_t>(replica));
        task.tokens = tokenize(clean[d].turns[t].text, config.policy);
        if (task.tokens.empty()) {
          task.passthrough = true;
        } else {
          task.plan = sample_error_plan(task.tokens, profile, task.seed);
          task.passthrough = task.plan.empty();
          task.tagged = apply_plan(task.tokens, task.plan);
        }
        tasks.push_back(std::move(task));
      }
    }
  }

  std::vector<GenerationRecord> records(tasks.size());
  auto process = [&](std::size_t i) {
    const TurnTask& task = tasks[i];
    const Dialogue& dialogue = clean[task.dialogue_index];
    const std::string& clean_text = dialogue.turns[task.turn_index].text;
    GenerationRecord record;
    if (task.passthrough) {
      record.verdict = Verdict::Accepted;
      record.accepted_text = clean_text;
      record.attempt_count = 0;
      if (!task.tokens.empty()) {
        record.prompt = build_prompt(prompt_examples, task.tagged,
                                     config.system_template);
      }
    } else {
      const PromptBundle bundle =
          build_prompt(prompt_examples, task.tagged, config.system_template);
      record = generate_utterance(bundle, task.plan, task.tokens, task.tagged, client,
                                  policy, task.seed, lexicon);
    }
    record.dialogue_id = dialogue.id;
    record.turn_index = task.turn_index;
    record.replica = task.replica;
    record.seed = task.seed;
    record.plan = task.plan;
    records[i] = std::move(record);
  };

  const bool parallel = client != nullptr && config.concurrency > 1 && tasks.size() > 1;
  if (parallel) {
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::min<std::size_t>(
        static_cast<std::size_t>(config.concurrency), tasks.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          process(i);
        }
      });
    }
    for (auto& thread : pool) thread.join();
  } else {
    for (std::size_t i = 0; i < tasks.size(); ++i) process(i);
  }

  // Commit in input order: rebuild dialogues and aggregate the summary.
  GenerationSummary& summary = output.summary;
  std::size_t task_i = 0;
  for (std::size_t d = 0; d < clean.size(); ++d) {
    for (int replica = 0; replica < config.multiplicity; ++replica) {
      Dialogue synthetic;
      synthetic.id = replica == 0 ? clean[d].id
                                  : clean[d].id + ".aug" + std::to_string(replica);
      for (std::size_t t = 0; t < clean[d].turns.size(); ++t, ++task_i) {
        const TurnTask& task = tasks[task_i];
        GenerationRecord& record = records[task_i];
        const Turn& clean_turn = clean[d].turns[t];
        std::string text = record.verdict == Verdict::Failed ? clean_turn.text
                                                             : record.accepted_text;
        if (text.empty()) text = clean_turn.text;
        synthetic.turns.push_back(Turn{clean_turn.speaker, text});

        ++summary.turns;
        if (task.tokens.empty()) ++summary.passthrough_turns;
        switch (record.verdict) {
          case Verdict::Accepted:
            ++summary.accepted;
            break;
          case Verdict::RepairedByFallback:
            ++summary.repaired_by_fallback;
            break;
          case Verdict::Failed:
            ++summary.failed;
            break;
        }
        const TokenSequence syn_tokens = tokenize(text, config.policy);
        summary.realized_counts += error_counts(align(task.tokens, syn_tokens));
        output.records.push_back(std::move(record));
      }
      output.synthetic.push_back(std::move(synthetic));
      ++summary.dialogues;
    }
  }
  summary.realized_wer =
      summary.realized_counts.ref_len == 0
          ? 0.0
          : static_cast<double>(summary.realized_counts.total_errors()) /
                static_cast<double>(summary.realized_counts.ref_len);
  return output;
}

// ---------------------------------------------------------------------------
// Record serialization
// ---------------------------------------------------------------------------

std::string record_to_json_line(const GenerationRecord& record) {
  json decisions = json::array();
  for (const auto& d : record.plan.decisions) {
    decisions.push_back({{"index", d.token_index}, {"kind", to_string(d.kind)}});
  }
  json examples = json::array();
  for (const auto& [input, response] : record.prompt.examples) {
    examples.push_back({{"input", input}, {"response", response}});
  }
  json reasons = json::array();
  for (const auto& reason : record.rejection_reasons) {
    reasons.push_back({{"code", to_string(reason.code)}, {"detail", reason.detail}});
  }
  json j{
      {"dialogue_id", record.dialogue_id},
      {"turn_index", record.turn_index},
      {"replica", record.replica},
      {"seed", record.seed},
      {"plan",
       {{"decisions", std::move(decisions)},
        {"rng_seed", record.plan.rng_seed},
        {"profile_label", record.plan.profile_label}}},
      {"prompt",
       {{"system", record.prompt.system_instruction},
        {"examples", std::move(examples)},
        {"query", record.prompt.query}}},
      {"raw_output", record.raw_output},
      {"accepted_text", record.accepted_text},
      {"verdict", to_string(record.verdict)},
      {"attempt_count", record.attempt_count},
      {"rejection_reasons", std::move(reasons)},
  };
  return j.dump();
}

void save_records(const std::vector<GenerationRecord>& records,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  for (const auto& record : records) {
    out << record_to_json_line(record) << '\n';
  }
}

}  // namespace asrnoise
