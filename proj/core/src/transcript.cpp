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

#include "asrnoise/transcript.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "asrnoise/errors.hpp"

namespace asrnoise {

namespace {

using nlohmann::json;

constexpr std::string_view kInsertionLiteral = "(INSERTION)";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Word characters: ASCII alphanumerics, plus any non-ASCII byte (UTF-8
// continuation and lead bytes pass through untouched).
bool is_word_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || u >= 0x80;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Speaker Speaker::from_label(std::string_view label) {
  Speaker s;
  if (label == "doctor") {
    s.kind = Kind::Doctor;
  } else if (label == "patient") {
    s.kind = Kind::Patient;
  } else {
    s.kind = Kind::Other;
    s.label = std::string(label);
  }
  return s;
}

std::string Speaker::to_label() const {
  switch (kind) {
    case Kind::Doctor:
      return "doctor";
    case Kind::Patient:
      return "patient";
    case Kind::Other:
      return label;
  }
  return label;
}

std::string TokenizePolicy::version() const {
  if (lowercase && strip_punctuation) return kNormalizationPolicyV1;
  std::ostringstream out;
  out << "custom(lowercase=" << (lowercase ? 1 : 0)
      << ",strip_punctuation=" << (strip_punctuation ? 1 : 0) << ")";
  return out.str();
}

TokenSequence tokenize(std::string_view text, const TokenizePolicy& policy) {
  TokenSequence seq;
  seq.raw = std::string(text);

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(text[i])) ++i;
    if (i >= n) break;
    std::size_t chunk_begin = i;
    while (i < n && !is_space(text[i])) ++i;
    const std::size_t chunk_end = i;

    std::string token;
    std::size_t first_kept = std::string::npos;
    std::size_t last_kept = 0;
    for (std::size_t p = chunk_begin; p < chunk_end; ++p) {
      char c = text[p];
      bool keep = false;
      if (is_word_char(c)) {
        keep = true;
      } else if (!policy.strip_punctuation) {
        keep = true;
      } else if (c == '\'' || c == '-') {
        // Intra-word only: both raw neighbours must be word characters.
        keep = p > chunk_begin && p + 1 < chunk_end && is_word_char(text[p - 1]) &&
               is_word_char(text[p + 1]);
      }
      if (!keep) continue;
      if (policy.lowercase) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      token.push_back(c);
      if (first_kept == std::string::npos) first_kept = p;
      last_kept = p;
    }
    if (token.empty()) continue;  // punctuation-only chunk
    seq.tokens.push_back(std::move(token));
    seq.spans.push_back(TokenSpan{first_kept, last_kept + 1});
  }
  return seq;
}

std::string sanitize_turn_text(std::string_view raw) {
  std::string no_braces;
  no_braces.reserve(raw.size());
  for (char c : raw) {
    if (c == '{' || c == '}') continue;
    no_braces.push_back(c);
  }

  // Drop whitespace-delimited occurrences of the insertion literal.
  std::string out;
  out.reserve(no_braces.size());
  std::size_t i = 0;
  const std::size_t n = no_braces.size();
  bool first = true;
  while (i < n) {
    while (i < n && is_space(no_braces[i])) ++i;
    if (i >= n) break;
    std::size_t b = i;
    while (i < n && !is_space(no_braces[i])) ++i;
    std::string_view chunk(no_braces.data() + b, i - b);
    if (chunk == kInsertionLiteral) continue;
    if (!first) out.push_back(' ');
    out.append(chunk);
    first = false;
  }
  return trim(out);
}

namespace {

Turn turn_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("speaker") || !j.contains("text") ||
      !j["speaker"].is_string() || !j["text"].is_string()) {
    throw DataError(where + ": turn must be {\"speaker\": str, \"text\": str}");
  }
  Turn turn;
  turn.speaker = Speaker::from_label(j["speaker"].get<std::string>());
  turn.text = sanitize_turn_text(j["text"].get<std::string>());
  if (turn.text.empty()) {
    throw DataError(where + ": turn text empty after sanitization");
  }
  return turn;
}

Dialogue dialogue_from_json(const json& j, const std::string& where,
                            const std::string* outer_id = nullptr) {
  if (!j.is_object()) throw DataError(where + ": dialogue must be an object");
  Dialogue d;
  if (j.contains("id")) {
    if (!j["id"].is_string()) throw DataError(where + ": \"id\" must be a string");
    d.id = j["id"].get<std::string>();
    if (outer_id != nullptr && d.id != *outer_id) {
      throw DataError(where + ": nested dialogue id \"" + d.id +
                      "\" disagrees with outer id \"" + *outer_id + "\"");
    }
  } else if (outer_id != nullptr) {
    d.id = *outer_id;
  } else {
    throw DataError(where + ": missing \"id\"");
  }
  if (!j.contains("turns") || !j["turns"].is_array() || j["turns"].empty()) {
    throw DataError(where + ": \"turns\" must be a non-empty array");
  }
  for (const auto& t : j["turns"]) {
    d.turns.push_back(turn_from_json(t, where));
  }
  return d;
}

json dialogue_to_json(const Dialogue& d) {
  json turns = json::array();
  for (const auto& t : d.turns) {
    turns.push_back({{"speaker", t.speaker.to_label()}, {"text", t.text}});
  }
  return json{{"id", d.id}, {"turns", std::move(turns)}};
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  return out;
}

json parse_line(const std::string& line, const std::string& where) {
  json j = json::parse(line, /*cb=*/nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw DataError(where + ": invalid JSON");
  return j;
}

}  // namespace

std::string dialogue_to_json_line(const Dialogue& dialogue) {
  return dialogue_to_json(dialogue).dump();
}

Dialogue dialogue_from_json_line(std::string_view line) {
  json j = parse_line(std::string(line), "dialogue");
  return dialogue_from_json(j, "dialogue");
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  Corpus corpus;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    json j = parse_line(line, where);
    Dialogue d = dialogue_from_json(j, where);
    if (!seen.insert(d.id).second) {
      throw DataError(where + ": duplicate dialogue id \"" + d.id + "\"");
    }
    corpus.push_back(std::move(d));
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  for (const auto& d : corpus) {
    out << dialogue_to_json_line(d) << '\n';
  }
}

PairedCorpus load_paired_corpus(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  PairedCorpus corpus;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    json j = parse_line(line, where);
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
        !j.contains("reference") || !j.contains("hypothesis")) {
      throw DataError(where +
                      ": expected {\"id\", \"reference\", \"hypothesis\"}");
    }
    PairedDialogue p;
    p.id = j["id"].get<std::string>();
    if (!seen.insert(p.id).second) {
      throw DataError(where + ": duplicate dialogue id \"" + p.id + "\"");
    }
    p.reference = dialogue_from_json(j["reference"], where, &p.id);
    p.hypothesis = dialogue_from_json(j["hypothesis"], where, &p.id);
    corpus.push_back(std::move(p));
  }
  return corpus;
}

void save_paired_corpus(const PairedCorpus& corpus, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  for (const auto& p : corpus) {
    json ref = dialogue_to_json(p.reference);
    json hyp = dialogue_to_json(p.hypothesis);
    ref.erase("id");
    hyp.erase("id");
    json j{{"id", p.id}, {"reference", std::move(ref)}, {"hypothesis", std::move(hyp)}};
    out << j.dump() << '\n';
  }
}

PairedCorpus pair_corpora(const Corpus& reference, const Corpus& hypothesis) {
  std::unordered_map<std::string, const Dialogue*> by_id;
  for (const auto& d : hypothesis) by_id.emplace(d.id, &d);

  PairedCorpus corpus;
  std::vector<std::string> missing;
  for (const auto& ref : reference) {
    auto it = by_id.find(ref.id);
    if (it == by_id.end()) {
      missing.push_back(ref.id);
      continue;
    }
    corpus.push_back(PairedDialogue{ref.id, ref, *it->second});
    by_id.erase(it);
  }
  if (!missing.empty() || !by_id.empty()) {
    std::ostringstream msg;
    msg << "corpora do not share dialogue ids;";
    if (!missing.empty()) {
      msg << " missing from hypothesis:";
      for (const auto& id : missing) msg << ' ' << id;
      msg << ';';
    }
    if (!by_id.empty()) {
      msg << " missing from reference:";
      for (const auto& [id, d] : by_id) msg << ' ' << id;
    }
    throw DataError(msg.str());
  }
  return corpus;
}

}  // namespace asrnoise
