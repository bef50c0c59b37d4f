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

#include "asrnoise/lexicon.hpp"

#include <algorithm>
#include <fstream>

#include "asrnoise/errors.hpp"

namespace asrnoise {

void EntityLexicon::add_term(std::string_view raw, const TokenizePolicy& policy) {
  TokenSequence seq = tokenize(raw, policy);
  if (seq.empty()) return;
  if (std::find(terms.begin(), terms.end(), seq.tokens) == terms.end()) {
    terms.push_back(std::move(seq.tokens));
  }
}

bool EntityLexicon::contains_token(std::string_view token) const {
  for (const auto& term : terms) {
    for (const auto& word : term) {
      if (word == token) return true;
    }
  }
  return false;
}

EntityLexicon load_lexicon(const std::filesystem::path& path,
                           const TokenizePolicy& policy) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  EntityLexicon lexicon;
  lexicon.label = path.stem().string();
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    lexicon.add_term(line, policy);
  }
  return lexicon;
}

std::vector<std::size_t> extract_entities(std::span<const std::string> tokens,
                                          const EntityLexicon& lexicon) {
  std::vector<std::size_t> found;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t best_term = lexicon.terms.size();
    std::size_t best_len = 0;
    for (std::size_t t = 0; t < lexicon.terms.size(); ++t) {
      const auto& term = lexicon.terms[t];
      if (term.size() <= best_len || term.size() > tokens.size() - i) continue;
      if (std::equal(term.begin(), term.end(), tokens.begin() + i)) {
        best_term = t;
        best_len = term.size();
      }
    }
    if (best_len > 0) {
      found.push_back(best_term);
      i += best_len;
    } else {
      ++i;
    }
  }
  return found;
}

}  // namespace asrnoise
