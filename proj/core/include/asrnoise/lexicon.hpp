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

#ifndef ASRNOISE_LEXICON_HPP_
#define ASRNOISE_LEXICON_HPP_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asrnoise/transcript.hpp"

namespace asrnoise {

/// Gazetteer of domain terms, each stored tokenized under the corpus
/// normalization policy. Multi-word terms are supported; extraction is
/// greedy longest-match.
struct EntityLexicon {
  std::vector<std::vector<std::string>> terms;
  std::string label;

  bool empty() const { return terms.empty(); }

  /// Adds a term given as raw text; no-op for text that normalizes to
  /// nothing.
  void add_term(std::string_view raw, const TokenizePolicy& policy = {});

  bool contains_token(std::string_view token) const;
};

/// Lexicon file: UTF-8, one term per line, '#' starts a comment.
EntityLexicon load_lexicon(const std::filesystem::path& path,
                           const TokenizePolicy& policy = {});

/// Term occurrences found by greedy longest-match, as indexes into
/// lexicon.terms (with multiplicity, in text order).
std::vector<std::size_t> extract_entities(std::span<const std::string> tokens,
                                          const EntityLexicon& lexicon);

}  // namespace asrnoise

#endif  // ASRNOISE_LEXICON_HPP_
