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

#include "asrnoise/tagging.hpp"

#include <algorithm>
#include <map>

#include "asrnoise/errors.hpp"
#include "asrnoise/rng.hpp"

namespace asrnoise {

namespace {

using Segment = TaggedText::Segment;

void push_plain_token(TaggedText& tagged, std::string token) {
  if (tagged.segments.empty() || tagged.segments.back().kind != Segment::Kind::Plain) {
    tagged.segments.push_back(Segment{Segment::Kind::Plain, {}});
  }
  tagged.segments.back().tokens.push_back(std::move(token));
}

}  // namespace

ErrorPlan sample_error_plan(const TokenSequence& tokens, const ErrorProfile& profile,
                            std::uint64_t seed) {
  profile.validate();
  ErrorPlan plan;
  plan.rng_seed = seed;
  plan.profile_label = profile.source_label;

  const double p_corrupt = profile.corruption_probability();
  const double cut_sub = profile.conditional[0];
  const double cut_del = cut_sub + profile.conditional[1];

  Rng rng(seed);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (rng.next_double() >= p_corrupt) continue;
    const double v = rng.next_double();
    EditKind kind;
    if (v < cut_sub) {
      kind = EditKind::Substitution;
    } else if (v < cut_del) {
      kind = EditKind::Deletion;
    } else {
      kind = EditKind::Insertion;
    }
    plan.decisions.push_back(ErrorDecision{static_cast<std::int64_t>(i), kind});
  }
  return plan;
}

TaggedText apply_plan(const TokenSequence& tokens, const ErrorPlan& plan) {
  const std::int64_t n = static_cast<std::int64_t>(tokens.size());
  std::map<std::int64_t, EditKind> by_index;
  for (const auto& d : plan.decisions) {
    if (d.kind == EditKind::Match) {
      throw DataError("apply_plan: plans hold error kinds only");
    }
    const std::int64_t lo = d.kind == EditKind::Insertion ? -1 : 0;
    if (d.token_index < lo || d.token_index >= n) {
      throw DataError("apply_plan: decision index " + std::to_string(d.token_index) +
                      " out of range for " + std::to_string(n) + " tokens");
    }
    if (!by_index.emplace(d.token_index, d.kind).second) {
      throw DataError("apply_plan: duplicate decision at index " +
                      std::to_string(d.token_index));
    }
  }

  TaggedText tagged;
  if (auto it = by_index.find(-1); it != by_index.end()) {
    tagged.segments.push_back(Segment{Segment::Kind::InsertionMarker, {}});
  }
  bool prev_substituted = false;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto it = by_index.find(i);
    const std::size_t u = static_cast<std::size_t>(i);
    bool substituted = false;
    if (it == by_index.end()) {
      push_plain_token(tagged, tokens.surface(u));
    } else {
      switch (it->second) {
        case EditKind::Substitution:
          if (prev_substituted &&
              tagged.segments.back().kind == Segment::Kind::SubstitutionSpan) {
            tagged.segments.back().tokens.push_back(tokens.surface(u));
          } else {
            tagged.segments.push_back(
                Segment{Segment::Kind::SubstitutionSpan, {tokens.surface(u)}});
          }
          substituted = true;
          break;
        case EditKind::Deletion:
          tagged.deleted_tokens.emplace_back(u, tokens.tokens[u]);
          break;
        case EditKind::Insertion:
          push_plain_token(tagged, tokens.surface(u));
          tagged.segments.push_back(Segment{Segment::Kind::InsertionMarker, {}});
          break;
        case EditKind::Match:
          break;  // rejected above
      }
    }
    prev_substituted = substituted;
  }
  return tagged;
}

std::string render_tagged(const TaggedText& tagged) {
  std::string out;
  for (const auto& seg : tagged.segments) {
    if (!out.empty()) out.push_back(' ');
    switch (seg.kind) {
      case Segment::Kind::Plain:
        for (std::size_t i = 0; i < seg.tokens.size(); ++i) {
          if (i > 0) out.push_back(' ');
          out += seg.tokens[i];
        }
        break;
      case Segment::Kind::SubstitutionSpan:
        out.push_back('{');
        for (std::size_t i = 0; i < seg.tokens.size(); ++i) {
          if (i > 0) out.push_back(' ');
          out += seg.tokens[i];
        }
        out.push_back('}');
        break;
      case Segment::Kind::InsertionMarker:
        out += kInsertionMarker;
        break;
    }
  }
  return out;
}

TaggedText parse_tagged(std::string_view text) {
  TaggedText tagged;
  std::vector<std::string> span_words;
  std::string word;
  bool in_span = false;

  auto flush_word = [&] {
    if (word.empty()) return;
    if (in_span) {
      span_words.push_back(std::move(word));
    } else if (word == kInsertionMarker) {
      tagged.segments.push_back(Segment{Segment::Kind::InsertionMarker, {}});
    } else {
      push_plain_token(tagged, std::move(word));
    }
    word.clear();
  };

  for (char c : text) {
    if (c == '{') {
      if (in_span) {
        throw TagParseError(TagParseError::Code::NestedBrace,
                            "nested '{' inside a substitution span");
      }
      flush_word();
      in_span = true;
      span_words.clear();
    } else if (c == '}') {
      if (!in_span) {
        throw TagParseError(TagParseError::Code::UnbalancedBrace,
                            "'}' without a matching '{'");
      }
      flush_word();
      if (span_words.empty()) {
        throw TagParseError(TagParseError::Code::EmptySpan,
                            "empty substitution span");
      }
      tagged.segments.push_back(
          Segment{Segment::Kind::SubstitutionSpan, std::move(span_words)});
      span_words.clear();
      in_span = false;
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      flush_word();
    } else {
      word.push_back(c);
    }
  }
  if (in_span) {
    throw TagParseError(TagParseError::Code::UnbalancedBrace,
                        "'{' without a matching '}'");
  }
  flush_word();
  return tagged;
}

std::pair<TaggedText, TaggedText> decorate_example_pair(const Turn& clean,
                                                        const Turn& noisy,
                                                        const TokenizePolicy& policy) {
  const TokenSequence ref = tokenize(clean.text, policy);
  const TokenSequence hyp = tokenize(noisy.text, policy);
  const EditScript script = align(ref, hyp);

  TaggedText tagged_clean;
  TaggedText tagged_noisy;

  std::size_t i = 0;
  const auto& ops = script.ops;
  while (i < ops.size()) {
    if (ops[i].kind == EditKind::Match) {
      push_plain_token(tagged_clean, ref.surface(*ops[i].ref_index));
      push_plain_token(tagged_noisy, hyp.surface(*ops[i].hyp_index));
      ++i;
      continue;
    }
    // Maximal run of non-Match ops.
    std::vector<std::size_t> ref_idx;
    std::vector<std::size_t> hyp_idx;
    while (i < ops.size() && ops[i].kind != EditKind::Match) {
      if (ops[i].ref_index) ref_idx.push_back(*ops[i].ref_index);
      if (ops[i].hyp_index) hyp_idx.push_back(*ops[i].hyp_index);
      ++i;
    }
    if (!ref_idx.empty() && !hyp_idx.empty()) {
      Segment clean_span{Segment::Kind::SubstitutionSpan, {}};
      for (std::size_t r : ref_idx) clean_span.tokens.push_back(ref.surface(r));
      tagged_clean.segments.push_back(std::move(clean_span));
      Segment noisy_span{Segment::Kind::SubstitutionSpan, {}};
      for (std::size_t h : hyp_idx) noisy_span.tokens.push_back(hyp.surface(h));
      tagged_noisy.segments.push_back(std::move(noisy_span));
    } else if (!ref_idx.empty()) {
      for (std::size_t r : ref_idx) {
        tagged_clean.deleted_tokens.emplace_back(r, ref.tokens[r]);
      }
    } else {
      tagged_clean.segments.push_back(Segment{Segment::Kind::InsertionMarker, {}});
      Segment noisy_span{Segment::Kind::SubstitutionSpan, {}};
      for (std::size_t h : hyp_idx) noisy_span.tokens.push_back(hyp.surface(h));
      tagged_noisy.segments.push_back(std::move(noisy_span));
    }
  }
  return {std::move(tagged_clean), std::move(tagged_noisy)};
}

std::vector<std::string> restore_tokens(const TaggedText& tagged,
                                        const TokenizePolicy& policy) {
  std::vector<std::string> kept;
  for (const auto& seg : tagged.segments) {
    if (seg.kind == Segment::Kind::InsertionMarker) continue;
    for (const auto& token : seg.tokens) {
      const TokenSequence normalized = tokenize(token, policy);
      for (const auto& t : normalized.tokens) kept.push_back(t);
    }
  }

  const std::size_t total = kept.size() + tagged.deleted_tokens.size();
  std::vector<std::string> out(total);
  std::vector<bool> filled(total, false);
  for (const auto& [index, token] : tagged.deleted_tokens) {
    if (index >= total) throw DataError("restore_tokens: deleted index out of range");
    out[index] = token;
    filled[index] = true;
  }
  std::size_t next = 0;
  for (auto& token : kept) {
    while (next < total && filled[next]) ++next;
    if (next >= total) throw DataError("restore_tokens: token count mismatch");
    out[next] = std::move(token);
    filled[next] = true;
  }
  return out;
}

}  // namespace asrnoise
