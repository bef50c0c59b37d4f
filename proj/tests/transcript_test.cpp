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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "asrnoise/errors.hpp"
#include "asrnoise/transcript.hpp"
#include "test_util.hpp"

using namespace asrnoise;
using namespace asrnoise::testing;

TEST_CASE("tokenize lowercases and strips punctuation") {
  CHECK(tokenize("I took a Tylenol").tokens == words({"i", "took", "a", "tylenol"}));
  CHECK(tokenize("").tokens.empty());
  CHECK(tokenize("Um, no, just maybe my stomach.").tokens ==
        words({"um", "no", "just", "maybe", "my", "stomach"}));
}

TEST_CASE("tokenize keeps intra-word apostrophes and hyphens only") {
  CHECK(tokenize("don't tie-and-all").tokens == words({"don't", "tie-and-all"}));
  CHECK(tokenize("-x y- '' \"quoted\"").tokens == words({"x", "y", "quoted"}));
  CHECK(tokenize("a- -b a'-b").tokens == words({"a", "b", "ab"}));
  CHECK(tokenize("...  ---  !!").tokens.empty());
}

TEST_CASE("tokenize span map points at surface forms") {
  const TokenSequence seq = tokenize("  I took a Tylenol,  please. ");
  REQUIRE(seq.size() == 5);
  CHECK(seq.surface(0) == "I");
  CHECK(seq.surface(3) == "Tylenol");
  CHECK(seq.surface(4) == "please");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq.spans[i].begin < seq.spans[i].end);
    CHECK(seq.spans[i].end <= seq.raw.size());
    if (i > 0) CHECK(seq.spans[i - 1].end <= seq.spans[i].begin);
    // A surface form re-tokenizes to exactly its token.
    const TokenSequence again = tokenize(seq.surface(i));
    REQUIRE(again.size() == 1);
    CHECK(again.tokens[0] == seq.tokens[i]);
  }
}

TEST_CASE("tokenize is idempotent under re-normalization") {
  Rng rng(2024);
  const std::vector<std::string> texts = {
      "I took a Tylenol", "Um, no, just maybe my stomach.",
      "don't worry -- it's fine!", "Comes and goes, yeah."};
  for (const auto& text : texts) {
    const TokenSequence first = tokenize(text);
    std::string joined;
    for (const auto& t : first.tokens) {
      if (!joined.empty()) joined.push_back(' ');
      joined += t;
    }
    CHECK(tokenize(joined).tokens == first.tokens);
  }
  for (int i = 0; i < 200; ++i) {
    const auto tokens = random_tokens(rng, 10, 5);
    std::string joined = std::accumulate(
        tokens.begin(), tokens.end(), std::string{},
        [](std::string acc, const std::string& t) {
          return acc.empty() ? t : std::move(acc) + " " + t;
        });
    CHECK(tokenize(joined).tokens == tokens);
  }
}

TEST_CASE("sanitize_turn_text strips tag metacharacters") {
  CHECK(sanitize_turn_text("I {took a Tylenol}") == "I took a Tylenol");
  CHECK(sanitize_turn_text("a (INSERTION) b") == "a b");
  CHECK(sanitize_turn_text("  padded   ") == "padded");
  CHECK(sanitize_turn_text("{}{}(INSERTION)") == "");
  CHECK(sanitize_turn_text("keep (INSERTIONS) words") == "keep (INSERTIONS) words");
}

TEST_CASE("speaker labels round-trip") {
  CHECK(Speaker::from_label("doctor").kind == Speaker::Kind::Doctor);
  CHECK(Speaker::from_label("patient").kind == Speaker::Kind::Patient);
  const Speaker nurse = Speaker::from_label("nurse");
  CHECK(nurse.kind == Speaker::Kind::Other);
  CHECK(nurse.to_label() == "nurse");
  CHECK(Speaker::from_label("doctor").to_label() == "doctor");
}

TEST_CASE("corpus JSONL round-trips") {
  TempDir dir;
  Corpus corpus;
  corpus.push_back(make_dialogue("d1", {"I took a Tylenol", "Comes and goes, yeah."}));
  corpus.push_back(make_dialogue("d2", {"any white spots on your throat"}));
  corpus[1].turns[0].speaker = Speaker::from_label("nurse");

  const auto path = dir.file("corpus.jsonl");
  save_corpus(corpus, path);
  const Corpus loaded = load_corpus(path);
  CHECK(loaded == corpus);

  save_corpus(loaded, dir.file("again.jsonl"));
  CHECK(read_file(path) == read_file(dir.file("again.jsonl")));
}

TEST_CASE("load_corpus accepts one dialogue per line") {
  TempDir dir;
  const auto path = dir.file("one.jsonl");
  write_file(path,
             R"({"id": "x", "turns": [{"speaker": "doctor", "text": "hello there"},)"
             R"( {"speaker": "patient", "text": "hi"}]})"
             "\n");
  const Corpus corpus = load_corpus(path);
  REQUIRE(corpus.size() == 1);
  CHECK(corpus[0].id == "x");
  REQUIRE(corpus[0].turns.size() == 2);
  CHECK(corpus[0].turns[0].text == "hello there");
}

TEST_CASE("load_corpus ingestion strips tag metacharacters") {
  TempDir dir;
  const auto path = dir.file("tagged.jsonl");
  write_file(path,
             R"({"id": "x", "turns": [{"speaker": "doctor", "text": "I {took} (INSERTION) it"}]})"
             "\n");
  const Corpus corpus = load_corpus(path);
  CHECK(corpus[0].turns[0].text == "I took it");
}

TEST_CASE("load_corpus rejects duplicate ids with line number") {
  TempDir dir;
  const auto path = dir.file("dup.jsonl");
  const std::string line =
      R"({"id": "same", "turns": [{"speaker": "doctor", "text": "hi"}]})";
  write_file(path, line + "\n" + line + "\n");
  CHECK_THROWS_WITH_AS(load_corpus(path), doctest::Contains(":2"), DataError);
}

TEST_CASE("load_corpus reports malformed lines with line number") {
  TempDir dir;
  const auto path = dir.file("bad.jsonl");
  write_file(path,
             R"({"id": "ok", "turns": [{"speaker": "doctor", "text": "hi"}]})"
             "\nnot json at all\n");
  CHECK_THROWS_WITH_AS(load_corpus(path), doctest::Contains(":2"), DataError);

  write_file(path, R"({"id": "x", "turns": []})"
                   "\n");
  CHECK_THROWS_AS(load_corpus(path), DataError);
  write_file(path, R"({"turns": [{"speaker": "doctor", "text": "hi"}]})"
                   "\n");
  CHECK_THROWS_AS(load_corpus(path), DataError);
}

TEST_CASE("load_corpus handles a 57-dialogue corpus") {
  TempDir dir;
  Corpus corpus;
  for (int i = 0; i < 57; ++i) {
    corpus.push_back(make_dialogue("dlg" + std::to_string(i), {"some words here"}));
  }
  const auto path = dir.file("corpus57.jsonl");
  save_corpus(corpus, path);
  CHECK(load_corpus(path).size() == 57);
}

TEST_CASE("paired corpus loads and round-trips") {
  TempDir dir;
  PairedCorpus pairs;
  pairs.push_back(PairedDialogue{"d1", make_dialogue("d1", {"I took a Tylenol"}),
                                 make_dialogue("d1", {"I shook tie-and-all"})});
  const auto path = dir.file("paired.jsonl");
  save_paired_corpus(pairs, path);
  const PairedCorpus loaded = load_paired_corpus(path);
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].id == "d1");
  CHECK(loaded[0].reference.turns[0].text == "I took a Tylenol");
  CHECK(loaded[0].hypothesis.turns[0].text == "I shook tie-and-all");
}

TEST_CASE("paired corpus rejects disagreeing nested ids") {
  TempDir dir;
  const auto path = dir.file("paired.jsonl");
  write_file(
      path,
      R"({"id": "a", "reference": {"id": "b", "turns": [{"speaker": "doctor", "text": "x"}]},)"
      R"( "hypothesis": {"turns": [{"speaker": "doctor", "text": "x"}]}})"
      "\n");
  CHECK_THROWS_AS(load_paired_corpus(path), DataError);
}

TEST_CASE("pair_corpora joins on id and lists mismatches") {
  Corpus ref{make_dialogue("a", {"one"}), make_dialogue("b", {"two"})};
  Corpus hyp{make_dialogue("b", {"too"}), make_dialogue("a", {"won"})};
  const PairedCorpus pairs = pair_corpora(ref, hyp);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].id == "a");
  CHECK(pairs[0].hypothesis.turns[0].text == "won");

  Corpus missing{make_dialogue("a", {"one"})};
  CHECK_THROWS_WITH_AS(pair_corpora(ref, missing), doctest::Contains("b"), DataError);
}
