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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "asrnoise/alignment.hpp"
#include "asrnoise/rng.hpp"
#include "asrnoise/transcript.hpp"

namespace {

using asrnoise::Rng;

std::vector<std::string> random_sequence(Rng& rng, std::size_t len) {
  static const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f",
                                                 "g", "h", "i", "j"};
  std::vector<std::string> out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    out.push_back(vocab[rng.next_below(vocab.size())]);
  }
  return out;
}

void BM_Align(benchmark::State& state) {
  const std::size_t len = static_cast<std::size_t>(state.range(0));
  Rng rng(99);
  const auto ref = random_sequence(rng, len);
  const auto hyp = random_sequence(rng, len);
  for (auto _ : state) {
    benchmark::DoNotOptimize(asrnoise::align(ref, hyp));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Align)->Range(8, 2048)->Complexity(benchmark::oNSquared);

void BM_Tokenize(benchmark::State& state) {
  Rng rng(7);
  std::string text;
  for (int i = 0; i < 200; ++i) {
    text += "Um, no, just maybe my stomach. I took a Tylenol yesterday evening. ";
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(asrnoise::tokenize(text));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Tokenize);

}  // namespace

BENCHMARK_MAIN();
