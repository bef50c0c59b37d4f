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

#include "asrnoise/alignment.hpp"

#include <algorithm>
#include <cstdint>

#include "asrnoise/errors.hpp"

namespace asrnoise {

const char* to_string(EditKind kind) {
  switch (kind) {
    case EditKind::Match:
      return "match";
    case EditKind::Substitution:
      return "substitution";
    case EditKind::Deletion:
      return "deletion";
    case EditKind::Insertion:
      return "insertion";
  }
  return "match";
}

EditKind edit_kind_from_string(std::string_view name) {
  if (name == "match") return EditKind::Match;
  if (name == "substitution") return EditKind::Substitution;
  if (name == "deletion") return EditKind::Deletion;
  if (name == "insertion") return EditKind::Insertion;
  throw DataError("unknown edit kind \"" + std::string(name) + "\"");
}

std::size_t EditScript::cost() const {
  std::size_t c = 0;
  for (const auto& op : ops) {
    if (op.kind != EditKind::Match) ++c;
  }
  return c;
}

ErrorCounts& ErrorCounts::operator+=(const ErrorCounts& other) {
  substitutions += other.substitutions;
  deletions += other.deletions;
  insertions += other.insertions;
  matches += other.matches;
  ref_len += other.ref_len;
  return *this;
}

namespace {

enum class Move : std::uint8_t { Match, Substitute, Delete, Insert };

}  // namespace

EditScript align(std::span<const std::string> reference,
                 std::span<const std::string> hypothesis) {
  const std::size_t n = reference.size();
  const std::size_t m = hypothesis.size();

  // Lexicographic objective per cell: minimal cost first, then maximal match
  // count. Preferring matches among equal-cost scripts keeps error-type
  // counts faithful: a deletion and a nearby insertion would otherwise be
  // re-typed as two substitutions whenever the costs tie.
  struct Cell {
    std::size_t cost = 0;
    std::size_t matches = 0;
  };
  auto better = [](const Cell& a, const Cell& b) {
    return a.cost < b.cost || (a.cost == b.cost && a.matches > b.matches);
  };

  // moves[i * (m + 1) + j] records the chosen predecessor of cell (i, j).
  std::vector<Move> moves((n + 1) * (m + 1));
  std::vector<Cell> prev(m + 1);
  std::vector<Cell> cur(m + 1);

  for (std::size_t j = 0; j <= m; ++j) {
    prev[j] = Cell{j, 0};
    moves[j] = Move::Insert;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = Cell{i, 0};
    moves[i * (m + 1)] = Move::Delete;
    for (std::size_t j = 1; j <= m; ++j) {
      const bool equal = reference[i - 1] == hypothesis[j - 1];
      // Remaining ties follow the fixed per-step preference
      // Match > Substitution > Deletion > Insertion.
      Cell best;
      Move move;
      if (equal) {
        best = Cell{prev[j - 1].cost, prev[j - 1].matches + 1};
        move = Move::Match;
      } else {
        best = Cell{prev[j - 1].cost + 1, prev[j - 1].matches};
        move = Move::Substitute;
      }
      const Cell del{prev[j].cost + 1, prev[j].matches};
      if (better(del, best)) {
        best = del;
        move = Move::Delete;
      }
      const Cell ins{cur[j - 1].cost + 1, cur[j - 1].matches};
      if (better(ins, best)) {
        best = ins;
        move = Move::Insert;
      }
      cur[j] = best;
      moves[i * (m + 1) + j] = move;
    }
    std::swap(prev, cur);
  }

  EditScript script;
  script.ref_len = n;
  script.hyp_len = m;
  script.ops.reserve(std::max(n, m));

  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    switch (moves[i * (m + 1) + j]) {
      case Move::Match:
        script.ops.push_back(EditOp{EditKind::Match, i - 1, j - 1});
        --i;
        --j;
        break;
      case Move::Substitute:
        script.ops.push_back(EditOp{EditKind::Substitution, i - 1, j - 1});
        --i;
        --j;
        break;
      case Move::Delete:
        script.ops.push_back(EditOp{EditKind::Deletion, i - 1, std::nullopt});
        --i;
        break;
      case Move::Insert:
        script.ops.push_back(EditOp{EditKind::Insertion, std::nullopt, j - 1});
        --j;
        break;
    }
  }
  std::reverse(script.ops.begin(), script.ops.end());
  return script;
}

EditScript align(const TokenSequence& reference, const TokenSequence& hypothesis) {
  return align(std::span<const std::string>(reference.tokens),
               std::span<const std::string>(hypothesis.tokens));
}

double word_error_rate(const EditScript& script) {
  if (script.ref_len == 0) {
    throw DataError("word_error_rate: empty reference");
  }
  const ErrorCounts counts = error_counts(script);
  return static_cast<double>(counts.total_errors()) /
         static_cast<double>(script.ref_len);
}

ErrorCounts error_counts(const EditScript& script) {
  ErrorCounts counts;
  counts.ref_len = script.ref_len;
  for (const auto& op : script.ops) {
    switch (op.kind) {
      case EditKind::Match:
        ++counts.matches;
        break;
      case EditKind::Substitution:
        ++counts.substitutions;
        break;
      case EditKind::Deletion:
        ++counts.deletions;
        break;
      case EditKind::Insertion:
        ++counts.insertions;
        break;
    }
  }
  return counts;
}

}  // namespace asrnoise
