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

#include "asrnoise/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "asrnoise/errors.hpp"

namespace asrnoise {

std::string format_double(double value, int precision) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << value;
  return out.str();
}

std::string format_table(const std::vector<std::string>& headers,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) widths[c] = headers[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }

  std::ostringstream out;
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < widths.size(); ++c) {
      const std::string& cell = c < row.size() ? row[c] : std::string{};
      out << std::left << std::setw(static_cast<int>(widths[c])) << cell;
      if (c + 1 < widths.size()) out << "  ";
    }
    out << '\n';
  };
  emit_row(headers);
  std::vector<std::string> rule;
  for (std::size_t w : widths) rule.push_back(std::string(w, '-'));
  emit_row(rule);
  for (const auto& row : rows) emit_row(row);
  return out.str();
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string matrix_to_csv(const SimilarityMatrix& matrix) {
  std::ostringstream out;
  out << csv_escape(matrix.metric_name);
  for (const auto& col : matrix.col_labels) out << ',' << csv_escape(col);
  out << '\n';
  for (std::size_t i = 0; i < matrix.row_labels.size(); ++i) {
    out << csv_escape(matrix.row_labels[i]);
    for (double cell : matrix.cells[i]) out << ',' << format_double(cell);
    out << '\n';
  }
  return out.str();
}

std::string matrix_to_table(const SimilarityMatrix& matrix) {
  std::vector<std::string> headers{matrix.metric_name};
  headers.insert(headers.end(), matrix.col_labels.begin(), matrix.col_labels.end());
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < matrix.row_labels.size(); ++i) {
    std::vector<std::string> row{matrix.row_labels[i]};
    for (double cell : matrix.cells[i]) row.push_back(format_double(cell));
    rows.push_back(std::move(row));
  }
  return format_table(headers, rows);
}

std::string sweep_to_table(const SweepReport& report) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : report.rows) {
    rows.push_back({format_double(r.scale, 2), format_double(r.target_wer),
                    format_double(r.realized_wer), format_double(r.rouge_l_f1),
                    format_double(r.entity_f1)});
  }
  return format_table({"scale", "target_wer", "realized_wer", "rouge_l_f1", "entity_f1"},
                      rows);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << content;
}

}  // namespace asrnoise
