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

#ifndef ASRNOISE_REPORT_HPP_
#define ASRNOISE_REPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "asrnoise/evaluation.hpp"

namespace asrnoise {

/// Plain-text table with aligned columns.
std::string format_table(const std::vector<std::string>& headers,
                         const std::vector<std::vector<std::string>>& rows);

std::string format_double(double value, int precision = 6);

std::string matrix_to_csv(const SimilarityMatrix& matrix);
std::string matrix_to_table(const SimilarityMatrix& matrix);

std::string sweep_to_table(const SweepReport& report);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace asrnoise

#endif  // ASRNOISE_REPORT_HPP_
