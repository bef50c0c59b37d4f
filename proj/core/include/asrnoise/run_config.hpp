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

#ifndef ASRNOISE_RUN_CONFIG_HPP_
#define ASRNOISE_RUN_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace asrnoise {

/// Everything a pipeline run needs; flags override config-file values 1:1.
struct RunConfig {
  std::uint64_t master_seed = 0;

  // Paths.
  std::string clean_path;
  std::string paired_path;
  std::string reference_path;
  std::string hypothesis_path;
  std::string profile_path;
  std::string examples_path;
  std::string lexicon_path;
  std::string out_dir = ".";

  // LLM settings.
  std::string endpoint;
  std::string model;
  std::string api_key_env;
  std::string response_path = "choices.0.message.content";
  double temperature = 0.7;
  int max_tokens = 512;
  int retries = 2;
  int concurrency = 1;
  bool fallback = false;

  // Example selection and multiplicity.
  int examples_k = 4;
  std::string selection = "random";  // "random" | "first"
  int multiplicity = 1;

  std::string source_label;
  std::string scales = "0,0.5,1,1.5";  // sweep multipliers, comma separated
  std::string metric = "all";          // evaluate: wer_agreement|rouge_l|profile_distance|all

  /// Parses the scales field; throws ConfigError on malformed input.
  std::vector<double> parsed_scales() const;

  /// Enforces invariants: retries >= 0, concurrency >= 1, k >= 1,
  /// multiplicity >= 1, fallback forced on when no endpoint is configured.
  /// Throws ConfigError.
  void validate() const;

  /// Stable 64-bit hash of the effective settings, hex-encoded; embedded in
  /// every artifact for provenance.
  std::string hash() const;
};

/// Flat key-value config document: one `key = value` per line, `#` comments.
/// Keys are the long flag names without the leading dashes.
std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path);

/// Applies one key-value setting; throws ConfigError on unknown keys or
/// unparsable values.
void apply_config_value(RunConfig& config, const std::string& key,
                        const std::string& value);

}  // namespace asrnoise

#endif  // ASRNOISE_RUN_CONFIG_HPP_
