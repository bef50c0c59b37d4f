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

#include "asrnoise/run_config.hpp"

#include <fstream>
#include <sstream>

#include "asrnoise/errors.hpp"

namespace asrnoise {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("expected a boolean, got \"" + value + "\"");
}

std::int64_t parse_int(const std::string& value) {
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected an integer, got \"" + value + "\"");
  }
}

std::uint64_t parse_u64(const std::string& value) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected an unsigned integer, got \"" + value + "\"");
  }
}

double parse_real(const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got \"" + value + "\"");
  }
}

}  // namespace

void RunConfig::validate() const {
  if (retries < 0) throw ConfigError("retries must be >= 0");
  if (concurrency < 1) throw ConfigError("concurrency must be >= 1");
  if (examples_k < 1) throw ConfigError("examples-k must be >= 1");
  if (multiplicity < 1) throw ConfigError("multiplicity must be >= 1");
  if (selection != "random" && selection != "first") {
    throw ConfigError("selection must be \"random\" or \"first\"");
  }
  if (endpoint.empty() && !fallback) {
    throw ConfigError("fallback must be enabled when no endpoint is configured "
                      "(pass --fallback or --endpoint)");
  }
  if (temperature < 0.0) throw ConfigError("temperature must be >= 0");
  if (max_tokens < 1) throw ConfigError("max-tokens must be >= 1");
}

std::string RunConfig::hash() const {
  // out_dir is deliberately left out: where artifacts land does not change
  // what they contain, and identical runs into different directories must
  // stay byte-identical.
  std::ostringstream canon;
  canon << "seed=" << master_seed << '\n'
        << "clean=" << clean_path << '\n'
        << "paired=" << paired_path << '\n'
        << "reference=" << reference_path << '\n'
        << "hypothesis=" << hypothesis_path << '\n'
        << "profile=" << profile_path << '\n'
        << "examples=" << examples_path << '\n'
        << "lexicon=" << lexicon_path << '\n'
        << "endpoint=" << endpoint << '\n'
        << "model=" << model << '\n'
        << "api-key-env=" << api_key_env << '\n'
        << "response-path=" << response_path << '\n'
        << "temperature=" << temperature << '\n'
        << "max-tokens=" << max_tokens << '\n'
        << "retries=" << retries << '\n'
        << "concurrency=" << concurrency << '\n'
        << "fallback=" << (fallback ? 1 : 0) << '\n'
        << "examples-k=" << examples_k << '\n'
        << "selection=" << selection << '\n'
        << "multiplicity=" << multiplicity << '\n'
        << "label=" << source_label << '\n'
        << "scales=" << scales << '\n'
        << "metric=" << metric << '\n';
  const std::string bytes = canon.str();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream hex;
  hex << std::hex;
  hex.width(16);
  hex.fill('0');
  hex << h;
  return hex.str();
}

std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const std::size_t eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": empty key");
    }
    values[key] = value;
  }
  return values;
}

void apply_config_value(RunConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "seed") {
    config.master_seed = parse_u64(value);
  } else if (key == "clean") {
    config.clean_path = value;
  } else if (key == "paired") {
    config.paired_path = value;
  } else if (key == "reference") {
    config.reference_path = value;
  } else if (key == "hypothesis") {
    config.hypothesis_path = value;
  } else if (key == "profile") {
    config.profile_path = value;
  } else if (key == "examples") {
    config.examples_path = value;
  } else if (key == "lexicon") {
    config.lexicon_path = value;
  } else if (key == "out-dir") {
    config.out_dir = value;
  } else if (key == "endpoint") {
    config.endpoint = value;
  } else if (key == "model") {
    config.model = value;
  } else if (key == "api-key-env") {
    config.api_key_env = value;
  } else if (key == "response-path") {
    config.response_path = value;
  } else if (key == "temperature") {
    config.temperature = parse_real(value);
  } else if (key == "max-tokens") {
    config.max_tokens = static_cast<int>(parse_int(value));
  } else if (key == "retries") {
    config.retries = static_cast<int>(parse_int(value));
  } else if (key == "concurrency") {
    config.concurrency = static_cast<int>(parse_int(value));
  } else if (key == "fallback") {
    config.fallback = parse_bool(value);
  } else if (key == "examples-k") {
    config.examples_k = static_cast<int>(parse_int(value));
  } else if (key == "selection") {
    config.selection = value;
  } else if (key == "multiplicity") {
    config.multiplicity = static_cast<int>(parse_int(value));
  } else if (key == "label") {
    config.source_label = value;
  } else if (key == "scales") {
    config.scales = value;
  } else if (key == "metric") {
    config.metric = value;
  } else {
    throw ConfigError("unknown config key \"" + key + "\"");
  }
}

std::vector<double> RunConfig::parsed_scales() const {
  std::vector<double> values;
  std::string item;
  std::istringstream in(scales);
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) continue;
    values.push_back(parse_real(t));
  }
  if (values.empty()) throw ConfigError("scales must list at least one multiplier");
  return values;
}

}  // namespace asrnoise
