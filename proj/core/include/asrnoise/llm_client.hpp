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

#ifndef ASRNOISE_LLM_CLIENT_HPP_
#define ASRNOISE_LLM_CLIENT_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace asrnoise {

struct ChatMessage {
  std::string role;  // "system" or "user"
  std::string content;
};

struct LlmResult {
  bool ok = false;
  std::string text;       // extracted completion on success
  std::string error;      // transport or extraction failure otherwise
  bool transport_error = false;
};

/// Abstract completion client; implementations must be safe to call from
/// multiple threads concurrently.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual LlmResult complete(const std::vector<ChatMessage>& messages) = 0;
};

struct HttpLlmConfig {
  std::string endpoint_url;             // full URL, e.g. http://host:8080/v1/chat/completions
  std::string model;                    // optional, sent as "model" when non-empty
  std::string api_key_env;              // env var holding the bearer token; empty = no auth
  std::string response_path = "choices.0.message.content";  // dot path into the response JSON
  double temperature = 0.7;
  int max_tokens = 512;
  int connect_timeout_seconds = 5;
  int read_timeout_seconds = 120;
};

/// POSTs {"model", "messages": [{role, content}...], "temperature",
/// "max_tokens"} to the configured URL, with an Authorization bearer header
/// when api_key_env names a set variable, and extracts the completion text
/// at response_path (dot-separated keys, digits index arrays).
std::unique_ptr<LlmClient> make_http_client(HttpLlmConfig config);

/// True once the endpoint answers any HTTP request; used to honor the
/// fail-fast contract when fallback is disabled.
bool endpoint_reachable(const HttpLlmConfig& config);

}  // namespace asrnoise

#endif  // ASRNOISE_LLM_CLIENT_HPP_
