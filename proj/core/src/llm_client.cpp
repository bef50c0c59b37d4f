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

#include "asrnoise/llm_client.hpp"

#include <cctype>
#include <cstdlib>

#include "httplib.h"
#include "json.hpp"

#include "asrnoise/errors.hpp"

namespace asrnoise {

namespace {

using nlohmann::json;

struct SplitUrl {
  std::string host_port;  // scheme://host[:port]
  std::string path;       // /path, "/" when absent
};

SplitUrl split_url(const std::string& url) {
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw ConfigError("endpoint URL must include a scheme: " + url);
  }
  const std::size_t path_start = url.find('/', scheme + 3);
  if (path_start == std::string::npos) {
    return SplitUrl{url, "/"};
  }
  return SplitUrl{url.substr(0, path_start), url.substr(path_start)};
}

/// Walks a dot-separated path; purely numeric components index arrays.
const json* walk_path(const json& root, const std::string& path) {
  const json* node = &root;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    const std::size_t dot = path.find('.', pos);
    const std::string key =
        path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (key.empty()) return nullptr;
    const bool numeric =
        std::all_of(key.begin(), key.end(),
                    [](unsigned char c) { return std::isdigit(c) != 0; });
    if (numeric && node->is_array()) {
      const std::size_t idx = std::stoul(key);
      if (idx >= node->size()) return nullptr;
      node = &(*node)[idx];
    } else if (node->is_object() && node->contains(key)) {
      node = &(*node)[key];
    } else {
      return nullptr;
    }
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return node;
}

class HttpLlmClient final : public LlmClient {
 public:
  explicit HttpLlmClient(HttpLlmConfig config) : config_(std::move(config)) {
    split_url(config_.endpoint_url);  // validate early
  }

  LlmResult complete(const std::vector<ChatMessage>& messages) override {
    const SplitUrl url = split_url(config_.endpoint_url);

    json body;
    if (!config_.model.empty()) body["model"] = config_.model;
    body["temperature"] = config_.temperature;
    body["max_tokens"] = config_.max_tokens;
    json msgs = json::array();
    for (const auto& m : messages) {
      msgs.push_back({{"role", m.role}, {"content", m.content}});
    }
    body["messages"] = std::move(msgs);

    httplib::Client client(url.host_port);
    client.set_connection_timeout(config_.connect_timeout_seconds, 0);
    client.set_read_timeout(config_.read_timeout_seconds, 0);
    httplib::Headers headers;
    if (!config_.api_key_env.empty()) {
      const char* key = std::getenv(config_.api_key_env.c_str());
      if (key != nullptr && key[0] != '\0') {
        headers.emplace("Authorization", std::string("Bearer ") + key);
      }
    }

    LlmResult result;
    auto response = client.Post(url.path, headers, body.dump(), "application/json");
    if (!response) {
      result.transport_error = true;
      result.error = "transport: " + httplib::to_string(response.error());
      return result;
    }
    if (response->status < 200 || response->status >= 300) {
      result.transport_error = true;
      result.error = "http status " + std::to_string(response->status);
      return result;
    }
    json parsed = json::parse(response->body, nullptr, false);
    if (parsed.is_discarded()) {
      result.error = "response is not valid JSON";
      return result;
    }
    const json* node = walk_path(parsed, config_.response_path);
    if (node == nullptr || !node->is_string()) {
      result.error = "no string at response path \"" + config_.response_path + "\"";
      return result;
    }
    result.ok = true;
    result.text = node->get<std::string>();
    return result;
  }

 private:
  HttpLlmConfig config_;
};

}  // namespace

std::unique_ptr<LlmClient> make_http_client(HttpLlmConfig config) {
  return std::make_unique<HttpLlmClient>(std::move(config));
}

bool endpoint_reachable(const HttpLlmConfig& config) {
  const SplitUrl url = split_url(config.endpoint_url);
  httplib::Client client(url.host_port);
  client.set_connection_timeout(config.connect_timeout_seconds, 0);
  client.set_read_timeout(config.connect_timeout_seconds, 0);
  auto response = client.Get(url.path);
  return static_cast<bool>(response);
}

}  // namespace asrnoise
