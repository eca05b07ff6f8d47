#include "antplan/llm_client.hpp"

#include <cstdlib>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <json.hpp>

#include "antplan/error.hpp"

namespace antplan {

using nlohmann::json;

std::vector<std::string> extract_task_array(const std::string& text) {
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '[') continue;
    int depth = 0;
    bool in_string = false;
    for (size_t j = i; j < text.size(); ++j) {
      char c = text[j];
      if (in_string) {
        if (c == '\\') {
          ++j;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '[') {
        ++depth;
      } else if (c == ']') {
        if (--depth == 0) {
          json parsed = json::parse(text.substr(i, j - i + 1), nullptr, false);
          if (parsed.is_array()) {
            std::vector<std::string> tasks;
            bool all_strings = true;
            for (const auto& item : parsed) {
              if (!item.is_string()) {
                all_strings = false;
                break;
              }
              tasks.push_back(item.get<std::string>());
            }
            if (all_strings) return tasks;
          }
          break;  // this '[' does not open a string array; try the next one
        }
      }
    }
  }
  throw Error(ErrorCode::MalformedReply,
              "no JSON array of task ids found in the model reply");
}

namespace {

HttpResponse default_transport(const LlmConfig& config, const std::string& path,
                               const std::string& body, const std::string& bearer) {
  httplib::Client client(config.base_url);
  client.set_connection_timeout(config.timeout_seconds);
  client.set_read_timeout(config.timeout_seconds);
  httplib::Headers headers;
  if (!bearer.empty()) {
    headers.emplace("Authorization", "Bearer " + bearer);
  }
  auto res = client.Post(path, headers, body, "application/json");
  if (!res) {
    throw Error(ErrorCode::NetworkError,
                "request to " + config.base_url + path + " failed: " +
                    httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

}  // namespace

Anticipation llm_anticipate(const PromptContext& ctx, const LlmConfig& config,
                            const HttpTransport& transport) {
  json body;
  body["model"] = config.model;
  body["temperature"] = config.temperature;
  body["messages"] = json::array();
  for (const ChatMessage& m : build_prompt(ctx)) {
    body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  }

  std::string bearer;
  if (const char* key = std::getenv(config.api_key_env.c_str())) {
    bearer = key;
  }

  HttpResponse response;
  if (transport) {
    response = transport(config.path, body.dump(), bearer);
  } else {
    response = default_transport(config, config.path, body.dump(), bearer);
  }

  if (response.status == 401 || response.status == 403) {
    throw Error(ErrorCode::AuthError,
                "endpoint rejected the credentials from $" + config.api_key_env +
                    " (HTTP " + std::to_string(response.status) + ")");
  }
  if (response.status < 200 || response.status >= 300) {
    throw Error(ErrorCode::NetworkError,
                "HTTP " + std::to_string(response.status) + ": " + response.body);
  }

  json reply = json::parse(response.body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty() ||
      !reply["choices"][0].contains("message") ||
      !reply["choices"][0]["message"].contains("content")) {
    throw Error(ErrorCode::MalformedReply,
                "reply is not a chat completion: " + response.body);
  }
  std::string content = reply["choices"][0]["message"]["content"].get<std::string>();

  Anticipation out;
  out.raw = content;
  try {
    out.tasks = extract_task_array(content);
  } catch (const Error&) {
    // Preserve the raw text for the caller before re-reporting.
    throw Error(ErrorCode::MalformedReply,
                "no JSON array of task ids in reply: " + content);
  }
  if (ctx.catalog) {
    out = filter_to_catalog(std::move(out), *ctx.catalog);
  }
  return out;
}

}  // namespace antplan
