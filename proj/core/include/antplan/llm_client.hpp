#pragma once

#include <functional>
#include <string>
#include <vector>

#include "antplan/anticipation.hpp"

namespace antplan {

struct LlmConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  std::string model = "gpt-4";
  // The key is read from this environment variable, never from config files.
  std::string api_key_env = "ANTPLAN_API_KEY";
  // Unspecified by the protocol; 0 keeps repeated runs comparable.
  double temperature = 0.0;
  int timeout_seconds = 60;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// (path, request body, bearer token) -> response. The default transport
// POSTs over HTTP(S); tests inject a lambda that replays recorded replies.
using HttpTransport = std::function<HttpResponse(
    const std::string& path, const std::string& body, const std::string& bearer)>;

// First well-formed JSON array of strings inside `text` (the reply may wrap
// it in prose). Throws MalformedReply when there is none.
std::vector<std::string> extract_task_array(const std::string& text);

// Builds the prompt for ctx, performs one chat-completion call and returns
// the parsed, catalog-filtered anticipation. The raw reply content is
// preserved in Anticipation::raw.
Anticipation llm_anticipate(const PromptContext& ctx, const LlmConfig& config,
                            const HttpTransport& transport = {});

class LlmAnticipator : public Anticipator {
 public:
  explicit LlmAnticipator(LlmConfig config, HttpTransport transport = {})
      : config_(std::move(config)), transport_(std::move(transport)) {}
  Anticipation anticipate(const PromptContext& ctx) override {
    return llm_anticipate(ctx, config_, transport_);
  }
  std::string name() const override { return "llm"; }

 private:
  LlmConfig config_;
  HttpTransport transport_;
};

}  // namespace antplan
