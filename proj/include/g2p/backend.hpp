#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

namespace g2p {

struct DecodeParams {
  double temperature = 0.0;
  std::size_t max_tokens = 1024;
};

struct BackendError : std::runtime_error {
  int status;  // HTTP status, or 0 for transport-level failures
  BackendError(int status_, const std::string& what_)
      : std::runtime_error(what_), status(status_) {}
};

struct EmptyResponse : std::runtime_error {
  EmptyResponse() : std::runtime_error("backend returned an empty completion") {}
};

struct ReplayMiss : std::runtime_error {
  std::string prompt_sha256;
  explicit ReplayMiss(std::string sha);
};

std::string sha256_hex(std::string_view data);

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual std::string complete(const std::string& prompt, const DecodeParams& params) = 0;
  virtual std::string name() const = 0;
  virtual std::string model() const = 0;
};

// Deterministic offline backend: answers from a JSONL transcript keyed by
// the SHA-256 of the exact prompt text.
class ReplayBackend : public LlmBackend {
 public:
  static ReplayBackend load(const std::string& path);

  std::string complete(const std::string& prompt, const DecodeParams&) override;
  std::string name() const override { return "replay"; }
  std::string model() const override { return model_; }

  std::size_t size() const { return responses_.size(); }
  void add(std::string_view prompt, std::string response);

 private:
  std::unordered_map<std::string, std::string> responses_;  // sha256 -> response
  std::string model_ = "replay";
};

// OpenAI-style chat-completions client. The API key is read from an
// environment variable, never from a flag or file.
class HttpBackend : public LlmBackend {
 public:
  struct Options {
    std::string base_url = "https://api.openai.com";
    std::string path = "/v1/chat/completions";
    std::string model = "gpt-4o";
    std::string api_key_env = "G2P_API_KEY";
    int timeout_seconds = 120;
    int max_attempts = 3;
  };

  explicit HttpBackend(Options opts);

  std::string complete(const std::string& prompt, const DecodeParams& params) override;
  std::string name() const override { return "http"; }
  std::string model() const override { return opts_.model; }

 private:
  Options opts_;
  std::string api_key_;
};

// Appends {prompt_sha256, prompt, response, model} lines suitable for
// ReplayBackend::load. Safe to share across worker threads.
class TranscriptWriter {
 public:
  explicit TranscriptWriter(const std::string& path);
  void record(std::string_view prompt, std::string_view response, std::string_view model);

 private:
  std::string path_;
  std::mutex mu_;
};

// Decorator that forwards to `inner` and logs every exchange.
class RecordingBackend : public LlmBackend {
 public:
  RecordingBackend(std::shared_ptr<LlmBackend> inner, std::shared_ptr<TranscriptWriter> writer)
      : inner_(std::move(inner)), writer_(std::move(writer)) {}

  std::string complete(const std::string& prompt, const DecodeParams& params) override {
    std::string response = inner_->complete(prompt, params);
    writer_->record(prompt, response, inner_->model());
    return response;
  }
  std::string name() const override { return inner_->name(); }
  std::string model() const override { return inner_->model(); }

 private:
  std::shared_ptr<LlmBackend> inner_;
  std::shared_ptr<TranscriptWriter> writer_;
};

}  // namespace g2p
