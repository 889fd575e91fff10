#include "g2p/backend.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <json.hpp>

namespace g2p {

using nlohmann::json;

ReplayMiss::ReplayMiss(std::string sha)
    : std::runtime_error("no recorded response for prompt sha256 " + sha),
      prompt_sha256(std::move(sha)) {}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

ReplayBackend ReplayBackend::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open transcript: " + path);
  ReplayBackend backend;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error("transcript " + path + " line " + std::to_string(lineno) +
                               ": " + e.what());
    }
    if (!j.contains("prompt_sha256") || !j.contains("response"))
      throw std::runtime_error("transcript " + path + " line " + std::to_string(lineno) +
                               ": missing prompt_sha256 or response");
    backend.responses_[j["prompt_sha256"].get<std::string>()] = j["response"].get<std::string>();
    if (j.contains("model") && j["model"].is_string()) backend.model_ = j["model"].get<std::string>();
  }
  return backend;
}

std::string ReplayBackend::complete(const std::string& prompt, const DecodeParams&) {
  const std::string sha = sha256_hex(prompt);
  auto it = responses_.find(sha);
  if (it == responses_.end()) throw ReplayMiss(sha);
  if (it->second.empty()) throw EmptyResponse();
  return it->second;
}

void ReplayBackend::add(std::string_view prompt, std::string response) {
  responses_[sha256_hex(prompt)] = std::move(response);
}

HttpBackend::HttpBackend(Options opts) : opts_(std::move(opts)) {
  const char* key = std::getenv(opts_.api_key_env.c_str());
  if (key == nullptr || *key == '\0')
    throw BackendError(0, "environment variable " + opts_.api_key_env + " is not set");
  api_key_ = key;
}

std::string HttpBackend::complete(const std::string& prompt, const DecodeParams& params) {
  const json body = {
      {"model", opts_.model},
      {"temperature", params.temperature},
      {"max_tokens", params.max_tokens},
      {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
  };
  const std::string payload = body.dump();

  std::string last_error = "no attempt made";
  int last_status = 0;
  for (int attempt = 0; attempt < opts_.max_attempts; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(500) * (1 << (attempt - 1)));

    httplib::Client client(opts_.base_url);
    client.set_connection_timeout(opts_.timeout_seconds, 0);
    client.set_read_timeout(opts_.timeout_seconds, 0);
    client.set_bearer_token_auth(api_key_);

    httplib::Result res = client.Post(opts_.path, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      last_status = 0;
      continue;  // transient: retry
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "http status " + std::to_string(res->status);
      last_status = res->status;
      continue;  // transient: retry
    }
    if (res->status != 200) throw BackendError(res->status, "http status " + std::to_string(res->status) + ": " + res->body);

    json j;
    try {
      j = json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw BackendError(res->status, std::string("malformed response body: ") + e.what());
    }
    if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty())
      throw BackendError(res->status, "response has no choices");
    const json& msg = j["choices"][0];
    std::string text;
    if (msg.contains("message") && msg["message"].contains("content") &&
        msg["message"]["content"].is_string())
      text = msg["message"]["content"].get<std::string>();
    if (text.empty()) throw EmptyResponse();
    return text;
  }
  throw BackendError(last_status, "backend unreachable after " +
                                      std::to_string(opts_.max_attempts) +
                                      " attempts; last error: " + last_error);
}

TranscriptWriter::TranscriptWriter(const std::string& path) : path_(path) {
  std::ofstream out(path_, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open transcript for writing: " + path_);
}

void TranscriptWriter::record(std::string_view prompt, std::string_view response,
                              std::string_view model) {
  const json line = {
      {"prompt_sha256", sha256_hex(prompt)},
      {"prompt", std::string(prompt)},
      {"response", std::string(response)},
      {"model", std::string(model)},
  };
  std::lock_guard<std::mutex> lock(mu_);
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  out << line.dump() << '\n';
}

}  // namespace g2p
