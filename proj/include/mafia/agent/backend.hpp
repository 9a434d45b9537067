#pragma once

#include <chrono>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mafia/util/rng.hpp"

namespace mafia::agent {

struct GenerationParams {
    int max_tokens = 512;
    double temperature = 0.7;
    std::uint64_t seed = 0;
};

struct ContextSegment {
    enum class Kind { Status, PrivateFact, PublicChat, Review, ToneDirective };
    Kind kind = Kind::Status;
    std::string text;
    int seq = 0; // log order, used for oldest-first truncation of chat
};

struct BackendRequest {
    std::string system;
    std::vector<ContextSegment> segments;
    GenerationParams params;
    std::size_t char_budget = 16000;
};

struct BackendResponse {
    std::string text;
    std::size_t prompt_chars = 0;
    std::size_t completion_chars = 0;
};

struct BackendError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flattens a request into one prompt. When over budget, oldest public chat is
// dropped first; private facts, review and directives are never truncated.
std::string render_prompt(const BackendRequest& req);

class TextBackend {
public:
    virtual ~TextBackend() = default;
    virtual BackendResponse generate(const BackendRequest& req) = 0;
    virtual std::string name() const = 0;
};

// Appends request/response pairs to a JSONL audit file. Safe for concurrent
// backends.
class TraceLog {
public:
    explicit TraceLog(std::string path);
    void record(const std::string& backend, const BackendRequest& req,
                const std::optional<BackendResponse>& resp, const std::string& error);

private:
    std::string path_;
    std::mutex mu_;
};

// HTTP chat-completions client. Endpoint and credentials come from the
// environment: REVAC_BACKEND_URL, REVAC_BACKEND_KEY, REVAC_BACKEND_MODEL.
class HttpBackend : public TextBackend {
public:
    HttpBackend(std::string base_url, std::string api_key, std::string model,
                std::shared_ptr<TraceLog> trace = nullptr);

    // Returns nullptr when REVAC_BACKEND_URL is unset.
    static std::unique_ptr<HttpBackend> from_env(std::shared_ptr<TraceLog> trace = nullptr);

    BackendResponse generate(const BackendRequest& req) override;
    std::string name() const override { return "http:" + model_; }

private:
    std::string base_url_;
    std::string api_key_;
    std::string model_;
    std::shared_ptr<TraceLog> trace_;
};

// Deterministic canned backend for tests and offline runs.
class ScriptedBackend : public TextBackend {
public:
    using Handler = std::function<std::string(const BackendRequest&)>;

    explicit ScriptedBackend(Handler handler) : handler_(std::move(handler)) {}
    explicit ScriptedBackend(std::vector<std::string> responses);

    BackendResponse generate(const BackendRequest& req) override;
    std::string name() const override { return "scripted"; }

private:
    Handler handler_;
    std::deque<std::string> queue_;
    std::mutex mu_;
};

// Error-injection wrapper: fails a seeded fraction of calls.
class FlakyBackend : public TextBackend {
public:
    FlakyBackend(std::shared_ptr<TextBackend> inner, double fail_rate, std::uint64_t seed)
        : inner_(std::move(inner)), fail_rate_(fail_rate), rng_(seed) {}

    BackendResponse generate(const BackendRequest& req) override;
    std::string name() const override { return "flaky"; }

private:
    std::shared_ptr<TextBackend> inner_;
    double fail_rate_;
    Rng rng_;
    std::mutex mu_;
};

// Up to `retries` additional attempts with jittered backoff; nullopt once
// everything failed (callers fall back to the rule-based path).
std::optional<BackendResponse> generate_with_retries(TextBackend& backend,
                                                     const BackendRequest& req, Rng& rng,
                                                     int retries = 2,
                                                     std::chrono::milliseconds backoff_base =
                                                         std::chrono::milliseconds(100));

} // namespace mafia::agent
