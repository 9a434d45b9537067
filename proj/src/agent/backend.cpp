#include "mafia/agent/backend.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "json.hpp"

// httplib pulls in OpenSSL only when requested; plain HTTP is enough here.
#include "httplib.h"

namespace mafia::agent {

using nlohmann::json;

std::string render_prompt(const BackendRequest& req) {
    auto total_size = [&](const std::vector<const ContextSegment*>& segs) {
        std::size_t n = req.system.size();
        for (const auto* s : segs) n += s->text.size() + 1;
        return n;
    };

    std::vector<const ContextSegment*> kept;
    kept.reserve(req.segments.size());
    for (const auto& s : req.segments) kept.push_back(&s);

    // Drop oldest public chat until the prompt fits; everything else stays.
    while (total_size(kept) > req.char_budget) {
        auto it = std::find_if(kept.begin(), kept.end(), [](const ContextSegment* s) {
            return s->kind == ContextSegment::Kind::PublicChat;
        });
        if (it == kept.end()) break;
        kept.erase(it);
    }

    std::string out = req.system;
    for (const auto* s : kept) {
        out.push_back('\n');
        out += s->text;
    }
    return out;
}

TraceLog::TraceLog(std::string path) : path_(std::move(path)) {}

void TraceLog::record(const std::string& backend, const BackendRequest& req,
                      const std::optional<BackendResponse>& resp, const std::string& error) {
    std::lock_guard<std::mutex> lock(mu_);
    std::ofstream out(path_, std::ios::app);
    if (!out) return;
    json j = {{"backend", backend},
              {"prompt", render_prompt(req)},
              {"response", resp ? json(resp->text) : json(nullptr)},
              {"error", error.empty() ? json(nullptr) : json(error)}};
    out << j.dump() << '\n';
}

HttpBackend::HttpBackend(std::string base_url, std::string api_key, std::string model,
                         std::shared_ptr<TraceLog> trace)
    : base_url_(std::move(base_url)), api_key_(std::move(api_key)), model_(std::move(model)),
      trace_(std::move(trace)) {}

std::unique_ptr<HttpBackend> HttpBackend::from_env(std::shared_ptr<TraceLog> trace) {
    const char* url = std::getenv("REVAC_BACKEND_URL");
    if (!url || !*url) return nullptr;
    const char* key = std::getenv("REVAC_BACKEND_KEY");
    const char* model = std::getenv("REVAC_BACKEND_MODEL");
    return std::make_unique<HttpBackend>(url, key ? key : "", model ? model : "default",
                                         std::move(trace));
}

BackendResponse HttpBackend::generate(const BackendRequest& req) {
    const std::string prompt = render_prompt(req);
    json body = {{"model", model_},
                 {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
                 {"max_tokens", req.params.max_tokens},
                 {"temperature", req.params.temperature},
                 {"seed", req.params.seed}};

    httplib::Client client(base_url_);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    auto res = client.Post("/v1/chat/completions", headers, body.dump(), "application/json");
    if (!res) {
        std::string err = "http transport error: " + httplib::to_string(res.error());
        if (trace_) trace_->record(name(), req, std::nullopt, err);
        throw BackendError(err);
    }
    if (res->status != 200) {
        std::string err = "http status " + std::to_string(res->status);
        if (trace_) trace_->record(name(), req, std::nullopt, err);
        throw BackendError(err);
    }
    try {
        json j = json::parse(res->body);
        BackendResponse out;
        out.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
        out.prompt_chars = prompt.size();
        out.completion_chars = out.text.size();
        if (trace_) trace_->record(name(), req, out, "");
        return out;
    } catch (const json::exception& e) {
        std::string err = std::string("bad completion payload: ") + e.what();
        if (trace_) trace_->record(name(), req, std::nullopt, err);
        throw BackendError(err);
    }
}

ScriptedBackend::ScriptedBackend(std::vector<std::string> responses) {
    for (auto& r : responses) queue_.push_back(std::move(r));
}

BackendResponse ScriptedBackend::generate(const BackendRequest& req) {
    const std::string prompt = render_prompt(req);
    std::string text;
    if (handler_) {
        text = handler_(req);
    } else {
        std::lock_guard<std::mutex> lock(mu_);
        if (queue_.empty()) throw BackendError("scripted backend exhausted");
        text = queue_.front();
        queue_.pop_front();
    }
    return {text, prompt.size(), text.size()};
}

BackendResponse FlakyBackend::generate(const BackendRequest& req) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (rng_.chance(fail_rate_)) throw BackendError("injected backend failure");
    }
    return inner_->generate(req);
}

std::optional<BackendResponse> generate_with_retries(TextBackend& backend,
                                                     const BackendRequest& req, Rng& rng,
                                                     int retries,
                                                     std::chrono::milliseconds backoff_base) {
    for (int attempt = 0; attempt <= retries; ++attempt) {
        try {
            return backend.generate(req);
        } catch (const BackendError&) {
            if (attempt == retries) break;
            if (backoff_base.count() > 0) {
                auto jitter = 0.5 + rng.unit(); // 0.5x..1.5x
                auto delay = std::chrono::milliseconds(static_cast<long>(
                    static_cast<double>(backoff_base.count()) * (attempt + 1) * jitter));
                std::this_thread::sleep_for(delay);
            }
        }
    }
    return std::nullopt;
}

} // namespace mafia::agent
