#include "scamscope/llm.hpp"

#include "scamscope/data_files.hpp"
#include "scamscope/errors.hpp"
#include "scamscope/net.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <thread>

namespace scamscope::llm {

using json = nlohmann::json;

std::string_view to_string(Role role) {
    switch (role) {
        case Role::system: return "system";
        case Role::user: return "user";
        case Role::assistant: return "assistant";
    }
    return "user";
}

std::int64_t estimate_tokens(std::string_view text) {
    return static_cast<std::int64_t>((text.size() + 3) / 4);
}

std::int64_t estimate_prompt_tokens(const ChatRequest& request) {
    std::int64_t total = 0;
    for (const auto& m : request.messages) total += estimate_tokens(m.text);
    return total;
}

void validate(const ChatRequest& request) {
    if (request.messages.empty()) throw InvalidRequest("chat request has no messages");
    if (!(request.temperature >= 0.0 && request.temperature <= 2.0)) {
        throw InvalidRequest("temperature must be in [0, 2]");
    }
    if (request.max_context_tokens <= 0) throw InvalidRequest("max_context_tokens must be positive");
    const auto estimate = estimate_prompt_tokens(request);
    if (estimate > request.max_context_tokens) {
        throw ContextOverflow("prompt needs ~" + std::to_string(estimate) + " tokens, limit is " +
                              std::to_string(request.max_context_tokens));
    }
}

std::string truncate_at_stop(std::string_view text, const std::vector<std::string>& stops) {
    std::size_t cut = text.size();
    for (const auto& stop : stops) {
        if (stop.empty()) continue;
        cut = std::min(cut, text.find(stop));
    }
    return std::string(text.substr(0, cut));
}

ChatResponse ChatBackend::complete(const ChatRequest& request) {
    validate(request);
    const auto started = std::chrono::steady_clock::now();
    auto response = do_complete(request);
    response.text = truncate_at_stop(response.text, request.stop_sequences);
    response.latency =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    response.prompt_tokens = std::max<std::int64_t>(0, response.prompt_tokens);
    response.completion_tokens = std::max<std::int64_t>(0, response.completion_tokens);
    return response;
}

// --- scripted ---------------------------------------------------------------

ScriptedBackend::ScriptedBackend(std::vector<std::string> script) : script_(std::move(script)) {}

std::unique_ptr<ScriptedBackend> ScriptedBackend::from_file(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("script " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_array()) throw ConfigError("script " + path.string() + " must be a JSON array of strings");
    std::vector<std::string> script;
    for (const auto& item : doc) {
        if (!item.is_string()) throw ConfigError("script " + path.string() + " must contain only strings");
        script.push_back(item.get<std::string>());
    }
    return std::make_unique<ScriptedBackend>(std::move(script));
}

std::size_t ScriptedBackend::cursor() const {
    std::lock_guard lock(mutex_);
    return cursor_;
}

ChatResponse ScriptedBackend::do_complete(const ChatRequest& request) {
    std::string text;
    {
        std::lock_guard lock(mutex_);
        if (cursor_ >= script_.size()) {
            throw ScriptExhausted("script exhausted after " + std::to_string(script_.size()) + " completions");
        }
        text = script_[cursor_++];
    }
    ChatResponse response;
    response.prompt_tokens = estimate_prompt_tokens(request);
    response.completion_tokens = estimate_tokens(truncate_at_stop(text, request.stop_sequences));
    response.text = std::move(text);
    return response;
}

// --- live -------------------------------------------------------------------

LiveBackend::LiveBackend(LiveBackendConfig config) : config_(std::move(config)) {
    if (config_.endpoint.empty()) throw ConfigError("live backend needs an endpoint URL");
    if (config_.model_id.empty()) throw ConfigError("live backend needs a model id");
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key || !*key) {
        throw ConfigError("environment variable " + config_.api_key_env + " is not set (LLM credential)");
    }
    api_key_ = key;
}

std::string LiveBackend::request_body(const ChatRequest& request) const {
    json body;
    body["model"] = request.model_id.empty() ? config_.model_id : request.model_id;
    body["temperature"] = request.temperature;
    body["messages"] = json::array();
    for (const auto& m : request.messages) {
        body["messages"].push_back({{"role", std::string(to_string(m.role))}, {"content", m.text}});
    }
    if (!request.stop_sequences.empty()) {
        // the OpenAI API accepts at most four
        json stops = json::array();
        for (std::size_t i = 0; i < request.stop_sequences.size() && i < 4; ++i) stops.push_back(request.stop_sequences[i]);
        body["stop"] = stops;
    }
    return body.dump();
}

ChatResponse LiveBackend::do_complete(const ChatRequest& request) {
    net::HttpRequest http;
    http.method = "POST";
    http.url = config_.endpoint;
    http.body = request_body(request);
    http.content_type = "application/json";
    http.timeout = config_.timeout;
    if (config_.auth == AuthStyle::bearer) {
        http.headers.emplace_back("Authorization", "Bearer " + api_key_);
    } else {
        http.headers.emplace_back("api-key", api_key_);
    }

    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(config_.initial_backoff * (1 << (attempt - 1)));
        net::HttpResponse resp;
        try {
            resp = net::http_send(http);
        } catch (const FetchError& e) {
            last_error = e.what();
            continue;
        }
        if (resp.status == 429 || resp.status >= 500) {
            last_error = "HTTP " + std::to_string(resp.status) + ": " + resp.body.substr(0, 200);
            continue;
        }
        if (resp.status >= 400) {
            throw TransportError("chat endpoint returned HTTP " + std::to_string(resp.status) + ": " +
                                 resp.body.substr(0, 500));
        }
        try {
            const auto doc = json::parse(resp.body);
            ChatResponse out;
            const auto& content = doc.at("choices").at(0).at("message").at("content");
            out.text = content.is_string() ? content.get<std::string>() : std::string();
            if (doc.contains("usage") && doc["usage"].is_object()) {
                out.prompt_tokens = doc["usage"].value("prompt_tokens", std::int64_t{0});
                out.completion_tokens = doc["usage"].value("completion_tokens", std::int64_t{0});
            } else {
                out.prompt_tokens = estimate_prompt_tokens(request);
                out.completion_tokens = estimate_tokens(out.text);
            }
            return out;
        } catch (const json::exception& e) {
            throw TransportError(std::string("malformed chat response: ") + e.what());
        }
    }
    throw TransportError("chat endpoint failed after " + std::to_string(config_.max_retries + 1) +
                         " attempts: " + last_error);
}

// --- recording --------------------------------------------------------------

std::vector<std::string> RecordingBackend::recorded() const {
    std::lock_guard lock(mutex_);
    return recorded_;
}

ChatResponse RecordingBackend::do_complete(const ChatRequest& request) {
    auto response = inner_.complete(request);
    std::lock_guard lock(mutex_);
    recorded_.push_back(response.text);
    return response;
}

void write_script(const std::filesystem::path& path, const std::vector<std::string>& script) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write script " + path.string());
    out << json(script).dump(2) << "\n";
}

}  // namespace scamscope::llm
