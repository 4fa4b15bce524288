#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace scamscope::llm {

enum class Role { system, user, assistant };

std::string_view to_string(Role role);

struct ChatMessage {
    Role role = Role::user;
    std::string text;
};

inline constexpr double kDefaultTemperature = 0.7;
inline constexpr std::int64_t kDefaultContextTokens = 128000;

struct ChatRequest {
    std::vector<ChatMessage> messages;
    double temperature = kDefaultTemperature;
    std::int64_t max_context_tokens = kDefaultContextTokens;
    std::vector<std::string> stop_sequences;
    std::string model_id;
};

struct ChatResponse {
    std::string text;
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
    std::chrono::milliseconds latency{0};
};

/// Token estimate: bytes / 4, rounded up. No tokenizer is bundled; the
/// estimate only feeds the context budget check and cost reporting.
std::int64_t estimate_tokens(std::string_view text);

std::int64_t estimate_prompt_tokens(const ChatRequest& request);

/// Throws InvalidRequest for an empty message list or an out-of-range
/// temperature, ContextOverflow when the prompt estimate exceeds
/// `max_context_tokens`.
void validate(const ChatRequest& request);

/// Cuts `text` just before the earliest occurrence of any stop sequence.
std::string truncate_at_stop(std::string_view text, const std::vector<std::string>& stops);

/// A chat-completion provider. `complete` is the only entry point: it
/// validates the request, calls the backend, applies stop sequences
/// client-side and fills in latency. Implementations must be thread-safe.
class ChatBackend {
public:
    virtual ~ChatBackend() = default;

    ChatResponse complete(const ChatRequest& request);

    virtual std::string name() const = 0;

protected:
    virtual ChatResponse do_complete(const ChatRequest& request) = 0;
};

inline ChatResponse complete(ChatBackend& backend, const ChatRequest& request) {
    return backend.complete(request);
}

/// Replays canned completions in order. Token counts are estimates of the
/// prompt and the returned text.
class ScriptedBackend final : public ChatBackend {
public:
    explicit ScriptedBackend(std::vector<std::string> script);

    /// Loads a JSON array of strings.
    static std::unique_ptr<ScriptedBackend> from_file(const std::filesystem::path& path);

    std::size_t cursor() const;
    std::size_t size() const { return script_.size(); }
    std::string name() const override { return "scripted"; }

protected:
    ChatResponse do_complete(const ChatRequest& request) override;

private:
    std::vector<std::string> script_;
    mutable std::mutex mutex_;
    std::size_t cursor_ = 0;
};

enum class AuthStyle { bearer, api_key_header };

struct LiveBackendConfig {
    std::string endpoint;  // full chat-completions URL
    std::string model_id;
    std::string api_key_env = "OPENAI_API_KEY";
    AuthStyle auth = AuthStyle::bearer;
    int max_retries = 3;
    std::chrono::milliseconds initial_backoff{1000};
    std::chrono::milliseconds timeout{120000};
};

/// OpenAI-compatible chat-completions client. Transient failures
/// (connection errors, 429, 5xx) are retried with exponential backoff.
class LiveBackend final : public ChatBackend {
public:
    /// Reads the credential from the environment; throws ConfigError
    /// naming the variable when it is unset.
    explicit LiveBackend(LiveBackendConfig config);

    std::string name() const override { return "live:" + config_.model_id; }

    /// The JSON body sent for `request` (exposed for tests).
    std::string request_body(const ChatRequest& request) const;

protected:
    ChatResponse do_complete(const ChatRequest& request) override;

private:
    LiveBackendConfig config_;
    std::string api_key_;
};

/// Forwards to another backend and remembers every completion text so a
/// live run can be saved as a script for replay.
class RecordingBackend final : public ChatBackend {
public:
    explicit RecordingBackend(ChatBackend& inner) : inner_(inner) {}

    std::vector<std::string> recorded() const;
    std::string name() const override { return "recording:" + inner_.name(); }

protected:
    ChatResponse do_complete(const ChatRequest& request) override;

private:
    ChatBackend& inner_;
    mutable std::mutex mutex_;
    std::vector<std::string> recorded_;
};

void write_script(const std::filesystem::path& path, const std::vector<std::string>& script);

}  // namespace scamscope::llm
