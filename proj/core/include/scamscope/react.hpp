#pragma once

#include "scamscope/clock.hpp"
#include "scamscope/errors.hpp"
#include "scamscope/llm.hpp"
#include "scamscope/prompt.hpp"
#include "scamscope/tools.hpp"
#include "scamscope/verdict.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scamscope::react {

/// Action recorded for steps that named no registered tool or could not
/// be parsed.
inline constexpr std::string_view kInvalidAction = "invalid";
inline constexpr std::string_view kStopSequence = "Observation:";
inline constexpr std::string_view kTruncationSuffix = "…[truncated]";
inline constexpr std::string_view kElidedObservation = "[observation elided]";
inline constexpr int kSessionSchemaVersion = 1;

struct ParsedStep {
    enum class Kind { step, final };
    Kind kind = Kind::step;
    std::string thought;
    std::string action;        // step only
    std::string action_input;  // step only
    std::string final_text;    // final only
};

/// Splits one model completion into its labeled parts. Labels are
/// matched case-insensitively at line starts. Throws MalformedStep when
/// neither an Action nor a Final Answer label is present.
ParsedStep parse_step(std::string_view completion);

struct ReactStep {
    int index = 0;
    std::string thought;
    std::string action;        // tool name or kInvalidAction
    std::string action_input;
    std::string observation;
    std::string requested_action;  // what the model wrote, when action is invalid
    std::string error_kind;        // set when the observation reports an error
    std::string source;            // live / cache / fixture, empty on error
    std::int64_t tool_ms = 0;
};

enum class Termination { final_answer, budget_forced, parse_failure, error };
std::string_view to_string(Termination t);
Termination parse_termination(std::string_view text);

struct TokenLedger {
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
    int llm_calls = 0;
};

struct AnalysisSession {
    std::string url;
    std::string mode = "agent";  // or "single_turn"
    std::string model_id;
    std::vector<ReactStep> steps;
    std::optional<std::string> final_answer_text;
    std::optional<verdict::Verdict> verdict;
    int actions_used = 0;
    TokenLedger tokens;
    std::int64_t wall_ms = 0;
    std::int64_t llm_ms = 0;
    std::int64_t tool_ms = 0;
    Termination termination = Termination::error;
    std::string error_kind;
    std::string error_message;
};

nlohmann::json to_json(const AnalysisSession& session);
AnalysisSession session_from_json(const nlohmann::json& j);

/// Raised when the model backend fails beyond recovery. Carries the
/// session as far as it got.
class SessionError : public Error {
public:
    SessionError(const std::string& message, AnalysisSession partial)
        : Error("SessionError", message), partial_(std::make_shared<AnalysisSession>(std::move(partial))) {}

    const AnalysisSession& partial() const { return *partial_; }

private:
    std::shared_ptr<AnalysisSession> partial_;
};

struct EngineConfig {
    int max_actions = 10;
    std::size_t max_observation_chars = 8000;
    double temperature = llm::kDefaultTemperature;
    std::int64_t max_context_tokens = llm::kDefaultContextTokens;
    std::string model_id;
    int forced_final_attempts = 3;  // one call plus two retries
};

/// Cuts an observation to `max_bytes` (UTF-8 safe), ending with
/// kTruncationSuffix when anything was dropped.
std::string truncate_observation(std::string_view body, std::size_t max_bytes);

/// Builds the chat request for a prompt plus transcript, replacing the
/// oldest observations with kElidedObservation until the estimate fits
/// the context. Throws ContextOverflow when even that is not enough.
llm::ChatRequest build_request(const std::string& prompt, const std::vector<ReactStep>& steps,
                               std::string_view suffix, const EngineConfig& config, bool with_stop);

/// Runs the agent loop for one URL. Tool failures become "Error: ..."
/// observations; only backend failures raise (as SessionError).
AnalysisSession run_session(std::string_view url, llm::ChatBackend& backend, tools::ToolRegistry& registry,
                            const prompt::PromptTemplate& tpl, const EngineConfig& config, Clock& clock);

/// Asks for an immediate final answer after the budget is spent. Returns
/// a final ParsedStep or throws ParseFailure after `attempts` tries.
ParsedStep force_final(const std::string& prompt, const std::vector<ReactStep>& steps, llm::ChatBackend& backend,
                       const prompt::PromptTemplate& tpl, const EngineConfig& config, TokenLedger& tokens,
                       std::int64_t& llm_ms, Clock& clock);

/// One-shot baseline: fetch and extract the top page, then one model call
/// with no tools.
AnalysisSession run_single_turn(std::string_view url, llm::ChatBackend& backend, tools::ToolRegistry& registry,
                                const prompt::PromptTemplate& tpl, const EngineConfig& config, Clock& clock);

}  // namespace scamscope::react
