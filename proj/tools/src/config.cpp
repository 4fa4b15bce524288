#include "scamscope/cli/config.hpp"

#include "scamscope/errors.hpp"
#include "scamscope/live_providers.hpp"

#include <cstdlib>

namespace scamscope::cli {

namespace {

bool env_set(const std::string& name) {
    const char* v = std::getenv(name.c_str());
    return v != nullptr && *v != '\0';
}

bool tool_enabled(const RunConfig& config, std::string_view name) {
    if (config.tools.empty()) return true;
    for (const auto& t : config.tools) {
        if (t == name) return true;
    }
    return false;
}

}  // namespace

void validate(const RunConfig& config, bool needs_model) {
    if (config.max_actions < 1) throw ConfigError("max-actions must be at least 1");
    if (config.max_observation_chars < 64) throw ConfigError("max-observation-chars must be at least 64");
    if (config.temperature < 0.0 || config.temperature > 2.0) throw ConfigError("temperature must be within [0, 2]");
    if (config.max_context_tokens < 1) throw ConfigError("max-context-tokens must be positive");
    if (config.parallelism < 1) throw ConfigError("parallelism must be at least 1");
    if (config.http_timeout_ms < 1) throw ConfigError("http-timeout-ms must be positive");
    if (config.rate_per_second < 0.0) throw ConfigError("rate-per-second must not be negative");
    for (const auto& t : config.tools) {
        if (!tools::find_builtin(t)) throw ConfigError("unknown tool '" + t + "' in tools");
    }
    if (config.mode != tools::Mode::live && config.fixtures.empty()) {
        throw ConfigError(std::string(tools::to_string(config.mode)) + " mode needs --fixtures");
    }
    if (!needs_model) return;
    if (config.mode == tools::Mode::replay && config.scripts.empty()) {
        throw ConfigError("replay mode needs --scripts with recorded completions");
    }
    if (config.mode == tools::Mode::replay && !config.record_scripts.empty()) {
        throw ConfigError("record-scripts is only meaningful with a live model");
    }
    if (!config.scripts.empty() && !config.record_scripts.empty()) {
        throw ConfigError("scripts and record-scripts are mutually exclusive");
    }
}

std::vector<std::string> missing_credentials(const RunConfig& config, bool needs_model) {
    std::vector<std::string> missing;
    if (config.mode == tools::Mode::replay) return missing;
    if (needs_model && config.scripts.empty() && !env_set(config.api_key_env)) missing.push_back(config.api_key_env);
    if (!config.sim.empty()) return missing;
    const tools::LiveProviderConfig defaults;
    if (tool_enabled(config, tools::kGetSearchResult) && !env_set(defaults.search_key_env)) {
        missing.push_back(defaults.search_key_env);
    }
    if (tool_enabled(config, tools::kSearchX) && !env_set(defaults.x_token_env)) {
        missing.push_back(defaults.x_token_env);
    }
    if (tool_enabled(config, tools::kSearchReddit) && !env_set(defaults.reddit_token_env)) {
        missing.push_back(defaults.reddit_token_env);
    }
    return missing;
}

}  // namespace scamscope::cli
