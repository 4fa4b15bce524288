#pragma once

#include "scamscope/tools.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace scamscope::cli {

/// Everything a run needs. Each field is a command-line flag; the same
/// names (without the leading dashes) work as keys in a `--config` file.
struct RunConfig {
    // model
    std::string model_id = "gpt-4-turbo";
    std::string endpoint = "https://api.openai.com/v1/chat/completions";
    std::string api_key_env = "OPENAI_API_KEY";
    double temperature = 0.7;
    std::int64_t max_context_tokens = 128000;

    // agent
    int max_actions = 10;
    std::int64_t max_observation_chars = 8000;
    bool single_turn = false;
    std::vector<std::string> tools;           // empty: all nine
    std::vector<std::string> extra_features;  // appended to the template's list

    // execution
    tools::Mode mode = tools::Mode::replay;
    int parallelism = 4;
    std::string user_agent = std::string(tools::kUserAgent);
    std::int64_t http_timeout_ms = 30000;
    double rate_per_second = 1.0;
    std::string dns_server = "8.8.8.8";

    // paths
    std::filesystem::path template_path;
    std::filesystem::path keywords_path;
    std::filesystem::path synonyms_path;
    std::filesystem::path fixtures;
    std::filesystem::path scripts;         // scripted completions: index.json + one array per URL
    std::filesystem::path record_scripts;  // where live completions are saved
    std::filesystem::path sim;             // simulated web instead of live providers
    std::filesystem::path output;

    bool whole_word_keywords = false;
};

/// Throws ConfigError describing the first problem found. Commands that
/// only use the tools (dataset check) pass needs_model=false.
void validate(const RunConfig& config, bool needs_model = true);

/// Environment variables a live run needs for the enabled tools and the
/// model, in a fixed order. Empty when nothing is missing.
std::vector<std::string> missing_credentials(const RunConfig& config, bool needs_model = true);

}  // namespace scamscope::cli
