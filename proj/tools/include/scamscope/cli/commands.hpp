#pragma once

#include "scamscope/cli/config.hpp"
#include "scamscope/clock.hpp"
#include "scamscope/eval.hpp"
#include "scamscope/llm.hpp"
#include "scamscope/prompt.hpp"
#include "scamscope/react.hpp"
#include "scamscope/tools.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace scamscope::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Per-URL scripted completions: `index.json` maps URLs to JSON files
/// (relative to the directory) holding an array of completion strings.
class ScriptLibrary {
public:
    static ScriptLibrary from_directory(const std::filesystem::path& dir);

    bool has(const std::string& url) const;
    /// Throws ConfigError when the URL has no script.
    std::unique_ptr<llm::ScriptedBackend> backend_for(const std::string& url) const;
    std::size_t size() const { return files_.size(); }

private:
    std::filesystem::path dir_;
    std::map<std::string, std::filesystem::path> files_;  // canonical URL -> file
};

/// Writes recorded completions in the ScriptLibrary layout. Safe to call
/// from several threads; the index is rewritten after every save.
class ScriptRecorder {
public:
    explicit ScriptRecorder(std::filesystem::path dir);
    void save(const std::string& url, const std::vector<std::string>& completions);

private:
    std::filesystem::path dir_;
    std::mutex mutex_;
    nlohmann::json index_;
};

/// Registry, prompt, clock and model wiring for one command invocation.
class Runtime {
public:
    /// Validates the config and checks credentials. Throws ConfigError.
    explicit Runtime(const RunConfig& config, bool needs_model = true);

    const RunConfig& config() const { return config_; }
    tools::ToolRegistry& registry() { return *registry_; }
    const prompt::PromptTemplate& prompt_template() const { return template_; }
    Clock& clock() { return *clock_; }
    react::EngineConfig engine_config() const;

    /// Runs one analysis. Backend failures come back as a session with
    /// termination=error instead of an exception.
    react::AnalysisSession analyze(const std::string& url);

private:
    RunConfig config_;
    prompt::PromptTemplate template_;
    std::shared_ptr<Clock> clock_;
    std::unique_ptr<tools::ToolRegistry> registry_;
    std::optional<ScriptLibrary> scripts_;
    std::unique_ptr<llm::ChatBackend> live_backend_;
    std::unique_ptr<ScriptRecorder> recorder_;
};

/// Session for a URL that could not be analyzed at all.
react::AnalysisSession failed_session(const std::string& url, const RunConfig& config, const Error& error);

struct BatchSummary {
    std::size_t entries = 0;  // retained dataset entries
    std::size_t skipped = 0;  // already present in the output
    std::size_t analyzed = 0;
    std::size_t errors = 0;   // sessions ending in termination=error
};

/// Analyzes every retained entry not yet in `config.output`, appending
/// each session as it finishes, then rewrites the file in dataset order.
BatchSummary run_batch(const std::filesystem::path& dataset_file, const RunConfig& config, std::ostream& log);

std::vector<react::AnalysisSession> read_sessions(const std::filesystem::path& path);

/// Full command line: `scamscope <command> [options]`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scamscope::cli
