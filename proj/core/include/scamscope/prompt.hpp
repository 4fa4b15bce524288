#pragma once

#include "scamscope/tool_spec.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace scamscope::prompt {

/// The scam-website characteristics listed in the prompt. The bundled
/// template carries nine; operators may append more through config.
struct ScamFeatureList {
    std::vector<std::string> features;

    /// Throws TemplateError on an empty list or an empty entry.
    void validate() const;
};

/// Prompt wording, loaded from a text asset with `@@ section` markers.
/// Placeholders: {tool_names} and {max_actions} in `analysis_method`,
/// {url} in `analysis_process` and `single_turn_content`.
struct PromptTemplate {
    std::string version;
    std::string task_setting;
    std::string features_header;
    ScamFeatureList features;
    std::string tool_definitions_header;
    std::string analysis_method;
    std::string output_format;
    std::string analysis_process;
    std::string single_turn_role;
    std::string single_turn_content;
    std::string forced_final;

    static PromptTemplate from_string(std::string_view asset);
    static PromptTemplate from_file(const std::filesystem::path& path);
    static PromptTemplate bundled();

    void validate() const;
};

/// Full agent prompt: task setting, characteristic examples, tool
/// definitions, analysis method, output format and analysis process, in
/// that order. Ends with the question line and a newline.
std::string render_agent_prompt(const PromptTemplate& tpl, std::string_view url, const std::vector<ToolSpec>& tools,
                                int max_actions = 10);

struct TranscriptStep {
    std::string thought;
    std::string action;
    std::string action_input;
    std::string observation;
};

/// `prompt` followed by one Thought/Action/Action Input/Observation block
/// per step.
std::string render_transcript(std::string_view prompt, const std::vector<TranscriptStep>& steps);

/// Text appended after the transcript when the action budget is spent.
std::string render_forced_final(const PromptTemplate& tpl, int max_actions);

/// One-shot baseline prompt: expert role, characteristics, page text and
/// output format. No tools and no ReAct block.
std::string render_single_turn_prompt(const PromptTemplate& tpl, std::string_view url, std::string_view page_text);

}  // namespace scamscope::prompt
