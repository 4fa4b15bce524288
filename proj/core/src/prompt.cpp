#include "scamscope/prompt.hpp"

#include "scamscope/data_files.hpp"
#include "scamscope/errors.hpp"
#include "scamscope/text.hpp"

#include <map>

namespace scamscope::prompt {

namespace {

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
    return s;
}

std::string strip_blank_lines(const std::vector<std::string>& lines) {
    std::size_t b = 0;
    std::size_t e = lines.size();
    while (b < e && text::trim(lines[b]).empty()) ++b;
    while (e > b && text::trim(lines[e - 1]).empty()) --e;
    return text::join(std::vector<std::string>(lines.begin() + b, lines.begin() + e), "\n");
}

std::string numbered_features(const PromptTemplate& tpl) {
    std::string out = tpl.features_header + "\n";
    for (std::size_t i = 0; i < tpl.features.features.size(); ++i) {
        out += std::to_string(i + 1) + ". " + tpl.features.features[i] + "\n";
    }
    return out;
}

}  // namespace

void ScamFeatureList::validate() const {
    if (features.empty()) throw TemplateError("feature list is empty");
    for (const auto& f : features) {
        if (text::trim(f).empty()) throw TemplateError("feature list has an empty entry");
    }
}

PromptTemplate PromptTemplate::from_string(std::string_view asset) {
    std::map<std::string, std::vector<std::string>> sections;
    std::string current;
    std::string version;
    for (const auto& line : text::split_lines(asset)) {
        if (line.rfind("@@ ", 0) == 0) {
            current = text::trim(line.substr(3));
            if (sections.count(current)) throw TemplateError("duplicate template section '" + current + "'");
            sections[current];
            continue;
        }
        if (current.empty()) {
            if (line.rfind("version:", 0) == 0) version = text::trim(line.substr(8));
            continue;
        }
        sections[current].push_back(line);
    }

    auto take = [&](const char* name) {
        const auto it = sections.find(name);
        if (it == sections.end()) throw TemplateError(std::string("template is missing section '") + name + "'");
        return strip_blank_lines(it->second);
    };

    PromptTemplate tpl;
    tpl.version = version;
    tpl.task_setting = take("task_setting");
    tpl.features_header = take("features_header");
    for (const auto& f : text::split_lines(take("features"))) {
        if (!text::trim(f).empty()) tpl.features.features.push_back(text::trim(f));
    }
    tpl.tool_definitions_header = take("tool_definitions_header");
    tpl.analysis_method = take("analysis_method");
    tpl.output_format = take("output_format");
    tpl.analysis_process = take("analysis_process");
    tpl.forced_final = take("forced_final");
    tpl.single_turn_role = take("single_turn_role");
    tpl.single_turn_content = take("single_turn_content");
    tpl.validate();
    return tpl;
}

PromptTemplate PromptTemplate::from_file(const std::filesystem::path& path) {
    return from_string(read_file(path));
}

PromptTemplate PromptTemplate::bundled() {
    return from_file(data_file("prompt_template.txt"));
}

void PromptTemplate::validate() const {
    features.validate();
    if (analysis_method.find("{tool_names}") == std::string::npos) {
        throw TemplateError("analysis_method must contain {tool_names}");
    }
    if (analysis_process.find("{url}") == std::string::npos) {
        throw TemplateError("analysis_process must contain {url}");
    }
    for (const char* key : {"result", "scam_type", "reason"}) {
        if (output_format.find(key) == std::string::npos) {
            throw TemplateError(std::string("output_format must name the key '") + key + "'");
        }
    }
}

std::string render_agent_prompt(const PromptTemplate& tpl, std::string_view url, const std::vector<ToolSpec>& tools,
                                int max_actions) {
    if (tools.empty()) throw EmptyToolSet("cannot render an agent prompt without tools");
    if (text::trim(url).empty() || url.find_first_of(" \t\r\n") != std::string_view::npos) {
        throw InvalidUrl("not a URL: '" + std::string(url) + "'");
    }

    std::vector<std::string> names;
    std::string definitions = tpl.tool_definitions_header + "\n";
    for (const auto& tool : tools) {
        names.push_back(tool.name);
        definitions += tool.name + ": " + tool.description + "\n";
    }

    auto method = replace_all(tpl.analysis_method, "{tool_names}", text::join(names, ", "));
    method = replace_all(method, "{max_actions}", std::to_string(max_actions));

    std::string out;
    out += tpl.task_setting + "\n\n";
    out += numbered_features(tpl) + "\n";
    out += definitions + "\n";
    out += method + "\n\n";
    out += tpl.output_format + "\n\n";
    // the URL is substituted last so braces inside it are never expanded
    out += replace_all(tpl.analysis_process, "{url}", url) + "\n";
    return out;
}

std::string render_transcript(std::string_view prompt, const std::vector<TranscriptStep>& steps) {
    std::string out(prompt);
    for (const auto& step : steps) {
        out += "Thought: " + step.thought + "\n";
        out += "Action: " + step.action + "\n";
        out += "Action Input: " + step.action_input + "\n";
        out += "Observation: " + step.observation + "\n";
    }
    return out;
}

std::string render_forced_final(const PromptTemplate& tpl, int max_actions) {
    return replace_all(tpl.forced_final, "{max_actions}", std::to_string(max_actions)) + "\n";
}

std::string render_single_turn_prompt(const PromptTemplate& tpl, std::string_view url, std::string_view page_text) {
    std::string out;
    out += tpl.single_turn_role + "\n\n";
    out += numbered_features(tpl) + "\n";
    out += replace_all(tpl.single_turn_content, "{url}", url) + "\n";
    out += page_text;
    out += "\n\n";
    out += tpl.output_format + "\n";
    return out;
}

}  // namespace scamscope::prompt
