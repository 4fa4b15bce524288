#include "scamscope/react.hpp"

#include "scamscope/text.hpp"

#include <algorithm>

namespace scamscope::react {

using json = nlohmann::json;

namespace {

enum class Label { thought, action, action_input, final_answer };

struct LabelPos {
    Label label;
    std::size_t start;  // of the label
    std::size_t body;   // first byte after the colon
};

// Labels at line starts, longest first so "Action Input:" wins over "Action:".
std::vector<LabelPos> find_labels(std::string_view s) {
    static const std::pair<std::string_view, Label> kLabels[] = {{"Action Input:", Label::action_input},
                                                                 {"Final Answer:", Label::final_answer},
                                                                 {"Thought:", Label::thought},
                                                                 {"Action:", Label::action}};
    std::vector<LabelPos> out;
    std::size_t line = 0;
    while (line <= s.size()) {
        std::size_t p = line;
        while (p < s.size() && (s[p] == ' ' || s[p] == '\t')) ++p;
        for (const auto& [name, label] : kLabels) {
            if (text::istarts_with(s.substr(p), name)) {
                out.push_back({label, p, p + name.size()});
                break;
            }
        }
        const auto nl = s.find('\n', line);
        if (nl == std::string_view::npos) break;
        line = nl + 1;
    }
    return out;
}

std::string segment(std::string_view s, const std::vector<LabelPos>& labels, std::size_t i) {
    const auto end = i + 1 < labels.size() ? labels[i + 1].start : s.size();
    return text::trim(s.substr(labels[i].body, end - labels[i].body));
}

std::string clean_input(std::string input) {
    // first non-empty line, without wrapping quotes or backticks
    for (const auto& line : text::split_lines(input)) {
        if (!text::trim(line).empty()) {
            input = text::trim(line);
            break;
        }
    }
    while (input.size() >= 2) {
        const char a = input.front();
        const char b = input.back();
        if ((a == '"' && b == '"') || (a == '\'' && b == '\'') || (a == '`' && b == '`')) {
            input = text::trim(input.substr(1, input.size() - 2));
        } else {
            break;
        }
    }
    return input;
}

std::int64_t elapsed(Clock& clock, std::int64_t since) { return std::max<std::int64_t>(0, clock.now_ms() - since); }

json verdict_json(const verdict::Verdict& v) {
    json j = {{"result", v.result}, {"reason", v.reason}};
    j["scam_type"] = v.scam_type ? json(*v.scam_type) : json(nullptr);
    if (v.scam_type_missing) j["scam_type_missing"] = true;
    if (!v.warnings.empty()) j["warnings"] = v.warnings;
    return j;
}

verdict::Verdict verdict_from(const json& j) {
    verdict::Verdict v;
    v.result = j.at("result").get<bool>();
    v.reason = j.value("reason", "");
    if (j.contains("scam_type") && j["scam_type"].is_string()) v.scam_type = j["scam_type"].get<std::string>();
    v.scam_type_missing = j.value("scam_type_missing", false);
    v.warnings = j.value("warnings", std::vector<std::string>{});
    return v;
}

// Records a backend failure on the session and raises it.
[[noreturn]] void fail(AnalysisSession& session, const Error& e, Clock& clock, std::int64_t started) {
    session.termination = Termination::error;
    session.error_kind = e.kind();
    session.error_message = e.what();
    session.wall_ms = std::max(elapsed(clock, started), session.llm_ms + session.tool_ms);
    throw SessionError(e.what(), session);
}

llm::ChatResponse call(llm::ChatBackend& backend, const llm::ChatRequest& request, TokenLedger& tokens,
                       std::int64_t& llm_ms, Clock& clock) {
    const auto t0 = clock.now_ms();
    auto response = backend.complete(request);
    llm_ms += elapsed(clock, t0);
    tokens.prompt_tokens += response.prompt_tokens;
    tokens.completion_tokens += response.completion_tokens;
    ++tokens.llm_calls;
    return response;
}

void conclude(AnalysisSession& session, const std::string& final_text, Termination on_success) {
    session.final_answer_text = final_text;
    try {
        session.verdict = verdict::parse_verdict(final_text);
        session.termination = on_success;
    } catch (const Error& e) {
        session.termination = Termination::parse_failure;
        session.error_kind = e.kind();
        session.error_message = e.what();
    }
}

}  // namespace

ParsedStep parse_step(std::string_view completion) {
    const auto labels = find_labels(completion);
    ParsedStep out;
    auto first = [&](Label l) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i].label == l) return i;
        }
        return std::nullopt;
    };
    const auto thought = first(Label::thought);
    const auto action = first(Label::action);
    const auto input = first(Label::action_input);
    const auto final_answer = first(Label::final_answer);

    if (thought) {
        out.thought = segment(completion, labels, *thought);
    } else if (!labels.empty()) {
        out.thought = text::trim(completion.substr(0, labels.front().start));
    }

    if (final_answer) {
        out.kind = ParsedStep::Kind::final;
        out.final_text = text::trim(completion.substr(labels[*final_answer].body));
        return out;
    }
    if (!action) throw MalformedStep("no Action or Final Answer label in the model output");
    out.kind = ParsedStep::Kind::step;
    out.action = clean_input(segment(completion, labels, *action));
    if (input) out.action_input = clean_input(segment(completion, labels, *input));
    return out;
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::final_answer: return "final_answer";
        case Termination::budget_forced: return "budget_forced";
        case Termination::parse_failure: return "parse_failure";
        case Termination::error: return "error";
    }
    return "error";
}

Termination parse_termination(std::string_view text) {
    for (auto t : {Termination::final_answer, Termination::budget_forced, Termination::parse_failure,
                   Termination::error}) {
        if (to_string(t) == text) return t;
    }
    throw ParseError("unknown termination '" + std::string(text) + "'");
}

json to_json(const AnalysisSession& s) {
    json steps = json::array();
    for (const auto& st : s.steps) {
        json j = {{"index", st.index},
                  {"thought", st.thought},
                  {"action", st.action},
                  {"action_input", st.action_input},
                  {"observation", st.observation},
                  {"tool_ms", st.tool_ms}};
        if (!st.requested_action.empty()) j["requested_action"] = st.requested_action;
        if (!st.error_kind.empty()) j["error_kind"] = st.error_kind;
        if (!st.source.empty()) j["source"] = st.source;
        steps.push_back(std::move(j));
    }
    json j = {{"schema_version", kSessionSchemaVersion},
              {"url", s.url},
              {"mode", s.mode},
              {"model_id", s.model_id},
              {"steps", steps},
              {"final_answer_text", s.final_answer_text ? json(*s.final_answer_text) : json(nullptr)},
              {"verdict", s.verdict ? verdict_json(*s.verdict) : json(nullptr)},
              {"actions_used", s.actions_used},
              {"token_ledger",
               {{"prompt_tokens", s.tokens.prompt_tokens},
                {"completion_tokens", s.tokens.completion_tokens},
                {"llm_calls", s.tokens.llm_calls}}},
              {"wall_ms", s.wall_ms},
              {"llm_ms", s.llm_ms},
              {"tool_ms", s.tool_ms},
              {"termination", to_string(s.termination)}};
    if (!s.error_kind.empty()) j["error"] = {{"kind", s.error_kind}, {"message", s.error_message}};
    return j;
}

AnalysisSession session_from_json(const json& j) {
    try {
        const auto version = j.value("schema_version", 0);
        if (version != kSessionSchemaVersion) {
            throw ParseError("unsupported session schema_version " + std::to_string(version));
        }
        AnalysisSession s;
        s.url = j.at("url").get<std::string>();
        s.mode = j.value("mode", "agent");
        s.model_id = j.value("model_id", "");
        for (const auto& st : j.value("steps", json::array())) {
            ReactStep step;
            step.index = st.at("index").get<int>();
            step.thought = st.value("thought", "");
            step.action = st.value("action", "");
            step.action_input = st.value("action_input", "");
            step.observation = st.value("observation", "");
            step.requested_action = st.value("requested_action", "");
            step.error_kind = st.value("error_kind", "");
            step.source = st.value("source", "");
            step.tool_ms = st.value("tool_ms", std::int64_t{0});
            s.steps.push_back(std::move(step));
        }
        if (j.contains("final_answer_text") && j["final_answer_text"].is_string()) {
            s.final_answer_text = j["final_answer_text"].get<std::string>();
        }
        if (j.contains("verdict") && j["verdict"].is_object()) s.verdict = verdict_from(j["verdict"]);
        s.actions_used = j.value("actions_used", 0);
        if (j.contains("token_ledger")) {
            const auto& t = j["token_ledger"];
            s.tokens.prompt_tokens = t.value("prompt_tokens", std::int64_t{0});
            s.tokens.completion_tokens = t.value("completion_tokens", std::int64_t{0});
            s.tokens.llm_calls = t.value("llm_calls", 0);
        }
        s.wall_ms = j.value("wall_ms", std::int64_t{0});
        s.llm_ms = j.value("llm_ms", std::int64_t{0});
        s.tool_ms = j.value("tool_ms", std::int64_t{0});
        s.termination = parse_termination(j.value("termination", "error"));
        if (j.contains("error")) {
            s.error_kind = j["error"].value("kind", "");
            s.error_message = j["error"].value("message", "");
        }
        return s;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed session record: ") + e.what());
    }
}

std::string truncate_observation(std::string_view body, std::size_t max_bytes) {
    return text::truncate_with_suffix(body, max_bytes, kTruncationSuffix);
}

llm::ChatRequest build_request(const std::string& prompt, const std::vector<ReactStep>& steps,
                               std::string_view suffix, const EngineConfig& config, bool with_stop) {
    std::vector<prompt::TranscriptStep> transcript;
    transcript.reserve(steps.size());
    for (const auto& s : steps) transcript.push_back({s.thought, s.action, s.action_input, s.observation});

    llm::ChatRequest request;
    request.temperature = config.temperature;
    request.max_context_tokens = config.max_context_tokens;
    request.model_id = config.model_id;
    if (with_stop) request.stop_sequences = {std::string(kStopSequence)};

    for (std::size_t elided = 0;; ++elided) {
        request.messages = {{llm::Role::user, prompt::render_transcript(prompt, transcript) + std::string(suffix)}};
        if (llm::estimate_prompt_tokens(request) <= config.max_context_tokens) return request;
        if (elided >= transcript.size()) {
            throw ContextOverflow("prompt exceeds " + std::to_string(config.max_context_tokens) +
                                  " tokens even with every observation elided");
        }
        transcript[elided].observation = std::string(kElidedObservation);
    }
}

ParsedStep force_final(const std::string& prompt, const std::vector<ReactStep>& steps, llm::ChatBackend& backend,
                       const prompt::PromptTemplate& tpl, const EngineConfig& config, TokenLedger& tokens,
                       std::int64_t& llm_ms, Clock& clock) {
    const auto request =
        build_request(prompt, steps, prompt::render_forced_final(tpl, config.max_actions), config, true);
    std::string last_problem;
    for (int attempt = 0; attempt < std::max(1, config.forced_final_attempts); ++attempt) {
        const auto response = call(backend, request, tokens, llm_ms, clock);
        try {
            auto parsed = parse_step(response.text);
            if (parsed.kind == ParsedStep::Kind::final) return parsed;
            last_problem = "the model selected another tool after the budget was spent";
        } catch (const MalformedStep& e) {
            last_problem = e.what();
        }
    }
    throw ParseFailure("no final answer after " + std::to_string(config.forced_final_attempts) +
                       " forced attempts: " + last_problem);
}

AnalysisSession run_session(std::string_view url, llm::ChatBackend& backend, tools::ToolRegistry& registry,
                            const prompt::PromptTemplate& tpl, const EngineConfig& config, Clock& clock) {
    const auto started = clock.now_ms();
    AnalysisSession session;
    session.url = std::string(url);
    session.model_id = config.model_id;
    const auto prompt = prompt::render_agent_prompt(tpl, url, registry.specs(), config.max_actions);
    tools::SessionPages pages;

    std::vector<std::string> names;
    for (const auto& spec : registry.specs()) names.push_back(spec.name);
    const auto available = text::join(names, ", ");

    auto finish = [&] { session.wall_ms = std::max(elapsed(clock, started), session.llm_ms + session.tool_ms); };

    while (true) {
        if (session.actions_used >= config.max_actions) {
            try {
                const auto parsed = force_final(prompt, session.steps, backend, tpl, config, session.tokens,
                                                session.llm_ms, clock);
                conclude(session, parsed.final_text, Termination::budget_forced);
            } catch (const ParseFailure& e) {
                session.termination = Termination::parse_failure;
                session.error_kind = e.kind();
                session.error_message = e.what();
            } catch (const Error& e) {
                fail(session, e, clock, started);
            }
            finish();
            return session;
        }

        llm::ChatResponse response;
        try {
            response = call(backend, build_request(prompt, session.steps, "", config, true), session.tokens,
                            session.llm_ms, clock);
        } catch (const Error& e) {
            fail(session, e, clock, started);
        }

        ReactStep step;
        step.index = session.actions_used + 1;
        ParsedStep parsed;
        try {
            parsed = parse_step(response.text);
        } catch (const MalformedStep& e) {
            step.thought = text::trim(response.text);
            step.action = std::string(kInvalidAction);
            step.error_kind = e.kind();
            step.observation = truncate_observation(
                "Error: could not parse your reply. Use the Thought/Action/Action Input format, or give the "
                "Final Answer.",
                config.max_observation_chars);
            session.steps.push_back(std::move(step));
            ++session.actions_used;
            continue;
        }

        if (parsed.kind == ParsedStep::Kind::final) {
            conclude(session, parsed.final_text, Termination::final_answer);
            finish();
            return session;
        }

        step.thought = parsed.thought;
        step.action_input = parsed.action_input;
        if (!registry.has(parsed.action)) {
            step.action = std::string(kInvalidAction);
            step.requested_action = parsed.action;
            step.error_kind = "UnknownTool";
            step.observation = truncate_observation(
                "Error: unknown tool '" + parsed.action + "'. Available tools: " + available,
                config.max_observation_chars);
        } else {
            step.action = parsed.action;
            const auto t0 = clock.now_ms();
            try {
                const auto obs = registry.dispatch(pages, parsed.action, parsed.action_input);
                step.observation = truncate_observation(obs.body, config.max_observation_chars);
                step.source = std::string(tools::to_string(obs.source));
            } catch (const Error& e) {
                step.error_kind = e.kind();
                step.observation = truncate_observation(std::string("Error: ") + e.what(), config.max_observation_chars);
            }
            step.tool_ms = elapsed(clock, t0);
            session.tool_ms += step.tool_ms;
        }
        session.steps.push_back(std::move(step));
        ++session.actions_used;
    }
}

AnalysisSession run_single_turn(std::string_view url, llm::ChatBackend& backend, tools::ToolRegistry& registry,
                                const prompt::PromptTemplate& tpl, const EngineConfig& config, Clock& clock) {
    const auto started = clock.now_ms();
    AnalysisSession session;
    session.url = std::string(url);
    session.mode = "single_turn";
    session.model_id = config.model_id;

    tools::SessionPages pages;
    std::string page_text;
    const auto t0 = clock.now_ms();
    try {
        registry.dispatch(pages, tools::kAccessUrl, url);
        page_text = registry.dispatch(pages, tools::kExtractText, url).body;
    } catch (const Error& e) {
        // the baseline still asks the model, with an empty page body
        session.error_kind = e.kind();
        session.error_message = std::string("page unavailable: ") + e.what();
    }
    session.tool_ms = elapsed(clock, t0);
    page_text = truncate_observation(page_text, config.max_observation_chars);

    llm::ChatRequest request;
    request.temperature = config.temperature;
    request.max_context_tokens = config.max_context_tokens;
    request.model_id = config.model_id;
    request.messages = {{llm::Role::user, prompt::render_single_turn_prompt(tpl, url, page_text)}};
    llm::ChatResponse response;
    try {
        response = call(backend, request, session.tokens, session.llm_ms, clock);
    } catch (const Error& e) {
        fail(session, e, clock, started);
    }
    session.error_kind.clear();
    session.error_message.clear();
    conclude(session, text::trim(response.text), Termination::final_answer);
    session.wall_ms = std::max(elapsed(clock, started), session.llm_ms + session.tool_ms);
    return session;
}

}  // namespace scamscope::react
