#include "scamscope/errors.hpp"
#include "scamscope/react.hpp"
#include "scamscope/sim_web.hpp"
#include "scamscope/text.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

namespace scamscope::react {
namespace {

using scamscope::testing::final_answer;
using scamscope::testing::step;

const std::string kScamJson = R"({"result": true, "scam_type": "Fake online shopping website", "reason": "abnormal price"})";

class ReactTest : public ::testing::Test {
protected:
    ReactTest() {
        tools::ToolRegistry::Options o;
        o.mode = tools::Mode::live;
        o.clock = clock_;
        registry_ = std::make_unique<tools::ToolRegistry>(web_->providers(), o);
        config_.model_id = "test-model";
    }

    AnalysisSession run(std::vector<std::string> script, const std::string& url = "http://shop.example/") {
        llm::ScriptedBackend backend(std::move(script));
        return run_session(url, backend, *registry_, tpl_, config_, *clock_);
    }

    static void check_invariants(const AnalysisSession& s, const EngineConfig& config) {
        EXPECT_EQ(s.actions_used, static_cast<int>(s.steps.size()));
        EXPECT_LE(s.actions_used, config.max_actions);
        EXPECT_LE(s.llm_ms + s.tool_ms, s.wall_ms);
        for (std::size_t i = 0; i < s.steps.size(); ++i) {
            EXPECT_EQ(s.steps[i].index, static_cast<int>(i) + 1);
            EXPECT_LE(s.steps[i].observation.size(), config.max_observation_chars);
        }
        if (s.termination == Termination::final_answer) EXPECT_TRUE(s.verdict.has_value());
    }

    std::shared_ptr<tools::SimWeb> web_ = tools::SimWeb::from_json(testing::oversupply_world());
    std::shared_ptr<FrozenClock> clock_ = std::make_shared<FrozenClock>(0);
    std::unique_ptr<tools::ToolRegistry> registry_;
    prompt::PromptTemplate tpl_ = prompt::PromptTemplate::bundled();
    EngineConfig config_;
};

TEST(ParseStep, ToolStep) {
    const auto p = parse_step("Thought: check whois\nAction: Retrieve WHOIS\nAction Input: example.com");
    EXPECT_EQ(p.kind, ParsedStep::Kind::step);
    EXPECT_EQ(p.thought, "check whois");
    EXPECT_EQ(p.action, "Retrieve WHOIS");
    EXPECT_EQ(p.action_input, "example.com");
    EXPECT_TRUE(p.final_text.empty());
}

TEST(ParseStep, FinalAnswer) {
    const auto p = parse_step("Thought: I now know the final answer\nFinal Answer: scam");
    EXPECT_EQ(p.kind, ParsedStep::Kind::final);
    EXPECT_EQ(p.final_text, "scam");
    EXPECT_TRUE(p.action.empty());
    EXPECT_TRUE(p.action_input.empty());
}

TEST(ParseStep, FinalKeepsTrailingJson) {
    const auto p = parse_step("Final Answer: The site is a scam.\n```json\n{\"result\": true}\n```");
    EXPECT_EQ(p.final_text, "The site is a scam.\n```json\n{\"result\": true}\n```");
}

TEST(ParseStep, LabelsAreCaseInsensitiveAndInputCleaned) {
    const auto p = parse_step("thought: hmm\n  ACTION: Access URL\naction input: \"https://a.example/\"\n\nextra");
    EXPECT_EQ(p.action, "Access URL");
    EXPECT_EQ(p.action_input, "https://a.example/");
}

TEST(ParseStep, NoLabelsIsMalformed) {
    EXPECT_THROW(parse_step("lorem ipsum"), MalformedStep);
    EXPECT_THROW(parse_step("Thought: only thinking"), MalformedStep);
}

TEST_F(ReactTest, OneStepThenFinalAnswer) {
    const auto s = run({step("look", "Access URL", "http://shop.example/"), final_answer(kScamJson)});
    EXPECT_EQ(s.steps.size(), 1u);
    EXPECT_EQ(s.termination, Termination::final_answer);
    ASSERT_TRUE(s.verdict);
    EXPECT_TRUE(s.verdict->result);
    EXPECT_NE(s.steps[0].observation.find("status: 200"), std::string::npos);
    EXPECT_EQ(s.steps[0].source, "live");
    EXPECT_EQ(s.tokens.llm_calls, 2);
    check_invariants(s, config_);
}

TEST_F(ReactTest, BudgetForcesFinalAfterTenSteps) {
    std::vector<std::string> script;
    for (int i = 0; i < 11; ++i) script.push_back(step("again", "Retrieve WHOIS", "example.com"));
    script.push_back(final_answer(kScamJson));
    const auto s = run(script);
    EXPECT_EQ(s.steps.size(), 10u);
    EXPECT_EQ(s.termination, Termination::budget_forced);
    ASSERT_TRUE(s.verdict);
    EXPECT_EQ(s.tokens.llm_calls, 12);  // ten steps, one rejected forced reply, one final
    check_invariants(s, config_);
}

TEST_F(ReactTest, UnknownToolConsumesBudget) {
    const auto s = run({step("try", "Foo", "bar"), final_answer(kScamJson)});
    ASSERT_EQ(s.steps.size(), 1u);
    EXPECT_EQ(s.steps[0].action, std::string(kInvalidAction));
    EXPECT_EQ(s.steps[0].requested_action, "Foo");
    std::vector<std::string> names;
    for (const auto& spec : tools::builtin_specs()) names.push_back(spec.name);
    EXPECT_EQ(s.steps[0].observation, "Error: unknown tool 'Foo'. Available tools: " + text::join(names, ", "));
    EXPECT_EQ(s.actions_used, 1);
    EXPECT_EQ(s.termination, Termination::final_answer);
}

TEST_F(ReactTest, MalformedStepConsumesBudget) {
    const auto s = run({"just rambling", final_answer(kScamJson)});
    ASSERT_EQ(s.steps.size(), 1u);
    EXPECT_EQ(s.steps[0].action, std::string(kInvalidAction));
    EXPECT_EQ(s.steps[0].error_kind, "MalformedStep");
    EXPECT_EQ(s.termination, Termination::final_answer);
}

TEST_F(ReactTest, ToolErrorsBecomeObservations) {
    const auto s = run({step("read", "Extract Text", "http://shop.example/"),
                        step("search", "Get Search Result", "https://shop.example/"), final_answer(kScamJson)});
    ASSERT_EQ(s.steps.size(), 2u);
    EXPECT_EQ(s.steps[0].error_kind, "MustAccessFirst");
    EXPECT_TRUE(text::istarts_with(s.steps[0].observation, "Error: You must access a URL first"));
    EXPECT_EQ(s.steps[1].error_kind, "QueryIsBareUrl");
    EXPECT_TRUE(s.steps[1].source.empty());
}

TEST_F(ReactTest, ObservationsAreTruncated) {
    config_.max_observation_chars = 100;
    const auto s = run({step("search", "Get Search Result", "exampleshop review"), final_answer(kScamJson)});
    ASSERT_EQ(s.steps.size(), 1u);
    EXPECT_LE(s.steps[0].observation.size(), 100u);
    EXPECT_TRUE(s.steps[0].observation.ends_with(std::string(kTruncationSuffix)));
}

TEST_F(ReactTest, ThreeMalformedForcedRepliesIsParseFailure) {
    config_.max_actions = 1;
    const auto s = run({step("a", "Retrieve WHOIS", "example.com"), "nonsense", "more nonsense",
                        step("b", "Retrieve DNS Record", "example.com")});
    EXPECT_EQ(s.termination, Termination::parse_failure);
    EXPECT_FALSE(s.verdict);
    EXPECT_EQ(s.error_kind, "ParseFailure");
    EXPECT_EQ(s.steps.size(), 1u);
}

TEST_F(ReactTest, ForcedAndNaturalVerdictsMatch) {
    const auto natural = run({final_answer(kScamJson)});
    config_.max_actions = 1;
    const auto forced = run({step("a", "Retrieve WHOIS", "example.com"), final_answer(kScamJson)});
    ASSERT_TRUE(natural.verdict && forced.verdict);
    EXPECT_EQ(forced.termination, Termination::budget_forced);
    EXPECT_EQ(natural.verdict->result, forced.verdict->result);
    EXPECT_EQ(natural.verdict->scam_type, forced.verdict->scam_type);
    EXPECT_EQ(natural.verdict->reason, forced.verdict->reason);
}

TEST_F(ReactTest, UnparseableFinalIsParseFailure) {
    const auto s = run({final_answer("it is a scam")});
    EXPECT_EQ(s.termination, Termination::parse_failure);
    EXPECT_EQ(s.error_kind, "NoJsonFound");
    EXPECT_EQ(s.final_answer_text, "it is a scam");
}

TEST_F(ReactTest, BackendFailureRaisesWithPartialSession) {
    llm::ScriptedBackend backend({step("look", "Access URL", "http://shop.example/")});
    try {
        run_session("http://shop.example/", backend, *registry_, tpl_, config_, *clock_);
        FAIL() << "expected SessionError";
    } catch (const SessionError& e) {
        EXPECT_EQ(e.partial().steps.size(), 1u);
        EXPECT_EQ(e.partial().termination, Termination::error);
        EXPECT_EQ(e.partial().error_kind, "ScriptExhausted");
    }
}

TEST_F(ReactTest, StopSequenceSuppressesInventedObservations) {
    const auto s = run({step("look", "Access URL", "http://shop.example/") + "\nObservation: status: 999",
                        final_answer(kScamJson)});
    ASSERT_EQ(s.steps.size(), 1u);
    EXPECT_EQ(s.steps[0].observation.find("999"), std::string::npos);
}

TEST_F(ReactTest, SerializedSessionIsDeterministicAndRoundTrips) {
    const std::vector<std::string> script = {step("look", "Access URL", "http://shop.example/"),
                                             step("text", "Extract Text", "http://shop.example/"),
                                             step("who", "Retrieve WHOIS", "example.com"), final_answer(kScamJson)};
    const auto a = to_json(run(script)).dump();
    EXPECT_EQ(to_json(run(script))["steps"][2]["source"], "cache");  // same registry
    tools::ToolRegistry::Options o;
    o.mode = tools::Mode::live;
    o.clock = clock_;
    registry_ = std::make_unique<tools::ToolRegistry>(web_->providers(), o);
    const auto b = to_json(run(script)).dump();
    EXPECT_EQ(a, b);
    const auto parsed = session_from_json(nlohmann::json::parse(a));
    EXPECT_EQ(to_json(parsed).dump(), a);
    EXPECT_EQ(parsed.steps.size(), 3u);
    EXPECT_EQ(parsed.steps[2].source, "live");
}

TEST(SessionJson, RejectsOtherSchemaVersions) {
    auto j = to_json(AnalysisSession{});
    j["schema_version"] = 99;
    EXPECT_THROW(session_from_json(j), ParseError);
    EXPECT_THROW(session_from_json(nlohmann::json::object({{"schema_version", 1}})), ParseError);
}

TEST(BuildRequest, ElidesOldestObservationsFirst) {
    EngineConfig config;
    std::vector<ReactStep> steps(3);
    for (int i = 0; i < 3; ++i) {
        steps[i].index = i + 1;
        steps[i].thought = "t" + std::to_string(i);
        steps[i].action = "Access URL";
        steps[i].observation = std::string(400, static_cast<char>('a' + i));
    }
    const std::string prompt(100, 'p');
    config.max_context_tokens = (100 + 400 + 400 + 3 * 60) / 4 + 40;
    const auto req = build_request(prompt, steps, "", config, true);
    const auto& text = req.messages.at(0).text;
    EXPECT_EQ(text.find(std::string(400, 'a')), std::string::npos);
    EXPECT_NE(text.find(std::string(400, 'c')), std::string::npos);
    EXPECT_NE(text.find("Thought: t0"), std::string::npos);
    EXPECT_NE(text.find(std::string(kElidedObservation)), std::string::npos);
    EXPECT_EQ(req.stop_sequences, (std::vector<std::string>{"Observation:"}));

    config.max_context_tokens = 10;
    EXPECT_THROW(build_request(prompt, steps, "", config, true), ContextOverflow);
}

TEST_F(ReactTest, SingleTurnBaseline) {
    llm::ScriptedBackend backend({kScamJson});
    const auto s = run_single_turn("http://shop.example/", backend, *registry_, tpl_, config_, *clock_);
    EXPECT_EQ(s.mode, "single_turn");
    EXPECT_TRUE(s.steps.empty());
    ASSERT_TRUE(s.verdict);
    EXPECT_TRUE(s.verdict->result);
    EXPECT_EQ(s.tokens.llm_calls, 1);

    llm::ScriptedBackend again({R"({"result": false, "reason": "x"})"});
    const auto missing = run_single_turn("http://nowhere.example/", again, *registry_, tpl_, config_, *clock_);
    ASSERT_TRUE(missing.verdict);
    EXPECT_FALSE(missing.verdict->result);
}

}  // namespace
}  // namespace scamscope::react
