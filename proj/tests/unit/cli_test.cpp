#include "scamscope/cli/commands.hpp"
#include "scamscope/dataset.hpp"
#include "scamscope/net.hpp"
#include "scamscope/text.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace scamscope::cli {
namespace {

using testing::demo_dir;
using testing::slurp;
using testing::spit;

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> replay_args() {
    return {"--mode", "replay", "--fixtures", (demo_dir() / "fixtures").string(), "--scripts",
            (demo_dir() / "scripts").string()};
}

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

TEST(Cli, AnalyzeReplaysDemoUrl) {
    const auto before = net::operation_count();
    const auto r = invoke(with({"analyze", "https://luxe-bag-outlet.shop/"}, replay_args()));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(net::operation_count(), before);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["url"], "https://luxe-bag-outlet.shop/");
    EXPECT_EQ(j["verdict"]["result"], true);
    EXPECT_EQ(invoke(with({"analyze", "https://luxe-bag-outlet.shop/"}, replay_args())).out, r.out);
}

TEST(Cli, InvalidUrlIsUsageError) {
    const auto before = net::operation_count();
    const auto r = invoke(with({"analyze", "htp:/x"}, replay_args()));
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("invalid URL"), std::string::npos);
    EXPECT_EQ(net::operation_count(), before);
}

TEST(Cli, LiveModeWithoutCredentialsNamesTheVariable) {
    testing::ScopedEnv key("OPENAI_API_KEY", std::nullopt);
    const auto before = net::operation_count();
    const auto r = invoke({"analyze", "https://example.com/", "--mode", "live"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("OPENAI_API_KEY"), std::string::npos);
    EXPECT_EQ(net::operation_count(), before);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({}).code, kExitUsage);
    EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(invoke(with({"analyze", "https://a.example/", "--max-actions", "0"}, replay_args())).code, kExitUsage);
    EXPECT_EQ(invoke({"analyze", "https://a.example/", "--mode", "replay"}).code, kExitUsage);  // no fixtures
    EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Cli, UnscriptedUrlInReplayFails) {
    const auto r = invoke(with({"analyze", "https://not-in-demo.example/"}, replay_args()));
    EXPECT_NE(r.code, kExitOk);
}

std::vector<dataset::DatasetEntry> demo_entries(std::size_t n) {
    std::vector<dataset::DatasetEntry> out;
    for (const auto& e : dataset::read_entries(demo_dir() / "dataset.jsonl")) {
        if (!e.excluded() && out.size() < n) out.push_back(e);
    }
    return out;
}

TEST(Cli, BatchResumesWhereItStopped) {
    testing::TempDir dir;
    const auto six = demo_entries(6);
    ASSERT_EQ(six.size(), 6u);
    dataset::write_entries(dir / "six.jsonl", six);
    dataset::write_entries(dir / "four.jsonl", std::vector(six.begin(), six.begin() + 4));

    const auto out = (dir / "sessions.jsonl").string();
    auto r = invoke(with({"batch", (dir / "four.jsonl").string(), "--output", out}, replay_args()));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.err.find("analyzed: 4"), std::string::npos);

    r = invoke(with({"batch", (dir / "six.jsonl").string(), "--output", out, "--parallelism", "2"}, replay_args()));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.err.find("already done: 4, analyzed: 2"), std::string::npos) << r.err;
    const auto sessions = read_sessions(out);
    ASSERT_EQ(sessions.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(sessions[i].url, six[i].url);

    // a truncated final line is analyzed again
    auto content = slurp(out);
    content.resize(content.size() - 20);
    spit(out, content);
    r = invoke(with({"batch", (dir / "six.jsonl").string(), "--output", out}, replay_args()));
    EXPECT_NE(r.err.find("already done: 5, analyzed: 1"), std::string::npos) << r.err;
}

TEST(Cli, EmptyDatasetBatch) {
    testing::TempDir dir;
    spit(dir / "empty.jsonl", "");
    const auto out = (dir / "s.jsonl").string();
    const auto r = invoke(with({"batch", (dir / "empty.jsonl").string(), "--output", out}, replay_args()));
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(slurp(out), "");
}

TEST(Cli, EvalWarnsAboutExtraSessions) {
    testing::TempDir dir;
    const auto three = demo_entries(3);
    dataset::write_entries(dir / "three.jsonl", three);
    dataset::write_entries(dir / "two.jsonl", std::vector(three.begin(), three.begin() + 2));
    const auto out = (dir / "s.jsonl").string();
    ASSERT_EQ(invoke(with({"batch", (dir / "three.jsonl").string(), "--output", out}, replay_args())).code, kExitOk);

    const auto r = invoke({"eval", (dir / "two.jsonl").string(), out, "--pricing",
                           (demo_dir() / "pricing.json").string(), "--json-out", (dir / "r.json").string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.err.find("ignored 1 session"), std::string::npos);
    EXPECT_NE(r.out.find("overall"), std::string::npos);
    const auto report = nlohmann::json::parse(slurp(dir / "r.json"));
    EXPECT_EQ(report["schema_version"], 1);

    spit(dir / "one.jsonl", text::split_lines(slurp(out)).front() + "\n");
    const auto missing = invoke({"eval", (dir / "three.jsonl").string(), (dir / "one.jsonl").string()});
    EXPECT_EQ(missing.code, kExitFailure);
    EXPECT_NE(missing.err.find("MissingVerdict"), std::string::npos);
}

TEST(Cli, SampleIsDeterministic) {
    testing::TempDir dir;
    const auto data = (demo_dir() / "dataset.jsonl").string();
    const auto a = invoke({"dataset", "sample", data, "--per-cell", "1", "--seed", "7", "--output",
                           (dir / "a.jsonl").string()});
    const auto b = invoke({"dataset", "sample", data, "--per-cell", "1", "--seed", "7", "--output",
                           (dir / "b.jsonl").string()});
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(slurp(dir / "a.jsonl"), slurp(dir / "b.jsonl"));
    EXPECT_FALSE(slurp(dir / "a.jsonl").empty());
}

TEST(Cli, FilterWithTopList) {
    testing::TempDir dir;
    spit(dir / "top.csv", "rank,domain\n1,big.example\n2,other.example\n3,popular.example\n");
    spit(dir / "in.csv",
         "url,label,scam_type,language\n"
         "https://www.popular.example/,legitimate,,en\n"
         "https://small.example/,legitimate,,en\n");
    const auto r = invoke({"dataset", "filter", (dir / "in.csv").string(), "--toplist", (dir / "top.csv").string(),
                           "--output", (dir / "out.jsonl").string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto out = dataset::read_entries(dir / "out.jsonl");
    EXPECT_EQ(out[0].excluded_reason, "toplist");
    EXPECT_FALSE(out[1].excluded());

    spit(dir / "bad.csv", "1,a.example\n5,b.example\n");
    EXPECT_EQ(invoke({"dataset", "filter", (dir / "in.csv").string(), "--toplist", (dir / "bad.csv").string(),
                      "--output", (dir / "x.jsonl").string()})
                  .code,
              kExitUsage);
}

TEST(Cli, CheckInReplayUsesFixtures) {
    testing::TempDir dir;
    const auto entries = demo_entries(3);
    dataset::write_entries(dir / "in.jsonl", entries);
    const std::vector<std::string> replay = {"--mode", "replay", "--fixtures", (demo_dir() / "fixtures").string()};
    const auto before = net::operation_count();
    auto r = invoke(with({"dataset", "check", (dir / "in.jsonl").string(), "--output", (dir / "out.jsonl").string()},
                         replay));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto out = dataset::read_entries(dir / "out.jsonl");
    for (const auto& e : out) EXPECT_EQ(e.accessible, true) << e.url;

    // no fixture: replay fails instead of going to the network
    dataset::DatasetEntry unknown;
    unknown.url = "https://never-recorded.example/";
    unknown.label = dataset::Label::legitimate;
    dataset::write_entries(dir / "unknown.jsonl", {unknown});
    r = invoke(with({"dataset", "check", (dir / "unknown.jsonl").string(), "--output", (dir / "x.jsonl").string()},
                    replay));
    EXPECT_EQ(r.code, kExitFailure);
    EXPECT_NE(r.err.find("FixtureMiss"), std::string::npos);
    EXPECT_EQ(net::operation_count(), before);
}

TEST(Cli, ConfigFileUsesDashedKeys) {
    testing::TempDir dir;
    spit(dir / "run.ini", "max-actions = 3\ntools = Access URL,Retrieve WHOIS\n");
    const auto r = invoke({"prompt", "https://a.example/", "--config", (dir / "run.ini").string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("[Access URL, Retrieve WHOIS]"), std::string::npos);
    EXPECT_EQ(r.out.find("Search X"), std::string::npos);
    EXPECT_NE(r.out.find("no more than 3 actions"), std::string::npos);
}

TEST(Cli, FixturesList) {
    const auto r = invoke({"fixtures", "list", "--fixtures", (demo_dir() / "fixtures").string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("Access URL\thttps://luxe-bag-outlet.shop/\tstatus:200"), std::string::npos);
}

}  // namespace
}  // namespace scamscope::cli
