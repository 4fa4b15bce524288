#include "scamscope/errors.hpp"
#include "scamscope/live_providers.hpp"
#include "scamscope/net.hpp"
#include "scamscope/sim_web.hpp"
#include "scamscope/text.hpp"
#include "scamscope/tools.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>
#include <thread>

namespace scamscope::tools {
namespace {

using scamscope::testing::TempDir;

std::size_t count_occurrences(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + needle.size())) ++n;
    return n;
}

class ToolsTest : public ::testing::Test {
protected:
    std::unique_ptr<ToolRegistry> registry(Mode mode, std::vector<std::string> enabled = {}) {
        ToolRegistry::Options o;
        o.mode = mode;
        o.fixtures = fixtures_;
        o.clock = std::make_shared<FrozenClock>(1700000000000);
        o.enabled = std::move(enabled);
        return std::make_unique<ToolRegistry>(mode == Mode::replay ? Providers{} : web_->providers(), o);
    }

    std::string body(ToolRegistry& r, std::string_view tool, const std::string& input) {
        SessionPages pages;
        return r.dispatch(pages, tool, input).body;
    }

    std::shared_ptr<SimWeb> web_ = SimWeb::from_json(testing::oversupply_world());
    TempDir dir_;
    std::shared_ptr<FixtureStore> fixtures_ = std::make_shared<FixtureStore>(dir_.path());
};

TEST(ToolSpecs, NineUniqueNamedTools) {
    const auto& specs = builtin_specs();
    ASSERT_EQ(specs.size(), 9u);
    std::set<std::string> names;
    for (const auto& s : specs) {
        names.insert(s.name);
        EXPECT_FALSE(s.description.empty());
    }
    EXPECT_EQ(names.size(), 9u);
    EXPECT_EQ(specs.front().name, kAccessUrl);
    EXPECT_EQ(specs.back().name, kRetrieveCertificate);
    EXPECT_EQ(find_builtin("Foo"), nullptr);
}

TEST(ToolSpecs, ModeNames) {
    EXPECT_EQ(parse_mode("record"), Mode::record);
    EXPECT_THROW(parse_mode("offline"), ConfigError);
    EXPECT_NE(kUserAgent.find("Chrome/122.0.0.0"), std::string_view::npos);
}

TEST(CanonicalInput, PerArgumentKind) {
    const auto& psl = PublicSuffixList::bundled();
    EXPECT_EQ(canonical_input(kAccessUrl, " HTTP://Shop.Example./a ", psl), "http://shop.example/a");
    EXPECT_EQ(canonical_input(kGetSearchResult, "  exampleshop   review ", psl), "exampleshop review");
    EXPECT_EQ(canonical_input(kRetrieveWhois, "https://www.Example.com/x", psl), "example.com");
    EXPECT_EQ(canonical_input(kRetrieveDns, "www.example.com", psl), "www.example.com");
    EXPECT_THROW(canonical_input(kGetSearchResult, "https://example.com", psl), QueryIsBareUrl);
    EXPECT_THROW(canonical_input(kSearchX, "www.example.com", psl), QueryIsBareUrl);
    EXPECT_THROW(canonical_input(kSearchReddit, "   ", psl), InvalidToolInput);
    EXPECT_THROW(canonical_input(kRetrieveWhois, "not a domain", psl), LookupError);
    EXPECT_THROW(canonical_input(kRetrieveDns, "not a domain", psl), InvalidToolInput);
    EXPECT_THROW(canonical_input(kAccessUrl, "htp:/x", psl), InvalidUrl);
    EXPECT_THROW(canonical_input("Foo", "x", psl), UnknownTool);
}

TEST_F(ToolsTest, AccessUrlReportsStatus) {
    auto r = registry(Mode::live);
    EXPECT_NE(body(*r, kAccessUrl, "http://shop.example/").find("status: 200"), std::string::npos);
    EXPECT_NE(body(*r, kAccessUrl, "http://gone.example/").find("status: 404"), std::string::npos);
    const auto redirected = body(*r, kAccessUrl, "http://redir.example/");
    EXPECT_NE(redirected.find("final_url: http://shop.example/landing"), std::string::npos);
    try {
        body(*r, kAccessUrl, "http://slow.example/");
        FAIL() << "expected FetchError";
    } catch (const FetchError& e) {
        EXPECT_EQ(e.reason(), "timeout");
    }
}

TEST_F(ToolsTest, ExtractionNeedsAccessFirst) {
    auto r = registry(Mode::live);
    SessionPages pages;
    EXPECT_THROW(r->dispatch(pages, kExtractText, "http://shop.example/"), MustAccessFirst);
    EXPECT_THROW(r->dispatch(pages, kExtractHyperlink, "http://shop.example/"), MustAccessFirst);
    r->dispatch(pages, kAccessUrl, "http://shop.example/");
    const auto text = r->dispatch(pages, kExtractText, "HTTP://SHOP.example/").body;
    EXPECT_NE(text.find("Pay now"), std::string::npos);
    EXPECT_EQ(text.find('<'), std::string::npos);
    EXPECT_EQ(r->dispatch(pages, kExtractHyperlink, "http://shop.example/").body,
              "(http://shop.example/contact.html, Contact Page)");

    // pages are per session
    SessionPages other;
    EXPECT_THROW(r->dispatch(other, kExtractText, "http://shop.example/"), MustAccessFirst);
}

TEST_F(ToolsTest, RedirectTargetIsAvailableForExtraction) {
    auto r = registry(Mode::live);
    SessionPages pages;
    r->dispatch(pages, kAccessUrl, "http://redir.example/");
    EXPECT_EQ(r->dispatch(pages, kExtractText, "http://shop.example/landing").body, "Landing");
    EXPECT_EQ(r->dispatch(pages, kExtractText, "http://redir.example/").body, "Landing");
}

TEST_F(ToolsTest, SearchCapsAtTen) {
    auto r = registry(Mode::live);
    const auto out = body(*r, kGetSearchResult, "exampleshop review");
    EXPECT_EQ(count_occurrences(out, "https://reviews.example/r"), 10u);
    EXPECT_NE(out.find("10. https://reviews.example/r10"), std::string::npos);
    EXPECT_EQ(out.find("r11"), std::string::npos);
    EXPECT_EQ(body(*r, kGetSearchResult, "no such thing"), "No search results found for this query.");
    EXPECT_THROW(body(*r, kGetSearchResult, "https://example.com"), QueryIsBareUrl);
}

TEST_F(ToolsTest, XCapsAtTenLatest) {
    auto r = registry(Mode::live);
    const auto out = body(*r, kSearchX, "exampleshop review");
    const auto lines = text::split_lines(out);
    ASSERT_EQ(lines.size(), 10u);
    EXPECT_EQ(lines.front(), "[2024-03-13T10:00:00Z] post 13 by @user");
    EXPECT_EQ(lines.back(), "[2024-03-04T10:00:00Z] post 4 by @user");
    EXPECT_EQ(out.find("@someone"), std::string::npos);
    EXPECT_EQ(text::split_lines(body(*r, kSearchX, "three posts")).size(), 3u);
}

TEST_F(ToolsTest, RedditCapsAtFivePlusFive) {
    auto r = registry(Mode::live);
    const auto out = body(*r, kSearchReddit, "exampleshop review");
    EXPECT_EQ(count_occurrences(out, "Thread "), 5u);
    EXPECT_EQ(count_occurrences(out, "comment "), 5u);
    EXPECT_NE(out.find("Thread 5"), std::string::npos);
    EXPECT_EQ(out.find("Thread 6"), std::string::npos);
    EXPECT_EQ(out.find("u/asker"), std::string::npos);
    EXPECT_EQ(body(*r, kSearchReddit, "nothing here"), "No posts found on Reddit for this query.");
}

TEST_F(ToolsTest, CertificatesNewestFive) {
    auto r = registry(Mode::live);
    const auto out = body(*r, kRetrieveCertificate, "example.com");
    EXPECT_EQ(count_occurrences(out, "crt.sh id "), 5u);
    std::vector<std::size_t> at;
    for (const char* id : {"id 105)", "id 104)", "id 109)", "id 103)", "id 107)"}) at.push_back(out.find(id));
    for (std::size_t i = 0; i < at.size(); ++i) {
        ASSERT_NE(at[i], std::string::npos) << i;
        if (i) EXPECT_LT(at[i - 1], at[i]);
    }
    for (int k = 1; k <= 40; ++k) {
        EXPECT_NE(out.find("san" + std::to_string(k) + ".example.com"), std::string::npos) << k;
    }
    EXPECT_EQ(body(*r, kRetrieveCertificate, "nocerts.example"), "no certificates found");
}

TEST(NewestCerts, SortsAndLimits) {
    std::vector<CertEntry> e = {{1, "", "2020-01-01", "", {}}, {2, "", "2021-01-01", "", {}},
                                {3, "", "2021-01-01", "", {}}};
    const auto out = newest_certs(e, 2);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].id, 3);
    EXPECT_EQ(out[1].id, 2);
}

TEST_F(ToolsTest, WhoisRawText) {
    auto r = registry(Mode::live);
    const auto out = body(*r, kRetrieveWhois, "www.example.com");
    EXPECT_NE(out.find("Creation Date: 2009-03-14"), std::string::npos);
    EXPECT_NE(out.find("Registrant Organization: Privacy Service"), std::string::npos);
    const auto before = web_->requests();
    EXPECT_THROW(body(*r, kRetrieveWhois, "not a domain"), LookupError);
    EXPECT_EQ(web_->requests(), before);
}

TEST_F(ToolsTest, DnsSixSections) {
    auto r = registry(Mode::live);
    const auto out = body(*r, kRetrieveDns, "example.com");
    for (const char* type : {"A", "AAAA", "NS", "SOA", "TXT", "MX"}) {
        EXPECT_EQ(count_occurrences(out, std::string(";; ") + type + " records for example.com"), 1u) << type;
    }
    EXPECT_NE(out.find(";; A records for example.com\nexample.com. 300 IN A 203.0.113.7"), std::string::npos);
    EXPECT_NE(out.find(";; AAAA records for example.com\nno records"), std::string::npos);
    const auto missing = body(*r, kRetrieveDns, "missing.example");
    EXPECT_EQ(count_occurrences(missing, "NXDOMAIN"), 6u);
}

TEST_F(ToolsTest, CacheServesRepeatsWithOneLiveCall) {
    auto r = registry(Mode::live);
    SessionPages pages;
    const auto first = r->dispatch(pages, kRetrieveWhois, "example.com");
    const auto second = r->dispatch(pages, kRetrieveWhois, "EXAMPLE.com");
    const auto third = r->dispatch(pages, kRetrieveWhois, "www.example.com");
    EXPECT_EQ(first.source, Source::live);
    EXPECT_EQ(second.source, Source::cache);
    EXPECT_EQ(third.source, Source::cache);
    EXPECT_EQ(first.body, second.body);
    EXPECT_EQ(r->live_calls(), 1u);
    EXPECT_EQ(r->cache_hits(), 2u);
}

TEST_F(ToolsTest, ConcurrentSameKeyMakesOneCall) {
    auto r = registry(Mode::live);
    std::vector<std::thread> threads;
    for (int i = 0; i < 8; ++i) {
        threads.emplace_back([&] {
            SessionPages pages;
            r->dispatch(pages, kRetrieveDns, "example.com");
        });
    }
    for (auto& t : threads) t.join();
    EXPECT_EQ(r->live_calls(), 1u);
    EXPECT_EQ(web_->requests(), 6u);  // one call, six record types
}

TEST_F(ToolsTest, UnknownAndDisabledTools) {
    auto r = registry(Mode::live, {std::string(kAccessUrl)});
    EXPECT_EQ(r->specs().size(), 1u);
    EXPECT_FALSE(r->has(kRetrieveWhois));
    SessionPages pages;
    EXPECT_THROW(r->dispatch(pages, "Foo", "x"), UnknownTool);
    EXPECT_THROW(r->dispatch(pages, kRetrieveWhois, "example.com"), UnknownTool);
    ToolRegistry::Options o;
    o.mode = Mode::live;
    o.enabled = {"Bogus"};
    EXPECT_THROW(ToolRegistry(Providers{}, o), ConfigError);
}

TEST_F(ToolsTest, ReplayWithoutFixtureIsMiss) {
    auto r = registry(Mode::replay);
    EXPECT_THROW(body(*r, kRetrieveWhois, "example.com"), FixtureMiss);
    ToolRegistry::Options o;
    o.mode = Mode::replay;
    EXPECT_THROW(ToolRegistry(Providers{}, o), ConfigError);
}

TEST_F(ToolsTest, RecordThenReplayIsIdentical) {
    const std::vector<std::pair<std::string_view, std::string>> calls = {
        {kAccessUrl, "http://shop.example/"},         {kGetSearchResult, "exampleshop review"},
        {kSearchX, "exampleshop review"},             {kSearchReddit, "exampleshop review"},
        {kRetrieveWhois, "example.com"},              {kRetrieveDns, "example.com"},
        {kRetrieveCertificate, "example.com"},        {kAccessUrl, "http://gone.example/"}};
    std::vector<std::string> recorded;
    {
        auto rec = registry(Mode::record);
        SessionPages pages;
        for (const auto& [tool, input] : calls) recorded.push_back(rec->dispatch(pages, tool, input).body);
        recorded.push_back(rec->dispatch(pages, kExtractText, "http://shop.example/").body);
        recorded.push_back(rec->dispatch(pages, kExtractHyperlink, "http://shop.example/").body);
    }
    EXPECT_EQ(fixtures_->list().size(), calls.size());

    const auto web_before = web_->requests();
    const auto net_before = net::operation_count();
    auto replay = registry(Mode::replay);
    SessionPages pages;
    std::vector<std::string> replayed;
    for (const auto& [tool, input] : calls) {
        const auto obs = replay->dispatch(pages, tool, input);
        EXPECT_EQ(obs.source, Source::fixture);
        replayed.push_back(obs.body);
    }
    replayed.push_back(replay->dispatch(pages, kExtractText, "http://shop.example/").body);
    replayed.push_back(replay->dispatch(pages, kExtractHyperlink, "http://shop.example/").body);
    EXPECT_EQ(recorded, replayed);
    EXPECT_EQ(web_->requests(), web_before);
    EXPECT_EQ(net::operation_count(), net_before);
    EXPECT_EQ(replay->live_calls(), 0u);
}

TEST_F(ToolsTest, RecordedFailuresReplayWithTheirType) {
    {
        auto rec = registry(Mode::record);
        EXPECT_THROW(body(*rec, kAccessUrl, "http://slow.example/"), FetchError);
        EXPECT_THROW(body(*rec, kRetrieveWhois, "nowhois.example"), LookupError);
    }
    auto replay = registry(Mode::replay);
    try {
        body(*replay, kAccessUrl, "http://slow.example/");
        FAIL() << "expected FetchError";
    } catch (const FetchError& e) {
        EXPECT_EQ(e.reason(), "timeout");
    }
    EXPECT_THROW(body(*replay, kRetrieveWhois, "nowhois.example"), LookupError);
}

// Replay against live adapters pointed at nothing: a network touch would
// fail or bump the counter.
TEST_F(ToolsTest, ReplayNeverTouchesNetwork) {
    {
        auto rec = registry(Mode::record);
        body(*rec, kRetrieveWhois, "example.com");
        body(*rec, kRetrieveDns, "example.com");
    }
    LiveProviderConfig cfg;
    cfg.whois_server = "127.0.0.1";
    cfg.whois_port = testing::unused_port();
    ToolRegistry::Options o;
    o.mode = Mode::replay;
    o.fixtures = fixtures_;
    ToolRegistry replay(make_live_providers(cfg), o);
    const auto before = net::operation_count();
    SessionPages pages;
    EXPECT_NE(replay.dispatch(pages, kRetrieveWhois, "example.com").body.find("2009"), std::string::npos);
    replay.dispatch(pages, kRetrieveDns, "example.com");
    EXPECT_THROW(replay.dispatch(pages, kRetrieveCertificate, "example.com"), FixtureMiss);
    EXPECT_EQ(net::operation_count(), before);
}

TEST_F(ToolsTest, FixtureStoreLayout) {
    FixtureRecord rec;
    rec.tool = std::string(kRetrieveWhois);
    rec.input = "Example.com";
    rec.canonical_input = "example.com";
    rec.fetched_at = "2024-01-01T00:00:00Z";
    rec.body = "Domain: example.com \xE2\x80\x94 ok";
    fixtures_->save(rec);
    const auto path = fixtures_->path_for(rec.tool, rec.canonical_input);
    EXPECT_EQ(path.filename().string(), text::sha256_hex(rec.tool + "\nexample.com") + ".json");
    EXPECT_TRUE(std::filesystem::exists(path));
    const auto loaded = fixtures_->load(rec.tool, "example.com");
    ASSERT_TRUE(loaded);
    EXPECT_EQ(loaded->body, rec.body);
    EXPECT_EQ(loaded->input, "Example.com");
    EXPECT_FALSE(fixtures_->load(rec.tool, "other.com"));
    EXPECT_TRUE(fixtures_->remove(rec.tool, "example.com"));
    EXPECT_FALSE(fixtures_->remove(rec.tool, "example.com"));
    EXPECT_TRUE(fixtures_->list().empty());
}

TEST(Formatters, EmptyResults) {
    EXPECT_EQ(format_x_posts({}), "No posts found on X/Twitter for this query.");
    EXPECT_EQ(format_certs({}), "no certificates found");
    EXPECT_EQ(redact_handles("ask @bob_1 or u/alice-x"), "ask @user or u/user");
}

}  // namespace
}  // namespace scamscope::tools
