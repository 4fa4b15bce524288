#include "scamscope/errors.hpp"
#include "scamscope/extract.hpp"
#include "scamscope/html.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <random>

namespace scamscope::extract {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> blocks_of(const std::string& markup) { return text_blocks(html::parse(markup)); }

TEST(Html, DecodesEntities) {
    EXPECT_EQ(html::decode_entities("&amp;&lt;&gt;&quot;&#39;&#x41;&copy;&nbsp;"), "&<>\"'A\xC2\xA9 ");  // nbsp becomes a plain space
    EXPECT_EQ(html::decode_entities("&unknown; &amp"), "&unknown; &amp");
}

TEST(Html, ToleratesBrokenMarkup) {
    const auto doc = html::parse("<div><p>one<p>two</div></span><b>three");
    EXPECT_EQ(text_blocks(doc), (std::vector<std::string>{"one two", "three"}));
}

TEST(Extract, ThreeSiblingGrouping) {
    EXPECT_EQ(blocks_of("<p>A</p><p>B</p><p>C</p><p>D</p>"), (std::vector<std::string>{"A B C", "D"}));
}

TEST(Extract, ObfuscatedMarkupKeepsVisibleText) {
    const auto out = visible_text(html::parse(
        "<div\n   class=x><span>Pay</span><!-- hide --><span\n> now</span></div><script>var a='<p>x</p>'</script>"));
    EXPECT_NE(out.find("Pay now"), std::string::npos);
    EXPECT_EQ(out.find("var a"), std::string::npos);
}

TEST(Extract, EmptyBodyIsEmptyDocument) {
    EXPECT_THROW(visible_text(html::parse("<html><body></body></html>")), EmptyDocument);
    EXPECT_THROW(visible_text(html::parse("")), EmptyDocument);
}

TEST(Extract, AnchorTextOneLevelBelow) {
    const auto links = hyperlinks(html::parse("<a href=\"/x\"><span>Buy</span><div><div>deep</div></div></a>"),
                                  "http://example.com/");
    ASSERT_EQ(links.size(), 1u);
    EXPECT_EQ(links[0], (Hyperlink{"http://example.com/x", "Buy"}));
}

TEST(Extract, ContactPageExample) {
    const auto links =
        hyperlinks(html::parse("<a href=\"/contact.html\">Contact Page</a>"), "http://example.com");
    EXPECT_EQ(format_hyperlinks(links), "(http://example.com/contact.html, Contact Page)");
}

TEST(Extract, NoAnchorsGivesEmptyList) {
    EXPECT_TRUE(hyperlinks(html::parse("<p>nothing</p>"), "http://example.com/").empty());
    EXPECT_EQ(format_hyperlinks({}), "");
}

// Random markup never leaks tags into extracted text.
TEST(Extract, NoMarkupInOutput) {
    std::mt19937 rng(17);
    const std::vector<std::string> pieces = {"<div>", "</div>", "<p>", "</p>", "<span>", "</span>", "word",
                                             "<br>", "<script>if(a<b){}</script>", "<a href='/z'>", "</a>",
                                             "&lt;b&gt;", "<ul><li>", "</li></ul>", "text ", "<!-- c -->"};
    for (int i = 0; i < 300; ++i) {
        std::string markup;
        const int n = 1 + static_cast<int>(rng() % 25);
        for (int k = 0; k < n; ++k) markup += pieces[rng() % pieces.size()];
        for (const auto& block : blocks_of(markup)) {
            EXPECT_EQ(block.find("<div"), std::string::npos) << markup;
            EXPECT_EQ(block.find("<span"), std::string::npos) << markup;
            EXPECT_EQ(block.find("<p>"), std::string::npos) << markup;
            EXPECT_EQ(block.find("if(a"), std::string::npos) << markup;
            EXPECT_FALSE(block.empty());
        }
    }
}

struct Case {
    std::string file;
    std::string url;
    std::optional<std::vector<std::string>> text;
    std::vector<Hyperlink> links;
};

std::vector<Case> load_cases() {
    const auto dir = testing::test_data_dir() / "html";
    const auto j = json::parse(testing::slurp(dir / "cases.json"));
    std::vector<Case> out;
    for (const auto& c : j) {
        Case k;
        k.file = c.at("file").get<std::string>();
        k.url = c.at("url").get<std::string>();
        if (!c.at("text").is_null()) k.text = c.at("text").get<std::vector<std::string>>();
        for (const auto& l : c.at("links")) k.links.push_back({l.at(0).get<std::string>(), l.at(1).get<std::string>()});
        out.push_back(std::move(k));
    }
    return out;
}

class HtmlSuite : public ::testing::TestWithParam<Case> {};

TEST_P(HtmlSuite, MatchesExpected) {
    const auto& c = GetParam();
    const auto doc = html::parse(testing::slurp(testing::test_data_dir() / "html" / c.file));
    if (c.text) {
        EXPECT_EQ(text_blocks(doc), *c.text);
    } else {
        EXPECT_TRUE(text_blocks(doc).empty());
        EXPECT_THROW(visible_text(doc), EmptyDocument);
    }
    EXPECT_EQ(hyperlinks(doc, c.url), c.links);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, HtmlSuite, ::testing::ValuesIn(load_cases()),
                         [](const ::testing::TestParamInfo<Case>& info) {
                             std::string name = info.param.file.substr(0, info.param.file.find('.'));
                             for (auto& ch : name) {
                                 if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                             }
                             return name;
                         });

TEST(HtmlSuite, HasAtLeastFifteenPages) { EXPECT_GE(load_cases().size(), 15u); }

}  // namespace
}  // namespace scamscope::extract
