#include "scamscope/errors.hpp"
#include "scamscope/text.hpp"
#include "scamscope/verdict.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace scamscope::verdict {
namespace {

TEST(ParseVerdict, StringResultAndType) {
    const auto v = parse_verdict(R"({"result": "True", "scam_type": "Fake online shopping website", "reason": "cheap"})");
    EXPECT_TRUE(v.result);
    EXPECT_EQ(v.scam_type, "Fake online shopping website");
    EXPECT_EQ(v.reason, "cheap");
    EXPECT_TRUE(v.warnings.empty());
}

TEST(ParseVerdict, LegitimateNeedsNoType) {
    const auto v = parse_verdict(R"({"result": false, "reason": "established retailer"})");
    EXPECT_FALSE(v.result);
    EXPECT_FALSE(v.scam_type.has_value());
    EXPECT_FALSE(v.scam_type_missing);
}

TEST(ParseVerdict, FencedBlockInsideProse) {
    const auto v = parse_verdict("Sure! ```json\n{\"result\": true, \"scam_type\": \"crypto\", \"reason\": \"x\"}\n```");
    EXPECT_TRUE(v.result);
    EXPECT_EQ(v.scam_type, "crypto");
}

TEST(ParseVerdict, PythonLiteralsAndCaseInsensitiveKeys) {
    const auto v = parse_verdict("{'x': 1} then {\"Result\": True, \"Scam_Type\": None, \"Reason\": \"None of it\"}");
    EXPECT_TRUE(v.result);
    EXPECT_TRUE(v.scam_type_missing);
    EXPECT_EQ(v.scam_type, std::string(kUnspecifiedType));
    EXPECT_EQ(v.reason, "None of it");
    EXPECT_FALSE(v.warnings.empty());
}

TEST(ParseVerdict, MissingReasonGetsPlaceholder) {
    const auto v = parse_verdict(R"({"result": "FALSE"})");
    EXPECT_FALSE(v.result);
    EXPECT_EQ(v.reason, std::string(kMissingReason));
}

TEST(ParseVerdict, Errors) {
    EXPECT_THROW(parse_verdict("scam"), NoJsonFound);
    EXPECT_THROW(parse_verdict("{broken"), NoJsonFound);
    EXPECT_THROW(parse_verdict(R"({"reason": "x"})"), InvalidResultField);
    EXPECT_THROW(parse_verdict(R"({"result": "maybe"})"), InvalidResultField);
    EXPECT_THROW(parse_verdict(R"({"result": 1})"), InvalidResultField);
}

TEST(ParseVerdict, TotalOverRandomInput) {
    std::mt19937 rng(23);
    const std::string alphabet = "{}\"':,[] \ntrueFalseNone\\resultscam_type0123";
    for (int i = 0; i < 2000; ++i) {
        std::string s(rng() % 60, ' ');
        for (auto& c : s) c = alphabet[rng() % alphabet.size()];
        try {
            const auto v = parse_verdict(s);
            EXPECT_FALSE(v.reason.empty());
            if (v.result) EXPECT_TRUE(v.scam_type && !v.scam_type->empty());
        } catch (const NoJsonFound&) {
        } catch (const InvalidResultField&) {
        }
    }
}

TEST(FirstJsonObject, RespectsStrings) {
    EXPECT_EQ(first_json_object(R"(a {"k": "}"} b)"), R"({"k": "}"})");
    EXPECT_EQ(first_json_object("none"), std::nullopt);
}

TEST(Canonicalize, KnownPhrasings) {
    EXPECT_EQ(canonicalize_scam_type("Fake financial services site").canonical, ScamType::investment);
    EXPECT_EQ(canonicalize_scam_type("Fake investment site").canonical, ScamType::investment);
    EXPECT_EQ(canonicalize_scam_type("fake online shopping website").canonical, ScamType::online_shopping);
    EXPECT_EQ(canonicalize_scam_type("crypto wallet phishing platform").canonical, ScamType::cryptocurrency);
    EXPECT_EQ(canonicalize_scam_type("Fake_Tech-Support page").canonical, ScamType::technical_support);
    EXPECT_EQ(canonicalize_scam_type("romance scam").canonical, ScamType::other);
    EXPECT_TRUE(canonicalize_scam_type("romance scam").matched_phrase.empty());
    // whole words: "shopping" must not fire inside "shoppingcart"
    EXPECT_EQ(canonicalize_scam_type("shoppingcart").canonical, ScamType::other);
}

TEST(Canonicalize, IdempotentOnCanonicalNames) {
    for (auto t : {ScamType::online_shopping, ScamType::technical_support, ScamType::cryptocurrency,
                   ScamType::investment}) {
        EXPECT_EQ(canonicalize_scam_type(to_string(t)).canonical, t);
    }
}

TEST(Canonicalize, LongestPhraseWins) {
    const auto table = SynonymTable::from_string("shop\tonline_shopping\ncrypto shop\tcryptocurrency\n");
    EXPECT_EQ(table.canonicalize("a crypto shop").canonical, ScamType::cryptocurrency);
    EXPECT_EQ(table.canonicalize("a shop").canonical, ScamType::online_shopping);
    EXPECT_THROW(SynonymTable::from_string("x\tnot_a_type\n"), ConfigError);
}

TEST(Categorize, Examples) {
    EXPECT_EQ(categorize_reason("suspicious due to recent domain registration per WHOIS").categories,
              (std::set<std::string>{"Domain Name"}));
    EXPECT_TRUE(categorize_reason("").categories.empty());
    EXPECT_EQ(categorize_reason("negative reviews on Reddit and an abnormal price").categories,
              (std::set<std::string>{"User Review", "Unusual Price"}));
}

TEST(Categorize, CategoriesAreProjectionOfKeywords) {
    const auto p = categorize_reason("WHOIS privacy service, no SSL certificate, bitcoin only");
    std::set<std::string> projected;
    for (const auto& hit : p.matched_keywords) projected.insert(hit.category);
    EXPECT_EQ(projected, p.categories);
    EXPECT_GE(p.matched_keywords.size(), 5u);
}

TEST(Categorize, WholeWordToggle) {
    EXPECT_TRUE(categorize_reason("Payment failure").categories.count("Social Engineering"));
    EXPECT_FALSE(categorize_reason("Payment failure", true).categories.count("Social Engineering"));
}

TEST(Categorize, SupersetUnderConcatenation) {
    const std::vector<std::string> parts = {"WHOIS", "no reviews", "low price", "bitcoin", "hello", "update",
                                            "TLS", "privacy policy", "urgency", "phone number", "dom", "ain"};
    std::mt19937 rng(29);
    for (int i = 0; i < 300; ++i) {
        const auto a = parts[rng() % parts.size()] + " " + parts[rng() % parts.size()];
        const auto b = parts[rng() % parts.size()];
        const auto joined = categorize_reason(a + b).categories;
        for (const auto& c : categorize_reason(a).categories) EXPECT_TRUE(joined.count(c)) << a << "|" << b;
        for (const auto& c : categorize_reason(b).categories) EXPECT_TRUE(joined.count(c)) << a << "|" << b;
    }
}

TEST(KeywordTable, BundledTableShape) {
    const auto& t = KeywordTable::bundled();
    EXPECT_EQ(t.categories().size(), 10u);
    EXPECT_EQ(t.rows().size(), 55u);
}

// The labeled 30-string suite, also checked by an independent script.
TEST(Categorize, LabeledSuite) {
    const auto tsv = testing::slurp(testing::test_data_dir() / "reason_suite.tsv");
    int rows = 0;
    for (const auto& line : text::split_lines(tsv)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        ASSERT_NE(tab, std::string::npos) << line;
        std::set<std::string> expected;
        for (const auto& c : text::split(line.substr(tab + 1), ';')) {
            if (!c.empty()) expected.insert(c);
        }
        EXPECT_EQ(categorize_reason(line.substr(0, tab)).categories, expected) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 30);
}

}  // namespace
}  // namespace scamscope::verdict
