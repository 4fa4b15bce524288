#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scamscope::verdict {

struct Verdict {
    bool result = false;
    std::optional<std::string> scam_type;  // absent for legitimate verdicts
    std::string reason;
    bool scam_type_missing = false;  // result=true but the model gave no type
    std::vector<std::string> warnings;
};

inline constexpr std::string_view kUnspecifiedType = "unspecified";
inline constexpr std::string_view kMissingReason = "(no reason given)";

/// Reads the first balanced JSON object in `final_text`, tolerating prose
/// and code fences around it and Python-style True/False/None literals.
/// Throws NoJsonFound or InvalidResultField.
Verdict parse_verdict(std::string_view final_text);

/// Extracts the first balanced {...} substring, respecting string
/// literals. nullopt when there is none.
std::optional<std::string> first_json_object(std::string_view text, std::size_t from = 0);

enum class ScamType { online_shopping, technical_support, cryptocurrency, investment, other };

std::string_view to_string(ScamType type);
std::optional<ScamType> parse_scam_type(std::string_view text);  // exact canonical names

struct ScamTypeCanon {
    ScamType canonical = ScamType::other;
    std::string raw;
    std::string matched_phrase;  // empty when nothing matched
};

/// Phrase -> type rules, matched case-insensitively on whole words after
/// '_' and '-' are turned into spaces. The longest matching phrase wins.
class SynonymTable {
public:
    static SynonymTable from_string(std::string_view tsv);
    static SynonymTable from_file(const std::filesystem::path& path);
    static const SynonymTable& bundled();

    ScamTypeCanon canonicalize(std::string_view raw) const;
    std::size_t size() const { return rules_.size(); }

private:
    std::vector<std::pair<std::string, ScamType>> rules_;
};

ScamTypeCanon canonicalize_scam_type(std::string_view raw);

struct KeywordHit {
    std::string keyword;
    std::string category;

    bool operator==(const KeywordHit&) const = default;
};

struct ReasonProfile {
    std::set<std::string> categories;
    std::vector<KeywordHit> matched_keywords;  // table order
};

/// Keyword -> information type rows for rationale categorization.
class KeywordTable {
public:
    static KeywordTable from_string(std::string_view tsv);
    static KeywordTable from_file(const std::filesystem::path& path);
    static const KeywordTable& bundled();

    /// Case-insensitive substring matching by default; `whole_words`
    /// requires the keyword not be flanked by letters or digits.
    ReasonProfile categorize(std::string_view reason, bool whole_words = false) const;

    const std::vector<KeywordHit>& rows() const { return rows_; }
    /// Categories in first-appearance order.
    std::vector<std::string> categories() const;

private:
    std::vector<KeywordHit> rows_;
};

ReasonProfile categorize_reason(std::string_view reason, bool whole_words = false);

}  // namespace scamscope::verdict
