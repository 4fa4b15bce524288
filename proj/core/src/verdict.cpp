#include "scamscope/verdict.hpp"

#include "scamscope/data_files.hpp"
#include "scamscope/errors.hpp"
#include "scamscope/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace scamscope::verdict {

using json = nlohmann::json;

namespace {

bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Rewrites bare True/False/None outside string literals to JSON literals.
std::string normalize_literals(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (in_string) {
            out.push_back(c);
            if (c == '\\' && i + 1 < s.size()) {
                out.push_back(s[++i]);
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
            out.push_back(c);
            continue;
        }
        const bool boundary = i == 0 || !is_ident(s[i - 1]);
        bool replaced = false;
        if (boundary) {
            for (const auto& [from, to] : {std::pair{"True", "true"}, {"False", "false"}, {"None", "null"}}) {
                const std::string_view f(from);
                if (s.substr(i, f.size()) == f && (i + f.size() == s.size() || !is_ident(s[i + f.size()]))) {
                    out += to;
                    i += f.size() - 1;
                    replaced = true;
                    break;
                }
            }
        }
        if (!replaced) out.push_back(c);
    }
    return out;
}

std::vector<std::vector<std::string>> read_tsv(std::string_view tsv, std::size_t columns, const std::string& what) {
    std::vector<std::vector<std::string>> rows;
    std::size_t line_no = 0;
    for (const auto& line : text::split_lines(tsv)) {
        ++line_no;
        const auto trimmed = text::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        auto cells = text::split(line, '\t');
        if (cells.size() != columns) {
            throw ConfigError(what + " line " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                              " tab-separated columns");
        }
        for (auto& cell : cells) cell = text::trim(cell);
        if (std::any_of(cells.begin(), cells.end(), [](const std::string& c) { return c.empty(); })) {
            throw ConfigError(what + " line " + std::to_string(line_no) + ": empty column");
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::string normalize_phrase(std::string_view s) {
    std::string out;
    for (char c : s) out.push_back(c == '_' || c == '-' ? ' ' : c);
    return text::to_lower(text::collapse_whitespace(out));
}

}  // namespace

std::optional<std::string> first_json_object(std::string_view text, std::size_t from) {
    for (auto start = text.find('{', from); start != std::string_view::npos; start = text.find('{', start + 1)) {
        int depth = 0;
        bool in_string = false;
        for (std::size_t i = start; i < text.size(); ++i) {
            const char c = text[i];
            if (in_string) {
                if (c == '\\') {
                    ++i;
                } else if (c == '"') {
                    in_string = false;
                }
            } else if (c == '"') {
                in_string = true;
            } else if (c == '{') {
                ++depth;
            } else if (c == '}' && --depth == 0) {
                return std::string(text.substr(start, i - start + 1));
            }
        }
    }
    return std::nullopt;
}

Verdict parse_verdict(std::string_view final_text) {
    // Take the first candidate object that parses as JSON.
    json doc;
    bool found = false;
    for (std::size_t from = 0; !found;) {
        const auto candidate = first_json_object(final_text, from);
        if (!candidate) break;
        try {
            doc = json::parse(normalize_literals(*candidate));
            found = doc.is_object();
        } catch (const json::exception&) {
        }
        from = final_text.find(*candidate, from) + 1;
    }
    if (!found) throw NoJsonFound("no JSON object found in the final answer");

    // Keys are matched case-insensitively.
    auto field = [&](std::string_view key) -> const json* {
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            if (text::iequals(text::trim(it.key()), key)) return &it.value();
        }
        return nullptr;
    };

    Verdict v;
    const auto* result = field("result");
    if (!result) throw InvalidResultField("the final answer has no \"result\" field");
    if (result->is_boolean()) {
        v.result = result->get<bool>();
    } else if (result->is_string()) {
        const auto s = text::trim(result->get<std::string>());
        if (text::iequals(s, "true")) {
            v.result = true;
        } else if (text::iequals(s, "false")) {
            v.result = false;
        } else {
            throw InvalidResultField("\"result\" must be True or False, got \"" + s + "\"");
        }
    } else {
        throw InvalidResultField("\"result\" must be True or False, got " + result->dump());
    }

    if (const auto* reason = field("reason"); reason && reason->is_string() &&
                                              !text::trim(reason->get<std::string>()).empty()) {
        v.reason = text::trim(reason->get<std::string>());
    } else if (reason && !reason->is_null() && !reason->is_string()) {
        v.reason = reason->dump();
    } else {
        v.reason = std::string(kMissingReason);
        v.warnings.push_back("reason missing");
    }

    if (v.result) {
        const auto* type = field("scam_type");
        if (type && type->is_string() && !text::trim(type->get<std::string>()).empty()) {
            v.scam_type = text::trim(type->get<std::string>());
        } else {
            v.scam_type = std::string(kUnspecifiedType);
            v.scam_type_missing = true;
            v.warnings.push_back("scam_type missing for a scam verdict");
        }
    }
    return v;
}

std::string_view to_string(ScamType type) {
    switch (type) {
        case ScamType::online_shopping: return "online_shopping";
        case ScamType::technical_support: return "technical_support";
        case ScamType::cryptocurrency: return "cryptocurrency";
        case ScamType::investment: return "investment";
        case ScamType::other: return "other";
    }
    return "other";
}

std::optional<ScamType> parse_scam_type(std::string_view text) {
    for (auto t : {ScamType::online_shopping, ScamType::technical_support, ScamType::cryptocurrency,
                   ScamType::investment, ScamType::other}) {
        if (to_string(t) == text) return t;
    }
    return std::nullopt;
}

SynonymTable SynonymTable::from_string(std::string_view tsv) {
    SynonymTable table;
    for (auto& row : read_tsv(tsv, 2, "synonym table")) {
        const auto type = parse_scam_type(row[1]);
        if (!type) throw ConfigError("synonym table: unknown type '" + row[1] + "'");
        table.rules_.emplace_back(normalize_phrase(row[0]), *type);
    }
    return table;
}

SynonymTable SynonymTable::from_file(const std::filesystem::path& path) { return from_string(read_file(path)); }

const SynonymTable& SynonymTable::bundled() {
    static const SynonymTable table = from_file(data_file("scam_type_synonyms.tsv"));
    return table;
}

ScamTypeCanon SynonymTable::canonicalize(std::string_view raw) const {
    ScamTypeCanon out;
    out.raw = std::string(raw);
    const auto normalized = normalize_phrase(raw);
    for (const auto& [phrase, type] : rules_) {
        if (phrase.size() <= out.matched_phrase.size()) continue;
        if (text::ifind_word(normalized, phrase) != std::string::npos) {
            out.canonical = type;
            out.matched_phrase = phrase;
        }
    }
    return out;
}

ScamTypeCanon canonicalize_scam_type(std::string_view raw) { return SynonymTable::bundled().canonicalize(raw); }

KeywordTable KeywordTable::from_string(std::string_view tsv) {
    KeywordTable table;
    for (auto& row : read_tsv(tsv, 2, "keyword table")) table.rows_.push_back({row[0], row[1]});
    return table;
}

KeywordTable KeywordTable::from_file(const std::filesystem::path& path) { return from_string(read_file(path)); }

const KeywordTable& KeywordTable::bundled() {
    static const KeywordTable table = from_file(data_file("reason_keywords.tsv"));
    return table;
}

ReasonProfile KeywordTable::categorize(std::string_view reason, bool whole_words) const {
    ReasonProfile profile;
    for (const auto& row : rows_) {
        const auto pos = whole_words ? text::ifind_word(reason, row.keyword) : text::ifind(reason, row.keyword);
        if (pos == std::string::npos) continue;
        profile.matched_keywords.push_back(row);
        profile.categories.insert(row.category);
    }
    return profile;
}

std::vector<std::string> KeywordTable::categories() const {
    std::vector<std::string> out;
    for (const auto& row : rows_) {
        if (std::find(out.begin(), out.end(), row.category) == out.end()) out.push_back(row.category);
    }
    return out;
}

ReasonProfile categorize_reason(std::string_view reason, bool whole_words) {
    return KeywordTable::bundled().categorize(reason, whole_words);
}

}  // namespace scamscope::verdict
