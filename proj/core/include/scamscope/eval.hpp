#pragma once

#include "scamscope/dataset.hpp"
#include "scamscope/react.hpp"
#include "scamscope/verdict.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scamscope::eval {

inline constexpr int kReportSchemaVersion = 1;

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + tn + fp + fn; }
    bool operator==(const ConfusionCounts&) const = default;
};

/// Ratios with a zero denominator are absent.
struct MetricsReport {
    std::string slice;
    ConfusionCounts counts;
    std::optional<double> accuracy;
    std::optional<double> tpr;
    std::optional<double> tnr;
    std::optional<double> precision;
    std::optional<double> f1;
};

MetricsReport binary_metrics(const ConfusionCounts& counts, std::string slice = "overall");

/// What one dataset entry scored as.
struct Scored {
    const dataset::DatasetEntry* entry = nullptr;
    bool failed = false;         // no verdict: parse failure or error
    bool predicted_scam = false;
    std::optional<verdict::ScamType> predicted_type;  // scam predictions with a usable type
};

/// Pairs retained dataset entries with sessions by canonical URL. Entries
/// without a session throw MissingVerdict listing every such URL. Failed sessions score as the
/// wrong label (scam -> fn, legitimate -> fp).
std::vector<Scored> match(const std::vector<dataset::DatasetEntry>& dataset,
                          const std::vector<react::AnalysisSession>& sessions,
                          const verdict::SynonymTable& synonyms = verdict::SynonymTable::bundled());

struct BinaryScore {
    ConfusionCounts counts;
    std::int64_t failed_scam = 0;   // included in fn
    std::int64_t failed_legit = 0;  // included in fp
};

BinaryScore score_binary(const std::vector<Scored>& scored);

struct ClassMetrics {
    verdict::ScamType cls = verdict::ScamType::other;
    std::int64_t support = 0;    // actual scam entries of the class
    std::int64_t predicted = 0;  // entries predicted as the class, any label
    std::int64_t correct = 0;
    std::optional<double> recall;
    std::optional<double> precision;
    std::optional<double> f1;
};

/// Per-class values over the classes present among the slice's scam
/// entries. Macro values are arithmetic means with undefined per-class
/// values counted as 0; `f1_of_macro` is the harmonic mean of macro
/// precision and macro recall.
struct MulticlassReport {
    std::string slice;
    std::vector<ClassMetrics> classes;
    std::optional<double> macro_recall;
    std::optional<double> macro_precision;
    std::optional<double> macro_f1;
    std::optional<double> f1_of_macro;
};

MulticlassReport score_multiclass(const std::vector<Scored>& scored, std::string slice = "overall");

struct ToolUsage {
    std::string tool;
    std::int64_t selected = 0;
    std::int64_t sessions_using = 0;
    std::optional<double> used_fraction;
};

/// One row per tool in `tool_order`, then any other action names seen
/// (including the invalid sentinel) in name order.
std::vector<ToolUsage> tool_usage(const std::vector<react::AnalysisSession>& sessions,
                                  const std::vector<std::string>& tool_order);

struct ReasonFrequency {
    std::string category;
    std::int64_t count = 0;
    std::optional<double> fraction;
};

std::vector<ReasonFrequency> reason_frequencies(const std::vector<react::AnalysisSession>& sessions,
                                                const verdict::KeywordTable& table = verdict::KeywordTable::bundled(),
                                                bool whole_words = false);

/// Prices in nanodollars per 1,000 tokens, which is picodollars per token.
struct Pricing {
    std::int64_t prompt_nano_per_1k = 0;
    std::int64_t completion_nano_per_1k = 0;
};

/// "0.01" -> 10,000,000 nanodollars. At most nine fractional digits.
std::int64_t parse_dollars_to_nano(std::string_view text);

/// Model id -> pricing, from {"model": {"prompt_per_1k": "0.01",
/// "completion_per_1k": "0.03"}}.
std::map<std::string, Pricing> parse_pricing(const nlohmann::json& j);

struct CostReport {
    std::int64_t sessions = 0;
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
    bool priced = false;         // cost fields are meaningful only when true
    std::int64_t cost_pico = 0;  // exact
    std::optional<double> cost_per_url;  // dollars
    std::int64_t wall_ms = 0;
    std::int64_t llm_ms = 0;
    std::int64_t tool_ms = 0;
    std::optional<double> wall_ms_per_url;
    std::optional<double> llm_fraction;
    std::optional<double> tool_fraction;
};

CostReport cost_report(const std::vector<react::AnalysisSession>& sessions, const Pricing& pricing);

double pico_to_dollars(std::int64_t pico);

struct EvaluationReport {
    std::vector<MetricsReport> binary;          // overall first, then per type/language cell
    std::vector<MulticlassReport> multiclass;   // overall first, then per language
    BinaryScore overall_score;
    std::vector<ToolUsage> tools;
    std::vector<ReasonFrequency> reasons;
    std::optional<CostReport> cost;
    std::int64_t unmatched_sessions = 0;
};

struct EvalOptions {
    std::optional<Pricing> pricing;  // without it the cost section has tokens and time only
    const verdict::SynonymTable* synonyms = nullptr;  // bundled when null
    const verdict::KeywordTable* keywords = nullptr;  // bundled when null
    bool whole_word_keywords = false;
};

/// Tool, reason and cost figures cover the sessions matched to retained
/// entries; other sessions are only counted in `unmatched_sessions`.
EvaluationReport evaluate(const std::vector<dataset::DatasetEntry>& dataset,
                          const std::vector<react::AnalysisSession>& sessions, const EvalOptions& options = {});

nlohmann::json to_json(const EvaluationReport& report);

/// Aligned plain-text tables: binary metrics, multi-class metrics, tool
/// usage, reason categories and cost.
std::string format_text(const EvaluationReport& report);

}  // namespace scamscope::eval
