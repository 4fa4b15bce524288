#include "scamscope/eval.hpp"

#include "scamscope/errors.hpp"
#include "scamscope/text.hpp"
#include "scamscope/url.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace scamscope::eval {

using json = nlohmann::json;
using verdict::ScamType;

namespace {

std::optional<double> ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> harmonic(const std::optional<double>& p, const std::optional<double>& r) {
    if (!p || !r || *p + *r == 0.0) return std::nullopt;
    return 2.0 * *p * *r / (*p + *r);
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string fmt(const std::optional<double>& v, int digits = 3) {
    if (!v) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, *v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width, bool right = false) {
    if (s.size() >= width) return s;
    return right ? std::string(width - s.size(), ' ') + s : s + std::string(width - s.size(), ' ');
}

// Aligned table; first column left-aligned, the rest right-aligned.
std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) out += "  ";
            out += pad(cells[c], width[c], c > 0);
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        return out + "\n";
    };
    std::string out = line(header);
    std::size_t total = 0;
    for (auto w : width) total += w;
    out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
    for (const auto& row : rows) out += line(row);
    return out;
}

std::string slice_name(const dataset::DatasetEntry& e) {
    return std::string(e.scam_type ? verdict::to_string(*e.scam_type) : "untyped") + "/" + e.language;
}

}  // namespace

MetricsReport binary_metrics(const ConfusionCounts& c, std::string slice) {
    MetricsReport r;
    r.slice = std::move(slice);
    r.counts = c;
    r.accuracy = ratio(c.tp + c.tn, c.total());
    r.tpr = ratio(c.tp, c.tp + c.fn);
    r.tnr = ratio(c.tn, c.tn + c.fp);
    r.precision = ratio(c.tp, c.tp + c.fp);
    r.f1 = harmonic(r.precision, r.tpr);
    return r;
}

std::vector<Scored> match(const std::vector<dataset::DatasetEntry>& dataset,
                          const std::vector<react::AnalysisSession>& sessions, const verdict::SynonymTable& synonyms) {
    std::map<std::string, const react::AnalysisSession*> by_url;
    for (const auto& s : sessions) by_url[canonical_url(s.url)] = &s;  // later sessions win
    std::vector<std::string> missing;
    for (const auto& e : dataset) {
        if (!e.excluded() && !by_url.count(canonical_url(e.url))) missing.push_back(e.url);
    }
    if (!missing.empty()) {
        throw MissingVerdict(std::to_string(missing.size()) + " dataset entr" + (missing.size() == 1 ? "y has" : "ies have") +
                             " no session: " + text::join(missing, ", "));
    }
    std::vector<Scored> out;
    for (const auto& e : dataset) {
        if (e.excluded()) continue;
        const auto it = by_url.find(canonical_url(e.url));
        const auto& s = *it->second;
        Scored sc;
        sc.entry = &e;
        if (!s.verdict) {
            sc.failed = true;
            sc.predicted_scam = e.label == dataset::Label::legitimate;  // the wrong label
        } else {
            sc.predicted_scam = s.verdict->result;
            if (s.verdict->result && !s.verdict->scam_type_missing && s.verdict->scam_type) {
                sc.predicted_type = synonyms.canonicalize(*s.verdict->scam_type).canonical;
            }
        }
        out.push_back(sc);
    }
    return out;
}

BinaryScore score_binary(const std::vector<Scored>& scored) {
    BinaryScore s;
    for (const auto& sc : scored) {
        const bool scam = sc.entry->label == dataset::Label::scam;
        if (scam) {
            (sc.predicted_scam ? s.counts.tp : s.counts.fn)++;
            if (sc.failed) ++s.failed_scam;
        } else {
            (sc.predicted_scam ? s.counts.fp : s.counts.tn)++;
            if (sc.failed) ++s.failed_legit;
        }
    }
    return s;
}

MulticlassReport score_multiclass(const std::vector<Scored>& scored, std::string slice) {
    MulticlassReport r;
    r.slice = std::move(slice);
    std::set<ScamType> present;
    for (const auto& sc : scored) {
        if (sc.entry->label == dataset::Label::scam && sc.entry->scam_type) present.insert(*sc.entry->scam_type);
    }
    for (const auto cls : present) {
        ClassMetrics m;
        m.cls = cls;
        for (const auto& sc : scored) {
            const bool actual = sc.entry->label == dataset::Label::scam && sc.entry->scam_type == cls;
            const bool predicted = !sc.failed && sc.predicted_type == cls;
            m.support += actual;
            m.predicted += predicted;
            m.correct += actual && predicted;
        }
        m.recall = ratio(m.correct, m.support);
        m.precision = ratio(m.correct, m.predicted);
        m.f1 = harmonic(m.precision, m.recall);
        if (!m.f1 && m.precision && m.recall) m.f1 = 0.0;
        r.classes.push_back(m);
    }
    if (!r.classes.empty()) {
        double rs = 0, ps = 0, fs = 0;
        for (const auto& m : r.classes) {
            rs += m.recall.value_or(0.0);
            ps += m.precision.value_or(0.0);
            fs += m.f1.value_or(0.0);
        }
        const double n = static_cast<double>(r.classes.size());
        r.macro_recall = rs / n;
        r.macro_precision = ps / n;
        r.macro_f1 = fs / n;
        r.f1_of_macro = harmonic(r.macro_precision, r.macro_recall);
        if (!r.f1_of_macro) r.f1_of_macro = 0.0;
    }
    return r;
}

std::vector<ToolUsage> tool_usage(const std::vector<react::AnalysisSession>& sessions,
                                  const std::vector<std::string>& tool_order) {
    std::map<std::string, ToolUsage> rows;
    for (const auto& s : sessions) {
        std::set<std::string> used;
        for (const auto& step : s.steps) {
            auto& row = rows[step.action];
            row.tool = step.action;
            ++row.selected;
            used.insert(step.action);
        }
        for (const auto& name : used) ++rows[name].sessions_using;
    }
    std::vector<ToolUsage> out;
    for (const auto& name : tool_order) {
        auto row = rows.count(name) ? rows[name] : ToolUsage{name, 0, 0, std::nullopt};
        rows.erase(name);
        out.push_back(row);
    }
    for (auto& [name, row] : rows) out.push_back(row);
    for (auto& row : out) row.used_fraction = ratio(row.sessions_using, static_cast<std::int64_t>(sessions.size()));
    return out;
}

std::vector<ReasonFrequency> reason_frequencies(const std::vector<react::AnalysisSession>& sessions,
                                                const verdict::KeywordTable& table, bool whole_words) {
    std::vector<ReasonFrequency> out;
    for (const auto& c : table.categories()) out.push_back({c, 0, std::nullopt});
    for (const auto& s : sessions) {
        if (!s.verdict) continue;
        const auto profile = table.categorize(s.verdict->reason, whole_words);
        for (auto& row : out) row.count += profile.categories.count(row.category);
    }
    for (auto& row : out) row.fraction = ratio(row.count, static_cast<std::int64_t>(sessions.size()));
    return out;
}

std::int64_t parse_dollars_to_nano(std::string_view raw) {
    const auto t = text::trim(raw);
    const auto dot = t.find('.');
    const std::string whole = t.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : t.substr(dot + 1);
    auto digits = [](const std::string& s) {
        return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if ((whole.empty() && frac.empty()) || !digits(whole) || !digits(frac)) {
        throw ConfigError("price '" + t + "' is not a non-negative decimal");
    }
    while (frac.size() > 9 && frac.back() == '0') frac.pop_back();
    if (frac.size() > 9) throw ConfigError("price '" + t + "' has more than nine fractional digits");
    frac.resize(9, '0');
    if (whole.size() > 9) throw ConfigError("price '" + t + "' is implausibly large");
    return (whole.empty() ? 0 : std::stoll(whole)) * 1000000000LL + std::stoll(frac);
}

std::map<std::string, Pricing> parse_pricing(const json& j) {
    if (!j.is_object()) throw ConfigError("pricing table must be a JSON object keyed by model id");
    std::map<std::string, Pricing> out;
    auto price = [](const json& v, const std::string& what) {
        if (v.is_string()) return parse_dollars_to_nano(v.get<std::string>());
        if (v.is_number()) return parse_dollars_to_nano(v.dump());
        throw ConfigError(what + " must be a decimal string");
    };
    for (const auto& [model, p] : j.items()) {
        if (!p.is_object() || !p.contains("prompt_per_1k") || !p.contains("completion_per_1k")) {
            throw ConfigError("pricing for '" + model + "' needs prompt_per_1k and completion_per_1k");
        }
        out[model] = Pricing{price(p["prompt_per_1k"], model + ".prompt_per_1k"),
                             price(p["completion_per_1k"], model + ".completion_per_1k")};
    }
    return out;
}

double pico_to_dollars(std::int64_t pico) { return static_cast<double>(pico) / 1e12; }

CostReport cost_report(const std::vector<react::AnalysisSession>& sessions, const Pricing& pricing) {
    CostReport r;
    r.sessions = static_cast<std::int64_t>(sessions.size());
    for (const auto& s : sessions) {
        r.prompt_tokens += s.tokens.prompt_tokens;
        r.completion_tokens += s.tokens.completion_tokens;
        r.wall_ms += s.wall_ms;
        r.llm_ms += s.llm_ms;
        r.tool_ms += s.tool_ms;
    }
    r.priced = true;
    r.cost_pico = r.prompt_tokens * pricing.prompt_nano_per_1k + r.completion_tokens * pricing.completion_nano_per_1k;
    if (r.sessions > 0) {
        r.cost_per_url = pico_to_dollars(r.cost_pico) / static_cast<double>(r.sessions);
        r.wall_ms_per_url = static_cast<double>(r.wall_ms) / static_cast<double>(r.sessions);
    }
    r.llm_fraction = ratio(r.llm_ms, r.wall_ms);
    r.tool_fraction = ratio(r.tool_ms, r.wall_ms);
    return r;
}

EvaluationReport evaluate(const std::vector<dataset::DatasetEntry>& dataset,
                          const std::vector<react::AnalysisSession>& sessions, const EvalOptions& options) {
    EvaluationReport report;
    const auto scored =
        match(dataset, sessions, options.synonyms ? *options.synonyms : verdict::SynonymTable::bundled());

    std::set<std::string> wanted;
    for (const auto& sc : scored) wanted.insert(canonical_url(sc.entry->url));
    std::map<std::string, const react::AnalysisSession*> by_url;
    for (const auto& s : sessions) {
        const auto key = canonical_url(s.url);
        if (wanted.count(key)) {
            by_url[key] = &s;
        } else {
            ++report.unmatched_sessions;
        }
    }
    std::vector<react::AnalysisSession> used;
    for (const auto& sc : scored) used.push_back(*by_url[canonical_url(sc.entry->url)]);

    report.overall_score = score_binary(scored);
    report.binary.push_back(binary_metrics(report.overall_score.counts, "overall"));
    std::map<std::string, std::vector<Scored>> cells;
    std::map<std::string, std::vector<Scored>> languages;
    for (const auto& sc : scored) {
        cells[slice_name(*sc.entry)].push_back(sc);
        languages[sc.entry->language].push_back(sc);
    }
    for (const auto& [name, members] : cells) report.binary.push_back(binary_metrics(score_binary(members).counts, name));

    report.multiclass.push_back(score_multiclass(scored, "overall"));
    if (languages.size() > 1) {
        for (const auto& [lang, members] : languages) report.multiclass.push_back(score_multiclass(members, lang));
    }

    std::vector<std::string> order;
    for (const auto& spec : tools::builtin_specs()) order.push_back(spec.name);
    report.tools = tool_usage(used, order);
    report.reasons = reason_frequencies(used, options.keywords ? *options.keywords : verdict::KeywordTable::bundled(),
                                        options.whole_word_keywords);
    report.cost = cost_report(used, options.pricing.value_or(Pricing{}));
    report.cost->priced = options.pricing.has_value();
    if (!options.pricing) report.cost->cost_per_url.reset();
    return report;
}

json to_json(const EvaluationReport& r) {
    json binary = json::array();
    for (const auto& m : r.binary) {
        binary.push_back({{"slice", m.slice},
                          {"tp", m.counts.tp},
                          {"tn", m.counts.tn},
                          {"fp", m.counts.fp},
                          {"fn", m.counts.fn},
                          {"accuracy", opt(m.accuracy)},
                          {"tpr", opt(m.tpr)},
                          {"tnr", opt(m.tnr)},
                          {"precision", opt(m.precision)},
                          {"f1", opt(m.f1)}});
    }
    json multi = json::array();
    for (const auto& m : r.multiclass) {
        json classes = json::array();
        for (const auto& c : m.classes) {
            classes.push_back({{"class", verdict::to_string(c.cls)},
                               {"support", c.support},
                               {"predicted", c.predicted},
                               {"correct", c.correct},
                               {"recall", opt(c.recall)},
                               {"precision", opt(c.precision)},
                               {"f1", opt(c.f1)}});
        }
        multi.push_back({{"slice", m.slice},
                         {"classes", classes},
                         {"macro_recall", opt(m.macro_recall)},
                         {"macro_precision", opt(m.macro_precision)},
                         {"macro_f1", opt(m.macro_f1)},
                         {"f1_of_macro", opt(m.f1_of_macro)}});
    }
    json tools = json::array();
    for (const auto& t : r.tools) {
        tools.push_back({{"tool", t.tool},
                         {"selected", t.selected},
                         {"sessions_using", t.sessions_using},
                         {"used_fraction", opt(t.used_fraction)}});
    }
    json reasons = json::array();
    for (const auto& f : r.reasons) {
        reasons.push_back({{"category", f.category}, {"count", f.count}, {"fraction", opt(f.fraction)}});
    }
    json j = {{"schema_version", kReportSchemaVersion},
              {"binary", binary},
              {"multiclass", multi},
              {"failures", {{"scam", r.overall_score.failed_scam}, {"legitimate", r.overall_score.failed_legit}}},
              {"tool_usage", tools},
              {"reason_categories", reasons},
              {"unmatched_sessions", r.unmatched_sessions}};
    if (r.cost) {
        const auto& c = *r.cost;
        j["cost"] = {{"sessions", c.sessions},
                     {"prompt_tokens", c.prompt_tokens},
                     {"completion_tokens", c.completion_tokens},
                     {"cost_picodollars", c.priced ? json(c.cost_pico) : json(nullptr)},
                     {"cost_dollars", c.priced ? json(pico_to_dollars(c.cost_pico)) : json(nullptr)},
                     {"cost_per_url", opt(c.cost_per_url)},
                     {"wall_ms", c.wall_ms},
                     {"llm_ms", c.llm_ms},
                     {"tool_ms", c.tool_ms},
                     {"wall_ms_per_url", opt(c.wall_ms_per_url)},
                     {"llm_fraction", opt(c.llm_fraction)},
                     {"tool_fraction", opt(c.tool_fraction)}};
    } else {
        j["cost"] = nullptr;
    }
    return j;
}

std::string format_text(const EvaluationReport& r) {
    std::string out = "Binary classification\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& m : r.binary) {
        rows.push_back({m.slice, std::to_string(m.counts.tp), std::to_string(m.counts.tn),
                        std::to_string(m.counts.fp), std::to_string(m.counts.fn), fmt(m.accuracy), fmt(m.tpr),
                        fmt(m.tnr), fmt(m.precision), fmt(m.f1)});
    }
    out += table({"slice", "TP", "TN", "FP", "FN", "Accuracy", "TPR", "TNR", "Precision", "F1"}, rows);
    out += "analysis failures: " + std::to_string(r.overall_score.failed_scam) + " scam (scored FN), " +
           std::to_string(r.overall_score.failed_legit) + " legitimate (scored FP)\n";

    for (const auto& m : r.multiclass) {
        out += "\nMulti-class classification (" + m.slice + ")\n";
        rows.clear();
        for (const auto& c : m.classes) {
            rows.push_back({std::string(verdict::to_string(c.cls)), std::to_string(c.support),
                            std::to_string(c.predicted), std::to_string(c.correct), fmt(c.recall),
                            fmt(c.precision), fmt(c.f1)});
        }
        rows.push_back({"macro", "", "", "", fmt(m.macro_recall), fmt(m.macro_precision), fmt(m.macro_f1)});
        out += table({"class", "support", "predicted", "correct", "Recall", "Precision", "F1"}, rows);
        out += "F1 of macro precision and recall: " + fmt(m.f1_of_macro) + "\n";
    }

    out += "\nTool usage\n";
    rows.clear();
    for (const auto& t : r.tools) {
        rows.push_back({t.tool, std::to_string(t.selected), std::to_string(t.sessions_using),
                        t.used_fraction ? fmt(*t.used_fraction * 100.0, 1) + "%" : "n/a"});
    }
    out += table({"tool", "selected", "sessions", "used"}, rows);

    out += "\nInformation in reasons\n";
    rows.clear();
    for (const auto& f : r.reasons) {
        rows.push_back({f.category, std::to_string(f.count), f.fraction ? fmt(*f.fraction * 100.0, 1) + "%" : "n/a"});
    }
    out += table({"information type", "sessions", "share"}, rows);

    if (r.cost) {
        const auto& c = *r.cost;
        out += "\nCost and time\n";
        rows = {{"sessions", std::to_string(c.sessions)},
                {"prompt tokens", std::to_string(c.prompt_tokens)},
                {"completion tokens", std::to_string(c.completion_tokens)},
                {"total cost ($)", c.priced ? fmt(pico_to_dollars(c.cost_pico), 6) : "n/a"},
                {"cost per URL ($)", fmt(c.cost_per_url, 6)},
                {"wall time per URL (s)", c.wall_ms_per_url ? fmt(*c.wall_ms_per_url / 1000.0, 2) : "n/a"},
                {"LLM share of time", c.llm_fraction ? fmt(*c.llm_fraction * 100.0, 1) + "%" : "n/a"},
                {"tool share of time", c.tool_fraction ? fmt(*c.tool_fraction * 100.0, 1) + "%" : "n/a"}};
        out += table({"measure", "value"}, rows);
    }
    if (r.unmatched_sessions) {
        out += "\n" + std::to_string(r.unmatched_sessions) + " session(s) did not match a retained dataset entry\n";
    }
    return out;
}

}  // namespace scamscope::eval
