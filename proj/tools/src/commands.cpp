#include "scamscope/cli/commands.hpp"

#include "scamscope/data_files.hpp"
#include "scamscope/dataset.hpp"
#include "scamscope/errors.hpp"
#include "scamscope/live_providers.hpp"
#include "scamscope/sim_web.hpp"
#include "scamscope/text.hpp"
#include "scamscope/url.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

namespace scamscope::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Writes through a sibling temporary file so readers never see a partial file.
void write_atomically(const fs::path& path, const std::string& contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw ConfigError("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string session_line(const react::AnalysisSession& s) { return react::to_json(s).dump(); }

std::string verdict_summary(const react::AnalysisSession& s) {
    if (!s.verdict) return std::string(react::to_string(s.termination)) + (s.error_kind.empty() ? "" : " (" + s.error_kind + ")");
    if (!s.verdict->result) return "legitimate";
    return "scam/" + s.verdict->scam_type.value_or(std::string(verdict::kUnspecifiedType));
}

}  // namespace

ScriptLibrary ScriptLibrary::from_directory(const fs::path& dir) {
    const auto index_path = dir / "index.json";
    if (!fs::exists(index_path)) throw ConfigError("no index.json in scripts directory " + dir.string());
    json index;
    try {
        index = json::parse(read_file(index_path));
    } catch (const json::exception& e) {
        throw ConfigError("malformed " + index_path.string() + ": " + e.what());
    }
    if (!index.is_object()) throw ConfigError(index_path.string() + " must map URLs to script files");
    ScriptLibrary lib;
    lib.dir_ = dir;
    for (const auto& [url, file] : index.items()) {
        if (!file.is_string()) throw ConfigError("script entry for " + url + " must be a file name");
        lib.files_[canonical_url(url)] = dir / file.get<std::string>();
    }
    return lib;
}

bool ScriptLibrary::has(const std::string& url) const { return files_.count(canonical_url(url)) > 0; }

std::unique_ptr<llm::ScriptedBackend> ScriptLibrary::backend_for(const std::string& url) const {
    const auto it = files_.find(canonical_url(url));
    if (it == files_.end()) throw ConfigError("no scripted completions for " + url);
    return llm::ScriptedBackend::from_file(it->second);
}

ScriptRecorder::ScriptRecorder(fs::path dir) : dir_(std::move(dir)), index_(json::object()) {
    fs::create_directories(dir_);
    const auto index_path = dir_ / "index.json";
    if (fs::exists(index_path)) index_ = json::parse(read_file(index_path));
}

void ScriptRecorder::save(const std::string& url, const std::vector<std::string>& completions) {
    const auto name = text::sha256_hex(canonical_url(url)).substr(0, 16) + ".json";
    std::lock_guard lock(mutex_);
    llm::write_script(dir_ / name, completions);
    index_[url] = name;
    write_atomically(dir_ / "index.json", index_.dump(2) + "\n");
}

Runtime::Runtime(const RunConfig& config, bool needs_model) : config_(config) {
    validate(config_, needs_model);
    const auto missing = missing_credentials(config_, needs_model);
    if (!missing.empty()) {
        throw ConfigError(std::string(tools::to_string(config_.mode)) + " mode needs environment variable" +
                          (missing.size() > 1 ? "s " : " ") + text::join(missing, ", "));
    }

    template_ = config_.template_path.empty() ? prompt::PromptTemplate::bundled()
                                              : prompt::PromptTemplate::from_file(config_.template_path);
    for (const auto& f : config_.extra_features) template_.features.features.push_back(f);
    template_.validate();

    clock_ = config_.mode == tools::Mode::replay ? std::make_shared<FrozenClock>(0) : system_clock();

    tools::Providers providers;
    if (config_.mode != tools::Mode::replay) {
        if (!config_.sim.empty()) {
            providers = tools::SimWeb::from_directory(config_.sim)->providers();
        } else {
            tools::LiveProviderConfig live;
            live.timeout = std::chrono::milliseconds(config_.http_timeout_ms);
            live.rate_per_second = config_.rate_per_second;
            live.dns_server = config_.dns_server;
            providers = tools::make_live_providers(live);
        }
    }
    tools::ToolRegistry::Options options;
    options.mode = config_.mode;
    if (!config_.fixtures.empty()) options.fixtures = std::make_shared<tools::FixtureStore>(config_.fixtures);
    options.clock = clock_;
    options.enabled = config_.tools;
    options.user_agent = config_.user_agent;
    registry_ = std::make_unique<tools::ToolRegistry>(std::move(providers), std::move(options));

    if (!needs_model) return;
    if (!config_.scripts.empty()) {
        scripts_ = ScriptLibrary::from_directory(config_.scripts);
    } else {
        llm::LiveBackendConfig live;
        live.endpoint = config_.endpoint;
        live.model_id = config_.model_id;
        live.api_key_env = config_.api_key_env;
        live.timeout = std::chrono::milliseconds(std::max<std::int64_t>(config_.http_timeout_ms, 120000));
        live_backend_ = std::make_unique<llm::LiveBackend>(live);
        if (!config_.record_scripts.empty()) recorder_ = std::make_unique<ScriptRecorder>(config_.record_scripts);
    }
}

react::EngineConfig Runtime::engine_config() const {
    react::EngineConfig c;
    c.max_actions = config_.max_actions;
    c.max_observation_chars = static_cast<std::size_t>(config_.max_observation_chars);
    c.temperature = config_.temperature;
    c.max_context_tokens = config_.max_context_tokens;
    c.model_id = config_.model_id;
    return c;
}

react::AnalysisSession Runtime::analyze(const std::string& url) {
    const auto engine = engine_config();
    auto run_with = [&](llm::ChatBackend& backend) {
        try {
            return config_.single_turn
                       ? react::run_single_turn(url, backend, *registry_, template_, engine, *clock_)
                       : react::run_session(url, backend, *registry_, template_, engine, *clock_);
        } catch (const react::SessionError& e) {
            return e.partial();
        }
    };
    try {
        if (scripts_) {
            auto backend = scripts_->backend_for(url);
            return run_with(*backend);
        }
        if (!live_backend_) throw ConfigError("this command was set up without a model");
        if (recorder_) {
            llm::RecordingBackend recording(*live_backend_);
            auto session = run_with(recording);
            recorder_->save(url, recording.recorded());
            return session;
        }
        return run_with(*live_backend_);
    } catch (const Error& e) {
        return failed_session(url, config_, e);
    }
}

react::AnalysisSession failed_session(const std::string& url, const RunConfig& config, const Error& error) {
    react::AnalysisSession s;
    s.url = url;
    s.mode = config.single_turn ? "single_turn" : "agent";
    s.model_id = config.model_id;
    s.termination = react::Termination::error;
    s.error_kind = error.kind();
    s.error_message = error.what();
    return s;
}

std::vector<react::AnalysisSession> read_sessions(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::vector<react::AnalysisSession> sessions;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (text::trim(line).empty()) continue;
        try {
            sessions.push_back(react::session_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ParseError(path.string() + ":" + std::to_string(number) + ": " + e.what());
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ":" + std::to_string(number) + ": " + e.what());
        }
    }
    return sessions;
}

BatchSummary run_batch(const fs::path& dataset_file, const RunConfig& config, std::ostream& log) {
    if (config.output.empty()) throw ConfigError("batch needs --output");
    const auto entries = dataset::read_entries(dataset_file);

    std::vector<std::string> urls;  // retained, first occurrence of each canonical URL
    std::set<std::string> seen;
    for (const auto& e : entries) {
        if (e.excluded()) continue;
        if (seen.insert(canonical_url(e.url)).second) urls.push_back(e.url);
    }

    // Lines already in the output. A line cut short by an interrupted run
    // is dropped and its URL analyzed again.
    std::vector<std::pair<std::string, std::string>> existing;  // canonical url, line
    std::set<std::string> done;
    if (fs::exists(config.output)) {
        std::ifstream in(config.output, std::ios::binary);
        std::string line;
        std::size_t number = 0;
        while (std::getline(in, line)) {
            ++number;
            if (text::trim(line).empty()) continue;
            try {
                const auto j = json::parse(line);
                const auto key = canonical_url(j.at("url").get<std::string>());
                if (done.insert(key).second) existing.emplace_back(key, line);
            } catch (const json::exception&) {
                log << "warning: ignoring unreadable line " << number << " of " << config.output.string() << "\n";
            }
        }
    }

    BatchSummary summary;
    summary.entries = urls.size();
    std::vector<std::string> pending;
    for (const auto& u : urls) {
        if (done.count(canonical_url(u))) {
            ++summary.skipped;
        } else {
            pending.push_back(u);
        }
    }

    Runtime runtime(config);
    {
        std::string kept;
        for (const auto& [key, line] : existing) kept += line + "\n";
        write_atomically(config.output, kept);
    }

    std::map<std::string, std::string> fresh;  // canonical url -> line
    std::mutex mutex;
    std::ofstream out(config.output, std::ios::binary | std::ios::app);
    if (!out) throw ConfigError("cannot write " + config.output.string());
    std::atomic<std::size_t> next{0};
    std::size_t finished = 0;
    auto worker = [&] {
        while (true) {
            const auto i = next.fetch_add(1);
            if (i >= pending.size()) return;
            const auto session = runtime.analyze(pending[i]);
            const auto line = session_line(session);
            std::lock_guard lock(mutex);
            out << line << '\n';
            out.flush();
            fresh[canonical_url(pending[i])] = line;
            ++finished;
            if (session.termination == react::Termination::error) ++summary.errors;
            log << "[" << finished << "/" << pending.size() << "] " << pending[i] << " -> " << verdict_summary(session)
                << "\n";
        }
    };
    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(config.parallelism), pending.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    if (threads > 0) worker();
    for (auto& t : pool) t.join();
    out.close();
    summary.analyzed = finished;

    // Final layout: dataset order, then lines for URLs not in the dataset.
    std::map<std::string, std::string> all(fresh.begin(), fresh.end());
    for (const auto& [key, line] : existing) all.emplace(key, line);
    std::string contents;
    std::set<std::string> written;
    for (const auto& u : urls) {
        const auto key = canonical_url(u);
        const auto it = all.find(key);
        if (it != all.end() && written.insert(key).second) contents += it->second + "\n";
    }
    for (const auto& [key, line] : existing) {
        if (written.insert(key).second) contents += line + "\n";
    }
    write_atomically(config.output, contents);
    return summary;
}

namespace {

// Options shared by every command, bound to one RunConfig.
void add_run_options(CLI::App& app, RunConfig& c, std::string& mode) {
    app.add_option("--model-id", c.model_id, "Model identifier sent to the endpoint and used for pricing")
        ->capture_default_str();
    app.add_option("--endpoint", c.endpoint, "Chat-completions URL")->capture_default_str();
    app.add_option("--api-key-env", c.api_key_env, "Environment variable holding the model credential")
        ->capture_default_str();
    app.add_option("--temperature", c.temperature)->capture_default_str();
    app.add_option("--max-context-tokens", c.max_context_tokens)->capture_default_str();
    app.add_option("--max-actions", c.max_actions, "Tool calls allowed per URL")->capture_default_str();
    app.add_option("--max-observation-chars", c.max_observation_chars, "Observation cap in bytes")
        ->capture_default_str();
    app.add_flag("--single-turn", c.single_turn, "One prompt with the top page text, no tools");
    app.add_option("--tools", c.tools, "Enabled tools (default: all)")->delimiter(',');
    app.add_option("--extra-feature", c.extra_features, "Additional scam characteristic for the prompt");
    app.add_option("--mode", mode, "replay, record or live")
        ->check(CLI::IsMember({"replay", "record", "live"}))
        ->capture_default_str();
    app.add_option("--parallelism", c.parallelism, "Concurrent sessions in batch runs")->capture_default_str();
    app.add_option("--user-agent", c.user_agent, "User agent for page fetches");
    app.add_option("--http-timeout-ms", c.http_timeout_ms)->capture_default_str();
    app.add_option("--rate-per-second", c.rate_per_second, "Per-provider request rate")->capture_default_str();
    app.add_option("--dns-server", c.dns_server)->capture_default_str();
    app.add_option("--template", c.template_path, "Prompt template asset");
    app.add_option("--keywords", c.keywords_path, "Reason keyword table (TSV)");
    app.add_option("--synonyms", c.synonyms_path, "Scam type synonym table (TSV)");
    app.add_option("--fixtures", c.fixtures, "Tool fixture directory");
    app.add_option("--scripts", c.scripts, "Scripted completions directory");
    app.add_option("--record-scripts", c.record_scripts, "Save live completions here");
    app.add_option("--sim", c.sim, "Simulated web directory used instead of live providers");
    app.add_option("--output", c.output, "Output file");
    app.add_flag("--whole-word-keywords", c.whole_word_keywords, "Match reason keywords on word boundaries");
}

void print_summary(std::ostream& err, const dataset::PipelineSummary& s) {
    err << "candidates: " << s.candidates << ", retained: " << s.retained << "\n";
    for (const auto& [reason, n] : s.excluded_by_reason) err << "  excluded (" << reason << "): " << n << "\n";
}

std::vector<dataset::DatasetEntry> read_all(const std::vector<std::string>& inputs) {
    std::vector<dataset::DatasetEntry> entries;
    for (const auto& in : inputs) {
        auto part = dataset::read_entries(in);
        entries.insert(entries.end(), part.begin(), part.end());
    }
    return entries;
}

fs::path require_output(const RunConfig& c) {
    if (c.output.empty()) throw ConfigError("this command needs --output");
    return c.output;
}

int cmd_analyze(const std::string& url, const RunConfig& config, std::ostream& out, std::ostream& err) {
    Url::parse_http(url);  // usage error before anything is set up
    Runtime runtime(config);
    const auto session = runtime.analyze(url);
    out << react::to_json(session).dump(2) << "\n";
    if (!session.verdict) {
        err << "analysis failed: " << verdict_summary(session);
        if (!session.error_message.empty()) err << ": " << session.error_message;
        err << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

struct EvalArgs {
    std::string dataset;
    std::string sessions;
    std::string pricing;
    std::string price_model;
    std::string json_out;
    std::string text_out;
};

int cmd_eval(const EvalArgs& args, const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto entries = dataset::read_entries(args.dataset);
    const auto sessions = read_sessions(args.sessions);

    std::optional<verdict::SynonymTable> synonyms;
    std::optional<verdict::KeywordTable> keywords;
    if (!config.synonyms_path.empty()) synonyms = verdict::SynonymTable::from_file(config.synonyms_path);
    if (!config.keywords_path.empty()) keywords = verdict::KeywordTable::from_file(config.keywords_path);

    eval::EvalOptions options;
    options.synonyms = synonyms ? &*synonyms : nullptr;
    options.keywords = keywords ? &*keywords : nullptr;
    options.whole_word_keywords = config.whole_word_keywords;
    if (!args.pricing.empty()) {
        const auto table = eval::parse_pricing(json::parse(read_file(args.pricing)));
        std::string model = args.price_model;
        if (model.empty()) {
            std::set<std::string> models;
            for (const auto& s : sessions) models.insert(s.model_id);
            if (models.size() != 1) throw ConfigError("sessions use several models; pick one with --price-model");
            model = *models.begin();
        }
        const auto it = table.find(model);
        if (it == table.end()) throw ConfigError("no pricing for model '" + model + "'");
        options.pricing = it->second;
    }

    const auto report = eval::evaluate(entries, sessions, options);
    if (report.unmatched_sessions > 0) {
        err << "warning: ignored " << report.unmatched_sessions << " session(s) with no retained dataset entry\n";
    }
    const auto text = eval::format_text(report);
    if (!args.json_out.empty()) write_atomically(args.json_out, eval::to_json(report).dump(2) + "\n");
    if (!args.text_out.empty()) {
        write_atomically(args.text_out, text);
    } else {
        out << text;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scam website analysis with a tool-using language model agent", "scamscope"};
    app.set_config("--config", "", "Flat key = value file; keys are the long option names");
    app.require_subcommand(1);

    RunConfig config;
    std::string mode = "replay";
    add_run_options(app, config, mode);

    std::string url;
    auto* analyze = app.add_subcommand("analyze", "Analyze one URL and print the session JSON");
    analyze->add_option("url", url, "URL to analyze")->required();

    std::string batch_dataset;
    auto* batch = app.add_subcommand("batch", "Analyze every retained dataset entry into --output (JSONL)");
    batch->add_option("dataset", batch_dataset, "Dataset file (JSONL or CSV)")->required()->check(CLI::ExistingFile);

    EvalArgs eval_args;
    auto* evalc = app.add_subcommand("eval", "Score sessions against a dataset");
    evalc->add_option("dataset", eval_args.dataset)->required()->check(CLI::ExistingFile);
    evalc->add_option("sessions", eval_args.sessions)->required()->check(CLI::ExistingFile);
    evalc->add_option("--pricing", eval_args.pricing, "Pricing table (JSON)")->check(CLI::ExistingFile);
    evalc->add_option("--price-model", eval_args.price_model, "Model whose prices apply");
    evalc->add_option("--json-out", eval_args.json_out, "Write the JSON report here");
    evalc->add_option("--text-out", eval_args.text_out, "Write the text tables here instead of standard output");

    std::string render_url;
    auto* promptc = app.add_subcommand("prompt", "Print the agent prompt for a URL");
    promptc->add_option("url", render_url)->required();

    auto* datasetc = app.add_subcommand("dataset", "Build and curate datasets");
    datasetc->require_subcommand(1);
    std::vector<std::string> inputs;
    auto* ingest = datasetc->add_subcommand("ingest", "Combine candidate files and mark duplicates and conflicts");
    ingest->add_option("inputs", inputs)->required()->check(CLI::ExistingFile);
    std::string in_file;
    std::string toplist_file;
    std::int64_t cutoff = dataset::kDefaultTopListCutoff;
    auto* filter = datasetc->add_subcommand("filter", "Exclude entries whose domain ranks in a top list");
    filter->add_option("input", in_file)->required()->check(CLI::ExistingFile);
    filter->add_option("--toplist", toplist_file, "rank,domain CSV")->required()->check(CLI::ExistingFile);
    filter->add_option("--cutoff", cutoff)->capture_default_str();
    auto* check = datasetc->add_subcommand("check", "Exclude entries whose page does not answer 200");
    check->add_option("input", in_file)->required()->check(CLI::ExistingFile);
    std::string annotations_file;
    auto* merge = datasetc->add_subcommand("merge", "Apply manual review annotations");
    merge->add_option("input", in_file)->required()->check(CLI::ExistingFile);
    merge->add_option("--annotations", annotations_file)->required()->check(CLI::ExistingFile);
    std::size_t per_cell = 0;
    std::uint64_t seed = 0;
    auto* sample = datasetc->add_subcommand("sample", "Draw an equal number of entries from every cell");
    sample->add_option("input", in_file)->required()->check(CLI::ExistingFile);
    sample->add_option("--per-cell", per_cell)->required();
    sample->add_option("--seed", seed)->capture_default_str();

    auto* fixturesc = app.add_subcommand("fixtures", "Inspect recorded tool fixtures in --fixtures");
    fixturesc->require_subcommand(1);
    auto* flist = fixturesc->add_subcommand("list", "One line per fixture: tool, input, outcome");
    std::string ftool;
    std::string finput;
    auto* fshow = fixturesc->add_subcommand("show", "Print one fixture file");
    fshow->add_option("tool", ftool)->required();
    fshow->add_option("input", finput)->required();
    auto* fremove = fixturesc->add_subcommand("remove", "Delete one fixture");
    fremove->add_option("tool", ftool)->required();
    fremove->add_option("input", finput)->required();

    for (auto* sub : {analyze, batch, evalc, promptc, datasetc, fixturesc}) sub->fallthrough();
    for (auto* sub : {ingest, filter, check, merge, sample, flist, fshow, fremove}) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        config.mode = tools::parse_mode(mode);

        if (*analyze) return cmd_analyze(url, config, out, err);

        if (*batch) {
            const auto s = run_batch(batch_dataset, config, err);
            err << "entries: " << s.entries << ", already done: " << s.skipped << ", analyzed: " << s.analyzed
                << ", errors: " << s.errors << "\n";
            return s.errors > 0 ? kExitFailure : kExitOk;
        }

        if (*evalc) return cmd_eval(eval_args, config, out, err);

        if (*promptc) {
            Url::parse_http(render_url);
            auto tpl = config.template_path.empty() ? prompt::PromptTemplate::bundled()
                                                    : prompt::PromptTemplate::from_file(config.template_path);
            for (const auto& f : config.extra_features) tpl.features.features.push_back(f);
            tpl.validate();
            std::vector<ToolSpec> specs;
            for (const auto& spec : tools::builtin_specs()) {
                if (config.tools.empty() ||
                    std::find(config.tools.begin(), config.tools.end(), spec.name) != config.tools.end()) {
                    specs.push_back(spec);
                }
            }
            out << prompt::render_agent_prompt(tpl, render_url, specs, config.max_actions);
            return kExitOk;
        }

        if (*datasetc) {
            std::vector<dataset::DatasetEntry> entries;
            if (*ingest) {
                entries = read_all(inputs);
                dataset::mark_conflicts(entries);
            } else {
                entries = dataset::read_entries(in_file);
                if (*filter) {
                    dataset::filter_toplist(entries, dataset::TopList::from_file(toplist_file), cutoff);
                } else if (*check) {
                    Runtime runtime(config, false);
                    dataset::AccessibilityOptions options;
                    options.parallelism = static_cast<std::size_t>(config.parallelism);
                    options.per_host_per_second = config.mode == tools::Mode::replay ? 0.0 : config.rate_per_second;
                    dataset::check_accessibility(entries, runtime.registry(), options);
                } else if (*merge) {
                    dataset::merge_annotations(entries, dataset::parse_annotations(read_file(annotations_file)));
                } else if (*sample) {
                    entries = dataset::balanced_sample(entries, per_cell, seed);
                }
            }
            dataset::write_entries(require_output(config), entries);
            print_summary(err, dataset::summarize(entries));
            return kExitOk;
        }

        if (*fixturesc) {
            if (config.fixtures.empty()) throw ConfigError("fixtures commands need --fixtures");
            const tools::FixtureStore store(config.fixtures);
            if (*flist) {
                for (const auto& r : store.list()) {
                    out << r.tool << "\t" << r.canonical_input << "\t"
                        << (r.is_error ? "error:" + r.error_kind
                                       : r.page ? "status:" + std::to_string(r.page->status) : std::string("ok"))
                        << "\n";
                }
                return kExitOk;
            }
            const auto canonical = tools::canonical_input(ftool, finput, PublicSuffixList::bundled());
            if (*fshow) {
                const auto path = store.path_for(ftool, canonical);
                if (!fs::exists(path)) throw FixtureMiss("no fixture for " + ftool + " " + canonical);
                out << read_file(path);
                return kExitOk;
            }
            if (!store.remove(ftool, canonical)) throw FixtureMiss("no fixture for " + ftool + " " + canonical);
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidUrl& e) {
        err << "invalid URL: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << e.kind() << ": " << e.what() << "\n";
        return e.kind() == "ParseError" || e.kind() == "InvalidTopList" || e.kind() == "TemplateError" ? kExitUsage
                                                                                                         : kExitFailure;
    } catch (const json::exception& e) {
        err << "malformed JSON: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "file error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace scamscope::cli
