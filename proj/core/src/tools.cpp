#include "scamscope/tools.hpp"

#include "scamscope/errors.hpp"
#include "scamscope/extract.hpp"
#include "scamscope/html.hpp"
#include "scamscope/text.hpp"
#include "scamscope/url.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <regex>

namespace scamscope {

std::string_view to_string(ArgumentKind kind) {
    switch (kind) {
        case ArgumentKind::url: return "url";
        case ArgumentKind::domain: return "domain";
        case ArgumentKind::query: return "query";
    }
    return "query";
}

}  // namespace scamscope

namespace scamscope::tools {

const char* to_string(DnsType type) {
    switch (type) {
        case DnsType::A: return "A";
        case DnsType::AAAA: return "AAAA";
        case DnsType::NS: return "NS";
        case DnsType::SOA: return "SOA";
        case DnsType::TXT: return "TXT";
        case DnsType::MX: return "MX";
    }
    return "A";
}

namespace {

std::vector<ToolSpec> make_specs() {
    return {
        {std::string(kAccessUrl),
         "A tool that accesses a URL to obtain a status code. This tool requires a URL as an argument.",
         ArgumentKind::url},
        {std::string(kExtractText),
         "A tool that extracts text in the HTML. You must access a URL first before using this tool. "
         "This tool requires the URL as an argument.",
         ArgumentKind::url},
        {std::string(kExtractHyperlink),
         "A tool that extracts a-tag hyperlinks and texts in the HTML. You must access a URL first before using "
         "this tool. This tool requires the URL as an argument.",
         ArgumentKind::url},
        {std::string(kGetSearchResult),
         "A tool to retrieve search results from a search engine. This tool requires a search query as an "
         "argument. You cannot use a URL as-is as a search query. Note that only the top 10 results will be "
         "retrieved.",
         ArgumentKind::query},
        {std::string(kSearchX),
         "A tool to retrieve posts containing a keyword from X/Twitter. This tool requires a search query as an "
         "argument. You cannot use a URL as-is as a search query. Note that only the latest top 10 results will "
         "be retrieved.",
         ArgumentKind::query},
        {std::string(kSearchReddit),
         "A tool to retrieve posts containing a keyword from Reddit. This tool requires a search query as an "
         "argument. You cannot use a URL as-is as a search query. Note that only the top five related posts and "
         "the top five associated comments will be retrieved.",
         ArgumentKind::query},
        {std::string(kRetrieveWhois),
         "A tool to retrieve domain name information from WHOIS. This tool requires a domain name as an argument.",
         ArgumentKind::domain},
        {std::string(kRetrieveDns),
         "A tool to retrieve DNS records using the dig command. This tool requires a domain name as an argument.",
         ArgumentKind::domain},
        {std::string(kRetrieveCertificate),
         "A tool to retrieve certificate information from crt.sh. This tool requires a domain name as an "
         "argument. Note that only the latest top 5 results will be retrieved.",
         ArgumentKind::domain},
    };
}

std::string canonical_page_url(std::string_view input) {
    return canonical_url(Url::parse_http(text::trim(input)).str());
}

std::string canonical_query(std::string_view input) {
    auto q = text::collapse_whitespace(input);
    if (q.empty()) throw InvalidToolInput("the search query is empty");
    const bool has_space = q.find(' ') != std::string::npos;
    if (!has_space && (q.find("://") != std::string::npos || text::istarts_with(q, "www."))) {
        throw QueryIsBareUrl("'" + q + "' is a URL; use keywords as the search query");
    }
    return q;
}

std::string post_line(const SocialPost& p) {
    std::string line = "[" + p.timestamp + "] ";
    if (!p.title.empty()) line += redact_handles(p.title) + ": ";
    line += text::collapse_whitespace(redact_handles(p.text));
    return line;
}

FixtureRecord error_record(const Error& e) {
    FixtureRecord r;
    r.is_error = true;
    r.error_kind = e.kind();
    r.error_message = e.what();
    if (const auto* fe = dynamic_cast<const FetchError*>(&e)) r.error_reason = fe->reason();
    return r;
}

}  // namespace

const std::vector<ToolSpec>& builtin_specs() {
    static const std::vector<ToolSpec> specs = make_specs();
    return specs;
}

const ToolSpec* find_builtin(std::string_view name) {
    for (const auto& spec : builtin_specs()) {
        if (spec.name == name) return &spec;
    }
    return nullptr;
}

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::live: return "live";
        case Mode::replay: return "replay";
        case Mode::record: return "record";
    }
    return "replay";
}

Mode parse_mode(std::string_view text) {
    if (text == "live") return Mode::live;
    if (text == "replay") return Mode::replay;
    if (text == "record") return Mode::record;
    throw ConfigError("unknown mode '" + std::string(text) + "' (expected live, replay or record)");
}

std::string_view to_string(Source source) {
    switch (source) {
        case Source::live: return "live";
        case Source::cache: return "cache";
        case Source::fixture: return "fixture";
    }
    return "live";
}

void SessionPages::put(const std::string& requested_url, const StoredPage& page, Source source) {
    pages_[canonical_page_url(requested_url)] = Entry{page, source};
    if (!page.final_url.empty()) {
        try {
            pages_[canonical_page_url(page.final_url)] = Entry{page, source};
        } catch (const InvalidUrl&) {
        }
    }
}

const SessionPages::Entry* SessionPages::find(const std::string& url) const {
    const auto it = pages_.find(canonical_page_url(url));
    return it == pages_.end() ? nullptr : &it->second;
}

std::string redact_handles(std::string_view text) {
    static const std::regex at_handle(R"(@[A-Za-z0-9_]+)");
    static const std::regex reddit_user(R"(\bu/[A-Za-z0-9_-]+)");
    auto out = std::regex_replace(std::string(text), at_handle, "@user");
    return std::regex_replace(out, reddit_user, "u/user");
}

std::string format_access(const StoredPage& page) {
    return "status: " + std::to_string(page.status) + "\nfinal_url: " + page.final_url +
           "\nThe page content is now available to Extract Text and Extract Hyperlink.";
}

std::string format_search(const std::vector<SearchHit>& hits) {
    if (hits.empty()) return "No search results found for this query.";
    std::string out;
    const auto n = std::min(hits.size(), kMaxSearchResults);
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += "\n\n";
        out += std::to_string(i + 1) + ". " + hits[i].url;
        if (!hits[i].title.empty()) out += "\ntitle: " + text::collapse_whitespace(hits[i].title);
        out += "\nsummary: " + text::collapse_whitespace(hits[i].summary);
    }
    return out;
}

std::string format_x_posts(std::vector<SocialPost> posts) {
    if (posts.empty()) return "No posts found on X/Twitter for this query.";
    std::stable_sort(posts.begin(), posts.end(),
                     [](const SocialPost& a, const SocialPost& b) { return a.timestamp > b.timestamp; });
    if (posts.size() > kMaxXPosts) posts.resize(kMaxXPosts);
    std::vector<std::string> lines;
    for (const auto& p : posts) lines.push_back(post_line(p));
    return text::join(lines, "\n");
}

std::string format_reddit(const SocialResults& results) {
    if (results.posts.empty() && results.comments.empty()) return "No posts found on Reddit for this query.";
    std::string out = "Posts:";
    if (results.posts.empty()) out += "\n(none)";
    for (std::size_t i = 0; i < std::min(results.posts.size(), kMaxRedditPosts); ++i) {
        out += "\n" + post_line(results.posts[i]);
    }
    out += "\nComments:";
    if (results.comments.empty()) out += "\n(none)";
    for (std::size_t i = 0; i < std::min(results.comments.size(), kMaxRedditComments); ++i) {
        out += "\n" + post_line(results.comments[i]);
    }
    return out;
}

std::string format_dns(const std::string& domain, const std::vector<std::pair<DnsType, DnsAnswer>>& answers) {
    std::vector<std::string> sections;
    for (const auto type : kDnsTypes) {
        std::string section = ";; " + std::string(to_string(type)) + " records for " + domain + "\n";
        const auto it = std::find_if(answers.begin(), answers.end(), [&](const auto& a) { return a.first == type; });
        if (it == answers.end()) {
            section += "error: not queried";
        } else {
            switch (it->second.status) {
                case DnsAnswer::Status::ok: section += text::join(it->second.records, "\n"); break;
                case DnsAnswer::Status::nodata: section += "no records"; break;
                case DnsAnswer::Status::nxdomain: section += "NXDOMAIN"; break;
                case DnsAnswer::Status::error: section += "error: " + it->second.error; break;
            }
        }
        sections.push_back(std::move(section));
    }
    return text::join(sections, "\n\n");
}

std::vector<CertEntry> newest_certs(std::vector<CertEntry> entries, std::size_t limit) {
    std::sort(entries.begin(), entries.end(), [](const CertEntry& a, const CertEntry& b) {
        if (a.not_before != b.not_before) return a.not_before > b.not_before;
        return a.id > b.id;
    });
    if (entries.size() > limit) entries.resize(limit);
    return entries;
}

std::string format_certs(std::vector<CertEntry> entries) {
    if (entries.empty()) return "no certificates found";
    entries = newest_certs(std::move(entries));
    std::vector<std::string> blocks;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& c = entries[i];
        blocks.push_back("Certificate " + std::to_string(i + 1) + " (crt.sh id " + std::to_string(c.id) + ")\n" +
                         "issuer: " + c.issuer + "\nnot_before: " + c.not_before + "\nnot_after: " + c.not_after +
                         "\nnames: " + text::join(c.names, ", "));
    }
    return text::join(blocks, "\n\n");
}

std::string canonical_input(std::string_view tool, std::string_view input, const PublicSuffixList& psl) {
    const auto* spec = find_builtin(tool);
    if (!spec) throw UnknownTool("unknown tool '" + std::string(tool) + "'");
    switch (spec->argument_kind) {
        case ArgumentKind::url: return canonical_page_url(input);
        case ArgumentKind::query: return canonical_query(input);
        case ArgumentKind::domain: {
            if (tool == kRetrieveWhois) {
                std::string domain;
                try {
                    domain = domain_from_input(input);
                } catch (const InvalidToolInput& e) {
                    throw LookupError(e.what());
                }
                return psl.registrable_domain(domain);
            }
            return domain_from_input(input);
        }
    }
    return std::string(input);
}

ToolRegistry::ToolRegistry(Providers providers, Options options)
    : providers_(std::move(providers)), options_(std::move(options)), psl_(PublicSuffixList::bundled()) {
    if (!options_.clock) options_.clock = system_clock();
    if (options_.mode != Mode::live && !options_.fixtures) {
        throw ConfigError(std::string(to_string(options_.mode)) + " mode needs a fixture directory");
    }
    if (options_.enabled.empty()) {
        specs_ = builtin_specs();
    } else {
        for (const auto& spec : builtin_specs()) {
            if (std::find(options_.enabled.begin(), options_.enabled.end(), spec.name) != options_.enabled.end()) {
                specs_.push_back(spec);
            }
        }
        for (const auto& name : options_.enabled) {
            if (!find_builtin(name)) throw ConfigError("unknown tool '" + name + "' in the enabled tool list");
        }
    }
    if (specs_.empty()) throw EmptyToolSet("no tools enabled");
}

bool ToolRegistry::has(std::string_view name) const {
    return std::any_of(specs_.begin(), specs_.end(), [&](const ToolSpec& s) { return s.name == name; });
}

Observation ToolRegistry::dispatch(SessionPages& pages, std::string_view tool_name, std::string_view raw_input) {
    if (!has(tool_name)) throw UnknownTool("unknown tool '" + std::string(tool_name) + "'");
    const std::string tool(tool_name);
    const auto input = text::trim(raw_input);
    if (tool == kExtractText || tool == kExtractHyperlink) return extraction(pages, tool, input);

    const auto canonical = canonical_input(tool, input, psl_);
    const auto key = tool + "\n" + canonical;

    std::shared_future<FixtureRecord> future;
    std::optional<std::promise<FixtureRecord>> promise;
    {
        std::lock_guard lock(mutex_);
        if (const auto it = cache_.find(key); it != cache_.end()) {
            future = it->second;
            ++cache_hits_;
        } else {
            promise.emplace();
            future = promise->get_future().share();
            cache_.emplace(key, future);
        }
    }
    Source source = options_.mode == Mode::replay ? Source::fixture : Source::cache;
    if (promise) {
        try {
            promise->set_value(compute(tool, input, canonical));
        } catch (...) {
            promise->set_exception(std::current_exception());
        }
        source = options_.mode == Mode::replay ? Source::fixture : Source::live;
    }
    const FixtureRecord& record = future.get();

    if (tool == kAccessUrl && record.page) pages.put(input, *record.page, source);
    if (record.is_error) throw_error(record.error_kind, record.error_message, record.error_reason);
    return Observation{tool, input, record.body, record.fetched_at, source};
}

Observation ToolRegistry::extraction(SessionPages& pages, const std::string& tool, const std::string& input) {
    const auto* entry = pages.find(input);
    if (!entry) {
        throw MustAccessFirst("You must access a URL first before using this tool. '" + input +
                              "' has not been accessed with Access URL.");
    }
    const auto doc = html::parse(entry->page.html);
    std::string body;
    if (tool == kExtractText) {
        body = extract::visible_text(doc);
    } else {
        body = extract::format_hyperlinks(extract::hyperlinks(doc, entry->page.final_url.empty() ? input
                                                                                                  : entry->page.final_url));
        if (body.empty()) body = "No hyperlinks found on this page.";
    }
    return Observation{tool, input, body, "", entry->source};
}

FixtureRecord ToolRegistry::compute(const std::string& tool, const std::string& input, const std::string& canonical) {
    if (options_.mode == Mode::replay) {
        auto record = options_.fixtures->load(tool, canonical);
        if (!record) throw FixtureMiss("no fixture for " + tool + " '" + canonical + "'");
        return *record;
    }
    ++live_calls_;
    auto record = call_provider(tool, input, canonical);
    record.tool = tool;
    record.input = input;
    record.canonical_input = canonical;
    record.fetched_at = options_.clock->now_iso();
    if (options_.mode == Mode::record) options_.fixtures->save(record);
    return record;
}

FixtureRecord ToolRegistry::call_provider(const std::string& tool, const std::string& input,
                                          const std::string& canonical) {
    auto need = [&](const auto& provider) {
        if (!provider) throw ProviderError("no provider configured for " + tool);
    };
    try {
        FixtureRecord r;
        if (tool == kAccessUrl) {
            need(providers_.fetcher);
            auto fetched = providers_.fetcher->fetch(Url::parse_http(input).str(), options_.user_agent);
            StoredPage page{fetched.status, fetched.final_url.empty() ? canonical : fetched.final_url,
                            std::move(fetched.body)};
            r.body = format_access(page);
            r.page = std::move(page);
        } else if (tool == kGetSearchResult) {
            need(providers_.search);
            r.body = format_search(providers_.search->search(canonical));
        } else if (tool == kSearchX) {
            need(providers_.social);
            r.body = format_x_posts(providers_.social->search(Platform::x_twitter, canonical).posts);
        } else if (tool == kSearchReddit) {
            need(providers_.social);
            r.body = format_reddit(providers_.social->search(Platform::reddit, canonical));
        } else if (tool == kRetrieveWhois) {
            need(providers_.whois);
            r.body = text::trim(providers_.whois->lookup(canonical));
            if (r.body.empty()) r.body = "The WHOIS server returned no data for " + canonical + ".";
        } else if (tool == kRetrieveDns) {
            need(providers_.dns);
            std::vector<std::pair<DnsType, DnsAnswer>> answers;
            std::size_t failures = 0;
            for (const auto type : kDnsTypes) {
                auto answer = providers_.dns->query(canonical, type);
                if (answer.status == DnsAnswer::Status::error) ++failures;
                answers.emplace_back(type, std::move(answer));
            }
            if (failures == answers.size()) {
                throw ResolverUnreachable("the resolver did not answer any query for " + canonical + ": " +
                                          answers.front().second.error);
            }
            r.body = format_dns(canonical, answers);
        } else if (tool == kRetrieveCertificate) {
            need(providers_.certs);
            r.body = format_certs(providers_.certs->lookup(canonical));
        } else {
            throw UnknownTool("unknown tool '" + tool + "'");
        }
        return r;
    } catch (const Error& e) {
        return error_record(e);
    } catch (const nlohmann::json::exception& e) {
        return error_record(ProviderError(tool + ": unexpected provider response: " + e.what()));
    }
}

}  // namespace scamscope::tools
