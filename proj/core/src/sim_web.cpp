#include "scamscope/sim_web.hpp"

#include "scamscope/data_files.hpp"
#include "scamscope/errors.hpp"
#include "scamscope/text.hpp"
#include "scamscope/url.hpp"

#include <algorithm>

namespace scamscope::tools {

using json = nlohmann::json;

namespace {

std::string page_key(const std::string& url) {
    return canonical_url(Url::parse_http(url).str());
}

std::string query_key(const std::string& query) { return text::to_lower(text::trim(query)); }

SocialPost post_from(const json& j) {
    SocialPost p;
    p.timestamp = j.value("timestamp", "");
    p.title = j.value("title", "");
    p.text = j.value("text", "");
    return p;
}

class SimFetcher final : public PageFetcher {
public:
    explicit SimFetcher(std::shared_ptr<SimWeb> web) : web_(std::move(web)) {}
    FetchResult fetch(const std::string& url, const std::string&) override { return web_->fetch(url); }

private:
    std::shared_ptr<SimWeb> web_;
};

class SimSearch final : public SearchProvider {
public:
    explicit SimSearch(std::shared_ptr<SimWeb> web) : web_(std::move(web)) {}
    std::vector<SearchHit> search(const std::string& q) override { return web_->web_search(q); }

private:
    std::shared_ptr<SimWeb> web_;
};

class SimSocial final : public SocialProvider {
public:
    explicit SimSocial(std::shared_ptr<SimWeb> web) : web_(std::move(web)) {}
    SocialResults search(Platform p, const std::string& q) override { return web_->social_search(p, q); }

private:
    std::shared_ptr<SimWeb> web_;
};

class SimWhois final : public WhoisProvider {
public:
    explicit SimWhois(std::shared_ptr<SimWeb> web) : web_(std::move(web)) {}
    std::string lookup(const std::string& d) override { return web_->whois(d); }

private:
    std::shared_ptr<SimWeb> web_;
};

class SimDns final : public DnsProvider {
public:
    explicit SimDns(std::shared_ptr<SimWeb> web) : web_(std::move(web)) {}
    DnsAnswer query(const std::string& d, DnsType t) override { return web_->dns(d, t); }

private:
    std::shared_ptr<SimWeb> web_;
};

class SimCerts final : public CertProvider {
public:
    explicit SimCerts(std::shared_ptr<SimWeb> web) : web_(std::move(web)) {}
    std::vector<CertEntry> lookup(const std::string& d) override { return web_->certs(d); }

private:
    std::shared_ptr<SimWeb> web_;
};

}  // namespace

std::shared_ptr<SimWeb> SimWeb::from_json(const json& world, const std::filesystem::path& base_dir) {
    auto web = std::make_shared<SimWeb>();
    web->merge(world, base_dir);
    return web;
}

std::shared_ptr<SimWeb> SimWeb::from_directory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw ConfigError("simulated web directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    auto web = std::make_shared<SimWeb>();
    for (const auto& file : files) {
        try {
            web->merge(json::parse(read_file(file)), dir);
        } catch (const json::exception& e) {
            throw ConfigError("bad simulated-web file " + file.string() + ": " + e.what());
        }
    }
    return web;
}

void SimWeb::merge(const json& world, const std::filesystem::path& base_dir) {
    if (world.contains("pages")) {
        for (const auto& [url, spec] : world["pages"].items()) {
            Page page;
            page.status = spec.value("status", 200);
            page.redirect = spec.value("redirect", "");
            page.error = spec.value("error", "");
            if (spec.contains("body_file")) {
                page.body = read_file(base_dir / spec["body_file"].get<std::string>());
            } else {
                page.body = spec.value("body", "");
            }
            pages_[page_key(url)] = std::move(page);
        }
    }
    if (world.contains("search")) {
        for (const auto& [query, hits] : world["search"].items()) {
            auto& list = search_[query_key(query)];
            for (const auto& h : hits) list.push_back({h.value("url", ""), h.value("title", ""), h.value("summary", "")});
        }
    }
    if (world.contains("x")) {
        for (const auto& [query, posts] : world["x"].items()) {
            auto& results = x_[query_key(query)];
            for (const auto& p : posts) results.posts.push_back(post_from(p));
        }
    }
    if (world.contains("reddit")) {
        for (const auto& [query, spec] : world["reddit"].items()) {
            auto& results = reddit_[query_key(query)];
            for (const auto& p : spec.value("posts", json::array())) results.posts.push_back(post_from(p));
            for (const auto& c : spec.value("comments", json::array())) results.comments.push_back(post_from(c));
        }
    }
    if (world.contains("whois")) {
        for (const auto& [domain, body] : world["whois"].items()) {
            whois_[canonical_host(domain)] = body.is_string() ? body.get<std::string>()
                                                              : read_file(base_dir / body.at("file").get<std::string>());
        }
    }
    if (world.contains("dns")) {
        for (const auto& [domain, spec] : world["dns"].items()) dns_[canonical_host(domain)] = spec;
    }
    if (world.contains("certs")) {
        for (const auto& [domain, entries] : world["certs"].items()) {
            auto& list = certs_[canonical_host(domain)];
            for (const auto& e : entries) {
                CertEntry c;
                c.id = e.value("id", std::int64_t{0});
                c.issuer = e.value("issuer", "");
                c.not_before = e.value("not_before", "");
                c.not_after = e.value("not_after", "");
                c.names = e.value("names", std::vector<std::string>{});
                list.push_back(std::move(c));
            }
        }
    }
}

FetchResult SimWeb::fetch(const std::string& url) {
    ++requests_;
    std::string current = url;
    for (int hop = 0; hop <= 10; ++hop) {
        const auto it = pages_.find(page_key(current));
        if (it == pages_.end()) throw FetchError("dns", "could not resolve host for " + current);
        const auto& page = it->second;
        if (!page.error.empty()) throw FetchError(page.error, "fetching " + current + " failed: " + page.error);
        if (!page.redirect.empty()) {
            current = resolve(current, page.redirect);
            continue;
        }
        return FetchResult{page.status, page_key(current), page.body, "text/html"};
    }
    throw FetchError("redirects", "too many redirects from " + url);
}

std::vector<SearchHit> SimWeb::web_search(const std::string& query) {
    ++requests_;
    const auto it = search_.find(query_key(query));
    return it == search_.end() ? std::vector<SearchHit>{} : it->second;
}

SocialResults SimWeb::social_search(Platform platform, const std::string& query) {
    ++requests_;
    const auto& table = platform == Platform::x_twitter ? x_ : reddit_;
    const auto it = table.find(query_key(query));
    return it == table.end() ? SocialResults{} : it->second;
}

std::string SimWeb::whois(const std::string& domain) {
    ++requests_;
    const auto it = whois_.find(canonical_host(domain));
    if (it == whois_.end()) throw LookupError("no WHOIS server answered for " + domain);
    return it->second;
}

DnsAnswer SimWeb::dns(const std::string& domain, DnsType type) {
    ++requests_;
    DnsAnswer answer;
    const auto it = dns_.find(canonical_host(domain));
    if (it == dns_.end() || (it->second.is_string() && it->second.get<std::string>() == "NXDOMAIN")) {
        answer.status = DnsAnswer::Status::nxdomain;
        return answer;
    }
    const auto key = to_string(type);
    if (it->second.contains(key)) answer.records = it->second[key].get<std::vector<std::string>>();
    answer.status = answer.records.empty() ? DnsAnswer::Status::nodata : DnsAnswer::Status::ok;
    return answer;
}

std::vector<CertEntry> SimWeb::certs(const std::string& domain) {
    ++requests_;
    const auto it = certs_.find(canonical_host(domain));
    return it == certs_.end() ? std::vector<CertEntry>{} : it->second;
}

Providers SimWeb::providers() {
    auto self = shared_from_this();
    Providers p;
    p.fetcher = std::make_shared<SimFetcher>(self);
    p.search = std::make_shared<SimSearch>(self);
    p.social = std::make_shared<SimSocial>(self);
    p.whois = std::make_shared<SimWhois>(self);
    p.dns = std::make_shared<SimDns>(self);
    p.certs = std::make_shared<SimCerts>(self);
    return p;
}

}  // namespace scamscope::tools
