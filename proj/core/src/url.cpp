#include "scamscope/url.hpp"

#include "scamscope/errors.hpp"
#include "scamscope/text.hpp"

#include <cctype>

namespace scamscope {

namespace {

bool valid_scheme(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
    }
    return true;
}

std::string remove_dot_segments(std::string_view input) {
    std::string in(input);
    std::string out;
    while (!in.empty()) {
        if (in.rfind("../", 0) == 0) {
            in.erase(0, 3);
        } else if (in.rfind("./", 0) == 0) {
            in.erase(0, 2);
        } else if (in.rfind("/./", 0) == 0) {
            in.replace(0, 3, "/");
        } else if (in == "/.") {
            in = "/";
        } else if (in.rfind("/../", 0) == 0 || in == "/..") {
            in = in == "/.." ? std::string("/") : in.replace(0, 4, "/");
            const auto slash = out.rfind('/');
            out.erase(slash == std::string::npos ? 0 : slash);
        } else if (in == "." || in == "..") {
            in.clear();
        } else {
            const std::size_t start = in[0] == '/' ? 1 : 0;
            const std::size_t next = in.find('/', start);
            const std::size_t len = next == std::string::npos ? in.size() : next;
            out.append(in, 0, len);
            in.erase(0, len);
        }
    }
    return out;
}

std::string merge_paths(const Url& base, std::string_view ref_path) {
    if (base.authority && base.path.empty()) return "/" + std::string(ref_path);
    const auto slash = base.path.rfind('/');
    if (slash == std::string::npos) return std::string(ref_path);
    return base.path.substr(0, slash + 1) + std::string(ref_path);
}

}  // namespace

std::optional<Url> Url::parse_reference(std::string_view text) {
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        if (u <= 0x20 || u == 0x7F) return std::nullopt;
    }
    Url url;
    std::string_view rest = text;

    const auto colon = rest.find(':');
    const auto first_delim = rest.find_first_of("/?#");
    if (colon != std::string_view::npos && (first_delim == std::string_view::npos || colon < first_delim) &&
        valid_scheme(rest.substr(0, colon))) {
        url.scheme = text::to_lower(rest.substr(0, colon));
        rest.remove_prefix(colon + 1);
    }
    if (rest.rfind("//", 0) == 0) {
        rest.remove_prefix(2);
        const auto end = rest.find_first_of("/?#");
        url.authority = std::string(rest.substr(0, end));
        rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
    }
    const auto hash = rest.find('#');
    if (hash != std::string_view::npos) {
        url.fragment = std::string(rest.substr(hash + 1));
        rest = rest.substr(0, hash);
    }
    const auto qmark = rest.find('?');
    if (qmark != std::string_view::npos) {
        url.query = std::string(rest.substr(qmark + 1));
        rest = rest.substr(0, qmark);
    }
    url.path = std::string(rest);
    return url;
}

Url Url::parse_http(std::string_view text) {
    const auto trimmed = text::trim(text);
    auto url = parse_reference(trimmed);
    if (!url || (url->scheme != "http" && url->scheme != "https") || !url->authority) {
        throw InvalidUrl("not an absolute http(s) URL: '" + std::string(text) + "'");
    }
    const auto host = url->host();
    if (host.empty()) throw InvalidUrl("URL has no host: '" + std::string(text) + "'");
    for (char c : host) {
        const auto u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || c == '-' || c == '.' || c == '_' || c == ':' || c == '[' || c == ']' || u >= 0x80 ||
              c == '%')) {
            throw InvalidUrl("URL host contains invalid characters: '" + std::string(text) + "'");
        }
    }
    const auto at = url->authority->rfind('@');
    const auto hostport = url->authority->substr(at == std::string::npos ? 0 : at + 1);
    const auto colon = hostport.rfind(':');
    if (host.front() != '[' && colon != std::string::npos && colon + 1 < hostport.size() && !url->port()) {
        throw InvalidUrl("URL has an invalid port: '" + std::string(text) + "'");
    }
    if (url->path.empty()) url->path = "/";
    return *url;
}

std::string Url::host() const {
    if (!authority) return {};
    std::string_view hp = *authority;
    if (const auto at = hp.rfind('@'); at != std::string_view::npos) hp.remove_prefix(at + 1);
    if (!hp.empty() && hp.front() == '[') {
        const auto close = hp.find(']');
        return text::to_lower(hp.substr(0, close == std::string_view::npos ? hp.size() : close + 1));
    }
    if (const auto colon = hp.rfind(':'); colon != std::string_view::npos) hp = hp.substr(0, colon);
    return text::to_lower(hp);
}

std::optional<int> Url::port() const {
    if (!authority) return std::nullopt;
    std::string_view hp = *authority;
    if (const auto at = hp.rfind('@'); at != std::string_view::npos) hp.remove_prefix(at + 1);
    if (const auto close = hp.rfind(']'); close != std::string_view::npos) hp.remove_prefix(close + 1);
    const auto colon = hp.rfind(':');
    if (colon == std::string_view::npos || colon + 1 == hp.size()) return std::nullopt;
    int value = 0;
    for (char c : hp.substr(colon + 1)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        value = value * 10 + (c - '0');
        if (value > 65535) return std::nullopt;
    }
    return value;
}

std::string Url::str() const {
    std::string out;
    if (!scheme.empty()) out += scheme + ":";
    if (authority) out += "//" + *authority;
    out += path;
    if (query) out += "?" + *query;
    if (fragment) out += "#" + *fragment;
    return out;
}

Url resolve(const Url& base, const Url& ref) {
    Url target;
    if (!ref.scheme.empty()) {
        target = ref;
        target.path = remove_dot_segments(ref.path);
        return target;
    }
    target.scheme = base.scheme;
    if (ref.authority) {
        target.authority = ref.authority;
        target.path = remove_dot_segments(ref.path);
        target.query = ref.query;
    } else {
        target.authority = base.authority;
        if (ref.path.empty()) {
            target.path = base.path;
            target.query = ref.query ? ref.query : base.query;
        } else {
            target.path = ref.path.front() == '/' ? remove_dot_segments(ref.path)
                                                  : remove_dot_segments(merge_paths(base, ref.path));
            target.query = ref.query;
        }
    }
    target.fragment = ref.fragment;
    return target;
}

std::string resolve(std::string_view base, std::string_view reference) {
    const auto b = Url::parse_reference(base);
    const auto r = Url::parse_reference(text::trim(reference));
    if (!b || !r) return std::string(reference);
    auto out = resolve(*b, *r);
    if (out.authority && out.path.empty() && (out.scheme == "http" || out.scheme == "https")) out.path = "/";
    return out.str();
}

bool is_http_url(std::string_view text) {
    try {
        Url::parse_http(text);
        return true;
    } catch (const InvalidUrl&) {
        return false;
    }
}

bool is_valid_domain(std::string_view text) {
    std::string_view name = text;
    if (!name.empty() && name.back() == '.') name.remove_suffix(1);
    if (name.empty() || name.size() > 253) return false;
    const auto labels = text::split(name, '.');
    if (labels.size() < 2) return false;
    for (const auto& label : labels) {
        if (label.empty() || label.size() > 63) return false;
        if (label.front() == '-' || label.back() == '-') return false;
        for (char c : label) {
            const auto u = static_cast<unsigned char>(c);
            if (!(std::isalnum(u) || c == '-' || c == '_' || u >= 0x80)) return false;
        }
    }
    const auto& tld = labels.back();
    bool all_digits = true;
    for (char c : tld) all_digits = all_digits && std::isdigit(static_cast<unsigned char>(c));
    return !all_digits;
}

std::string canonical_host(std::string_view host) {
    auto out = text::to_lower(text::trim(host));
    if (!out.empty() && out.back() == '.') out.pop_back();
    return out;
}

std::string canonical_url(std::string_view url) {
    auto parsed = Url::parse_reference(text::trim(url));
    if (!parsed || !parsed->authority) return text::trim(url);
    std::string authority = *parsed->authority;
    const auto at = authority.rfind('@');
    const std::string userinfo = at == std::string::npos ? "" : authority.substr(0, at + 1);
    std::string hostport = at == std::string::npos ? authority : authority.substr(at + 1);
    std::string port;
    if (hostport.empty() || hostport.front() != '[') {
        if (const auto colon = hostport.rfind(':'); colon != std::string::npos) {
            port = hostport.substr(colon);
            hostport.erase(colon);
        }
    }
    parsed->authority = userinfo + canonical_host(hostport) + port;
    if (parsed->path.empty()) parsed->path = "/";
    return parsed->str();
}

std::string domain_from_input(std::string_view input) {
    const auto trimmed = text::trim(input);
    std::string host;
    if (trimmed.find("://") != std::string::npos) {
        try {
            host = Url::parse_http(trimmed).host();
        } catch (const InvalidUrl&) {
            throw InvalidToolInput("'" + trimmed + "' is not a domain name");
        }
    } else {
        host = trimmed;
        // tolerate "example.com/path"
        if (const auto slash = host.find('/'); slash != std::string::npos) host.erase(slash);
    }
    host = canonical_host(host);
    if (!is_valid_domain(host)) throw InvalidToolInput("'" + trimmed + "' is not a domain name");
    return host;
}

}  // namespace scamscope
