#include "scamscope/public_suffix.hpp"

#include "scamscope/data_files.hpp"
#include "scamscope/text.hpp"
#include "scamscope/url.hpp"

#include <cctype>
#include <vector>

namespace scamscope {

namespace {

bool is_ip_literal(std::string_view host) {
    if (!host.empty() && host.front() == '[') return true;
    if (host.find(':') != std::string_view::npos) return true;
    for (char c : host) {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.') return false;
    }
    return !host.empty();
}

}  // namespace

PublicSuffixList PublicSuffixList::from_string(std::string_view dat) {
    PublicSuffixList list;
    for (const auto& raw : text::split_lines(dat)) {
        // a rule is the first whitespace-delimited token of a line
        auto line = text::trim(raw);
        if (line.empty() || line.rfind("//", 0) == 0) continue;
        if (const auto ws = line.find_first_of(" \t"); ws != std::string::npos) line.erase(ws);
        line = text::to_lower(line);
        if (line.rfind("!", 0) == 0) {
            list.exceptions_.insert(line.substr(1));
        } else if (line.rfind("*.", 0) == 0) {
            list.wildcards_.insert(line.substr(2));
        } else {
            list.rules_.insert(line);
        }
    }
    return list;
}

PublicSuffixList PublicSuffixList::from_file(const std::filesystem::path& path) {
    return from_string(read_file(path));
}

const PublicSuffixList& PublicSuffixList::bundled() {
    static const PublicSuffixList list = from_file(data_file("public_suffix_list.dat"));
    return list;
}

std::string PublicSuffixList::public_suffix(std::string_view host_in) const {
    const auto host = canonical_host(host_in);
    const auto labels = text::split(host, '.');
    const std::size_t n = labels.size();

    // candidate suffix made of the last k labels
    auto suffix_of = [&](std::size_t k) {
        std::vector<std::string> tail(labels.end() - static_cast<std::ptrdiff_t>(k), labels.end());
        return text::join(tail, ".");
    };

    std::size_t best = 1;  // implicit "*" rule
    for (std::size_t k = 1; k <= n; ++k) {
        const auto candidate = suffix_of(k);
        if (exceptions_.count(candidate)) {
            // an exception rule wins outright; its suffix is one label shorter
            return suffix_of(k - 1);
        }
        if (rules_.count(candidate)) best = std::max(best, k);
        if (k < n && wildcards_.count(candidate)) best = std::max(best, k + 1);
    }
    return suffix_of(std::min(best, n));
}

std::string PublicSuffixList::registrable_domain(std::string_view host_in) const {
    const auto host = canonical_host(host_in);
    if (host.empty() || is_ip_literal(host)) return host;
    const auto suffix = public_suffix(host);
    if (suffix.size() >= host.size()) return host;
    const auto head = std::string_view(host).substr(0, host.size() - suffix.size() - 1);
    const auto dot = head.rfind('.');
    return std::string(dot == std::string_view::npos ? head : head.substr(dot + 1)) + "." + suffix;
}

}  // namespace scamscope
