#include "scamscope/extract.hpp"

#include "scamscope/errors.hpp"
#include "scamscope/text.hpp"
#include "scamscope/url.hpp"

#include <set>
#include <unordered_map>
#include <unordered_set>

namespace scamscope::extract {

namespace {

using html::Node;

const std::unordered_set<std::string_view> kInline = {
    "a",    "abbr", "acronym", "b",     "bdi",    "bdo",  "big",  "br",    "button", "cite", "code",
    "data", "del",  "dfn",     "em",    "font",   "i",    "img",  "input", "ins",    "kbd",  "label",
    "mark", "meter", "output", "picture", "progress", "q", "rp", "rt", "ruby", "s", "samp", "select",
    "option", "small", "span", "strike", "strong", "sub", "sup", "time", "tt", "u", "var", "wbr", "textarea",
    "svg", "math", "canvas", "video", "audio", "nobr"};

const std::unordered_set<std::string_view> kHiddenTags = {"head",     "script", "style", "noscript", "template",
                                                          "title",    "meta",   "link",  "iframe",   "object",
                                                          "noembed",  "noframes", "xmp", "base"};

bool style_hides(std::string_view style) {
    std::string compact;
    for (char c : text::to_lower(style)) {
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') compact.push_back(c);
    }
    return compact.find("display:none") != std::string::npos ||
           compact.find("visibility:hidden") != std::string::npos;
}

bool is_hidden(const Node& n) {
    if (n.kind != Node::Kind::element) return false;
    if (kHiddenTags.count(n.tag)) return true;
    if (n.attr("hidden")) return true;
    if (n.is_element("input")) return true;
    if (const auto style = n.attr("style"); style && style_hides(*style)) return true;
    return false;
}

// true when some visible descendant is a block-level element
bool has_block_descendant(const Node& n, std::unordered_map<const Node*, bool>& memo) {
    if (const auto it = memo.find(&n); it != memo.end()) return it->second;
    bool found = false;
    for (const auto& child : n.children) {
        if (child->kind != Node::Kind::element || is_hidden(*child)) continue;
        if (is_block_element(child->tag) || has_block_descendant(*child, memo)) {
            found = true;
            break;
        }
    }
    memo.emplace(&n, found);
    return found;
}

void inner_text(const Node& n, std::string& out) {
    for (const auto& child : n.children) {
        if (child->kind == Node::Kind::text) {
            out += child->text;
        } else if (!is_hidden(*child)) {
            if (child->is_element("br")) {
                out += ' ';
            } else {
                inner_text(*child, out);
            }
        }
    }
}

class BlockCollector {
public:
    explicit BlockCollector(std::size_t group) : group_(group == 0 ? 1 : group) {}

    void walk(const Node& parent) {
        std::vector<std::string> run;
        for (const auto& child : parent.children) {
            if (child->kind == Node::Kind::text) {
                auto t = text::collapse_whitespace(child->text);
                if (!t.empty()) run.push_back(std::move(t));
                continue;
            }
            if (is_hidden(*child)) continue;
            if (!has_block_descendant(*child, memo_)) {
                std::string raw;
                inner_text(*child, raw);
                auto t = text::collapse_whitespace(raw);
                if (!t.empty()) run.push_back(std::move(t));
                continue;
            }
            flush(run);
            walk(*child);
        }
        flush(run);
    }

    std::vector<std::string> take() { return std::move(blocks_); }

private:
    void flush(std::vector<std::string>& run) {
        for (std::size_t i = 0; i < run.size(); i += group_) {
            std::vector<std::string> chunk(run.begin() + static_cast<std::ptrdiff_t>(i),
                                           run.begin() + static_cast<std::ptrdiff_t>(std::min(run.size(), i + group_)));
            blocks_.push_back(text::join(chunk, " "));
        }
        run.clear();
    }

    std::size_t group_;
    std::vector<std::string> blocks_;
    std::unordered_map<const Node*, bool> memo_;
};

void collect_anchors(const Node& n, std::vector<const Node*>& out) {
    for (const auto& child : n.children) {
        if (child->kind != Node::Kind::element) continue;
        if (child->is_element("a") && child->attr("href")) out.push_back(child.get());
        collect_anchors(*child, out);
    }
}

const Node* find_base(const Node& n) {
    for (const auto& child : n.children) {
        if (child->kind != Node::Kind::element) continue;
        if (child->is_element("base") && child->attr("href")) return child.get();
        if (const auto* found = find_base(*child)) return found;
    }
    return nullptr;
}

std::string direct_text(const Node& n) {
    std::string out;
    for (const auto& child : n.children) {
        if (child->kind == Node::Kind::text) {
            out += child->text;
        } else if (child->is_element("br")) {
            out += ' ';
        }
    }
    return out;
}

}  // namespace

bool is_block_element(std::string_view tag) { return !kInline.count(tag); }

std::vector<std::string> text_blocks(const html::Document& doc, std::size_t group) {
    BlockCollector collector(group);
    if (doc.root) collector.walk(*doc.root);
    return collector.take();
}

std::string visible_text(const html::Document& doc, std::size_t group) {
    const auto blocks = text_blocks(doc, group);
    if (blocks.empty()) throw EmptyDocument("page has no visible text");
    return text::join(blocks, "\n");
}

std::vector<Hyperlink> hyperlinks(const html::Document& doc, std::string_view page_url) {
    std::vector<Hyperlink> links;
    if (!doc.root) return links;

    std::string base(page_url);
    if (const auto* base_el = find_base(*doc.root)) base = resolve(page_url, *base_el->attr("href"));

    std::vector<const Node*> anchors;
    collect_anchors(*doc.root, anchors);
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto* a : anchors) {
        // own level, then one level below
        std::string label;
        for (const auto& child : a->children) {
            if (child->kind == Node::Kind::text) {
                label += child->text;
            } else if (child->is_element("br")) {
                label += ' ';
            } else {
                label += is_block_element(child->tag) ? " " + direct_text(*child) + " " : direct_text(*child);
            }
        }
        Hyperlink link{resolve(base, text::trim(*a->attr("href"))), text::collapse_whitespace(label)};
        if (seen.emplace(link.href, link.text).second) links.push_back(std::move(link));
    }
    return links;
}

std::string format_hyperlinks(const std::vector<Hyperlink>& links) {
    std::string out;
    for (const auto& link : links) out += "(" + link.href + ", " + link.text + ")\n";
    if (!out.empty()) out.pop_back();
    return out;
}

}  // namespace scamscope::extract
