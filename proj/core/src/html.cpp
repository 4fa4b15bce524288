#include "scamscope/html.hpp"

#include "scamscope/text.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

namespace scamscope::html {

namespace {

const std::unordered_set<std::string_view> kVoid = {"area", "base", "br", "col", "embed", "hr", "img",
                                                     "input", "link", "meta", "param", "source", "track", "wbr"};

// elements whose content is not markup
const std::unordered_set<std::string_view> kRawText = {"script", "style", "xmp", "iframe", "noembed", "noframes",
                                                       "noscript"};
const std::unordered_set<std::string_view> kEscapableRawText = {"textarea", "title"};

// start tags that close an open <p>
const std::unordered_set<std::string_view> kClosesParagraph = {
    "address", "article", "aside", "blockquote", "center", "details", "dialog", "dir", "div", "dl",
    "fieldset", "figcaption", "figure", "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "header",
    "hgroup", "hr", "li", "dd", "dt", "main", "menu", "nav", "ol", "p", "pre", "section", "summary",
    "table", "ul"};

// elements that bound the search for an implicitly closed element
const std::unordered_set<std::string_view> kScopeBoundary = {"applet", "caption", "html", "table", "td",
                                                             "th", "marquee", "object", "template", "button"};

const std::unordered_map<std::string_view, std::string_view> kNamedEntities = {
    {"amp", "&"},        {"lt", "<"},          {"gt", ">"},           {"quot", "\""},       {"apos", "'"},
    {"nbsp", " "},       {"copy", "©"},   {"reg", "®"},     {"trade", "™"},  {"hellip", "…"},
    {"mdash", "—"}, {"ndash", "–"},  {"lsquo", "‘"},   {"rsquo", "’"},  {"ldquo", "“"},
    {"rdquo", "”"}, {"euro", "€"},   {"pound", "£"},   {"yen", "¥"},    {"cent", "¢"},
    {"times", "×"}, {"divide", "÷"}, {"laquo", "«"},   {"raquo", "»"},  {"middot", "·"},
    {"bull", "•"},  {"deg", "°"},    {"plusmn", "±"},  {"para", "¶"},   {"sect", "§"},
    {"iexcl", "¡"}, {"iquest", "¿"}, {"auml", "ä"},    {"ouml", "ö"},   {"uuml", "ü"},
    {"Auml", "Ä"},  {"Ouml", "Ö"},   {"Uuml", "Ü"},    {"szlig", "ß"},  {"eacute", "é"},
    {"egrave", "è"}, {"agrave", "à"}, {"aacute", "á"}, {"ccedil", "ç"}, {"ntilde", "ñ"},
    {"oacute", "ó"}, {"uacute", "ú"}, {"iacute", "í"}, {"shy", ""},          {"zwj", ""},
    {"zwnj", ""},        {"thinsp", " "},      {"ensp", " "},         {"emsp", " "},        {"larr", "←"},
    {"rarr", "→"},  {"check", "✓"},  {"star", "☆"},
};

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

class TreeBuilder {
public:
    TreeBuilder() : root_(std::make_unique<Node>()) {
        root_->kind = Node::Kind::document;
        stack_.push_back(root_.get());
    }

    void text(std::string value) {
        if (value.empty()) return;
        Node* parent = stack_.back();
        if (!parent->children.empty() && parent->children.back()->kind == Node::Kind::text) {
            parent->children.back()->text += value;
            return;
        }
        auto node = std::make_unique<Node>();
        node->kind = Node::Kind::text;
        node->text = std::move(value);
        node->parent = parent;
        parent->children.push_back(std::move(node));
    }

    Node* open(std::string tag, std::vector<std::pair<std::string, std::string>> attrs) {
        close_implied(tag);
        auto node = std::make_unique<Node>();
        node->kind = Node::Kind::element;
        node->tag = std::move(tag);
        node->attributes = std::move(attrs);
        Node* parent = stack_.back();
        node->parent = parent;
        Node* raw = node.get();
        parent->children.push_back(std::move(node));
        if (!kVoid.count(raw->tag)) stack_.push_back(raw);
        return raw;
    }

    void close(std::string_view tag) {
        for (std::size_t i = stack_.size(); i-- > 1;) {
            if (stack_[i]->tag == tag) {
                stack_.resize(i);
                return;
            }
            // an end tag never reaches past a table or template boundary
            if (kScopeBoundary.count(stack_[i]->tag) && tag != stack_[i]->tag) return;
        }
    }

    Document finish() { return Document{std::move(root_)}; }

private:
    bool in_scope(std::string_view tag, const std::unordered_set<std::string_view>& boundary) const {
        for (std::size_t i = stack_.size(); i-- > 1;) {
            if (stack_[i]->tag == tag) return true;
            if (boundary.count(stack_[i]->tag)) return false;
        }
        return false;
    }

    void close_implied(std::string_view tag) {
        if (kClosesParagraph.count(tag) && in_scope("p", kScopeBoundary)) close("p");
        if (tag == "li") {
            static const std::unordered_set<std::string_view> list_boundary = {"ul", "ol", "table", "html"};
            if (in_scope("li", list_boundary)) close("li");
        }
        if (tag == "dt" || tag == "dd") {
            static const std::unordered_set<std::string_view> dl_boundary = {"dl", "table", "html"};
            if (in_scope("dd", dl_boundary)) close("dd");
            if (in_scope("dt", dl_boundary)) close("dt");
        }
        if (tag == "option" && !stack_.empty() && stack_.back()->tag == "option") close("option");
        if (tag == "tr" || tag == "td" || tag == "th") {
            static const std::unordered_set<std::string_view> cell_boundary = {"tr", "table", "html"};
            if (in_scope("td", cell_boundary)) close("td");
            if (in_scope("th", cell_boundary)) close("th");
        }
        if (tag == "tr") {
            static const std::unordered_set<std::string_view> row_boundary = {"table", "html"};
            if (in_scope("tr", row_boundary)) close("tr");
        }
    }

    std::unique_ptr<Node> root_;
    std::vector<Node*> stack_;
};

class Tokenizer {
public:
    explicit Tokenizer(std::string_view src) : src_(src) {}

    Document run() {
        std::string pending_text;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c != '<') {
                pending_text.push_back(c);
                ++pos_;
                continue;
            }
            if (starts_with("<!--")) {
                flush(pending_text);
                skip_comment();
            } else if (starts_with("<!") || starts_with("<?")) {
                flush(pending_text);
                skip_past('>');
            } else if (starts_with("</") && pos_ + 2 < src_.size() &&
                       std::isalpha(static_cast<unsigned char>(src_[pos_ + 2]))) {
                flush(pending_text);
                end_tag();
            } else if (pos_ + 1 < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_ + 1]))) {
                flush(pending_text);
                start_tag();
            } else {
                pending_text.push_back(c);
                ++pos_;
            }
        }
        flush(pending_text);
        return builder_.finish();
    }

private:
    bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

    void flush(std::string& pending) {
        if (!pending.empty()) builder_.text(decode_entities(pending));
        pending.clear();
    }

    void skip_comment() {
        const auto end = src_.find("-->", pos_ + 4);
        pos_ = end == std::string_view::npos ? src_.size() : end + 3;
    }

    void skip_past(char c) {
        const auto end = src_.find(c, pos_);
        pos_ = end == std::string_view::npos ? src_.size() : end + 1;
    }

    std::string read_name() {
        std::string name;
        while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '>' && src_[pos_] != '/') {
            name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_]))));
            ++pos_;
        }
        return name;
    }

    void skip_space() {
        while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
    }

    void end_tag() {
        pos_ += 2;
        const auto name = read_name();
        skip_past('>');
        builder_.close(name);
    }

    void start_tag() {
        ++pos_;
        auto name = read_name();
        std::vector<std::pair<std::string, std::string>> attrs;
        while (pos_ < src_.size()) {
            skip_space();
            if (pos_ >= src_.size()) break;
            if (src_[pos_] == '>') {
                ++pos_;
                break;
            }
            if (src_[pos_] == '/') {
                ++pos_;
                continue;
            }
            std::string attr_name;
            while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '>' && src_[pos_] != '=' &&
                   !(src_[pos_] == '/' && attr_name.size() > 0)) {
                attr_name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_]))));
                ++pos_;
            }
            skip_space();
            std::string value;
            if (pos_ < src_.size() && src_[pos_] == '=') {
                ++pos_;
                skip_space();
                if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'')) {
                    const char quote = src_[pos_++];
                    const auto end = src_.find(quote, pos_);
                    const auto stop = end == std::string_view::npos ? src_.size() : end;
                    value = decode_entities(src_.substr(pos_, stop - pos_));
                    pos_ = end == std::string_view::npos ? src_.size() : end + 1;
                } else {
                    const auto start = pos_;
                    while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '>') ++pos_;
                    value = decode_entities(src_.substr(start, pos_ - start));
                }
            }
            if (!attr_name.empty()) {
                bool seen = false;
                for (const auto& a : attrs) seen = seen || a.first == attr_name;
                if (!seen) attrs.emplace_back(std::move(attr_name), std::move(value));
            }
        }
        builder_.open(name, std::move(attrs));

        const bool raw = kRawText.count(name) > 0;
        const bool escapable = kEscapableRawText.count(name) > 0;
        if (raw || escapable) {
            const std::string closing = "</" + name;
            auto end = text::ifind(src_, closing, pos_);
            if (end == std::string_view::npos) end = src_.size();
            const auto body = src_.substr(pos_, end - pos_);
            builder_.text(escapable ? decode_entities(body) : std::string(body));
            pos_ = end;
            if (pos_ < src_.size()) {
                skip_past('>');
            }
            builder_.close(name);
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    TreeBuilder builder_;
};

}  // namespace

std::optional<std::string> Node::attr(std::string_view name) const {
    for (const auto& [k, v] : attributes) {
        if (k == name) return v;
    }
    return std::nullopt;
}

bool is_void_element(std::string_view tag) { return kVoid.count(tag) > 0; }

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        if (i + 1 < s.size() && s[i + 1] == '#') {
            std::size_t j = i + 2;
            const bool hex = j < s.size() && (s[j] == 'x' || s[j] == 'X');
            if (hex) ++j;
            std::uint32_t cp = 0;
            const std::size_t digits_start = j;
            while (j < s.size() && (hex ? std::isxdigit(static_cast<unsigned char>(s[j]))
                                        : std::isdigit(static_cast<unsigned char>(s[j])))) {
                const char d = static_cast<char>(std::tolower(static_cast<unsigned char>(s[j])));
                cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d <= '9' ? d - '0' : d - 'a' + 10);
                if (cp > 0x10FFFF) cp = 0x110000;
                ++j;
            }
            if (j == digits_start) {
                out.push_back(s[i++]);
                continue;
            }
            if (j < s.size() && s[j] == ';') ++j;
            append_utf8(out, cp);
            i = j;
            continue;
        }
        std::size_t j = i + 1;
        while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j])) && j - i <= 10) ++j;
        if (j < s.size() && s[j] == ';') {
            const auto it = kNamedEntities.find(s.substr(i + 1, j - i - 1));
            if (it != kNamedEntities.end()) {
                out.append(it->second);
                i = j + 1;
                continue;
            }
        }
        out.push_back(s[i++]);
    }
    return out;
}

Document parse(std::string_view markup) { return Tokenizer(markup).run(); }

}  // namespace scamscope::html
