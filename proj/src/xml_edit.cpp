#include "netprofile/xml_edit.hpp"

#include <algorithm>
#include <charconv>

namespace netprofile::xml {

MalformedXml::MalformedXml(std::size_t offset, const std::string& what)
    : std::runtime_error("malformed XML at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

const Attribute* Element::attribute(std::string_view attr_name) const {
    for (const auto& a : attributes) {
        if (a.name == attr_name) return &a;
    }
    return nullptr;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_name_char(char c) {
    return !is_space(c) && c != '=' && c != '/' && c != '>' && c != '<' && c != '"' && c != '\'';
}

void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xc0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xe0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else {
        out += static_cast<char>(0xf0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    }
}

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    std::vector<Element> run(std::size_t& root) {
        std::vector<std::size_t> stack;
        std::optional<std::size_t> root_index;

        while (pos_ < s_.size()) {
            if (s_[pos_] != '<') {
                const auto next = s_.find('<', pos_);
                const auto end = next == std::string::npos ? s_.size() : next;
                if (stack.empty()) {
                    for (std::size_t i = pos_; i < end; ++i) {
                        if (!is_space(s_[i])) throw MalformedXml(i, "text outside the root element");
                    }
                }
                pos_ = end;
                continue;
            }
            if (starts("<?")) {
                skip_past("?>", "unterminated processing instruction");
            } else if (starts("<!--")) {
                skip_past("-->", "unterminated comment");
            } else if (starts("<![CDATA[")) {
                if (stack.empty()) throw MalformedXml(pos_, "CDATA outside the root element");
                skip_past("]]>", "unterminated CDATA section");
            } else if (starts("<!")) {
                skip_doctype();
            } else if (starts("</")) {
                const std::size_t begin = pos_;
                pos_ += 2;
                const std::string name = read_name();
                skip_ws();
                expect('>');
                if (stack.empty() || elements_[stack.back()].name != name) {
                    throw MalformedXml(begin, "unexpected end tag </" + name + ">");
                }
                Element& e = elements_[stack.back()];
                e.content_end = begin;
                e.end = pos_;
                stack.pop_back();
            } else {
                if (stack.empty() && root_index) throw MalformedXml(pos_, "second root element");
                const std::size_t index = read_start_tag(stack);
                if (stack.empty()) root_index = index;
                if (!elements_[index].self_closing) stack.push_back(index);
            }
        }
        if (!stack.empty()) throw MalformedXml(s_.size(), "unclosed element <" + elements_[stack.back()].name + ">");
        if (!root_index) throw MalformedXml(0, "no root element");
        root = *root_index;
        return std::move(elements_);
    }

private:
    bool starts(std::string_view prefix) const { return std::string_view(s_).substr(pos_).starts_with(prefix); }

    void skip_past(std::string_view terminator, const char* error) {
        const auto end = s_.find(terminator, pos_);
        if (end == std::string::npos) throw MalformedXml(pos_, error);
        pos_ = end + terminator.size();
    }

    void skip_doctype() {
        const std::size_t begin = pos_;
        int bracket = 0;
        for (; pos_ < s_.size(); ++pos_) {
            if (s_[pos_] == '[') ++bracket;
            if (s_[pos_] == ']') --bracket;
            if (s_[pos_] == '>' && bracket == 0) {
                ++pos_;
                return;
            }
        }
        throw MalformedXml(begin, "unterminated declaration");
    }

    void skip_ws() {
        while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
    }

    void expect(char c) {
        if (pos_ >= s_.size() || s_[pos_] != c) throw MalformedXml(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string read_name() {
        const std::size_t begin = pos_;
        while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
        if (pos_ == begin) throw MalformedXml(begin, "expected a name");
        return s_.substr(begin, pos_ - begin);
    }

    std::size_t read_start_tag(const std::vector<std::size_t>& stack) {
        Element e;
        e.start_tag_begin = pos_;
        ++pos_;
        e.name = read_name();
        for (;;) {
            skip_ws();
            if (pos_ >= s_.size()) throw MalformedXml(e.start_tag_begin, "unterminated start tag");
            if (s_[pos_] == '>') {
                ++pos_;
                break;
            }
            if (starts("/>")) {
                pos_ += 2;
                e.self_closing = true;
                break;
            }
            Attribute a;
            a.name = read_name();
            skip_ws();
            expect('=');
            skip_ws();
            if (pos_ >= s_.size() || (s_[pos_] != '"' && s_[pos_] != '\'')) throw MalformedXml(pos_, "expected quoted attribute value");
            a.quote = s_[pos_++];
            a.value_begin = pos_;
            const auto close = s_.find(a.quote, pos_);
            if (close == std::string::npos) throw MalformedXml(a.value_begin, "unterminated attribute value");
            const std::string_view raw(s_.data() + pos_, close - pos_);
            if (raw.find('<') != std::string_view::npos) throw MalformedXml(pos_, "'<' in attribute value");
            a.value_end = close;
            a.value = decode_entities(raw);
            pos_ = close + 1;
            if (e.attribute(a.name)) throw MalformedXml(a.value_begin, "duplicate attribute " + a.name);
            e.attributes.push_back(std::move(a));
        }
        e.start_tag_end = pos_;
        e.content_begin = pos_;
        e.content_end = pos_;
        e.end = pos_;
        if (!stack.empty()) e.parent = stack.back();

        const std::size_t index = elements_.size();
        if (e.parent) elements_[*e.parent].children.push_back(index);
        elements_.push_back(std::move(e));
        return index;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    std::vector<Element> elements_;
};

}  // namespace

std::string decode_entities(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] != '&') {
            out += raw[i];
            continue;
        }
        const auto semi = raw.find(';', i);
        if (semi == std::string_view::npos) {
            out += raw[i];
            continue;
        }
        const auto name = raw.substr(i + 1, semi - i - 1);
        if (name == "lt") {
            out += '<';
        } else if (name == "gt") {
            out += '>';
        } else if (name == "amp") {
            out += '&';
        } else if (name == "quot") {
            out += '"';
        } else if (name == "apos") {
            out += '\'';
        } else if (name.size() > 1 && name[0] == '#') {
            unsigned long cp = 0;
            const bool hex = name[1] == 'x' || name[1] == 'X';
            const auto digits = name.substr(hex ? 2 : 1);
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
            if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
                out.append(raw.substr(i, semi - i + 1));
            } else {
                append_utf8(out, cp);
            }
        } else {
            out.append(raw.substr(i, semi - i + 1));
        }
        i = semi;
    }
    return out;
}

std::string escape_text(std::string_view value) {
    std::string out;
    for (const char c : value) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string escape_attribute(std::string_view value, char quote) {
    std::string out;
    for (const char c : value) {
        if (c == '&') {
            out += "&amp;";
        } else if (c == '<') {
            out += "&lt;";
        } else if (c == quote) {
            out += quote == '"' ? "&quot;" : "&apos;";
        } else {
            out += c;
        }
    }
    return out;
}

Document Document::parse(std::string text) {
    Document doc;
    doc.text_ = std::move(text);
    Parser parser(doc.text_);
    doc.elements_ = parser.run(doc.root_);
    return doc;
}

std::vector<std::size_t> Document::children_named(std::size_t parent, std::string_view name) const {
    std::vector<std::size_t> out;
    for (const auto child : elements_.at(parent).children) {
        if (elements_[child].name == name) out.push_back(child);
    }
    return out;
}

std::vector<std::size_t> Document::descendants_named(std::size_t ancestor, std::string_view name) const {
    std::vector<std::size_t> out;
    std::vector<std::size_t> pending(elements_.at(ancestor).children.rbegin(), elements_.at(ancestor).children.rend());
    while (!pending.empty()) {
        const auto index = pending.back();
        pending.pop_back();
        if (elements_[index].name == name) out.push_back(index);
        const auto& kids = elements_[index].children;
        pending.insert(pending.end(), kids.rbegin(), kids.rend());
    }
    return out;
}

std::string Document::text_content(std::size_t element) const {
    const Element& e = elements_.at(element);
    std::string raw;
    std::size_t cursor = e.content_begin;
    for (const auto child : e.children) {
        raw.append(text_, cursor, elements_[child].start_tag_begin - cursor);
        cursor = elements_[child].end;
    }
    raw.append(text_, cursor, e.content_end - cursor);

    // CDATA sections are kept literal; everything else is entity-decoded.
    std::string out;
    std::string_view rest(raw);
    while (!rest.empty()) {
        const auto cdata = rest.find("<![CDATA[");
        const auto comment = rest.find("<!--");
        const auto next = std::min(cdata, comment);
        out += decode_entities(rest.substr(0, next));
        if (next == std::string_view::npos) break;
        rest.remove_prefix(next);
        if (next == cdata) {
            const auto end = rest.find("]]>");
            out.append(rest.substr(9, end - 9));
            rest.remove_prefix(end + 3);
        } else {
            rest.remove_prefix(rest.find("-->") + 3);
        }
    }
    return out;
}

void Editor::set_attribute(std::size_t element, std::string_view name, std::string_view value) {
    const Element& e = doc_.elements().at(element);
    if (const Attribute* a = e.attribute(name)) {
        splices_.push_back({a->value_begin, a->value_end, escape_attribute(value, a->quote)});
        return;
    }
    const std::size_t at = e.self_closing ? e.start_tag_end - 2 : e.start_tag_end - 1;
    splices_.push_back({at, at, " " + std::string(name) + "='" + escape_attribute(value, '\'') + "'"});
}

void Editor::set_text(std::size_t element, std::string_view value) {
    const Element& e = doc_.elements().at(element);
    if (!e.children.empty()) throw std::logic_error("set_text on element with children: " + e.name);
    if (e.self_closing) {
        splices_.push_back({e.start_tag_end - 2, e.start_tag_end, ">" + escape_text(value) + "</" + e.name + ">"});
    } else {
        splices_.push_back({e.content_begin, e.content_end, escape_text(value)});
    }
}

std::string Editor::apply() const {
    auto ordered = splices_;
    std::sort(ordered.begin(), ordered.end(), [](const Splice& a, const Splice& b) { return a.begin > b.begin; });
    std::string out = doc_.text();
    for (const auto& s : ordered) out.replace(s.begin, s.end - s.begin, s.replacement);
    return out;
}

}  // namespace netprofile::xml
