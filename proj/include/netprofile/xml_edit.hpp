#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace netprofile::xml {

class MalformedXml : public std::runtime_error {
public:
    MalformedXml(std::size_t offset, const std::string& what);
    [[nodiscard]] std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

struct Attribute {
    std::string name;
    std::string value;  // entity-decoded
    std::size_t value_begin = 0;  // raw span inside the quotes
    std::size_t value_end = 0;
    char quote = '"';
};

/// Element with byte offsets into the source text. For a self-closing element
/// the content span is empty and positioned at `start_tag_end`.
struct Element {
    std::string name;
    std::size_t start_tag_begin = 0;
    std::size_t start_tag_end = 0;  // one past '>'
    std::size_t content_begin = 0;
    std::size_t content_end = 0;    // start of the end tag
    std::size_t end = 0;            // one past the end tag
    bool self_closing = false;
    std::vector<Attribute> attributes;
    std::vector<std::size_t> children;  // indices into Document::elements()
    std::optional<std::size_t> parent;

    [[nodiscard]] const Attribute* attribute(std::string_view attr_name) const;
};

/// Read-only element tree over the original bytes. Edits are expressed as
/// byte splices through Editor so everything not touched stays verbatim.
class Document {
public:
    /// Throws MalformedXml.
    static Document parse(std::string text);

    [[nodiscard]] const std::string& text() const { return text_; }
    [[nodiscard]] const std::vector<Element>& elements() const { return elements_; }
    [[nodiscard]] const Element& root() const { return elements_.at(root_); }
    [[nodiscard]] std::size_t root_index() const { return root_; }

    /// Direct children of `parent` named `name`.
    [[nodiscard]] std::vector<std::size_t> children_named(std::size_t parent, std::string_view name) const;

    /// All descendants of `ancestor` named `name`, document order.
    [[nodiscard]] std::vector<std::size_t> descendants_named(std::size_t ancestor, std::string_view name) const;

    /// Decoded character data directly inside the element (child markup skipped).
    [[nodiscard]] std::string text_content(std::size_t element) const;

private:
    std::string text_;
    std::vector<Element> elements_;
    std::size_t root_ = 0;
};

class Editor {
public:
    explicit Editor(const Document& doc) : doc_(doc) {}

    /// Replaces the attribute value, or appends the attribute to the start tag.
    void set_attribute(std::size_t element, std::string_view name, std::string_view value);

    /// Replaces the element's content with escaped `value`. Only for elements
    /// without child elements; a self-closing tag is expanded.
    void set_text(std::size_t element, std::string_view value);

    [[nodiscard]] bool empty() const { return splices_.empty(); }

    /// Source text with all splices applied.
    [[nodiscard]] std::string apply() const;

private:
    struct Splice {
        std::size_t begin;
        std::size_t end;
        std::string replacement;
    };

    const Document& doc_;
    std::vector<Splice> splices_;
};

std::string decode_entities(std::string_view raw);
std::string escape_text(std::string_view value);
std::string escape_attribute(std::string_view value, char quote);

}  // namespace netprofile::xml
