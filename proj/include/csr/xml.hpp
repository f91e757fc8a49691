#ifndef CSR_XML_HPP
#define CSR_XML_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csr/bytes.hpp"
#include "csr/error.hpp"

namespace csr {

struct XmlAttribute {
    std::string name;
    std::string value;

    bool operator==(const XmlAttribute&) const = default;
};

/// Canonical ordered element tree. `value` is the concatenation of the
/// element's significant direct text (whitespace-only runs dropped, the rest
/// verbatim); attributes are sorted by name; children are element children in
/// document order.
///
/// `raw_text` and `pi_text` are side channels kept for the baseline digest
/// schemes: the verbatim direct character data including whitespace-only
/// runs, and the text of direct processing-instruction children. Neither
/// participates in structural equality.
struct XmlNode {
    std::string name;
    std::string value;
    std::vector<XmlAttribute> attributes;
    std::vector<XmlNode> children;

    std::string raw_text;
    std::string pi_text;

    bool is_leaf() const { return children.empty(); }

    const XmlAttribute* find_attribute(std::string_view attr_name) const {
        for (const auto& a : attributes) {
            if (a.name == attr_name) return &a;
        }
        return nullptr;
    }

    bool operator==(const XmlNode& other) const {
        return name == other.name && value == other.value &&
               attributes == other.attributes && children == other.children;
    }
};

/// (level, sibling order), both 1-based; the document root is (1, 1).
/// `order` counts position among all element siblings, not just same-named
/// ones.
struct NodeLabel {
    int level = 1;
    int order = 1;

    bool operator==(const NodeLabel&) const = default;
};

struct PathSegment {
    std::string name;
    NodeLabel label;

    bool operator==(const PathSegment&) const = default;
};

/// The labelled path from the document root to a node. The rendered form is
/// what the structure digest hashes.
struct NodePath {
    std::vector<PathSegment> segments;

    std::string rendered() const {
        std::string out;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            if (i != 0) out.push_back('/');
            out += segments[i].name;
            out.push_back('[');
            out += std::to_string(segments[i].label.level);
            out.push_back('.');
            out += std::to_string(segments[i].label.order);
            out.push_back(']');
        }
        return out;
    }

    NodeLabel leaf_label() const { return segments.back().label; }

    bool operator==(const NodePath&) const = default;
};

namespace detail {

inline bool is_xml_whitespace(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

inline bool is_whitespace_only(std::string_view text) {
    return std::all_of(text.begin(), text.end(), is_xml_whitespace);
}

inline bool is_name_start_char(unsigned char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == ':' || c >= 0x80;
}

inline bool is_name_char(unsigned char c) {
    return is_name_start_char(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

inline bool is_valid_name(std::string_view name) {
    if (name.empty() || !is_name_start_char(static_cast<unsigned char>(name[0]))) return false;
    return std::all_of(name.begin() + 1, name.end(),
                       [](char c) { return is_name_char(static_cast<unsigned char>(c)); });
}

inline void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp <= 0x7f) {
        out.push_back(static_cast<char>(cp));
    } else if (cp <= 0x7ff) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp <= 0xffff) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

class XmlParser {
public:
    explicit XmlParser(std::string_view text) {
        // Line-ending normalization up front: CRLF and lone CR become LF.
        input_.reserve(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '\r') {
                input_.push_back('\n');
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
            } else {
                input_.push_back(text[i]);
            }
        }
    }

    XmlNode parse() {
        if (input_.size() >= 3 && input_.compare(0, 3, "\xef\xbb\xbf") == 0) pos_ = 3;
        skip_misc();
        if (at_end() || peek() != '<') fail("expected root element");
        XmlNode root = parse_element(0);
        skip_misc();
        if (!at_end()) fail("content after document root");
        return root;
    }

private:
    static constexpr int kMaxDepth = 4096;

    std::string input_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= input_.size(); }
    char peek() const { return input_[pos_]; }
    bool starts_with(std::string_view s) const { return input_.compare(pos_, s.size(), s) == 0; }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

    void skip_whitespace() {
        while (!at_end() && is_xml_whitespace(peek())) ++pos_;
    }

    void expect(char c) {
        if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    // Prolog/epilog misc: whitespace, comments, processing instructions
    // (including the XML declaration) and a DOCTYPE declaration. All are
    // discarded.
    void skip_misc() {
        for (;;) {
            skip_whitespace();
            if (starts_with("<!--")) {
                skip_comment();
            } else if (starts_with("<?")) {
                parse_pi();
            } else if (starts_with("<!DOCTYPE")) {
                skip_doctype();
            } else {
                return;
            }
        }
    }

    void skip_comment() {
        pos_ += 4;
        const std::size_t end = input_.find("-->", pos_);
        if (end == std::string::npos) fail("unterminated comment");
        pos_ = end + 3;
    }

    void skip_doctype() {
        pos_ += 9;
        int bracket_depth = 0;
        while (!at_end()) {
            const char c = peek();
            ++pos_;
            if (c == '[') ++bracket_depth;
            else if (c == ']') --bracket_depth;
            else if (c == '>' && bracket_depth == 0) return;
        }
        fail("unterminated DOCTYPE");
    }

    std::string parse_pi() {
        pos_ += 2;
        const std::size_t end = input_.find("?>", pos_);
        if (end == std::string::npos) fail("unterminated processing instruction");
        std::string text = input_.substr(pos_, end - pos_);
        pos_ = end + 2;
        return text;
    }

    std::string parse_name() {
        const std::size_t start = pos_;
        if (at_end() || !is_name_start_char(static_cast<unsigned char>(peek()))) {
            fail("expected name");
        }
        while (!at_end() && is_name_char(static_cast<unsigned char>(peek()))) ++pos_;
        return input_.substr(start, pos_ - start);
    }

    // The five predefined entities plus numeric character references.
    void parse_reference(std::string& out) {
        const std::size_t start = pos_;
        ++pos_;  // '&'
        const std::size_t end = input_.find(';', pos_);
        if (end == std::string::npos || end - pos_ > 10) {
            pos_ = start;
            fail("unterminated entity reference");
        }
        const std::string_view body = std::string_view(input_).substr(pos_, end - pos_);
        if (body == "lt") out.push_back('<');
        else if (body == "gt") out.push_back('>');
        else if (body == "amp") out.push_back('&');
        else if (body == "apos") out.push_back('\'');
        else if (body == "quot") out.push_back('"');
        else if (body.starts_with('#')) {
            std::uint32_t cp = 0;
            bool ok = body.size() > 1;
            if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
                for (std::size_t i = 2; i < body.size(); ++i) {
                    const char c = body[i];
                    int v;
                    if (c >= '0' && c <= '9') v = c - '0';
                    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
                    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
                    else { ok = false; break; }
                    cp = cp * 16 + static_cast<std::uint32_t>(v);
                }
            } else {
                for (std::size_t i = 1; i < body.size(); ++i) {
                    const char c = body[i];
                    if (c < '0' || c > '9') { ok = false; break; }
                    cp = cp * 10 + static_cast<std::uint32_t>(c - '0');
                }
            }
            if (!ok || cp == 0 || cp > 0x10ffff) {
                pos_ = start;
                fail("invalid character reference");
            }
            append_utf8(out, cp);
        } else {
            pos_ = start;
            fail("unknown entity '&" + std::string(body) + ";'");
        }
        pos_ = end + 1;
    }

    std::string parse_attribute_value() {
        if (at_end() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
        const char quote = peek();
        ++pos_;
        std::string value;
        for (;;) {
            if (at_end()) fail("unterminated attribute value");
            const char c = peek();
            if (c == quote) { ++pos_; return value; }
            if (c == '<') fail("'<' in attribute value");
            if (c == '&') { parse_reference(value); continue; }
            value.push_back(c);
            ++pos_;
        }
    }

    XmlNode parse_element(int depth) {
        if (depth > kMaxDepth) fail("document nested too deeply");
        expect('<');
        XmlNode node;
        node.name = parse_name();

        for (;;) {
            const bool had_space = !at_end() && is_xml_whitespace(peek());
            skip_whitespace();
            if (at_end()) fail("unterminated start tag");
            if (peek() == '>' || starts_with("/>")) break;
            if (!had_space) fail("expected whitespace before attribute");
            const std::size_t attr_pos = pos_;
            XmlAttribute attr;
            attr.name = parse_name();
            skip_whitespace();
            expect('=');
            skip_whitespace();
            attr.value = parse_attribute_value();
            if (node.find_attribute(attr.name) != nullptr) {
                throw ValidationError("duplicate attribute '" + attr.name +
                                      "' on element '" + node.name + "' (byte offset " +
                                      std::to_string(attr_pos) + ")");
            }
            node.attributes.push_back(std::move(attr));
        }

        std::sort(node.attributes.begin(), node.attributes.end(),
                  [](const XmlAttribute& a, const XmlAttribute& b) { return a.name < b.name; });

        if (starts_with("/>")) {
            pos_ += 2;
            return node;
        }
        expect('>');
        parse_content(node, depth);
        return node;
    }

    // Each contiguous text run and each CDATA section is one chunk: chunks
    // that are entirely XML whitespace are dropped from `value`, everything
    // lands verbatim in `raw_text`.
    void parse_content(XmlNode& node, int depth) {
        std::string chunk;
        auto flush_chunk = [&] {
            if (chunk.empty()) return;
            node.raw_text += chunk;
            if (!is_whitespace_only(chunk)) node.value += chunk;
            chunk.clear();
        };

        for (;;) {
            if (at_end()) fail("unterminated element '" + node.name + "'");
            const char c = peek();
            if (c == '<') {
                if (starts_with("</")) {
                    flush_chunk();
                    pos_ += 2;
                    const std::string end_name = parse_name();
                    if (end_name != node.name) {
                        fail("mismatched end tag '</" + end_name + ">' for element '" +
                             node.name + "'");
                    }
                    skip_whitespace();
                    expect('>');
                    return;
                }
                if (starts_with("<!--")) {
                    flush_chunk();
                    skip_comment();
                } else if (starts_with("<![CDATA[")) {
                    flush_chunk();
                    pos_ += 9;
                    const std::size_t end = input_.find("]]>", pos_);
                    if (end == std::string::npos) fail("unterminated CDATA section");
                    chunk = input_.substr(pos_, end - pos_);
                    pos_ = end + 3;
                    flush_chunk();
                } else if (starts_with("<?")) {
                    flush_chunk();
                    node.pi_text += parse_pi();
                } else {
                    flush_chunk();
                    node.children.push_back(parse_element(depth + 1));
                }
            } else if (c == '&') {
                parse_reference(chunk);
            } else {
                chunk.push_back(c);
                ++pos_;
            }
        }
    }
};

inline void append_escaped_text(std::string& out, std::string_view text) {
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
}

inline void append_escaped_attribute(std::string& out, std::string_view text) {
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
}

inline void serialize_node(std::string& out, const XmlNode& node) {
    out.push_back('<');
    out += node.name;
    for (const auto& attr : node.attributes) {
        out.push_back(' ');
        out += attr.name;
        out += "=\"";
        append_escaped_attribute(out, attr.value);
        out.push_back('"');
    }
    if (node.value.empty() && node.children.empty()) {
        out += "/>";
        return;
    }
    out.push_back('>');
    append_escaped_text(out, node.value);
    for (const auto& child : node.children) serialize_node(out, child);
    out += "</";
    out += node.name;
    out.push_back('>');
}

}  // namespace detail

/// Parses well-formed UTF-8 XML into the canonical tree. Comments and
/// processing instructions are discarded (PI text is kept per element in the
/// `pi_text` side channel); attribute order in the source is irrelevant.
inline XmlNode parse_document(std::string_view xml_text) {
    detail::XmlParser parser(xml_text);
    return parser.parse();
}

/// Compact canonical emission: the element value is written before its
/// children and no whitespace is invented, so parse(serialize(t)) == t on
/// the canonical model.
inline std::string serialize_document(const XmlNode& root) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    detail::serialize_node(out, root);
    out.push_back('\n');
    return out;
}

// ---------------------------------------------------------------------------
// Node selectors: "/Name/Name[i]/Name" where [i] is a 1-based index among
// same-named siblings, defaulting to 1.
// ---------------------------------------------------------------------------

struct NodeSelector {
    struct Segment {
        std::string name;
        std::size_t index = 1;

        bool operator==(const Segment&) const = default;
    };

    std::vector<Segment> segments;

    static NodeSelector parse(std::string_view text) {
        if (text.empty() || text[0] != '/') {
            throw LookupError("selector '" + std::string(text) + "' must start with '/'");
        }
        NodeSelector selector;
        std::size_t pos = 1;
        while (pos <= text.size()) {
            const std::size_t next = text.find('/', pos);
            const std::string_view raw =
                text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
            Segment segment;
            std::string_view name = raw;
            if (const std::size_t bracket = raw.find('['); bracket != std::string_view::npos) {
                name = raw.substr(0, bracket);
                const std::string_view idx = raw.substr(bracket);
                if (idx.size() < 3 || idx.back() != ']') {
                    throw LookupError("malformed index in selector segment '" + std::string(raw) + "'");
                }
                std::size_t value = 0;
                for (char c : idx.substr(1, idx.size() - 2)) {
                    if (c < '0' || c > '9') {
                        throw LookupError("malformed index in selector segment '" + std::string(raw) + "'");
                    }
                    value = value * 10 + static_cast<std::size_t>(c - '0');
                }
                if (value == 0) {
                    throw LookupError("selector index is 1-based in segment '" + std::string(raw) + "'");
                }
                segment.index = value;
            }
            if (!detail::is_valid_name(name)) {
                throw LookupError("invalid name in selector segment '" + std::string(raw) + "'");
            }
            segment.name = std::string(name);
            selector.segments.push_back(std::move(segment));
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
        return selector;
    }

    std::string text() const {
        std::string out;
        for (const auto& segment : segments) {
            out.push_back('/');
            out += segment.name;
            if (segment.index != 1) {
                out.push_back('[');
                out += std::to_string(segment.index);
                out.push_back(']');
            }
        }
        return out;
    }

    bool operator==(const NodeSelector&) const = default;
};

namespace detail {

struct ResolvedNode {
    const XmlNode* node;
    NodePath path;
};

inline ResolvedNode resolve_selector(const XmlNode& root, const NodeSelector& selector) {
    if (selector.segments.empty()) throw LookupError("empty selector");
    const auto& first = selector.segments.front();
    if (first.name != root.name || first.index != 1) {
        throw LookupError("selector segment '/" + first.name +
                          "' does not match document root '" + root.name + "'");
    }
    ResolvedNode current{&root, NodePath{{PathSegment{root.name, NodeLabel{1, 1}}}}};
    for (std::size_t s = 1; s < selector.segments.size(); ++s) {
        const auto& segment = selector.segments[s];
        const XmlNode* found = nullptr;
        int sibling_order = 0;
        std::size_t same_name_seen = 0;
        for (std::size_t i = 0; i < current.node->children.size(); ++i) {
            const XmlNode& child = current.node->children[i];
            if (child.name != segment.name) continue;
            if (++same_name_seen == segment.index) {
                found = &child;
                sibling_order = static_cast<int>(i) + 1;
                break;
            }
        }
        if (found == nullptr) {
            throw LookupError("selector segment '" + segment.name +
                              (segment.index != 1 ? "[" + std::to_string(segment.index) + "]" : "") +
                              "' matches no element under '" +
                              current.path.segments.back().name + "'");
        }
        current.node = found;
        current.path.segments.push_back(
            PathSegment{found->name, NodeLabel{static_cast<int>(s) + 1, sibling_order}});
    }
    return current;
}

}  // namespace detail

/// Resolves a selector against the tree; the result aliases the tree.
inline const XmlNode& select_node(const XmlNode& root, const NodeSelector& selector) {
    return *detail::resolve_selector(root, selector).node;
}

inline const XmlNode& select_node(const XmlNode& root, std::string_view selector) {
    return select_node(root, NodeSelector::parse(selector));
}

inline NodePath node_path(const XmlNode& root, const NodeSelector& selector) {
    return detail::resolve_selector(root, selector).path;
}

inline NodePath node_path(const XmlNode& root, std::string_view selector) {
    return node_path(root, NodeSelector::parse(selector));
}

inline NodeLabel node_label(const XmlNode& root, const NodeSelector& selector) {
    return node_path(root, selector).leaf_label();
}

inline NodeLabel node_label(const XmlNode& root, std::string_view selector) {
    return node_label(root, NodeSelector::parse(selector));
}

/// The unambiguous byte layout hashed by the content digest:
/// frame(name) ++ frame(value) ++ frame(attr_1) ++ ... with each attribute
/// rendered as name ++ 0x00 ++ value. Injective over (name, value,
/// attributes).
inline ByteBuffer canonical_bytes(const XmlNode& node) {
    ByteBuffer out;
    append_frame(out, node.name);
    append_frame(out, node.value);
    for (const auto& attr : node.attributes) {
        std::string entry = attr.name;
        entry.push_back('\0');
        entry += attr.value;
        append_frame(out, entry);
    }
    return out;
}

namespace detail {

struct LocatedNode {
    NodePath path;
    NodeSelector selector;
};

inline bool locate_node(const XmlNode& current, const XmlNode& target, LocatedNode& out) {
    if (&current == &target) return true;
    for (std::size_t i = 0; i < current.children.size(); ++i) {
        const XmlNode& child = current.children[i];
        std::size_t same_name_index = 1;
        for (std::size_t j = 0; j < i; ++j) {
            if (current.children[j].name == child.name) ++same_name_index;
        }
        out.path.segments.push_back(PathSegment{
            child.name,
            NodeLabel{static_cast<int>(out.path.segments.size()) + 1, static_cast<int>(i) + 1}});
        out.selector.segments.push_back(NodeSelector::Segment{child.name, same_name_index});
        if (locate_node(child, target, out)) return true;
        out.path.segments.pop_back();
        out.selector.segments.pop_back();
    }
    return false;
}

inline LocatedNode locate_node(const XmlNode& root, const XmlNode& target) {
    LocatedNode out;
    out.path.segments.push_back(PathSegment{root.name, NodeLabel{1, 1}});
    out.selector.segments.push_back(NodeSelector::Segment{root.name, 1});
    if (!locate_node(root, target, out)) {
        throw LookupError("node '" + target.name + "' is not part of this tree");
    }
    return out;
}

}  // namespace detail

/// Labelled path of a node identified by address rather than by selector.
inline NodePath node_path_of(const XmlNode& root, const XmlNode& target) {
    return detail::locate_node(root, target).path;
}

/// Canonical selector of a node identified by address.
inline NodeSelector selector_of(const XmlNode& root, const XmlNode& target) {
    return detail::locate_node(root, target).selector;
}

/// Resolves a "#id" fragment against attributes named "id"; exactly one
/// element must carry the id.
inline const XmlNode& select_by_id(const XmlNode& root, std::string_view id);

/// All nodes of the tree in document (preorder) order.
inline std::vector<const XmlNode*> preorder_nodes(const XmlNode& root) {
    std::vector<const XmlNode*> out;
    std::vector<const XmlNode*> stack{&root};
    while (!stack.empty()) {
        const XmlNode* node = stack.back();
        stack.pop_back();
        out.push_back(node);
        for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
            stack.push_back(&*it);
        }
    }
    return out;
}

inline const XmlNode& select_by_id(const XmlNode& root, std::string_view id) {
    const XmlNode* found = nullptr;
    for (const XmlNode* node : preorder_nodes(root)) {
        const XmlAttribute* attr = node->find_attribute("id");
        if (attr == nullptr || attr->value != id) continue;
        if (found != nullptr) {
            throw LookupError("id '" + std::string(id) + "' matches more than one element");
        }
        found = node;
    }
    if (found == nullptr) throw LookupError("no element has id '" + std::string(id) + "'");
    return *found;
}

/// Resolves either addressing form: a "/Name/Name[i]" selector or an "#id"
/// fragment.
inline const XmlNode& resolve_node_reference(const XmlNode& root, std::string_view reference) {
    if (reference.starts_with('#')) return select_by_id(root, reference.substr(1));
    return select_node(root, reference);
}

}  // namespace csr

#endif
