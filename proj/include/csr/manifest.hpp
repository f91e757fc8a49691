#ifndef CSR_MANIFEST_HPP
#define CSR_MANIFEST_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csr/bytes.hpp"
#include "csr/digest.hpp"
#include "csr/error.hpp"
#include "csr/hash.hpp"
#include "csr/xml.hpp"

namespace csr {

inline constexpr std::string_view kStiGenerateUri = "http://www.example.org/xmldsig-csr/#STI";
inline constexpr std::string_view kCriGenerateUri = "http://www.example.org/xmldsig-csr/#CRI";
inline constexpr std::string_view kCsrMethodUri = "http://www.example.org/xmldsig-csr/#CSR";
inline constexpr std::string_view kManifestNamespace = "http://www.example.org";

/// Structure-integrity record: STIGenerate, DigestMethod, DigestValue.
struct StiRecord {
    std::string generate_algorithm;
    std::string digest_method;
    std::string digest_value;

    bool operator==(const StiRecord&) const = default;
};

/// Context-referential-integrity record: CRIGenerate, one RelatedNode per
/// context element, DigestMethod, DigestValue.
struct CriRecord {
    std::string generate_algorithm;
    std::vector<std::string> related_nodes;
    std::string digest_method;
    std::string digest_value;

    bool operator==(const CriRecord&) const = default;
};

struct SealRecord {
    std::string timestamp;
    std::string digest_value;

    bool operator==(const SealRecord&) const = default;
};

/// The self-contained verification artifact for one signed node.
struct IntegrityManifest {
    std::string target;
    HashAlgorithm algorithm = HashAlgorithm::sha1;
    StiRecord sti;
    std::optional<CriRecord> cri;
    std::string content_digest;
    std::string reference_digest;
    std::optional<SealRecord> seal;

    bool operator==(const IntegrityManifest&) const = default;

    ByteBuffer content_digest_bytes() const { return decode_digest(content_digest); }
    ByteBuffer sti_digest_bytes() const { return decode_digest(sti.digest_value); }
    ByteBuffer cri_digest_bytes() const {
        return cri ? decode_digest(cri->digest_value) : ByteBuffer{};
    }
    ByteBuffer reference_digest_bytes() const { return decode_digest(reference_digest); }
    ByteBuffer seal_digest_bytes() const {
        return seal ? decode_digest(seal->digest_value) : ByteBuffer{};
    }
};

inline IntegrityManifest build_manifest(const CsrDigest& digest, std::string_view target,
                                        std::span<const std::string> context_references,
                                        DigestEncoding encoding = DigestEncoding::base64) {
    if (context_references.empty() != digest.cri.empty()) {
        throw ValidationError("context references and context digest do not match");
    }
    IntegrityManifest m;
    m.target = NodeSelector::parse(target).text();
    m.algorithm = digest.csr.algorithm;
    m.content_digest = encode_digest(digest.ci.bytes, encoding);
    m.reference_digest = encode_digest(digest.csr.bytes, encoding);
    m.sti.generate_algorithm = std::string(kStiGenerateUri);
    m.sti.digest_method = std::string(digest_method_uri(m.algorithm));
    m.sti.digest_value = encode_digest(digest.st.bytes, encoding);
    if (!context_references.empty()) {
        CriRecord cri;
        cri.generate_algorithm = std::string(kCriGenerateUri);
        cri.related_nodes.assign(context_references.begin(), context_references.end());
        cri.digest_method = std::string(digest_method_uri(m.algorithm));
        cri.digest_value = encode_digest(digest.cri, encoding);
        m.cri = std::move(cri);
    }
    if (digest.seal) {
        if (!digest.timestamp) throw ValidationError("sealed digest is missing its timestamp");
        m.seal = SealRecord{*digest.timestamp, encode_digest(digest.seal->bytes, encoding)};
    }
    return m;
}

namespace detail {

inline void append_attribute(std::string& out, std::string_view name, std::string_view value) {
    out.push_back(' ');
    out += name;
    out += "=\"";
    append_escaped_attribute(out, value);
    out.push_back('"');
}

inline void append_value_element(std::string& out, std::string_view indent,
                                 std::string_view name, std::string_view value) {
    out += indent;
    out.push_back('<');
    out += name;
    out.push_back('>');
    append_escaped_text(out, value);
    out += "</";
    out += name;
    out += ">\n";
}

inline void append_method_element(std::string& out, std::string_view indent,
                                  std::string_view name, std::string_view algorithm) {
    out += indent;
    out.push_back('<');
    out += name;
    if (!algorithm.empty()) append_attribute(out, "Algorithm", algorithm);
    out += "/>\n";
}

}  // namespace detail

inline std::string emit_manifest(const IntegrityManifest& m) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<IntegrityManifest";
    if (m.seal) detail::append_attribute(out, "created", m.seal->timestamp);
    detail::append_attribute(out, "target", m.target);
    out += ">\n";

    detail::append_value_element(out, "  ", "ContentDigest", m.content_digest);

    out += "  <STI";
    detail::append_attribute(out, "name", "structure integrity");
    detail::append_attribute(out, "xmlns", kManifestNamespace);
    out += ">\n";
    detail::append_method_element(out, "    ", "STIGenerate", m.sti.generate_algorithm);
    detail::append_method_element(out, "    ", "DigestMethod", m.sti.digest_method);
    detail::append_value_element(out, "    ", "DigestValue", m.sti.digest_value);
    out += "  </STI>\n";

    if (m.cri) {
        out += "  <CRI";
        detail::append_attribute(out, "name", "referential integrity");
        detail::append_attribute(out, "xmlns", kManifestNamespace);
        out += ">\n";
        detail::append_method_element(out, "    ", "CRIGenerate", m.cri->generate_algorithm);
        for (const auto& node : m.cri->related_nodes) {
            detail::append_value_element(out, "    ", "RelatedNode", node);
        }
        detail::append_method_element(out, "    ", "DigestMethod", m.cri->digest_method);
        detail::append_value_element(out, "    ", "DigestValue", m.cri->digest_value);
        out += "  </CRI>\n";
    }

    out += "  <Reference>\n";
    detail::append_method_element(out, "    ", "DigestMethod", kCsrMethodUri);
    detail::append_value_element(out, "    ", "DigestValue", m.reference_digest);
    out += "  </Reference>\n";

    if (m.seal) detail::append_value_element(out, "  ", "Seal", m.seal->digest_value);

    out += "</IntegrityManifest>\n";
    return out;
}

/// Combined digest straight to manifest XML.
inline std::string emit_manifest(const CsrDigest& digest, std::string_view target,
                                 std::span<const std::string> context_references,
                                 DigestEncoding encoding = DigestEncoding::base64) {
    return emit_manifest(build_manifest(digest, target, context_references, encoding));
}

// ---------------------------------------------------------------------------
// Schema checks for the STI and CRI elements. The sequence and element names
// are enforced; the record root tolerates extra attributes (the published
// examples carry `name` and a default namespace) and, being a mixed type,
// stray text.
// ---------------------------------------------------------------------------

enum class SchemaKind { sti, cri };

struct SchemaVerdict {
    bool pass = false;
    std::string detail;

    explicit operator bool() const { return pass; }
};

namespace detail {

inline std::optional<std::string> check_method_element(const XmlNode& node) {
    if (!node.children.empty()) return "element '" + node.name + "' must be empty";
    if (!node.value.empty()) return "element '" + node.name + "' must not carry text";
    for (const auto& attr : node.attributes) {
        if (attr.name != "Algorithm") {
            return "element '" + node.name + "' allows only the Algorithm attribute, found '" +
                   attr.name + "'";
        }
    }
    return std::nullopt;
}

inline std::optional<std::string> check_value_element(const XmlNode& node) {
    if (!node.children.empty()) return "element '" + node.name + "' must not have children";
    if (!node.attributes.empty()) return "element '" + node.name + "' must not carry attributes";
    return std::nullopt;
}

inline std::optional<std::string> check_record_structure(const XmlNode& node, SchemaKind kind) {
    const std::string_view root_name = kind == SchemaKind::sti ? "STI" : "CRI";
    const std::string_view generate_name = kind == SchemaKind::sti ? "STIGenerate" : "CRIGenerate";
    if (node.name != root_name) {
        return "expected element '" + std::string(root_name) + "', found '" + node.name + "'";
    }
    std::size_t i = 0;
    auto next = [&](std::string_view expected) -> std::optional<std::string> {
        if (i >= node.children.size() || node.children[i].name != expected) {
            return "expected element '" + std::string(expected) + "' at position " +
                   std::to_string(i + 1) + " of '" + std::string(root_name) + "'" +
                   (i < node.children.size() ? ", found '" + node.children[i].name + "'" : "");
        }
        ++i;
        return std::nullopt;
    };

    if (auto err = next(generate_name)) return err;
    if (auto err = check_method_element(node.children[i - 1])) return err;
    if (kind == SchemaKind::cri) {
        if (i >= node.children.size() || node.children[i].name != "RelatedNode") {
            return std::string("'CRI' requires at least one 'RelatedNode' element");
        }
        while (i < node.children.size() && node.children[i].name == "RelatedNode") {
            if (auto err = check_value_element(node.children[i])) return err;
            ++i;
        }
    }
    if (auto err = next("DigestMethod")) return err;
    if (auto err = check_method_element(node.children[i - 1])) return err;
    if (auto err = next("DigestValue")) return err;
    if (auto err = check_value_element(node.children[i - 1])) return err;
    if (i != node.children.size()) {
        return "unexpected element '" + node.children[i].name + "' in '" +
               std::string(root_name) + "'";
    }
    return std::nullopt;
}

inline std::string trimmed(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && is_xml_whitespace(text[begin])) ++begin;
    while (end > begin && is_xml_whitespace(text[end - 1])) --end;
    return std::string(text.substr(begin, end - begin));
}

inline std::string algorithm_attribute(const XmlNode& node) {
    const XmlAttribute* attr = node.find_attribute("Algorithm");
    return attr ? attr->value : std::string();
}

}  // namespace detail

inline SchemaVerdict validate_schema(const XmlNode& node, SchemaKind kind) {
    if (auto err = detail::check_record_structure(node, kind)) return {false, *err};
    return {true, ""};
}

inline SchemaVerdict validate_schema(std::string_view xml, SchemaKind kind) {
    try {
        return validate_schema(parse_document(xml), kind);
    } catch (const Error& e) {
        return {false, e.what()};
    }
}

inline StiRecord parse_sti_element(const XmlNode& node) {
    if (auto err = detail::check_record_structure(node, SchemaKind::sti)) {
        throw ParseError("STI schema violation: " + *err);
    }
    StiRecord record;
    record.generate_algorithm = detail::algorithm_attribute(node.children[0]);
    record.digest_method = detail::algorithm_attribute(node.children[1]);
    record.digest_value = detail::trimmed(node.children[2].value);
    return record;
}

inline CriRecord parse_cri_element(const XmlNode& node) {
    if (auto err = detail::check_record_structure(node, SchemaKind::cri)) {
        throw ParseError("CRI schema violation: " + *err);
    }
    CriRecord record;
    record.generate_algorithm = detail::algorithm_attribute(node.children[0]);
    std::size_t i = 1;
    while (node.children[i].name == "RelatedNode") {
        record.related_nodes.push_back(detail::trimmed(node.children[i].value));
        if (record.related_nodes.back().empty()) {
            throw ParseError("CRI schema violation: empty 'RelatedNode'");
        }
        ++i;
    }
    record.digest_method = detail::algorithm_attribute(node.children[i]);
    record.digest_value = detail::trimmed(node.children[i + 1].value);
    return record;
}

namespace detail {

inline ByteBuffer decode_checked(std::string_view encoded, HashAlgorithm algo,
                                 std::string_view element) {
    ByteBuffer bytes;
    try {
        bytes = decode_digest(encoded);
    } catch (const FormatError& e) {
        throw FormatError("DigestValue of " + std::string(element) + ": " + e.what());
    }
    if (bytes.size() != digest_width(algo)) {
        throw FormatError("DigestValue of " + std::string(element) + " decodes to " +
                          std::to_string(bytes.size()) + " octets, expected " +
                          std::to_string(digest_width(algo)));
    }
    return bytes;
}

}  // namespace detail

inline IntegrityManifest parse_manifest(std::string_view xml) {
    const XmlNode root = parse_document(xml);
    if (root.name != "IntegrityManifest") {
        throw ParseError("expected root element 'IntegrityManifest', found '" + root.name + "'");
    }
    IntegrityManifest m;
    std::optional<std::string> created;
    for (const auto& attr : root.attributes) {
        if (attr.name == "target") m.target = attr.value;
        else if (attr.name == "created") created = attr.value;
        else throw ParseError("unknown attribute '" + attr.name + "' on 'IntegrityManifest'");
    }
    if (m.target.empty()) throw ParseError("'IntegrityManifest' is missing its target attribute");
    try {
        NodeSelector::parse(m.target);
    } catch (const LookupError& e) {
        throw ParseError("target attribute: " + std::string(e.what()));
    }

    std::size_t i = 0;
    auto require = [&](std::string_view name) -> const XmlNode& {
        if (i >= root.children.size() || root.children[i].name != name) {
            throw ParseError("expected element '" + std::string(name) + "' at position " +
                             std::to_string(i + 1) + " of 'IntegrityManifest'");
        }
        return root.children[i++];
    };

    m.content_digest = detail::trimmed(require("ContentDigest").value);
    m.sti = parse_sti_element(require("STI"));
    if (i < root.children.size() && root.children[i].name == "CRI") {
        m.cri = parse_cri_element(root.children[i]);
        ++i;
    }
    const XmlNode& reference = require("Reference");
    if (reference.children.size() != 2 || reference.children[0].name != "DigestMethod" ||
        reference.children[1].name != "DigestValue") {
        throw ParseError("'Reference' must contain 'DigestMethod' followed by 'DigestValue'");
    }
    m.reference_digest = detail::trimmed(reference.children[1].value);
    if (i < root.children.size() && root.children[i].name == "Seal") {
        if (!created) throw ParseError("'Seal' requires the created timestamp attribute");
        SealRecord seal;
        seal.timestamp = *created;
        seal.digest_value = detail::trimmed(root.children[i].value);
        m.seal = std::move(seal);
        ++i;
    } else if (created) {
        throw ParseError("created timestamp without a 'Seal' element");
    }
    if (i != root.children.size()) {
        throw ParseError("unexpected element '" + root.children[i].name +
                         "' in 'IntegrityManifest'");
    }

    const auto algo = algorithm_from_uri(m.sti.digest_method);
    if (!algo) {
        throw FormatError("unknown DigestMethod algorithm '" + m.sti.digest_method + "'");
    }
    m.algorithm = *algo;

    detail::decode_checked(m.content_digest, m.algorithm, "ContentDigest");
    detail::decode_checked(m.sti.digest_value, m.algorithm, "STI");
    if (m.cri) detail::decode_checked(m.cri->digest_value, m.algorithm, "CRI");
    detail::decode_checked(m.reference_digest, m.algorithm, "Reference");
    if (m.seal) {
        detail::decode_checked(m.seal->digest_value, m.algorithm, "Seal");
        if (!is_rfc3339_utc(m.seal->timestamp)) {
            throw FormatError("created timestamp '" + m.seal->timestamp +
                              "' is not an RFC 3339 UTC date-time");
        }
    }
    return m;
}

}  // namespace csr

#endif
