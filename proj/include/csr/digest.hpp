#ifndef CSR_DIGEST_HPP
#define CSR_DIGEST_HPP

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "csr/bytes.hpp"
#include "csr/error.hpp"
#include "csr/hash.hpp"
#include "csr/xml.hpp"

namespace csr {

/// Content integrity. A leaf (no element children) hashes its canonical
/// bytes directly; an interior element hashes its own canonical-bytes digest
/// concatenated with the child digests, so the whole subtree collapses into
/// one fixed-width value with 2 invocations at interior nodes and 1 at
/// leaves.
inline Digest content_integrity(const XmlNode& node, HashAlgorithm algo, HashCounter& counter) {
    if (node.is_leaf()) {
        return hash_bytes(canonical_bytes(node), algo, counter);
    }
    const Digest own = hash_bytes(canonical_bytes(node), algo, counter);
    ByteBuffer concat;
    append_frame(concat, own.bytes);
    for (const auto& child : node.children) {
        const Digest child_digest = content_integrity(child, algo, counter);
        append_frame(concat, child_digest.bytes);
    }
    return hash_bytes(concat, algo, counter);
}

/// Structure integrity: the digest of the rendered labelled path from the
/// document root to the target. Exactly one hash invocation.
inline Digest structure_integrity(const XmlNode& root, const NodeSelector& target,
                                  HashAlgorithm algo, HashCounter& counter) {
    return hash_bytes(frame(node_path(root, target).rendered()), algo, counter);
}

inline Digest structure_integrity(const XmlNode& root, std::string_view target,
                                  HashAlgorithm algo, HashCounter& counter) {
    return structure_integrity(root, NodeSelector::parse(target), algo, counter);
}

/// The signer-chosen context-related elements of a signed node: resolved,
/// deduplicated, and held in document order of their targets.
class ContextSet {
public:
    struct Entry {
        std::string selector;
        const XmlNode* node;
    };

    ContextSet() = default;

    static ContextSet resolve(const XmlNode& root, std::span<const std::string> selectors) {
        std::unordered_map<const XmlNode*, std::size_t> order;
        const auto nodes = preorder_nodes(root);
        for (std::size_t i = 0; i < nodes.size(); ++i) order[nodes[i]] = i;

        struct Keyed {
            std::size_t position;
            Entry entry;
        };
        std::vector<Keyed> keyed;
        for (const auto& text : selectors) {
            const XmlNode& node = resolve_node_reference(root, text);
            const bool seen = std::any_of(keyed.begin(), keyed.end(),
                                          [&](const Keyed& k) { return k.entry.node == &node; });
            if (seen) continue;
            keyed.push_back(Keyed{order.at(&node), Entry{text, &node}});
        }
        std::sort(keyed.begin(), keyed.end(),
                  [](const Keyed& a, const Keyed& b) { return a.position < b.position; });

        ContextSet out;
        for (auto& k : keyed) out.entries_.push_back(std::move(k.entry));
        return out;
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

    std::vector<std::string> selectors() const {
        std::vector<std::string> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) out.push_back(e.selector);
        return out;
    }

private:
    std::vector<Entry> entries_;
};

/// Context referential integrity: one hash over the framed (CI, ST) pairs of
/// every context element, in document order. An empty context yields empty
/// bytes and costs nothing.
inline ByteBuffer context_referential_integrity(const XmlNode& root, const ContextSet& context,
                                                HashAlgorithm algo, HashCounter& counter) {
    if (context.empty()) return {};
    ByteBuffer concat;
    for (const auto& entry : context.entries()) {
        const Digest ci = content_integrity(*entry.node, algo, counter);
        const Digest st =
            hash_bytes(frame(node_path_of(root, *entry.node).rendered()), algo, counter);
        append_frame(concat, ci.bytes);
        append_frame(concat, st.bytes);
    }
    return hash_bytes(concat, algo, counter).bytes;
}

/// The combined digest and its parts. `cri` is empty when no context was
/// chosen; the seal and timestamp appear once the digest is sealed.
struct CsrDigest {
    Digest ci;
    Digest st;
    ByteBuffer cri;
    Digest csr;
    std::optional<std::string> timestamp;
    std::optional<Digest> seal;

    bool operator==(const CsrDigest&) const = default;
};

/// CI, ST and CRI of the target, combined under one more hash. The empty
/// CRI still occupies a zero-length framed slot so context presence is
/// unambiguous in the combination input.
inline CsrDigest csr_digest(const XmlNode& root, const NodeSelector& target,
                            const ContextSet& context, HashAlgorithm algo,
                            HashCounter& counter) {
    CsrDigest out;
    out.ci = content_integrity(select_node(root, target), algo, counter);
    out.st = structure_integrity(root, target, algo, counter);
    out.cri = context_referential_integrity(root, context, algo, counter);
    ByteBuffer concat;
    append_frame(concat, out.ci.bytes);
    append_frame(concat, out.st.bytes);
    append_frame(concat, out.cri);
    out.csr = hash_bytes(concat, algo, counter);
    return out;
}

inline CsrDigest csr_digest(const XmlNode& root, std::string_view target,
                            const ContextSet& context, HashAlgorithm algo,
                            HashCounter& counter) {
    return csr_digest(root, NodeSelector::parse(target), context, algo, counter);
}

inline CsrDigest csr_digest(const XmlNode& root, std::string_view target,
                            std::span<const std::string> context_selectors,
                            HashAlgorithm algo, HashCounter& counter) {
    return csr_digest(root, NodeSelector::parse(target),
                      ContextSet::resolve(root, context_selectors), algo, counter);
}

/// RFC 3339 UTC timestamp: full date-time with optional fractional seconds
/// and a 'Z' zone designator.
inline bool is_rfc3339_utc(std::string_view t) {
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    auto num2 = [&](std::size_t i) { return (t[i] - '0') * 10 + (t[i + 1] - '0'); };
    if (t.size() < 20) return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u, 11u, 12u, 14u, 15u, 17u, 18u}) {
        if (!digit(t[i])) return false;
    }
    if (t[4] != '-' || t[7] != '-' || (t[10] != 'T' && t[10] != 't') || t[13] != ':' ||
        t[16] != ':') {
        return false;
    }
    const int year = (t[0] - '0') * 1000 + (t[1] - '0') * 100 + num2(2);
    const int month = num2(5);
    const int day = num2(8);
    const int hour = num2(11);
    const int minute = num2(14);
    const int second = num2(17);
    if (month < 1 || month > 12 || day < 1) return false;
    static constexpr int days_in_month[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    const int max_day = month == 2 && leap ? 29 : days_in_month[month - 1];
    if (day > max_day) return false;
    if (hour > 23 || minute > 59 || second > 60) return false;
    std::size_t pos = 19;
    if (t[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < t.size() && digit(t[pos])) ++pos, ++digits;
        if (digits == 0) return false;
    }
    return pos + 1 == t.size() && (t[pos] == 'Z' || t[pos] == 'z');
}

/// Sealing binds the combined digest to the document's creation timestamp.
/// Stores the timestamp and seal on the digest and returns the seal.
inline Digest timestamped_seal(CsrDigest& digest, std::string_view timestamp,
                               HashAlgorithm algo, HashCounter& counter) {
    if (!is_rfc3339_utc(timestamp)) {
        throw ValidationError("timestamp '" + std::string(timestamp) +
                              "' is not an RFC 3339 UTC date-time");
    }
    ByteBuffer concat;
    append_frame(concat, timestamp);
    append_frame(concat, digest.csr.bytes);
    const Digest seal = hash_bytes(concat, algo, counter);
    digest.timestamp = std::string(timestamp);
    digest.seal = seal;
    return seal;
}

}  // namespace csr

#endif
