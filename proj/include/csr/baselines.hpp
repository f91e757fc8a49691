#ifndef CSR_BASELINES_HPP
#define CSR_BASELINES_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "csr/bytes.hpp"
#include "csr/hash.hpp"
#include "csr/xml.hpp"

namespace csr {

// ---------------------------------------------------------------------------
// DOM-HASH. The element digest dos(v) covers name, text and processing
// instructions; the recursive digest adds an attribute hash and folds child
// digests in (dos for leaf children, the recursive form for interior ones).
// A leaf therefore contributes 1 invocation and an interior element 3:
// 1 for dos plus 2 for the recursive combination.
// ---------------------------------------------------------------------------

namespace detail {

inline ByteBuffer attribute_bytes(const XmlNode& node) {
    ByteBuffer out;
    for (const auto& attr : node.attributes) {
        std::string entry = attr.name;
        entry.push_back('\0');
        entry += attr.value;
        append_frame(out, entry);
    }
    return out;
}

inline Digest dom_hash_dos(const XmlNode& node, std::string_view text, HashAlgorithm algo,
                           HashCounter& counter) {
    ByteBuffer concat;
    append_frame(concat, node.name);
    append_frame(concat, text);
    append_frame(concat, node.pi_text);
    return hash_bytes(concat, algo, counter);
}

enum class SpacePolicy { normalized, preserved };

inline std::string_view dom_text(const XmlNode& node, SpacePolicy policy) {
    return policy == SpacePolicy::preserved ? std::string_view(node.raw_text)
                                            : std::string_view(node.value);
}

inline Digest dom_hash_recursive(const XmlNode& node, SpacePolicy policy, HashAlgorithm algo,
                                 HashCounter& counter) {
    const Digest attr_digest = hash_bytes(attribute_bytes(node), algo, counter);
    const Digest own = dom_hash_dos(node, dom_text(node, policy), algo, counter);
    ByteBuffer concat;
    append_frame(concat, attr_digest.bytes);
    append_frame(concat, own.bytes);
    for (const auto& child : node.children) {
        const Digest child_digest =
            child.is_leaf() ? dom_hash_dos(child, dom_text(child, policy), algo, counter)
                            : dom_hash_recursive(child, policy, algo, counter);
        append_frame(concat, child_digest.bytes);
    }
    return hash_bytes(concat, algo, counter);
}

}  // namespace detail

inline Digest dom_hash_digest(const XmlNode& root, HashAlgorithm algo, HashCounter& counter) {
    return detail::dom_hash_recursive(root, detail::SpacePolicy::normalized, algo, counter);
}

// ---------------------------------------------------------------------------
// XHASH: the DOM-HASH recursion with an explicit policy for non-significant
// space characters. `preserved` hashes the verbatim character data;
// `normalized` (the default mode) reuses the parser's whitespace handling.
// ---------------------------------------------------------------------------

enum class XhashSpaceMode { normalized, preserved };

inline Digest xhash_digest(const XmlNode& root, HashAlgorithm algo, HashCounter& counter,
                           XhashSpaceMode space_mode = XhashSpaceMode::normalized) {
    const auto policy = space_mode == XhashSpaceMode::preserved
                            ? detail::SpacePolicy::preserved
                            : detail::SpacePolicy::normalized;
    return detail::dom_hash_recursive(root, policy, algo, counter);
}

// ---------------------------------------------------------------------------
// Bertino's Merkle-tree digest. Every node hashes its value and its name
// separately before the combining hash, i.e. 3 invocations per node.
// Attributes enter as Merkle children by default so the scheme covers real
// documents; `include_attributes = false` gives the strict form that leaves
// attributes out of the digest.
// ---------------------------------------------------------------------------

namespace detail {

inline Digest bertino_attribute(const XmlAttribute& attr, HashAlgorithm algo,
                                HashCounter& counter) {
    const Digest value_digest = hash_bytes(attr.value, algo, counter);
    const Digest name_digest = hash_bytes(attr.name, algo, counter);
    ByteBuffer concat;
    append_frame(concat, value_digest.bytes);
    append_frame(concat, name_digest.bytes);
    return hash_bytes(concat, algo, counter);
}

inline Digest bertino_element(const XmlNode& node, bool include_attributes, HashAlgorithm algo,
                              HashCounter& counter) {
    const Digest content_digest = hash_bytes(node.value, algo, counter);
    const Digest name_digest = hash_bytes(node.name, algo, counter);
    ByteBuffer concat;
    append_frame(concat, content_digest.bytes);
    append_frame(concat, name_digest.bytes);
    if (include_attributes) {
        for (const auto& attr : node.attributes) {
            append_frame(concat, bertino_attribute(attr, algo, counter).bytes);
        }
    }
    for (const auto& child : node.children) {
        append_frame(concat, bertino_element(child, include_attributes, algo, counter).bytes);
    }
    return hash_bytes(concat, algo, counter);
}

}  // namespace detail

inline Digest bertino_digest(const XmlNode& root, HashAlgorithm algo, HashCounter& counter,
                             bool include_attributes = true) {
    return detail::bertino_element(root, include_attributes, algo, counter);
}

/// Digest of a single attribute node under Bertino's scheme; exposed for the
/// per-node cost traces.
inline Digest bertino_attribute_digest(const XmlAttribute& attr, HashAlgorithm algo,
                                       HashCounter& counter) {
    return detail::bertino_attribute(attr, algo, counter);
}

// ---------------------------------------------------------------------------
// Analytical cost model for a complete k-ary tree of depth m.
// ---------------------------------------------------------------------------

/// Time constants for one iterative hash call over an l-byte input plus the
/// linear rehashing-overhead constants.
struct CostModelParams {
    double c1 = 1.0;
    double c2 = 1.0;
    double block_size = 64.0;
    double c = 1.0;
    double c_prime = 1.0;
};

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, int exponent) {
    std::uint64_t out = 1;
    for (int i = 0; i < exponent; ++i) {
        if (__builtin_mul_overflow(out, base, &out)) {
            throw std::domain_error("tree size overflows 64 bits");
        }
    }
    return out;
}

inline void check_tree_domain(int k, int m) {
    if (k < 2) throw std::domain_error("branching factor k must be >= 2, got " + std::to_string(k));
    if (m < 1) throw std::domain_error("depth m must be >= 1, got " + std::to_string(m));
}

inline void check_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw std::domain_error(std::string(name) + " must be positive");
    }
}

}  // namespace detail

/// Number of vertices of a complete k-ary tree of depth m:
/// sum of k^(x-1) = (k^m - 1) / (k - 1).
inline std::uint64_t node_count_N(int k, int m) {
    detail::check_tree_domain(k, m);
    return (detail::checked_pow(static_cast<std::uint64_t>(k), m) - 1) /
           (static_cast<std::uint64_t>(k) - 1);
}

/// Worst-case hash count over the same tree: sum of x * k^(x-1)
/// = (m*k^(m+1) - (m+1)*k^m + 1) / (k - 1)^2.
inline std::uint64_t hash_count_W(int k, int m) {
    detail::check_tree_domain(k, m);
    const auto ku = static_cast<std::uint64_t>(k);
    const auto mu = static_cast<std::uint64_t>(m);
    const std::uint64_t km = detail::checked_pow(ku, m);
    const std::uint64_t numerator = mu * km * ku - (mu + 1) * km + 1;
    return numerator / ((ku - 1) * (ku - 1));
}

/// Iterative-hash time model: c1 * (floor(l / D) + 1) + c2 for an l-byte
/// input, step-constant within each block of D bytes.
inline double time_model_T(std::uint64_t input_length, const CostModelParams& params) {
    detail::check_positive(params.c1, "c1");
    detail::check_positive(params.c2, "c2");
    detail::check_positive(params.block_size, "block size");
    return params.c1 * (std::floor(static_cast<double>(input_length) / params.block_size) + 1.0) +
           params.c2;
}

/// Node-size and depth-size of a subtree; the depth size is the sum over all
/// vertices of their depth (number of predecessors plus one for the root
/// convention used by the hash-count sum).
struct TreeShape {
    int k = 2;
    int m = 1;
    std::uint64_t node_size = 1;
    std::uint64_t depth_size = 1;

    static TreeShape complete(int k, int m) {
        return TreeShape{k, m, node_count_N(k, m), hash_count_W(k, m)};
    }
};

/// Rehashing overhead as a linear combination of node size and depth size.
inline double rehash_overhead(const TreeShape& shape, const CostModelParams& params) {
    detail::check_positive(params.c, "c");
    detail::check_positive(params.c_prime, "c'");
    return params.c * static_cast<double>(shape.node_size) +
           params.c_prime * static_cast<double>(shape.depth_size);
}

}  // namespace csr

#endif
