#ifndef CSR_TESTS_SUPPORT_HPP
#define CSR_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "csr/xml.hpp"

namespace csr::test {

using IndexPath = std::vector<std::size_t>;

inline XmlNode& node_at(XmlNode& root, const IndexPath& path) {
    XmlNode* node = &root;
    for (std::size_t index : path) node = &node->children[index];
    return *node;
}

inline const XmlNode& node_at(const XmlNode& root, const IndexPath& path) {
    const XmlNode* node = &root;
    for (std::size_t index : path) node = &node->children[index];
    return *node;
}

inline void collect_paths(const XmlNode& node, IndexPath& current,
                          std::vector<IndexPath>& out) {
    out.push_back(current);
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        current.push_back(i);
        collect_paths(node.children[i], current, out);
        current.pop_back();
    }
}

/// Child-index paths of every node in preorder; the root is the empty path.
inline std::vector<IndexPath> collect_paths(const XmlNode& root) {
    std::vector<IndexPath> out;
    IndexPath current;
    collect_paths(root, current, out);
    return out;
}

inline std::string selector_for(const XmlNode& root, const IndexPath& path) {
    return selector_of(root, node_at(root, path)).text();
}

inline XmlNode detach(XmlNode& root, const IndexPath& path) {
    XmlNode& parent = node_at(root, IndexPath(path.begin(), path.end() - 1));
    XmlNode detached = std::move(parent.children[path.back()]);
    parent.children.erase(parent.children.begin() + static_cast<std::ptrdiff_t>(path.back()));
    return detached;
}

inline bool is_prefix_of(const IndexPath& prefix, const IndexPath& path) {
    if (prefix.size() > path.size()) return false;
    return std::equal(prefix.begin(), prefix.end(), path.begin());
}

/// (interior element count, leaf element count) — the independent oracle the
/// content-digest invocation counts are checked against.
inline std::pair<std::uint64_t, std::uint64_t> count_interior_and_leaves(const XmlNode& node) {
    if (node.children.empty()) return {0, 1};
    std::uint64_t interior = 1;
    std::uint64_t leaves = 0;
    for (const auto& child : node.children) {
        const auto [i, l] = count_interior_and_leaves(child);
        interior += i;
        leaves += l;
    }
    return {interior, leaves};
}

/// Random document trees: a small name pool (so same-named siblings are
/// common), occasional attributes, short text payloads.
class TreeGenerator {
public:
    explicit TreeGenerator(std::uint64_t seed) : rng_(seed) {}

    XmlNode tree(int max_depth = 4, int max_children = 4) {
        XmlNode root = element("root0");
        grow(root, max_depth, max_children);
        return root;
    }

    std::mt19937_64& rng() { return rng_; }

    std::string word() {
        static constexpr const char* words[] = {"alpha", "beta", "gamma",  "delta",
                                                "omega", "sigma", "lambda", "kappa"};
        return words[pick(8)];
    }

private:
    std::mt19937_64 rng_;

    std::size_t pick(std::size_t n) {
        std::uniform_int_distribution<std::size_t> d(0, n - 1);
        return d(rng_);
    }

    XmlNode element(std::string name) {
        XmlNode node;
        node.name = std::move(name);
        if (pick(3) == 0) {
            node.value = word() + " " + word();
        }
        if (pick(4) == 0) {
            node.attributes.push_back({"kind", word()});
        }
        if (pick(8) == 0) {
            node.attributes.push_back({"unit", word()});
        }
        std::sort(node.attributes.begin(), node.attributes.end(),
                  [](const XmlAttribute& a, const XmlAttribute& b) { return a.name < b.name; });
        return node;
    }

    void grow(XmlNode& node, int depth_left, int max_children) {
        if (depth_left == 0) return;
        const std::size_t n = pick(static_cast<std::size_t>(max_children) + 1);
        for (std::size_t i = 0; i < n; ++i) {
            XmlNode child = element(word());
            grow(child, depth_left - 1, max_children);
            node.children.push_back(std::move(child));
        }
    }
};

}  // namespace csr::test

#endif
