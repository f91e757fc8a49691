#ifndef CSR_BENCH_HPP
#define CSR_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "csr/baselines.hpp"
#include "csr/digest.hpp"
#include "csr/error.hpp"
#include "csr/hash.hpp"
#include "csr/xml.hpp"

namespace csr {

// ---------------------------------------------------------------------------
// Synthetic document families. Both topologies hold 1 + per_level * depth
// elements: the chain form places per_level siblings at every level with one
// of them parenting the next level, the flat form puts them all directly
// under the root.
// ---------------------------------------------------------------------------

enum class Topology { depth_chain, width_flat };

struct TreeSpec {
    int depth = 1;
    int per_level = 5;
    int payload = 32;
    Topology topology = Topology::depth_chain;
};

namespace detail {

class NodeGenerator {
public:
    explicit NodeGenerator(std::uint64_t seed) : rng_(seed) {}

    std::string name() {
        static constexpr std::string_view alphabet = "abcdefghijklmnopqrstuvwxyz";
        std::uniform_int_distribution<std::size_t> length(4, 8);
        std::uniform_int_distribution<std::size_t> letter(0, alphabet.size() - 1);
        std::string out = "n";
        const std::size_t n = length(rng_);
        for (std::size_t i = 0; i < n; ++i) out.push_back(alphabet[letter(rng_)]);
        return out;
    }

    std::string payload(int bytes) {
        static constexpr std::string_view alphabet =
            "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 ";
        std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
        std::string out;
        out.reserve(static_cast<std::size_t>(bytes));
        for (int i = 0; i < bytes; ++i) {
            // First byte is a letter so the payload is never whitespace-only.
            out.push_back(i == 0 ? alphabet[pick(rng_) % 52] : alphabet[pick(rng_)]);
        }
        return out;
    }

    std::size_t pick_index(std::size_t n) {
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        return pick(rng_);
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace detail

/// Deterministic tree for (spec, seed); equal inputs generate identical
/// documents on every platform.
inline XmlNode generate_tree(const TreeSpec& spec, std::uint64_t seed) {
    if (spec.depth < 1) throw ValidationError("tree depth must be >= 1");
    if (spec.per_level < 1) throw ValidationError("per-level element count must be >= 1");
    detail::NodeGenerator gen(seed);
    XmlNode root;
    root.name = gen.name();
    root.value = gen.payload(spec.payload);

    if (spec.topology == Topology::width_flat) {
        const int total = spec.per_level * spec.depth;
        root.children.reserve(static_cast<std::size_t>(total));
        for (int i = 0; i < total; ++i) {
            XmlNode child;
            child.name = gen.name();
            child.value = gen.payload(spec.payload);
            root.children.push_back(std::move(child));
        }
        return root;
    }

    XmlNode* parent = &root;
    for (int level = 0; level < spec.depth; ++level) {
        parent->children.reserve(static_cast<std::size_t>(spec.per_level));
        for (int i = 0; i < spec.per_level; ++i) {
            XmlNode child;
            child.name = gen.name();
            child.value = gen.payload(spec.payload);
            parent->children.push_back(std::move(child));
        }
        parent = &parent->children[gen.pick_index(parent->children.size())];
    }
    return root;
}

// ---------------------------------------------------------------------------
// Sweeps. The measured operation is whole-document digest generation: for
// the CSR model that is the content-integrity digest of the root (its
// structure/context parts are per-signature constants, not per-node work).
// ---------------------------------------------------------------------------

enum class DigestModel { csr, domhash, xhash, bertino };

constexpr std::string_view model_name(DigestModel model) {
    switch (model) {
        case DigestModel::csr: return "csr";
        case DigestModel::domhash: return "domhash";
        case DigestModel::xhash: return "xhash";
        case DigestModel::bertino: return "bertino";
    }
    return "unknown";
}

inline std::optional<DigestModel> model_from_name(std::string_view name) {
    if (name == "csr") return DigestModel::csr;
    if (name == "domhash") return DigestModel::domhash;
    if (name == "xhash") return DigestModel::xhash;
    if (name == "bertino") return DigestModel::bertino;
    return std::nullopt;
}

inline Digest document_digest(DigestModel model, const XmlNode& root, HashAlgorithm algo,
                              HashCounter& counter) {
    switch (model) {
        case DigestModel::csr: return content_integrity(root, algo, counter);
        case DigestModel::domhash: return dom_hash_digest(root, algo, counter);
        case DigestModel::xhash: return xhash_digest(root, algo, counter);
        case DigestModel::bertino: return bertino_digest(root, algo, counter);
    }
    throw ValidationError("unknown digest model");
}

enum class SweepAxis { depth, width };

constexpr std::string_view axis_name(SweepAxis axis) {
    return axis == SweepAxis::depth ? "depth" : "width";
}

/// One measured point. The hash count is machine-independent; the median
/// wall time is hardware-bound and reported as observed.
struct BenchResult {
    std::string model;
    HashAlgorithm algo = HashAlgorithm::sha1;
    std::string axis;
    int value = 0;
    std::uint64_t nodes = 0;
    std::uint64_t hash_count = 0;
    std::uint64_t median_ns = 0;
};

struct SweepConfig {
    SweepAxis axis = SweepAxis::depth;
    int from = 10;
    int to = 150;
    int step = 10;
    int per_level = 5;
    int payload = 32;
    std::uint64_t seed = 1;
    int repeat = 10;
    std::vector<DigestModel> models{DigestModel::csr, DigestModel::domhash, DigestModel::xhash,
                                    DigestModel::bertino};
    std::vector<HashAlgorithm> algos{HashAlgorithm::sha1};
};

namespace detail {

inline std::uint64_t median_of(std::vector<std::uint64_t> samples) {
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

}  // namespace detail

/// Runs every (point, model, algorithm) combination `repeat` times and
/// keeps the median wall time plus the (deterministic) hash count.
inline std::vector<BenchResult> run_sweep(const SweepConfig& config) {
    if (config.from < 1 || config.step < 1 || config.to < config.from) {
        throw ValidationError("invalid sweep range");
    }
    if (config.repeat < 1) throw ValidationError("repeat count must be >= 1");

    std::vector<BenchResult> results;
    for (int value = config.from; value <= config.to; value += config.step) {
        TreeSpec spec;
        spec.depth = value;
        spec.per_level = config.per_level;
        spec.payload = config.payload;
        spec.topology =
            config.axis == SweepAxis::depth ? Topology::depth_chain : Topology::width_flat;
        const XmlNode tree = generate_tree(spec, config.seed + static_cast<std::uint64_t>(value));
        const auto node_count = preorder_nodes(tree).size();

        for (const HashAlgorithm algo : config.algos) {
            for (const DigestModel model : config.models) {
                std::vector<std::uint64_t> times;
                times.reserve(static_cast<std::size_t>(config.repeat));
                std::uint64_t hash_count = 0;
                for (int rep = 0; rep < config.repeat; ++rep) {
                    HashCounter counter;
                    const auto start = std::chrono::steady_clock::now();
                    const Digest digest = document_digest(model, tree, algo, counter);
                    const auto stop = std::chrono::steady_clock::now();
                    static_cast<void>(digest);
                    times.push_back(static_cast<std::uint64_t>(
                        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start)
                            .count()));
                    hash_count = counter.count();
                }
                BenchResult row;
                row.model = std::string(model_name(model));
                row.algo = algo;
                row.axis = std::string(axis_name(config.axis));
                row.value = value;
                row.nodes = node_count;
                row.hash_count = hash_count;
                row.median_ns = detail::median_of(std::move(times));
                results.push_back(std::move(row));
            }
        }
    }
    return results;
}

inline std::string results_csv(const std::vector<BenchResult>& results) {
    std::string out = "model,algo,axis,value,nodes,hash_count,median_ns\n";
    for (const auto& row : results) {
        out += row.model;
        out.push_back(',');
        out += algorithm_name(row.algo);
        out.push_back(',');
        out += row.axis;
        out.push_back(',');
        out += std::to_string(row.value);
        out.push_back(',');
        out += std::to_string(row.nodes);
        out.push_back(',');
        out += std::to_string(row.hash_count);
        out.push_back(',');
        out += std::to_string(row.median_ns);
        out.push_back('\n');
    }
    return out;
}

inline void export_results(const std::vector<BenchResult>& results,
                           const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
    file << results_csv(results);
    if (!file.flush()) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace csr

#endif
