// Command-line front end: compute digests and manifests, verify documents,
// run the model comparison sweeps, and walk through the tamper scenarios.
//
// Exit codes: 0 success / verification passed, 1 verification failed,
// 2 operational error (bad flags, unreadable files, malformed input).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csr/csr.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw csr::IoError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw csr::IoError("cannot write '" + path + "'");
    file << content;
    if (!file.flush()) throw csr::IoError("failed writing '" + path + "'");
}

csr::HashAlgorithm algo_from_flag(const std::string& flag) {
    if (!flag.empty()) {
        if (auto algo = csr::algorithm_from_name(flag)) return *algo;
        throw csr::ValidationError("unknown hash algorithm '" + flag + "'");
    }
    if (const char* env = std::getenv("CSR_HASH_ALGO")) {
        if (auto algo = csr::algorithm_from_name(env)) return *algo;
        throw csr::ValidationError("CSR_HASH_ALGO holds unknown algorithm '" +
                                   std::string(env) + "'");
    }
    return csr::HashAlgorithm::sha1;
}

struct DigestOptions {
    std::string input;
    std::string model = "csr";
    std::string algo;
    std::string target;
    std::vector<std::string> context;
    std::string timestamp;
    std::string timestamp_attr = "created";
    std::string out;
    std::string encoding = "base64";
    std::string space_mode = "default";
    bool stats = false;
    bool as_json = false;
};

int cmd_digest(const DigestOptions& opt) {
    const csr::HashAlgorithm algo = algo_from_flag(opt.algo);
    const csr::DigestEncoding encoding = opt.encoding == "hexdash"
                                             ? csr::DigestEncoding::hex_dash
                                             : csr::DigestEncoding::base64;
    const csr::XmlNode root = csr::parse_document(read_file(opt.input));
    csr::HashCounter counter;

    const std::string target = opt.target.empty() ? "/" + root.name : opt.target;
    std::string encoded;
    std::optional<std::string> manifest_path;

    if (opt.model == "csr") {
        const auto context = csr::ContextSet::resolve(root, opt.context);
        csr::CsrDigest digest = csr::csr_digest(root, target, context, algo, counter);

        std::string timestamp = opt.timestamp;
        if (timestamp.empty()) {
            if (const auto* attr = root.find_attribute(opt.timestamp_attr)) {
                timestamp = attr->value;
            }
        }
        if (!timestamp.empty()) csr::timestamped_seal(digest, timestamp, algo, counter);

        encoded = csr::encode_digest(digest.csr.bytes, encoding);
        if (!opt.out.empty()) {
            write_file(opt.out, csr::emit_manifest(digest, target, opt.context, encoding));
            manifest_path = opt.out;
        }
    } else {
        if (!opt.out.empty()) {
            throw csr::ValidationError("manifests are only emitted for the csr model");
        }
        if (!opt.context.empty()) {
            throw csr::ValidationError("context elements only apply to the csr model");
        }
        const auto model = csr::model_from_name(opt.model);
        if (!model) throw csr::ValidationError("unknown model '" + opt.model + "'");
        const csr::XmlNode& subtree = csr::select_node(root, target);
        csr::Digest digest;
        if (*model == csr::DigestModel::xhash && opt.space_mode == "preserved") {
            digest = csr::xhash_digest(subtree, algo, counter, csr::XhashSpaceMode::preserved);
        } else {
            digest = csr::document_digest(*model, subtree, algo, counter);
        }
        encoded = csr::encode_digest(digest.bytes, encoding);
    }

    if (opt.as_json) {
        json out = {{"model", opt.model},
                    {"algo", csr::algorithm_name(algo)},
                    {"target", target},
                    {"digest", encoded},
                    {"hash_count", counter.count()}};
        if (manifest_path) out["manifest"] = *manifest_path;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << encoded << "\n";
        if (opt.stats) std::cout << "hash count: " << counter.count() << "\n";
        if (manifest_path) std::cout << "manifest: " << *manifest_path << "\n";
    }
    return 0;
}

struct VerifyOptions {
    std::string document;
    std::string manifest;
    std::string timestamp_attr = "created";
    bool as_json = false;
};

int cmd_verify(const VerifyOptions& opt) {
    const csr::XmlNode root = csr::parse_document(read_file(opt.document));
    const csr::IntegrityManifest manifest = csr::parse_manifest(read_file(opt.manifest));
    const csr::VerifyResult result = csr::verify(root, manifest, opt.timestamp_attr);

    if (opt.as_json) {
        json out = {{"pass", result.pass}, {"detail", result.detail}};
        if (result.failed_facet) out["facet"] = csr::facet_name(*result.failed_facet);
        std::cout << out.dump(2) << "\n";
    } else if (result.pass) {
        std::cout << "verification: pass\n";
    } else {
        std::cout << "verification: fail (facet " << csr::facet_name(*result.failed_facet)
                  << "): " << result.detail << "\n";
    }
    return result.pass ? 0 : 1;
}

struct BenchOptions {
    std::string axis = "depth";
    int from = 10;
    int to = 150;
    int step = 10;
    int per_level = 5;
    int payload = 32;
    std::uint64_t seed = 1;
    int repeat = 10;
    std::vector<std::string> models;
    std::vector<std::string> algos;
    std::string out;
    bool as_json = false;
};

int cmd_bench(const BenchOptions& opt) {
    csr::SweepConfig config;
    config.axis = opt.axis == "width" ? csr::SweepAxis::width : csr::SweepAxis::depth;
    config.from = opt.from;
    config.to = opt.to;
    config.step = opt.step;
    config.per_level = opt.per_level;
    config.payload = opt.payload;
    config.seed = opt.seed;
    config.repeat = opt.repeat;
    if (!opt.models.empty()) {
        config.models.clear();
        for (const auto& name : opt.models) {
            const auto model = csr::model_from_name(name);
            if (!model) throw csr::ValidationError("unknown model '" + name + "'");
            config.models.push_back(*model);
        }
    }
    if (!opt.algos.empty()) {
        config.algos.clear();
        for (const auto& name : opt.algos) {
            const auto algo = csr::algorithm_from_name(name);
            if (!algo) throw csr::ValidationError("unknown hash algorithm '" + name + "'");
            config.algos.push_back(*algo);
        }
    } else {
        config.algos = {algo_from_flag("")};
    }

    const auto results = csr::run_sweep(config);
    if (!opt.out.empty()) csr::export_results(results, opt.out);

    if (opt.as_json) {
        json rows = json::array();
        for (const auto& row : results) {
            rows.push_back({{"model", row.model},
                            {"algo", csr::algorithm_name(row.algo)},
                            {"axis", row.axis},
                            {"value", row.value},
                            {"nodes", row.nodes},
                            {"hash_count", row.hash_count},
                            {"median_ns", row.median_ns}});
        }
        std::cout << rows.dump(2) << "\n";
        return 0;
    }

    // Ordering verdict per (point, algorithm): csr < domhash < bertino by
    // hash count, with whichever of the three models were measured.
    for (const auto algo : config.algos) {
        for (int value = config.from; value <= config.to; value += config.step) {
            std::uint64_t nodes = 0;
            std::optional<std::uint64_t> csr_count, domhash_count, bertino_count;
            for (const auto& row : results) {
                if (row.value != value || row.algo != algo) continue;
                nodes = row.nodes;
                if (row.model == "csr") csr_count = row.hash_count;
                if (row.model == "domhash") domhash_count = row.hash_count;
                if (row.model == "bertino") bertino_count = row.hash_count;
            }
            std::cout << opt.axis << "=" << value << " nodes=" << nodes << " "
                      << csr::algorithm_name(algo) << ":";
            if (csr_count) std::cout << " csr=" << *csr_count;
            if (domhash_count) std::cout << " domhash=" << *domhash_count;
            if (bertino_count) std::cout << " bertino=" << *bertino_count;
            if (csr_count && domhash_count && bertino_count) {
                const bool ordered =
                    *csr_count < *domhash_count && *domhash_count < *bertino_count;
                std::cout << (ordered ? "  ordering: csr < domhash < bertino"
                                      : "  ordering: VIOLATED");
            }
            std::cout << "\n";
        }
    }
    if (!opt.out.empty()) std::cout << "csv: " << opt.out << "\n";
    return 0;
}

struct DemoOptions {
    std::string scenario;
    std::string algo;
    bool as_json = false;
};

const char* check_state_name(csr::FacetCheck::State state) {
    switch (state) {
        case csr::FacetCheck::State::passed: return "pass";
        case csr::FacetCheck::State::failed: return "FAIL";
        case csr::FacetCheck::State::skipped: return "skipped";
    }
    return "?";
}

int cmd_demo(const DemoOptions& opt) {
    const auto scenario = csr::scenario_from_name(opt.scenario);
    if (!scenario) {
        throw csr::ValidationError("unknown scenario '" + opt.scenario +
                                   "' (expected relocate, copy or context-swap)");
    }
    const csr::DemoReport report = csr::run_demo(*scenario, algo_from_flag(opt.algo));

    if (opt.as_json) {
        json checks = json::array();
        for (const auto& check : report.verification.checks) {
            checks.push_back({{"facet", csr::facet_name(check.facet)},
                              {"state", check_state_name(check.state)},
                              {"note", check.note}});
        }
        json out = {{"scenario", report.scenario},
                    {"target", report.target},
                    {"tamper", report.tamper},
                    {"baseline_digest_unchanged", report.baseline_unchanged},
                    {"expected_facet", csr::facet_name(report.expected_facet)},
                    {"pass", report.verification.pass},
                    {"checks", checks}};
        if (report.verification.failed_facet) {
            out["facet"] = csr::facet_name(*report.verification.failed_facet);
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    std::cout << "scenario: " << report.scenario << "\n"
              << "  " << report.description << "\n"
              << "signed node: " << report.target << "\n";
    for (const auto& c : report.context) std::cout << "context: " << c << "\n";
    std::cout << "tamper: " << report.tamper << "\n"
              << "baseline DOM-HASH of the signed subtree:\n"
              << "  before: " << report.baseline_before.hex() << "\n"
              << "  after:  " << report.baseline_after.hex() << "\n"
              << (report.baseline_unchanged
                      ? "  unchanged: a content-only digest does not notice the tamper\n"
                      : "  changed\n")
              << "CSR verification of the tampered document:\n";
    for (const auto& check : report.verification.checks) {
        std::cout << "  " << csr::facet_name(check.facet) << ": "
                  << check_state_name(check.state);
        if (!check.note.empty()) std::cout << " (" << check.note << ")";
        std::cout << "\n";
    }
    std::cout << "verdict: "
              << (report.verification.pass
                      ? "pass"
                      : "fail (facet " +
                            std::string(csr::facet_name(*report.verification.failed_facet)) + ")")
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Content, structure and context-referential integrity digests for XML"};
    app.require_subcommand(1);

    DigestOptions digest_opt;
    CLI::App* digest = app.add_subcommand("digest", "Compute a document digest and manifest");
    digest->add_option("input", digest_opt.input, "XML document")->required();
    digest->add_option("--model", digest_opt.model, "csr|domhash|xhash|bertino")
        ->check(CLI::IsMember({"csr", "domhash", "xhash", "bertino"}));
    digest->add_option("--algo", digest_opt.algo, "sha1|sha256 (default: CSR_HASH_ALGO or sha1)");
    digest->add_option("--target", digest_opt.target, "selector of the signed node (csr model)");
    digest->add_option("--context", digest_opt.context,
                       "context-related element selector (repeatable)");
    digest->add_option("--timestamp", digest_opt.timestamp, "RFC 3339 UTC sealing timestamp");
    digest->add_option("--timestamp-attr", digest_opt.timestamp_attr,
                       "root attribute holding the creation timestamp");
    digest->add_option("--out", digest_opt.out, "write the manifest here");
    digest->add_option("--encoding", digest_opt.encoding, "base64|hexdash")
        ->check(CLI::IsMember({"base64", "hexdash"}));
    digest->add_option("--space-mode", digest_opt.space_mode, "default|preserved (xhash)")
        ->check(CLI::IsMember({"default", "preserved"}));
    digest->add_flag("--stats", digest_opt.stats, "print the hash invocation count");
    digest->add_flag("--json", digest_opt.as_json, "machine-readable output");

    VerifyOptions verify_opt;
    CLI::App* verify = app.add_subcommand("verify", "Verify a document against a manifest");
    verify->add_option("document", verify_opt.document, "XML document")->required();
    verify->add_option("manifest", verify_opt.manifest, "integrity manifest")->required();
    verify->add_option("--timestamp-attr", verify_opt.timestamp_attr,
                       "root attribute holding the creation timestamp");
    verify->add_flag("--json", verify_opt.as_json, "machine-readable output");

    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "Compare digest models over synthetic trees");
    bench->add_option("--axis", bench_opt.axis, "depth|width")
        ->check(CLI::IsMember({"depth", "width"}));
    bench->add_option("--from", bench_opt.from, "first sweep value");
    bench->add_option("--to", bench_opt.to, "last sweep value");
    bench->add_option("--step", bench_opt.step, "sweep increment");
    bench->add_option("--per-level", bench_opt.per_level, "elements per level");
    bench->add_option("--payload", bench_opt.payload, "text bytes per element");
    bench->add_option("--seed", bench_opt.seed, "generator seed");
    bench->add_option("--repeat", bench_opt.repeat, "timing repetitions per point");
    bench->add_option("--models", bench_opt.models, "models to run (repeatable)")
        ->delimiter(',');
    bench->add_option("--algos", bench_opt.algos, "hash algorithms to run (repeatable)")
        ->delimiter(',');
    bench->add_option("--out", bench_opt.out, "write CSV results here");
    bench->add_flag("--json", bench_opt.as_json, "machine-readable output");

    DemoOptions demo_opt;
    CLI::App* demo = app.add_subcommand("demo", "Show a tamper scenario end to end");
    demo->add_option("scenario", demo_opt.scenario, "relocate|copy|context-swap")->required();
    demo->add_option("--algo", demo_opt.algo, "sha1|sha256");
    demo->add_flag("--json", demo_opt.as_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (digest->parsed()) return cmd_digest(digest_opt);
        if (verify->parsed()) return cmd_verify(verify_opt);
        if (bench->parsed()) return cmd_bench(bench_opt);
        if (demo->parsed()) return cmd_demo(demo_opt);
    } catch (const csr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
