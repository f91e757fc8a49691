#ifndef CSR_DEMO_HPP
#define CSR_DEMO_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csr/baselines.hpp"
#include "csr/digest.hpp"
#include "csr/error.hpp"
#include "csr/fixture.hpp"
#include "csr/manifest.hpp"
#include "csr/verify.hpp"
#include "csr/xml.hpp"

namespace csr {

/// The attack scenarios a content-only digest misses: moving a signed
/// subtree, copying it into another document, and swapping the context it
/// depends on.
enum class DemoScenario { relocate, copy, context_swap };

constexpr std::string_view scenario_name(DemoScenario scenario) {
    switch (scenario) {
        case DemoScenario::relocate: return "relocate";
        case DemoScenario::copy: return "copy";
        case DemoScenario::context_swap: return "context-swap";
    }
    return "unknown";
}

inline std::optional<DemoScenario> scenario_from_name(std::string_view name) {
    if (name == "relocate") return DemoScenario::relocate;
    if (name == "copy") return DemoScenario::copy;
    if (name == "context-swap") return DemoScenario::context_swap;
    return std::nullopt;
}

struct DemoReport {
    std::string scenario;
    std::string description;
    std::string target;
    std::vector<std::string> context;
    std::string tamper;
    Digest baseline_before;
    Digest baseline_after;
    bool baseline_unchanged = false;
    std::string manifest_xml;
    VerifyResult verification;
    VerifyFacet expected_facet = VerifyFacet::structure;
};

/// Builds the scenario from the bundled certificate: signs the results
/// subtree, tampers with the document the way the scenario describes, and
/// verifies both the position-blind baseline digest and the CSR manifest
/// against the tampered document.
inline DemoReport run_demo(DemoScenario scenario, HashAlgorithm algo = HashAlgorithm::sha1) {
    DemoReport report;
    report.scenario = std::string(scenario_name(scenario));
    report.target = "/Certificate/Results";

    XmlNode original = parse_document(kCertificateXml);
    if (scenario == DemoScenario::context_swap) {
        report.context = {"/Certificate/Measurements"};
    }

    HashCounter counter;
    CsrDigest digest = csr_digest(original, report.target,
                                  ContextSet::resolve(original, report.context), algo, counter);
    timestamped_seal(digest, original.find_attribute("created")->value, algo, counter);
    report.manifest_xml = emit_manifest(digest, report.target, report.context);

    {
        HashCounter baseline_counter;
        report.baseline_before =
            dom_hash_digest(select_node(original, report.target), algo, baseline_counter);
    }

    XmlNode tampered = original;
    const XmlNode* moved_subtree = nullptr;
    switch (scenario) {
        case DemoScenario::relocate: {
            // Reparent <Results> under <Measurements>; its content survives
            // untouched but its location does not.
            report.description =
                "move the signed subtree to a different parent inside the same document";
            report.tamper = "moved /Certificate/Results under /Certificate/Measurements";
            report.expected_facet = VerifyFacet::structure;
            XmlNode results = std::move(tampered.children[5]);
            tampered.children.erase(tampered.children.begin() + 5);
            tampered.children[4].children.push_back(std::move(results));
            moved_subtree = &tampered.children[4].children.back();
            break;
        }
        case DemoScenario::copy: {
            // Splice the signed subtree plus manifest into a second document
            // that matches the first byte for byte except for its creation
            // timestamp.
            report.description =
                "copy the signed subtree and manifest into an identical document created at a "
                "different time";
            report.tamper = "receiving document carries created=\"2011-06-01T12:00:00Z\"";
            report.expected_facet = VerifyFacet::timestamp;
            for (auto& attr : tampered.attributes) {
                if (attr.name == "created") attr.value = "2011-06-01T12:00:00Z";
            }
            moved_subtree = &select_node(tampered, report.target);
            break;
        }
        case DemoScenario::context_swap: {
            // The signed results stay intact; the measurements they refer to
            // are replaced.
            report.description =
                "replace the context element the signed subtree draws its meaning from";
            report.tamper = "rewrote the text of /Certificate/Measurements/Description";
            report.expected_facet = VerifyFacet::context;
            XmlNode& description = tampered.children[4].children[0];
            description.value = "Measurement procedure replaced by an unauthorised party";
            moved_subtree = &select_node(tampered, report.target);
            break;
        }
    }

    {
        HashCounter baseline_counter;
        report.baseline_after = dom_hash_digest(*moved_subtree, algo, baseline_counter);
    }
    report.baseline_unchanged = report.baseline_before == report.baseline_after;
    report.verification = verify(tampered, parse_manifest(report.manifest_xml));
    return report;
}

}  // namespace csr

#endif
