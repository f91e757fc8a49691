#ifndef CSR_VERIFY_HPP
#define CSR_VERIFY_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csr/digest.hpp"
#include "csr/manifest.hpp"
#include "csr/xml.hpp"

namespace csr {

enum class VerifyFacet { content, structure, context, timestamp };

constexpr std::string_view facet_name(VerifyFacet facet) {
    switch (facet) {
        case VerifyFacet::content: return "content";
        case VerifyFacet::structure: return "structure";
        case VerifyFacet::context: return "context";
        case VerifyFacet::timestamp: return "timestamp";
    }
    return "unknown";
}

struct FacetCheck {
    enum class State { passed, failed, skipped };

    VerifyFacet facet;
    State state;
    std::string note;
};

struct VerifyResult {
    bool pass = true;
    std::optional<VerifyFacet> failed_facet;
    std::vector<FacetCheck> checks;
    std::string detail;
};

/// Recomputes every digest facet from the document and compares against the
/// manifest, reporting the first failing facet. A manifest whose target no
/// longer resolves fails the structure facet; a sealed manifest additionally
/// requires the document's own creation-timestamp attribute (when present)
/// to match the sealed timestamp.
inline VerifyResult verify(const XmlNode& root, const IntegrityManifest& manifest,
                           std::string_view timestamp_attr = "created") {
    VerifyResult result;
    const HashAlgorithm algo = manifest.algorithm;
    HashCounter counter;

    auto record = [&](VerifyFacet facet, std::string note) {
        result.checks.push_back({facet, FacetCheck::State::passed, std::move(note)});
    };
    auto fail = [&](VerifyFacet facet, std::string note) -> VerifyResult& {
        result.pass = false;
        result.failed_facet = facet;
        result.detail = note;
        result.checks.push_back({facet, FacetCheck::State::failed, std::move(note)});
        return result;
    };
    auto skip = [&](VerifyFacet facet, std::string note) {
        result.checks.push_back({facet, FacetCheck::State::skipped, std::move(note)});
    };

    const XmlNode* target = nullptr;
    try {
        target = &select_node(root, manifest.target);
    } catch (const LookupError& e) {
        fail(VerifyFacet::structure, "target does not resolve: " + std::string(e.what()));
        skip(VerifyFacet::content, "target unresolved");
        skip(VerifyFacet::context, "target unresolved");
        skip(VerifyFacet::timestamp, "target unresolved");
        return result;
    }

    const Digest ci = content_integrity(*target, algo, counter);
    if (ci.bytes != manifest.content_digest_bytes()) {
        fail(VerifyFacet::content, "content digest mismatch for " + manifest.target);
        skip(VerifyFacet::structure, "not evaluated");
        skip(VerifyFacet::context, "not evaluated");
        skip(VerifyFacet::timestamp, "not evaluated");
        return result;
    }
    record(VerifyFacet::content, "content digest matches");

    const Digest st = structure_integrity(root, manifest.target, algo, counter);
    if (st.bytes != manifest.sti_digest_bytes()) {
        fail(VerifyFacet::structure, "structure digest mismatch for " + manifest.target);
        skip(VerifyFacet::context, "not evaluated");
        skip(VerifyFacet::timestamp, "not evaluated");
        return result;
    }
    record(VerifyFacet::structure, "structure digest matches");

    ByteBuffer cri;
    if (manifest.cri) {
        ContextSet context;
        try {
            context = ContextSet::resolve(root, manifest.cri->related_nodes);
        } catch (const LookupError& e) {
            fail(VerifyFacet::context, "context element does not resolve: " + std::string(e.what()));
            skip(VerifyFacet::timestamp, "not evaluated");
            return result;
        }
        cri = context_referential_integrity(root, context, algo, counter);
        if (cri != manifest.cri_digest_bytes()) {
            fail(VerifyFacet::context, "context digest mismatch");
            skip(VerifyFacet::timestamp, "not evaluated");
            return result;
        }
        record(VerifyFacet::context, "context digest matches");
    } else {
        record(VerifyFacet::context, "no context declared");
    }

    ByteBuffer combined_input;
    append_frame(combined_input, ci.bytes);
    append_frame(combined_input, st.bytes);
    append_frame(combined_input, cri);
    const Digest combined = hash_bytes(combined_input, algo, counter);
    if (combined.bytes != manifest.reference_digest_bytes()) {
        // Parts match but the stored combination does not: the manifest's
        // Reference value itself was altered.
        fail(VerifyFacet::content, "combined digest mismatch against the manifest Reference");
        skip(VerifyFacet::timestamp, "not evaluated");
        return result;
    }

    if (manifest.seal) {
        if (const XmlAttribute* doc_time = root.find_attribute(timestamp_attr)) {
            if (doc_time->value != manifest.seal->timestamp) {
                fail(VerifyFacet::timestamp,
                     "document creation timestamp '" + doc_time->value +
                         "' differs from sealed timestamp '" + manifest.seal->timestamp + "'");
                return result;
            }
        }
        ByteBuffer seal_input;
        append_frame(seal_input, manifest.seal->timestamp);
        append_frame(seal_input, combined.bytes);
        const Digest seal = hash_bytes(seal_input, algo, counter);
        if (seal.bytes != manifest.seal_digest_bytes()) {
            fail(VerifyFacet::timestamp, "seal digest mismatch");
            return result;
        }
        record(VerifyFacet::timestamp, "seal matches");
    } else {
        skip(VerifyFacet::timestamp, "manifest is unsealed");
    }

    result.detail = "all facets verified";
    return result;
}

/// Parses the manifest bytes and verifies them against the document.
inline VerifyResult verify(const XmlNode& root, std::string_view manifest_xml,
                           std::string_view timestamp_attr = "created") {
    return verify(root, parse_manifest(manifest_xml), timestamp_attr);
}

}  // namespace csr

#endif
