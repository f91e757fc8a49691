#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "csr/baselines.hpp"
#include "csr/digest.hpp"
#include "csr/fixture.hpp"

#include "support.hpp"

using namespace csr;

TEST_CASE("dom-hash single element trace") {
    const XmlNode a = parse_document("<a/>");
    HashCounter counter;
    const Digest digest = dom_hash_digest(a, HashAlgorithm::sha1, counter);
    CHECK(counter.count() == 3);  // attribute hash, dos, combining hash
    CHECK(digest.hex() == "3e33ece00fedf1926a6e56e7739e73823d8aebd1");
}

TEST_CASE("dom-hash per-node costs: 1 for a leaf, 2 more for the recursion") {
    // Two-node trace: the root costs 3 (attribute hash + dos + combine), the
    // leaf child costs its dos only.
    HashCounter two;
    dom_hash_digest(parse_document("<a><b/></a>"), HashAlgorithm::sha1, two);
    CHECK(two.count() == 4);

    // A further nesting level turns b interior: it now costs 3.
    HashCounter three;
    dom_hash_digest(parse_document("<a><b><c/></b></a>"), HashAlgorithm::sha1, three);
    CHECK(three.count() == 7);
}

TEST_CASE("dom-hash covers deep content and attributes") {
    const XmlNode doc = parse_document("<a><b><c>payload</c></b></a>");
    XmlNode altered = doc;
    altered.children[0].children[0].value = "tampered";
    HashCounter c1, c2;
    CHECK(dom_hash_digest(doc, HashAlgorithm::sha1, c1) !=
          dom_hash_digest(altered, HashAlgorithm::sha1, c2));

    XmlNode with_attr = doc;
    with_attr.children[0].attributes.push_back({"k", "v"});
    HashCounter c3;
    CHECK(dom_hash_digest(doc, HashAlgorithm::sha1, c1) !=
          dom_hash_digest(with_attr, HashAlgorithm::sha1, c3));
}

TEST_CASE("dom-hash costs more than the content digest on the fixture") {
    const XmlNode root = parse_document(kCertificateXml);

    HashCounter dom_counter;
    dom_hash_digest(root, HashAlgorithm::sha1, dom_counter);
    CHECK(dom_counter.count() == 18);  // 3 interior * 3 + 9 leaves

    HashCounter csr_counter;
    csr_digest(root, "/Certificate", ContextSet{}, HashAlgorithm::sha1, csr_counter);
    CHECK(csr_counter.count() == 17);
    CHECK(dom_counter.count() > csr_counter.count());

    HashCounter again;
    CHECK(dom_hash_digest(root, HashAlgorithm::sha1, again) ==
          dom_hash_digest(root, HashAlgorithm::sha1, again));
}

TEST_CASE("xhash space modes") {
    const std::string pretty = "<a>\n  <b> x </b>\n</a>";
    const XmlNode doc = parse_document(pretty);

    HashCounter c1, c2;
    CHECK(xhash_digest(doc, HashAlgorithm::sha1, c1, XhashSpaceMode::preserved) !=
          xhash_digest(doc, HashAlgorithm::sha1, c2, XhashSpaceMode::normalized));

    const XmlNode tight = parse_document("<a><b> x </b></a>");
    HashCounter c3, c4;
    CHECK(xhash_digest(tight, HashAlgorithm::sha1, c3, XhashSpaceMode::preserved) ==
          xhash_digest(tight, HashAlgorithm::sha1, c4, XhashSpaceMode::normalized));

    HashCounter c5;
    xhash_digest(parse_document("<a/>"), HashAlgorithm::sha1, c5);
    CHECK(c5.count() == 3);

    // The normalized mode coincides with DOM-HASH over the canonical model.
    HashCounter c6, c7;
    CHECK(xhash_digest(doc, HashAlgorithm::sha1, c6) ==
          dom_hash_digest(doc, HashAlgorithm::sha1, c7));
}

TEST_CASE("bertino single element and attribute traces") {
    const XmlNode a = parse_document("<a/>");
    HashCounter counter;
    const Digest digest = bertino_digest(a, HashAlgorithm::sha1, counter);
    CHECK(counter.count() == 3);
    CHECK(digest.hex() == "0b15b70db12d038400ad0364ffbcce7f37671d78");

    // An attribute node costs exactly 3 invocations.
    HashCounter attr_counter;
    bertino_attribute_digest(XmlAttribute{"id", "x"}, HashAlgorithm::sha1, attr_counter);
    CHECK(attr_counter.count() == 3);

    // The same 3 show up as the difference between a document with and
    // without the attribute.
    HashCounter with_attr;
    bertino_digest(parse_document("<a id=\"x\"/>"), HashAlgorithm::sha1, with_attr);
    CHECK(with_attr.count() == 6);

    // Strict mode drops attribute nodes from the digest.
    HashCounter strict;
    const Digest strict_digest =
        bertino_digest(parse_document("<a id=\"x\"/>"), HashAlgorithm::sha1, strict, false);
    CHECK(strict.count() == 3);
    CHECK(strict_digest == digest);
}

TEST_CASE("hash count ordering csr < domhash < bertino") {
    test::TreeGenerator gen(8080);
    for (int trial = 0; trial < 25; ++trial) {
        const XmlNode tree = gen.tree(4, 3);
        if (tree.children.empty()) continue;  // need at least two elements

        HashCounter csr_counter, dom_counter, bert_counter;
        content_integrity(tree, HashAlgorithm::sha1, csr_counter);
        dom_hash_digest(tree, HashAlgorithm::sha1, dom_counter);
        bertino_digest(tree, HashAlgorithm::sha1, bert_counter);
        CHECK(csr_counter.count() < dom_counter.count());
        CHECK(dom_counter.count() < bert_counter.count());
    }
}

TEST_CASE("all baselines detect single-character edits") {
    test::TreeGenerator gen(616);
    for (int trial = 0; trial < 30; ++trial) {
        XmlNode tree = gen.tree(4, 3);
        auto paths = test::collect_paths(tree);
        XmlNode mutated = tree;
        XmlNode& victim = test::node_at(mutated, paths[gen.rng()() % paths.size()]);
        if (victim.value.empty()) victim.value = "x";
        else victim.value[gen.rng()() % victim.value.size()] ^= 0x01;

        HashCounter c1, c2, c3, c4, c5, c6;
        CHECK(dom_hash_digest(tree, HashAlgorithm::sha1, c1) !=
              dom_hash_digest(mutated, HashAlgorithm::sha1, c2));
        CHECK(xhash_digest(tree, HashAlgorithm::sha1, c3) !=
              xhash_digest(mutated, HashAlgorithm::sha1, c4));
        CHECK(bertino_digest(tree, HashAlgorithm::sha1, c5) !=
              bertino_digest(mutated, HashAlgorithm::sha1, c6));
    }
}

TEST_CASE("node count closed form equals direct summation") {
    for (int k = 2; k <= 5; ++k) {
        for (int m = 1; m <= 10; ++m) {
            std::uint64_t direct = 0;
            std::uint64_t power = 1;
            for (int x = 1; x <= m; ++x) {
                direct += power;
                power *= static_cast<std::uint64_t>(k);
            }
            CHECK(node_count_N(k, m) == direct);
        }
    }
    CHECK(node_count_N(2, 3) == 7);
    CHECK(node_count_N(3, 2) == 4);
    CHECK(node_count_N(2, 1) == 1);
    CHECK(node_count_N(5, 1) == 1);
    CHECK_THROWS_AS(node_count_N(1, 3), std::domain_error);
    CHECK_THROWS_AS(node_count_N(2, 0), std::domain_error);
}

TEST_CASE("hash count closed form equals direct summation") {
    for (int k = 2; k <= 5; ++k) {
        for (int m = 1; m <= 10; ++m) {
            std::uint64_t direct = 0;
            std::uint64_t power = 1;
            for (int x = 1; x <= m; ++x) {
                direct += static_cast<std::uint64_t>(x) * power;
                power *= static_cast<std::uint64_t>(k);
            }
            CHECK(hash_count_W(k, m) == direct);
        }
    }
    CHECK(hash_count_W(2, 3) == 17);
    CHECK(hash_count_W(3, 2) == 7);
    CHECK(hash_count_W(4, 1) == 1);
    CHECK_THROWS_AS(hash_count_W(1, 1), std::domain_error);
}

TEST_CASE("time model evaluates the block formula") {
    CostModelParams params;
    params.c1 = 3.0;
    params.c2 = 5.0;
    params.block_size = 64.0;

    CHECK(time_model_T(0, params) == 3.0 + 5.0);
    CHECK(time_model_T(64, params) == 2 * 3.0 + 5.0);

    double previous = 0.0;
    for (std::uint64_t l = 0; l <= 4 * 64; ++l) {
        const double t = time_model_T(l, params);
        CHECK(t >= previous);
        // Step-constant within each 64-byte block.
        CHECK(t == time_model_T((l / 64) * 64, params));
        previous = t;
    }

    CostModelParams bad;
    bad.block_size = 0.0;
    CHECK_THROWS_AS(time_model_T(1, bad), std::domain_error);
}

TEST_CASE("complete tree shape and rehashing overhead") {
    const TreeShape shape = TreeShape::complete(2, 3);
    CHECK(shape.node_size == 7);
    CHECK(shape.depth_size == 17);
    CostModelParams params;
    params.c = 2.0;
    params.c_prime = 3.0;
    CHECK(rehash_overhead(shape, params) == 2.0 * 7 + 3.0 * 17);
}
