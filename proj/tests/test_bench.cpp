#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "csr/bench.hpp"

using namespace csr;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("generated trees have the specified node counts") {
    TreeSpec chain;
    chain.depth = 3;
    chain.per_level = 5;
    CHECK(preorder_nodes(generate_tree(chain, 1)).size() == 16);

    TreeSpec single;
    single.depth = 1;
    CHECK(preorder_nodes(generate_tree(single, 1)).size() == 6);

    TreeSpec flat;
    flat.depth = 3;
    flat.topology = Topology::width_flat;
    const XmlNode tree = generate_tree(flat, 1);
    CHECK(preorder_nodes(tree).size() == 16);
    CHECK(tree.children.size() == 15);
    for (const auto& child : tree.children) CHECK(child.children.empty());
}

TEST_CASE("generation is deterministic in (spec, seed)") {
    TreeSpec spec;
    spec.depth = 4;
    CHECK(generate_tree(spec, 42) == generate_tree(spec, 42));
    CHECK(serialize_document(generate_tree(spec, 42)) ==
          serialize_document(generate_tree(spec, 42)));
    CHECK(!(generate_tree(spec, 42) == generate_tree(spec, 43)));
}

TEST_CASE("sweep produces one row per point, model and algorithm") {
    SweepConfig config;
    config.from = 10;
    config.to = 50;
    config.step = 10;
    config.repeat = 3;
    const auto results = run_sweep(config);
    CHECK(results.size() == 5 * 4);

    // Hash counts are a function of the topology alone: rerunning the sweep
    // reproduces them exactly.
    const auto again = run_sweep(config);
    for (std::size_t i = 0; i < results.size(); ++i) {
        CHECK(results[i].hash_count == again[i].hash_count);
        CHECK(results[i].nodes == again[i].nodes);
    }
}

TEST_CASE("the full depth sweep yields 15 points for each of the 4 models") {
    SweepConfig config;
    config.repeat = 1;  // defaults: depth 10..150 step 10, all models, sha1
    const auto results = run_sweep(config);
    CHECK(results.size() == 15 * 4);
}

TEST_CASE("hash counts are ordered and grow with depth") {
    SweepConfig config;
    config.from = 10;
    config.to = 60;
    config.step = 10;
    config.repeat = 1;
    const auto results = run_sweep(config);

    std::map<std::string, std::vector<std::uint64_t>> by_model;
    for (const auto& row : results) by_model[row.model].push_back(row.hash_count);

    for (const auto& [model, counts] : by_model) {
        for (std::size_t i = 1; i < counts.size(); ++i) {
            INFO(model);
            CHECK(counts[i] > counts[i - 1]);
        }
    }
    for (std::size_t i = 0; i < by_model["csr"].size(); ++i) {
        CHECK(by_model["csr"][i] < by_model["domhash"][i]);
        CHECK(by_model["domhash"][i] < by_model["bertino"][i]);
        CHECK(by_model["xhash"][i] == by_model["domhash"][i]);
    }
}

TEST_CASE("closed forms predict the chain topology counts") {
    // depth d with p per level: the content digest costs 2 interior + leaves,
    // the recursive baseline 3 interior + leaves, the Merkle baseline 3 per
    // node.
    SweepConfig config;
    config.from = 10;
    config.to = 30;
    config.step = 10;
    config.repeat = 1;
    for (const auto& row : run_sweep(config)) {
        const std::uint64_t d = static_cast<std::uint64_t>(row.value);
        const std::uint64_t p = 5;
        const std::uint64_t interior = d;
        const std::uint64_t leaves = 1 + (p - 1) * d;
        CHECK(row.nodes == 1 + p * d);
        if (row.model == "csr") CHECK(row.hash_count == 2 * interior + leaves);
        if (row.model == "domhash") CHECK(row.hash_count == 3 * interior + leaves);
        if (row.model == "bertino") CHECK(row.hash_count == 3 * row.nodes);
    }
}

TEST_CASE("depth chains never cost fewer hashes than flat trees of equal size") {
    for (int value : {2, 5, 9}) {
        SweepConfig chain;
        chain.axis = SweepAxis::depth;
        chain.from = chain.to = value;
        chain.repeat = 1;
        SweepConfig flat = chain;
        flat.axis = SweepAxis::width;

        const auto chain_rows = run_sweep(chain);
        const auto flat_rows = run_sweep(flat);
        REQUIRE(chain_rows.size() == flat_rows.size());
        for (std::size_t i = 0; i < chain_rows.size(); ++i) {
            REQUIRE(chain_rows[i].model == flat_rows[i].model);
            CHECK(chain_rows[i].nodes == flat_rows[i].nodes);
            CHECK(chain_rows[i].hash_count >= flat_rows[i].hash_count);
            if (chain_rows[i].model == "bertino") {
                CHECK(chain_rows[i].hash_count == flat_rows[i].hash_count);
            }
        }
    }
}

TEST_CASE("csv export") {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "csr-bench-test";
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / "results.csv";

    SECTION("empty results give a header-only file") {
        export_results({}, path);
        std::ifstream file(path);
        std::string content((std::istreambuf_iterator<char>(file)),
                            std::istreambuf_iterator<char>());
        CHECK(content == "model,algo,axis,value,nodes,hash_count,median_ns\n");
    }

    SECTION("one row gives a two-line file") {
        BenchResult row;
        row.model = "csr";
        row.algo = HashAlgorithm::sha256;
        row.axis = "depth";
        row.value = 10;
        row.nodes = 51;
        row.hash_count = 61;
        row.median_ns = 1234;
        export_results({row}, path);
        std::ifstream file(path);
        std::string content((std::istreambuf_iterator<char>(file)),
                            std::istreambuf_iterator<char>());
        const auto lines = split_lines(content);
        REQUIRE(lines.size() == 2);
        CHECK(lines[1] == "csr,sha256,depth,10,51,61,1234");
    }

    SECTION("a full sweep file parses back to the same row count") {
        SweepConfig config;
        config.from = 10;
        config.to = 30;
        config.step = 10;
        config.repeat = 1;
        const auto results = run_sweep(config);
        export_results(results, path);
        std::ifstream file(path);
        std::string content((std::istreambuf_iterator<char>(file)),
                            std::istreambuf_iterator<char>());
        const auto lines = split_lines(content);
        REQUIRE(lines.size() == results.size() + 1);
        CHECK(lines[0] == "model,algo,axis,value,nodes,hash_count,median_ns");
        for (std::size_t i = 1; i < lines.size(); ++i) {
            CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 6);
        }
    }

    std::filesystem::remove_all(dir);
}

TEST_CASE("export to an unwritable path reports an i/o error") {
    CHECK_THROWS_AS(export_results({}, "/nonexistent-dir/results.csv"), IoError);
}

TEST_CASE("sweep rejects invalid ranges") {
    SweepConfig config;
    config.from = 0;
    CHECK_THROWS_AS(run_sweep(config), ValidationError);
    config.from = 20;
    config.to = 10;
    CHECK_THROWS_AS(run_sweep(config), ValidationError);
    config.to = 30;
    config.repeat = 0;
    CHECK_THROWS_AS(run_sweep(config), ValidationError);
}
