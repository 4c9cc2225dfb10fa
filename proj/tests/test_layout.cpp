#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lonlab/layout.hpp"
#include "lonlab/sampler.hpp"

using namespace lonlab;

TEST_CASE("hamming matrix") {
    const auto d = hamming_matrix({bits_from_string("000"), bits_from_string("111"),
                                   bits_from_string("110")});
    CHECK(d[0][1] == 3);
    CHECK(d[0][2] == 2);
    CHECK(d[1][2] == 1);
    for (int i = 0; i < 3; ++i) CHECK(d[i][i] == 0);
    // Triangle inequality on a few random triples.
    Rng rng(9);
    std::vector<Bits> sample;
    for (int i = 0; i < 12; ++i) {
        Bits b(10);
        for (auto& v : b) v = rng.coin() ? 1 : 0;
        sample.push_back(b);
    }
    const auto m = hamming_matrix(sample);
    for (int trial = 0; trial < 100; ++trial) {
        const int i = static_cast<int>(rng.below(12));
        const int j = static_cast<int>(rng.below(12));
        const int k = static_cast<int>(rng.below(12));
        CHECK(m[i][j] <= m[i][k] + m[k][j]);
    }
}

TEST_CASE("1-D MDS recovers exactly embeddable configurations") {
    // Two points at distance 4.
    const auto pair_coords = classical_mds_1d({{0, 4}, {4, 0}});
    CHECK(std::abs(std::abs(pair_coords[0] - pair_coords[1]) - 4.0) <= 1e-8);
    CHECK(std::abs(pair_coords[0] + pair_coords[1]) <= 1e-8);

    // Three collinear points at positions 0, 3, 10.
    const std::vector<double> positions{0.0, 3.0, 10.0};
    std::vector<std::vector<int>> d(3, std::vector<int>(3));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            d[i][j] = static_cast<int>(std::abs(positions[i] - positions[j]));
        }
    }
    const auto coords = classical_mds_1d(d);
    double sum = 0.0;
    for (double c : coords) sum += c;
    CHECK(std::abs(sum) <= 1e-8);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(std::abs(coords[i] - coords[j]) - d[i][j]) <= 1e-8);
        }
    }

    CHECK(classical_mds_1d({{0}}) == std::vector<double>{0.0});
    CHECK_THROWS_AS(classical_mds_1d({{0, 1}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("layout centres coordinates and anchors the best node") {
    const auto nk = generate_nk(15, 2, 14);
    RunConfig config;
    config.algorithm = Algorithm::trad;
    config.runs = 10;
    config.seed = 4;
    const auto lon = sample_lon(nk, config);
    const auto layout = make_layout(lon);
    REQUIRE(layout.x.size() == lon.nodes().size());
    double sum = 0.0;
    int best = 0;
    for (std::size_t i = 0; i < layout.x.size(); ++i) {
        sum += layout.x[i];
        if (lon.nodes()[i].fitness > lon.nodes()[best].fitness) best = static_cast<int>(i);
    }
    CHECK(std::abs(sum) <= 1e-8);
    CHECK(layout.x[best] >= 0.0);
}

namespace {

Lon two_node_lon(const AdditiveProblem& f_sep) {
    RunTrace trace;
    trace.accepted = {f_sep.evaluate(bits_from_string("000000000")),
                      f_sep.evaluate(bits_from_string("111111111"))};
    return annotate_edges(build_lon({trace}, f_sep), f_sep);
}

}  // namespace

TEST_CASE("dot export carries the changed-count label") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    const auto lon = two_node_lon(f_sep);
    std::stringstream out;
    export_lon(out, lon, make_layout(lon), ExportFormat::dot);
    const std::string dot = out.str();
    CHECK(dot.find("n0 -> n1 [label=\"3\"") != std::string::npos);
    CHECK(dot.find("digraph lon {") == 0);
}

TEST_CASE("graphml round-trip reproduces the LON exactly") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    const auto lon = two_node_lon(f_sep);
    std::stringstream out;
    export_lon(out, lon, make_layout(lon), ExportFormat::graphml);
    std::stringstream source(out.str());
    const auto loaded = read_graphml(source);
    std::stringstream a, b;
    write_lon(a, lon);
    write_lon(b, loaded);
    CHECK(a.str() == b.str());
    // Declared attribute keys all appear as data entries.
    for (const std::string key : {"bits", "fitness", "is_global", "x", "weight", "changed"}) {
        CHECK(out.str().find("key id=\"" + key + "\"") != std::string::npos);
        CHECK(out.str().find("data key=\"" + key + "\"") != std::string::npos);
    }
}

TEST_CASE("empty LON exports are valid") {
    Lon empty(9);
    LayoutTable layout;
    for (ExportFormat format : {ExportFormat::tsv, ExportFormat::dot, ExportFormat::graphml}) {
        std::stringstream out;
        export_lon(out, empty, layout, format);
        CHECK(!out.str().empty());
    }
    std::stringstream tsv;
    export_lon(tsv, empty, layout, ExportFormat::tsv);
    std::stringstream source(tsv.str());
    CHECK(read_lon(source).nodes().empty());
}

TEST_CASE("layout table format") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    const auto lon = two_node_lon(f_sep);
    std::stringstream out;
    write_layout(out, lon, make_layout(lon));
    std::string header;
    std::getline(out, header);
    CHECK(header == "id\tx\tfitness");
    std::string row;
    std::getline(out, row);
    CHECK(row.rfind("0\t", 0) == 0);
}
