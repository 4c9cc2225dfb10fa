#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lonlab/lon.hpp"
#include "lonlab/sampler.hpp"

using namespace lonlab;

namespace {

Lon sep_lon() {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    RunTrace trace;
    trace.accepted = {f_sep.evaluate(bits_from_string("000000000")),
                      f_sep.evaluate(bits_from_string("111000000")),
                      f_sep.evaluate(bits_from_string("111111000")),
                      f_sep.evaluate(bits_from_string("111111111"))};
    return build_lon({trace}, f_sep);
}

}  // namespace

TEST_CASE("edge annotation on the separable example") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    const auto lon = annotate_edges(sep_lon(), f_sep);
    REQUIRE(lon.edges().size() == 3);
    for (const auto& edge : lon.edges()) {
        CHECK(edge.changed == 1);
        CHECK(edge.positive == 1);
        CHECK(edge.negative == 0);
    }
    CHECK(lon.nodes().back().is_global);
    CHECK_FALSE(lon.nodes().front().is_global);
}

TEST_CASE("cross-basin jump on the overlap example changes every subfunction") {
    const auto f_ovr =
        build_overlapping_traps(3, 4, 1, TrapKind::bimodal, false, OverlapVariant::conforming);
    RunTrace trace;
    trace.accepted = {f_ovr.evaluate(bits_from_string("1001001001")),
                      f_ovr.evaluate(bits_from_string("1111111111"))};
    const auto lon = annotate_edges(build_lon({trace}, f_ovr), f_ovr);
    REQUIRE(lon.edges().size() == 1);
    CHECK(lon.edges()[0].changed == 3);
}

TEST_CASE("annotation invariants hold on sampled LONs") {
    const auto nk = generate_nk(15, 2, 31);
    RunConfig config;
    config.algorithm = Algorithm::trad;
    config.runs = 10;
    config.seed = 3;
    const auto lon = annotate_edges(sample_lon(nk, config), nk);
    for (const auto& edge : lon.edges()) {
        CHECK(edge.positive + edge.negative == edge.changed);
        const auto src = nk.evaluate(lon.nodes()[edge.src].bits);
        const auto dst = nk.evaluate(lon.nodes()[edge.dst].bits);
        double signed_delta = 0.0;
        for (std::size_t s = 0; s < src.sub_values.size(); ++s) {
            signed_delta += dst.sub_values[s] - src.sub_values[s];
        }
        CHECK(std::abs(signed_delta - (dst.fitness - src.fitness)) <= 1e-9);
    }
}

TEST_CASE("empty LON annotates without error") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    Lon empty(9);
    const auto annotated = annotate_edges(empty, f_sep);
    CHECK(annotated.edges().empty());
}

TEST_CASE("improving edges exclude self-loops and neutral edges") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    Lon lon(9);
    const auto a = f_sep.evaluate(bits_from_string("111000000"));
    const auto b = f_sep.evaluate(bits_from_string("000111000"));
    const auto c = f_sep.evaluate(bits_from_string("111111000"));
    const int ia = lon.add_node(a, false);
    const int ib = lon.add_node(b, false);
    const int ic = lon.add_node(c, false);
    lon.add_transition(ia, ia);  // self-loop
    lon.add_transition(ia, ib);  // neutral: both fitness 7
    lon.add_transition(ib, ic);  // improving
    const auto improving = improving_edges(lon);
    REQUIRE(improving.size() == 1);
    CHECK(improving[0].src == ib);
    CHECK(improving[0].dst == ic);
}

TEST_CASE("merge is identity against empty and additive against itself") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    const auto lon = annotate_edges(sep_lon(), f_sep);
    const auto with_empty = merge_lons(lon, Lon(9));
    std::stringstream a, b;
    write_lon(a, lon);
    write_lon(b, with_empty);
    CHECK(a.str() == b.str());

    const auto doubled = merge_lons(lon, lon);
    CHECK(doubled.nodes().size() == lon.nodes().size());
    REQUIRE(doubled.edges().size() == lon.edges().size());
    for (std::size_t e = 0; e < lon.edges().size(); ++e) {
        CHECK(doubled.edges()[e].weight == 2 * lon.edges()[e].weight);
        CHECK(doubled.edges()[e].changed == lon.edges()[e].changed);
    }
}

TEST_CASE("merge rejects mismatched sizes") {
    CHECK_THROWS_AS(merge_lons(Lon(9), Lon(10)), std::invalid_argument);
}

TEST_CASE("lon container round-trip is bit-exact") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    const auto lon = annotate_edges(sep_lon(), f_sep);
    std::stringstream first;
    write_lon(first, lon);
    std::stringstream source(first.str());
    const auto loaded = read_lon(source);
    std::stringstream second;
    write_lon(second, loaded);
    CHECK(first.str() == second.str());
}
