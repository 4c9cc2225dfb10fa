#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "lonlab/graybox.hpp"

using namespace lonlab;

namespace {

Bits bits(const std::string& s) { return bits_from_string(s); }

Bits random_bits(int n, Rng& rng) {
    Bits b(n);
    for (auto& v : b) v = rng.coin() ? 1 : 0;
    return b;
}

// Brute-force non-linear VIG straight from the four-point check over all x.
Vig brute_force_vig(const AdditiveProblem& problem) {
    Vig vig(problem.n());
    const int n = problem.n();
    Bits x(n, 0);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        for (int g = 0; g < n; ++g) x[g] = static_cast<std::uint8_t>((v >> g) & 1);
        for (int g = 0; g < n; ++g) {
            for (int h = g + 1; h < n; ++h) {
                if (!vig.has_edge(g, h) && nonlinearity_check(problem, x, g, h)) {
                    vig.add_edge(g, h);
                }
            }
        }
    }
    return vig;
}

}  // namespace

TEST_CASE("structural VIG of the separable traps is three cliques") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    const auto vig = vig_from_structure(f_sep);
    CHECK(vig.edge_count() == 9);
    CHECK(vig.has_edge(0, 1));
    CHECK(vig.has_edge(0, 2));
    CHECK_FALSE(vig.has_edge(0, 3));
    CHECK_FALSE(vig.has_edge(2, 3));
}

TEST_CASE("structural VIG of the overlap example") {
    const auto f_ovr =
        build_overlapping_traps(3, 4, 1, TrapKind::bimodal, false, OverlapVariant::conforming);
    const auto vig = vig_from_structure(f_ovr);
    CHECK(vig.neighbours(3).size() == 6);
    CHECK(vig.neighbours(6).size() == 6);
}

TEST_CASE("NK circular VIG has degree 4 everywhere") {
    const auto nk = generate_nk(15, 2, 9);
    const auto vig = vig_from_structure(nk);
    for (int g = 0; g < 15; ++g) CHECK(vig.neighbours(g).size() == 4);
}

TEST_CASE("nonlinearity check on separable traps") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        CHECK_FALSE(nonlinearity_check(f_sep, random_bits(9, rng), 0, 3));
    }
    CHECK(nonlinearity_check(f_sep, bits("111111111"), 0, 1));

    // A linear function never triggers the check.
    std::vector<SubfunctionSpec> linear;
    for (int g = 0; g < 4; ++g) {
        linear.push_back(SubfunctionSpec{{g}, {0.0, 1.0}});
    }
    AdditiveProblem lp(4, std::move(linear), ProblemKind::nk);
    for (int trial = 0; trial < 20; ++trial) {
        const Bits x = random_bits(4, rng);
        for (int g = 0; g < 4; ++g) {
            for (int h = g + 1; h < 4; ++h) CHECK_FALSE(nonlinearity_check(lp, x, g, h));
        }
    }
}

TEST_CASE("walsh VIG equals structural VIG for fully epistatic traps") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    CHECK(vig_from_walsh(f_sep) == vig_from_structure(f_sep));
    CHECK(vig_from_walsh(f_sep) == brute_force_vig(f_sep));
}

TEST_CASE("walsh VIG drops additive pairs") {
    // t(ab) = a + b has no pairwise coefficient.
    AdditiveProblem p(2, {SubfunctionSpec{{0, 1}, {0.0, 1.0, 1.0, 2.0}}}, ProblemKind::nk);
    CHECK(vig_from_walsh(p).edge_count() == 0);
    CHECK(vig_from_structure(p).edge_count() == 1);
}

TEST_CASE("walsh VIG is a subset of the structural VIG and exact vs brute force") {
    for (std::uint64_t seed : {1ULL, 2ULL}) {
        const auto nk = generate_nk(10, 2, seed);
        const auto walsh = vig_from_walsh(nk);
        CHECK(walsh.subset_of(vig_from_structure(nk)));
        CHECK(walsh == brute_force_vig(nk));
    }
    const auto sat = generate_max3sat(10, 2.0, 5);
    CHECK(vig_from_walsh(sat) == brute_force_vig(sat));
}

TEST_CASE("walsh inverse reconstructs subfunction tables") {
    const auto nk = generate_nk(10, 2, 3);
    const auto coeffs = walsh_decompose(nk);
    for (int s = 0; s < nk.subfunction_count(); ++s) {
        const auto& sf = nk.subfunctions()[s];
        const auto& w = coeffs.per_subfunction[s];
        for (std::size_t p = 0; p < sf.table.size(); ++p) {
            double value = 0.0;
            for (std::size_t mask = 0; mask < w.size(); ++mask) {
                const int parity = std::popcount(mask & p) % 2;
                value += w[mask] * (parity ? -1.0 : 1.0);
            }
            CHECK(std::abs(value - sf.table[p]) <= 1e-9);
        }
    }
}

TEST_CASE("partition crossover on the separable example") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    const auto vig = vig_from_structure(f_sep);
    const auto xa = f_sep.evaluate(bits("000000000"));
    const auto xb = f_sep.evaluate(bits("111111111"));
    const auto components = px_components(vig, xa.bits, xb.bits);
    REQUIRE(components.size() == 3);
    CHECK(components[0] == std::vector<int>{0, 1, 2});

    const auto crossed = partition_crossover(f_sep, vig, xa, xb, {true, false, false});
    CHECK(crossed.child_a.bits == bits("111000000"));
    CHECK(crossed.child_a.fitness == 7.0);
    CHECK(crossed.child_b.bits == bits("000111111"));
    CHECK(crossed.child_b.fitness == 8.0);
    CHECK(crossed.child_a.fitness + crossed.child_b.fitness == xa.fitness + xb.fitness);

    // Identical parents: zero components, offspring equal the parents.
    const auto same = partition_crossover(f_sep, vig, xa, xa, {});
    CHECK(same.component_count == 0);
    CHECK(same.child_a.bits == xa.bits);
    CHECK(same.child_b.bits == xa.bits);
}

TEST_CASE("partition crossover conserves the fitness sum") {
    Rng rng(77);
    const auto nk = generate_nk(14, 2, 21);
    const auto vig = vig_from_structure(nk);
    for (int trial = 0; trial < 100; ++trial) {
        const auto xa = nk.evaluate(random_bits(14, rng));
        const auto xb = nk.evaluate(random_bits(14, rng));
        const auto components = px_components(vig, xa.bits, xb.bits);
        std::vector<bool> choice(components.size());
        for (std::size_t c = 0; c < choice.size(); ++c) choice[c] = rng.coin();
        const auto crossed = partition_crossover(nk, vig, xa, xb, choice);
        CHECK(std::abs(crossed.child_a.fitness + crossed.child_b.fitness - xa.fitness -
                       xb.fitness) <= 1e-9);
    }
}

TEST_CASE("perturbation mask respects alpha") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    const auto vig = vig_from_structure(f_sep);
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto mask = vig_perturbation_mask(vig, 10, rng);
        CHECK(mask.genes.size() == 3);
        CHECK(std::find(mask.genes.begin(), mask.genes.end(), mask.anchor) != mask.genes.end());
        const int block = mask.anchor / 3;
        for (int g : mask.genes) CHECK(g / 3 == block);
    }
    for (int trial = 0; trial < 100; ++trial) {
        const auto capped = vig_perturbation_mask(vig, 1, rng);
        CHECK(capped.genes.size() == 2);
    }
    Vig empty(4);
    const auto lone = vig_perturbation_mask(empty, 3, rng);
    CHECK(lone.genes.size() == 1);
}

TEST_CASE("fihc converges to strict local optima") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    Rng rng(8);
    const auto climbed = fihc(f_sep, bits("011111111"), rng);
    CHECK(climbed.bits == bits("111111111"));
    const auto stuck = fihc(f_sep, bits("000000000"), rng);
    CHECK(stuck.bits == bits("000000000"));

    const auto nk = generate_nk(15, 2, 4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto lo = fihc(nk, random_bits(15, rng), rng);
        for (int g = 0; g < 15; ++g) {
            CHECK(nk.partial_evaluate(lo, {g}).solution.fitness <= lo.fitness);
        }
    }
}

TEST_CASE("fihc with linkage learning stays inside the exact VIG and converges") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    const auto exact = vig_from_walsh(f_sep);
    Vig learned(9);
    Rng rng(31);
    for (int run = 0; run < 200 && learned.edge_count() < 9; ++run) {
        fihc_with_ll(f_sep, random_bits(9, rng), learned, rng);
        CHECK(learned.subset_of(exact));
    }
    CHECK(learned == exact);
}

TEST_CASE("fihc with linkage learning evaluation accounting") {
    const auto f_sep = build_concatenated_traps(3, 3, TrapKind::standard);
    Vig learned(9);
    Rng rng(13);
    FihcStats stats;
    fihc_with_ll(f_sep, random_bits(9, rng), learned, rng, &stats);
    CHECK(stats.evaluations > 0);
    CHECK(stats.extra_evaluations <= 2 * stats.evaluations);
}

TEST_CASE("vig text round-trip") {
    const auto vig = vig_from_structure(build_concatenated_traps(2, 3, TrapKind::standard));
    std::stringstream buffer;
    write_vig(buffer, vig);
    CHECK(read_vig(buffer) == vig);
}
