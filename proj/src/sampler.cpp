#include "lonlab/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace lonlab {

namespace {

constexpr double kTol = 1e-9;

Bits random_bits(int n, Rng& rng) {
    Bits bits(n);
    for (auto& b : bits) b = rng.coin() ? 1 : 0;
    return bits;
}

Bits perturb(const Bits& bits, int flips, Rng& rng) {
    Bits out = bits;
    for (int g : rng.sample_distinct(static_cast<int>(bits.size()),
                                     std::min<int>(flips, static_cast<int>(bits.size())))) {
        out[g] ^= 1;
    }
    return out;
}

// Shared ILS skeleton: `next` maps the incumbent to a candidate optimum.
template <typename NextFn>
RunTrace iterated_search(const AdditiveProblem& problem, const RunConfig& config, Rng& rng,
                         EvaluatedSolution first, NextFn&& next) {
    RunTrace trace;
    trace.accepted.push_back(first);
    EvaluatedSolution lo = std::move(first);
    double best = lo.fitness;
    int stagnant = 0;
    while (stagnant < config.stagnation_cycles) {
        EvaluatedSolution candidate = next(lo, rng);
        if (candidate.fitness >= lo.fitness) {
            trace.accepted.push_back(candidate);
            lo = std::move(candidate);
        }
        if (lo.fitness > best) {
            best = lo.fitness;
            stagnant = 0;
        } else {
            ++stagnant;
        }
    }
    return trace;
}

}  // namespace

std::string algorithm_to_string(Algorithm alg) {
    switch (alg) {
        case Algorithm::trad: return "trad";
        case Algorithm::px: return "px";
        case Algorithm::vigp: return "vigp";
    }
    throw std::logic_error("unreachable");
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "trad") return Algorithm::trad;
    if (s == "px") return Algorithm::px;
    if (s == "vigp") return Algorithm::vigp;
    throw std::invalid_argument("unknown algorithm '" + s + "'");
}

RunTrace run_trad(const AdditiveProblem& problem, const RunConfig& config,
                  std::uint64_t run_seed) {
    Rng rng(run_seed);
    EvaluatedSolution first = fihc(problem, random_bits(problem.n(), rng), rng);
    return iterated_search(problem, config, rng, std::move(first),
                           [&](const EvaluatedSolution& lo, Rng& r) {
                               return fihc(problem, perturb(lo.bits, config.perturbation_strength, r), r);
                           });
}

RunTrace run_px(const AdditiveProblem& problem, const Vig& vig, const RunConfig& config,
                std::uint64_t run_seed) {
    Rng rng(run_seed);
    EvaluatedSolution first = fihc(problem, random_bits(problem.n(), rng), rng);
    auto next = [&](const EvaluatedSolution& lo, Rng& r) {
        EvaluatedSolution lo_p =
            fihc(problem, perturb(lo.bits, config.perturbation_strength, r), r);
        if (lo_p.bits == lo.bits) return lo_p;  // no differing genes, PX degenerates
        const auto components = px_components(vig, lo.bits, lo_p.bits);
        const auto choice = greedy_component_choice(problem, components, lo, lo_p);
        CrossoverResult crossed = partition_crossover(problem, vig, lo, lo_p, choice);
        const EvaluatedSolution& child = crossed.child_b.fitness > crossed.child_a.fitness
                                             ? crossed.child_b
                                             : crossed.child_a;
        return fihc(problem, child.bits, r);
    };
    return iterated_search(problem, config, rng, std::move(first), next);
}

RunTrace run_vigp(const AdditiveProblem& problem, const RunConfig& config,
                  std::uint64_t run_seed, Vig* learned_out) {
    Rng rng(run_seed);
    Vig learned(problem.n());
    const int alpha = config.alpha > 0 ? config.alpha : problem.max_arity();
    EvaluatedSolution first = fihc_with_ll(problem, random_bits(problem.n(), rng), learned, rng);
    auto next = [&](const EvaluatedSolution& lo, Rng& r) {
        const PerturbationMask mask = vig_perturbation_mask(learned, alpha, r);
        Bits perturbed = lo.bits;
        for (int g : mask.genes) perturbed[g] ^= 1;
        return fihc_with_ll(problem, perturbed, learned, r);
    };
    RunTrace trace = iterated_search(problem, config, rng, std::move(first), next);
    if (learned_out) *learned_out = learned;
    return trace;
}

RunTrace run_sampler(const AdditiveProblem& problem, const RunConfig& config,
                     std::uint64_t run_seed) {
    switch (config.algorithm) {
        case Algorithm::trad: return run_trad(problem, config, run_seed);
        case Algorithm::px: return run_px(problem, vig_from_structure(problem), config, run_seed);
        case Algorithm::vigp: return run_vigp(problem, config, run_seed);
    }
    throw std::logic_error("unreachable");
}

Lon build_lon(const std::vector<RunTrace>& traces, const AdditiveProblem& problem) {
    double global_fitness;
    if (problem.known_global_fitness()) {
        global_fitness = *problem.known_global_fitness();
    } else if (problem.n() <= 20) {
        global_fitness = enumerate_optima(problem).global_fitness;
    } else {
        throw std::invalid_argument("global fitness unknown and n too large for the oracle");
    }
    Lon lon(problem.n());
    for (const auto& trace : traces) {
        int prev = -1;
        for (const auto& sol : trace.accepted) {
            if (static_cast<int>(sol.bits.size()) != problem.n()) {
                throw std::invalid_argument("trace does not match problem size");
            }
            const int id = lon.add_node(sol, std::abs(sol.fitness - global_fitness) <= kTol);
            if (prev >= 0) lon.add_transition(prev, id);
            prev = id;
        }
    }
    return lon;
}

Lon sample_lon(const AdditiveProblem& problem, const RunConfig& config,
               std::uint64_t instance_index, int jobs) {
    std::vector<RunTrace> traces(config.runs);
    Vig structural;
    if (config.algorithm == Algorithm::px) structural = vig_from_structure(problem);
    auto run_one = [&](int run) {
        const std::uint64_t seed = derive_seed(config.seed, instance_index, run);
        if (config.algorithm == Algorithm::px) {
            traces[run] = run_px(problem, structural, config, seed);
        } else {
            traces[run] = run_sampler(problem, config, seed);
        }
    };
    if (jobs <= 1) {
        for (int run = 0; run < config.runs; ++run) run_one(run);
    } else {
        std::vector<std::thread> workers;
        std::atomic<int> cursor{0};
        for (int w = 0; w < std::min(jobs, config.runs); ++w) {
            workers.emplace_back([&] {
                for (int run = cursor.fetch_add(1); run < config.runs;
                     run = cursor.fetch_add(1)) {
                    run_one(run);
                }
            });
        }
        for (auto& worker : workers) worker.join();
    }
    return build_lon(traces, problem);
}

void write_traces(std::ostream& out, const std::vector<RunTrace>& traces) {
    for (std::size_t run = 0; run < traces.size(); ++run) {
        const auto& accepted = traces[run].accepted;
        for (std::size_t i = 1; i < accepted.size(); ++i) {
            char src_f[40], dst_f[40];
            std::snprintf(src_f, sizeof(src_f), "%.17g", accepted[i - 1].fitness);
            std::snprintf(dst_f, sizeof(dst_f), "%.17g", accepted[i].fitness);
            out << run << ' ' << bits_to_string(accepted[i - 1].bits) << ' '
                << bits_to_string(accepted[i].bits) << ' ' << src_f << ' ' << dst_f << "\n";
        }
    }
}

}  // namespace lonlab
