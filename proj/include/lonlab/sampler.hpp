#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lonlab/graybox.hpp"
#include "lonlab/lon.hpp"
#include "lonlab/problems.hpp"

namespace lonlab {

enum class Algorithm { trad, px, vigp };

std::string algorithm_to_string(Algorithm alg);
Algorithm algorithm_from_string(const std::string& s);

struct RunConfig {
    Algorithm algorithm = Algorithm::trad;
    int runs = 30;
    int stagnation_cycles = 30;
    int perturbation_strength = 3;
    int alpha = 0;  // 0: use the problem's maximum subfunction arity
    std::uint64_t seed = 0;
};

// One ILS run: the sequence of accepted local optima. Transitions are the
// consecutive pairs; an accepted return to the same optimum repeats the entry.
struct RunTrace {
    std::vector<EvaluatedSolution> accepted;
};

RunTrace run_trad(const AdditiveProblem& problem, const RunConfig& config,
                  std::uint64_t run_seed);
RunTrace run_px(const AdditiveProblem& problem, const Vig& vig, const RunConfig& config,
                std::uint64_t run_seed);
RunTrace run_vigp(const AdditiveProblem& problem, const RunConfig& config,
                  std::uint64_t run_seed, Vig* learned_out = nullptr);

// Dispatches on config.algorithm; PX builds the structural VIG itself.
RunTrace run_sampler(const AdditiveProblem& problem, const RunConfig& config,
                     std::uint64_t run_seed);

// Aggregates traces into a LON: nodes in first-seen order, edge weights count
// transitions. Global flags come from the problem's known global fitness, or
// from the exhaustive oracle when it is unknown and n <= 20.
Lon build_lon(const std::vector<RunTrace>& traces, const AdditiveProblem& problem);

// Full sampling pass: `runs` independent runs with seeds derived from
// (config.seed, instance_index, run index), folded in run-index order.
Lon sample_lon(const AdditiveProblem& problem, const RunConfig& config,
               std::uint64_t instance_index = 0, int jobs = 1);

// Debug dump: `run_id src_bits dst_bits src_f dst_f` per transition.
void write_traces(std::ostream& out, const std::vector<RunTrace>& traces);

}  // namespace lonlab
