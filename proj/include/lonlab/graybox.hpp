#pragma once

#include <iosfwd>
#include <vector>

#include "lonlab/problems.hpp"
#include "lonlab/rng.hpp"

namespace lonlab {

// Symmetric, irreflexive variable-interaction relation.
class Vig {
public:
    Vig() = default;
    explicit Vig(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {}

    int n() const { return n_; }
    bool has_edge(int g, int h) const { return adj_[static_cast<std::size_t>(g) * n_ + h] != 0; }
    void add_edge(int g, int h);
    std::vector<int> neighbours(int g) const;
    std::vector<std::pair<int, int>> edges() const;  // g < h
    int edge_count() const;

    bool operator==(const Vig& o) const { return n_ == o.n_ && adj_ == o.adj_; }

    // Returns true iff every edge of this graph is an edge of `other`.
    bool subset_of(const Vig& other) const;

    // set union, matching sizes required
    void merge(const Vig& other);

private:
    int n_ = 0;
    std::vector<std::uint8_t> adj_;
};

// Edge-list text format: header `vig v1 n=<int>`, then `g h` lines with g < h.
void write_vig(std::ostream& out, const Vig& vig);
Vig read_vig(std::istream& in);

// Per-subfunction Walsh coefficients, indexed by local variable mask.
struct WalshCoefficients {
    std::vector<std::vector<double>> per_subfunction;
};

Vig vig_from_structure(const AdditiveProblem& problem);

bool nonlinearity_check(const AdditiveProblem& problem, const Bits& x, int g, int h);

WalshCoefficients walsh_decompose(const AdditiveProblem& problem);
void write_walsh(std::ostream& out, const WalshCoefficients& coeffs);

// Exact non-linear VIG from per-subfunction Walsh coefficients.
Vig vig_from_walsh(const AdditiveProblem& problem);

// Connected components of the VIG restricted to genes where the parents
// differ. Empty when the parents coincide.
std::vector<std::vector<int>> px_components(const Vig& vig, const Bits& xa, const Bits& xb);

struct CrossoverResult {
    EvaluatedSolution child_a;  // xa with chosen components donated by xb
    EvaluatedSolution child_b;  // the complementary offspring
    int component_count = 0;
};

// choice[c] = true takes component c from parent b into child_a.
CrossoverResult partition_crossover(const AdditiveProblem& problem, const Vig& vig,
                                    const EvaluatedSolution& xa, const EvaluatedSolution& xb,
                                    const std::vector<bool>& choice);

// Greedy per-component donor selection: each component comes from the parent
// with the higher sum of subfunction values over the subfunctions it touches,
// ties to parent a.
std::vector<bool> greedy_component_choice(const AdditiveProblem& problem,
                                          const std::vector<std::vector<int>>& components,
                                          const EvaluatedSolution& xa,
                                          const EvaluatedSolution& xb);

struct PerturbationMask {
    std::vector<int> genes;
    int anchor = -1;
};

PerturbationMask vig_perturbation_mask(const Vig& vig, int alpha, Rng& rng);

// First-improvement hill climber: full passes over a fresh random gene order,
// keeping strictly improving flips, until a pass changes nothing.
EvaluatedSolution fihc(const AdditiveProblem& problem, const Bits& start, Rng& rng);

struct FihcStats {
    long long evaluations = 0;        // flip evaluations done by local search
    long long extra_evaluations = 0;  // evaluations added by linkage discovery
};

// FIHC with linkage learning: every evaluated flip of gene g additionally
// checks one undiscovered partner h via the four-point non-linearity test.
// f(x) and f(x^g) come from the search itself; f(x^h) is served from a
// pass-level cache when the pass already computed it.
EvaluatedSolution fihc_with_ll(const AdditiveProblem& problem, const Bits& start, Vig& learned,
                               Rng& rng, FihcStats* stats = nullptr);

}  // namespace lonlab
