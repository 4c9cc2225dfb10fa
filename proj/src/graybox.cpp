#include "lonlab/graybox.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace lonlab {

namespace {
constexpr double kTol = 1e-9;
}

void Vig::add_edge(int g, int h) {
    if (g == h) throw std::invalid_argument("VIG is irreflexive");
    if (g < 0 || h < 0 || g >= n_ || h >= n_) throw std::invalid_argument("VIG index out of range");
    adj_[static_cast<std::size_t>(g) * n_ + h] = 1;
    adj_[static_cast<std::size_t>(h) * n_ + g] = 1;
}

std::vector<int> Vig::neighbours(int g) const {
    std::vector<int> out;
    for (int h = 0; h < n_; ++h) {
        if (has_edge(g, h)) out.push_back(h);
    }
    return out;
}

std::vector<std::pair<int, int>> Vig::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int g = 0; g < n_; ++g) {
        for (int h = g + 1; h < n_; ++h) {
            if (has_edge(g, h)) out.emplace_back(g, h);
        }
    }
    return out;
}

int Vig::edge_count() const {
    int c = 0;
    for (int g = 0; g < n_; ++g) {
        for (int h = g + 1; h < n_; ++h) c += has_edge(g, h);
    }
    return c;
}

bool Vig::subset_of(const Vig& other) const {
    if (n_ != other.n_) return false;
    for (std::size_t i = 0; i < adj_.size(); ++i) {
        if (adj_[i] && !other.adj_[i]) return false;
    }
    return true;
}

void Vig::merge(const Vig& other) {
    if (n_ != other.n_) throw std::invalid_argument("VIG size mismatch in merge");
    for (std::size_t i = 0; i < adj_.size(); ++i) adj_[i] |= other.adj_[i];
}

void write_vig(std::ostream& out, const Vig& vig) {
    out << "vig v1 n=" << vig.n() << "\n";
    for (const auto& [g, h] : vig.edges()) out << g << ' ' << h << "\n";
}

Vig read_vig(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("vig v1 n=", 0) != 0) {
        throw std::invalid_argument("missing 'vig v1' header");
    }
    Vig vig(std::stoi(line.substr(9)));
    int g, h;
    while (in >> g >> h) vig.add_edge(g, h);
    return vig;
}

Vig vig_from_structure(const AdditiveProblem& problem) {
    Vig vig(problem.n());
    for (const auto& sf : problem.subfunctions()) {
        for (std::size_t i = 0; i < sf.indices.size(); ++i) {
            for (std::size_t j = i + 1; j < sf.indices.size(); ++j) {
                vig.add_edge(sf.indices[i], sf.indices[j]);
            }
        }
    }
    return vig;
}

bool nonlinearity_check(const AdditiveProblem& problem, const Bits& x, int g, int h) {
    if (g == h) throw std::invalid_argument("nonlinearity check needs distinct genes");
    const EvaluatedSolution base = problem.evaluate(x);
    const double fg = problem.partial_evaluate(base, {g}).solution.fitness;
    const double fh = problem.partial_evaluate(base, {h}).solution.fitness;
    const double fgh = problem.partial_evaluate(base, {g, h}).solution.fitness;
    return std::abs(base.fitness + fgh - fg - fh) > kTol;
}

WalshCoefficients walsh_decompose(const AdditiveProblem& problem) {
    WalshCoefficients coeffs;
    for (const auto& sf : problem.subfunctions()) {
        if (sf.arity() > 8) throw std::invalid_argument("walsh decomposition limited to arity 8");
        std::vector<double> w = sf.table;
        const std::size_t size = w.size();
        // In-place Walsh-Hadamard transform.
        for (std::size_t len = 1; len < size; len <<= 1) {
            for (std::size_t i = 0; i < size; i += len << 1) {
                for (std::size_t j = i; j < i + len; ++j) {
                    const double a = w[j];
                    const double b = w[j + len];
                    w[j] = a + b;
                    w[j + len] = a - b;
                }
            }
        }
        for (double& v : w) v /= static_cast<double>(size);
        coeffs.per_subfunction.push_back(std::move(w));
    }
    return coeffs;
}

void write_walsh(std::ostream& out, const WalshCoefficients& coeffs) {
    for (std::size_t s = 0; s < coeffs.per_subfunction.size(); ++s) {
        out << "subfunction " << s << "\n";
        const auto& w = coeffs.per_subfunction[s];
        for (std::size_t mask = 0; mask < w.size(); ++mask) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", w[mask]);
            out << mask << ' ' << buf << "\n";
        }
    }
}

Vig vig_from_walsh(const AdditiveProblem& problem) {
    const WalshCoefficients coeffs = walsh_decompose(problem);
    // Subfunctions over shared variables can cancel each other's non-linear
    // terms, so coefficients are summed per global variable set before the
    // threshold is applied.
    std::map<std::vector<int>, double> global_coeffs;
    for (int s = 0; s < problem.subfunction_count(); ++s) {
        const auto& indices = problem.subfunctions()[s].indices;
        const auto& w = coeffs.per_subfunction[s];
        for (std::size_t mask = 0; mask < w.size(); ++mask) {
            std::vector<int> variables;
            for (std::size_t i = 0; i < indices.size(); ++i) {
                if ((mask >> i) & 1) variables.push_back(indices[i]);
            }
            if (variables.size() < 2) continue;
            std::sort(variables.begin(), variables.end());
            global_coeffs[variables] += w[mask];
        }
    }
    Vig vig(problem.n());
    for (const auto& [variables, coeff] : global_coeffs) {
        if (std::abs(coeff) <= kTol) continue;
        for (std::size_t i = 0; i < variables.size(); ++i) {
            for (std::size_t j = i + 1; j < variables.size(); ++j) {
                vig.add_edge(variables[i], variables[j]);
            }
        }
    }
    return vig;
}

std::vector<std::vector<int>> px_components(const Vig& vig, const Bits& xa, const Bits& xb) {
    if (xa.size() != xb.size()) throw std::invalid_argument("parent length mismatch");
    const int n = static_cast<int>(xa.size());
    std::vector<bool> differs(n, false);
    for (int g = 0; g < n; ++g) differs[g] = xa[g] != xb[g];
    std::vector<std::vector<int>> components;
    std::vector<bool> seen(n, false);
    for (int g = 0; g < n; ++g) {
        if (!differs[g] || seen[g]) continue;
        std::vector<int> comp;
        std::vector<int> stack{g};
        seen[g] = true;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int h = 0; h < n; ++h) {
                if (differs[h] && !seen[h] && vig.has_edge(v, h)) {
                    seen[h] = true;
                    stack.push_back(h);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

CrossoverResult partition_crossover(const AdditiveProblem& problem, const Vig& vig,
                                    const EvaluatedSolution& xa, const EvaluatedSolution& xb,
                                    const std::vector<bool>& choice) {
    const auto components = px_components(vig, xa.bits, xb.bits);
    if (choice.size() != components.size()) {
        throw std::invalid_argument("one donor choice per component required");
    }
    CrossoverResult result;
    result.component_count = static_cast<int>(components.size());
    // Flipping the genes of the chosen components turns xa into child_a and
    // xb into child_b: those genes differ between the parents by construction.
    std::vector<int> flips;
    for (std::size_t c = 0; c < components.size(); ++c) {
        if (choice[c]) flips.insert(flips.end(), components[c].begin(), components[c].end());
    }
    result.child_a = problem.partial_evaluate(xa, flips).solution;
    result.child_b = problem.partial_evaluate(xb, flips).solution;
    return result;
}

std::vector<bool> greedy_component_choice(const AdditiveProblem& problem,
                                          const std::vector<std::vector<int>>& components,
                                          const EvaluatedSolution& xa,
                                          const EvaluatedSolution& xb) {
    std::vector<bool> choice(components.size(), false);
    for (std::size_t c = 0; c < components.size(); ++c) {
        std::vector<bool> touched(problem.subfunction_count(), false);
        for (int g : components[c]) {
            for (int s : problem.subfunctions_of_variable(g)) touched[s] = true;
        }
        double score_a = 0.0, score_b = 0.0;
        for (int s = 0; s < problem.subfunction_count(); ++s) {
            if (!touched[s]) continue;
            score_a += xa.sub_values[s];
            score_b += xb.sub_values[s];
        }
        choice[c] = score_b > score_a;
    }
    return choice;
}

PerturbationMask vig_perturbation_mask(const Vig& vig, int alpha, Rng& rng) {
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
    PerturbationMask mask;
    mask.anchor = static_cast<int>(rng.below(vig.n()));
    mask.genes.push_back(mask.anchor);
    std::vector<int> deps = vig.neighbours(mask.anchor);
    if (static_cast<int>(deps.size()) <= alpha) {
        mask.genes.insert(mask.genes.end(), deps.begin(), deps.end());
    } else {
        for (int i = 0; i < alpha; ++i) {
            const std::size_t j = i + rng.below(deps.size() - i);
            std::swap(deps[i], deps[j]);
            mask.genes.push_back(deps[i]);
        }
    }
    return mask;
}

EvaluatedSolution fihc(const AdditiveProblem& problem, const Bits& start, Rng& rng) {
    EvaluatedSolution cur = problem.evaluate(start);
    std::vector<int> order(problem.n());
    std::iota(order.begin(), order.end(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        rng.shuffle(order);
        for (int g : order) {
            PartialEvalResult moved = problem.partial_evaluate(cur, {g});
            if (moved.solution.fitness > cur.fitness) {
                cur = std::move(moved.solution);
                changed = true;
            }
        }
    }
    return cur;
}

EvaluatedSolution fihc_with_ll(const AdditiveProblem& problem, const Bits& start, Vig& learned,
                               Rng& rng, FihcStats* stats) {
    if (learned.n() != problem.n()) throw std::invalid_argument("learned VIG size mismatch");
    const int n = problem.n();
    EvaluatedSolution cur = problem.evaluate(start);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    // Single-flip fitnesses already computed against the current point; the
    // cache empties whenever a flip is accepted and the point moves.
    std::unordered_map<int, double> flip_cache;
    std::vector<int> candidates;
    bool changed = true;
    while (changed) {
        changed = false;
        rng.shuffle(order);
        for (int g : order) {
            PartialEvalResult moved = problem.partial_evaluate(cur, {g});
            if (stats) ++stats->evaluations;
            flip_cache[g] = moved.solution.fitness;

            // Dependency probe: one undiscovered partner per evaluated flip.
            candidates.clear();
            for (int h = 0; h < n; ++h) {
                if (h != g && !learned.has_edge(g, h)) candidates.push_back(h);
            }
            if (!candidates.empty()) {
                const int h = candidates[rng.below(candidates.size())];
                double fh;
                if (auto it = flip_cache.find(h); it != flip_cache.end()) {
                    fh = it->second;
                    if (stats) ++stats->extra_evaluations;
                } else {
                    fh = problem.partial_evaluate(cur, {h}).solution.fitness;
                    flip_cache[h] = fh;
                    if (stats) stats->extra_evaluations += 2;
                }
                const double fgh = problem.partial_evaluate(moved.solution, {h}).solution.fitness;
                if (std::abs(cur.fitness + fgh - moved.solution.fitness - fh) > kTol) {
                    learned.add_edge(g, h);
                }
            }

            if (moved.solution.fitness > cur.fitness) {
                cur = std::move(moved.solution);
                changed = true;
                flip_cache.clear();
            }
        }
    }
    return cur;
}

}  // namespace lonlab
