#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lonlab/rng.hpp"

namespace lonlab {

using Bits = std::vector<std::uint8_t>;

std::string bits_to_string(const Bits& bits);
Bits bits_from_string(const std::string& s);

enum class ProblemKind {
    trap_concat,
    trap_overlap,
    bimodal_concat,
    bimodal_overlap,
    nk,
    max3sat,
};

std::string kind_to_string(ProblemKind kind);
ProblemKind kind_from_string(const std::string& s);

// One term f_s of the additive form: an index set and a dense value table
// over the local bit patterns. Table index packs bit of indices[p] at bit p.
struct SubfunctionSpec {
    std::vector<int> indices;
    std::vector<double> table;

    int arity() const { return static_cast<int>(indices.size()); }
    std::size_t local_pattern(const Bits& bits) const {
        std::size_t p = 0;
        for (std::size_t i = 0; i < indices.size(); ++i) {
            p |= static_cast<std::size_t>(bits[indices[i]]) << i;
        }
        return p;
    }
    double value(const Bits& bits) const { return table[local_pattern(bits)]; }
};

struct EvaluatedSolution {
    Bits bits;
    double fitness = 0.0;
    std::vector<double> sub_values;

    bool operator==(const EvaluatedSolution& o) const { return bits == o.bits; }
};

struct PartialEvalResult {
    EvaluatedSolution solution;
    int recomputed = 0;
};

// A k-bounded objective in additive form. Immutable after construction;
// generators are pure functions of (parameters, seed).
class AdditiveProblem {
public:
    AdditiveProblem(int n, std::vector<SubfunctionSpec> subfunctions, ProblemKind kind,
                    std::optional<double> known_global_fitness = std::nullopt);

    int n() const { return n_; }
    int subfunction_count() const { return static_cast<int>(subfunctions_.size()); }
    const std::vector<SubfunctionSpec>& subfunctions() const { return subfunctions_; }
    ProblemKind kind() const { return kind_; }
    std::optional<double> known_global_fitness() const { return known_global_fitness_; }
    const std::vector<int>& subfunctions_of_variable(int g) const { return by_variable_[g]; }
    int max_arity() const { return max_arity_; }

    // Integer-valued families compare fitness exactly; NK needs a float margin.
    bool integer_valued() const { return kind_ != ProblemKind::nk; }
    double fitness_eps() const { return integer_valued() ? 0.0 : 1e-9; }

    EvaluatedSolution evaluate(const Bits& bits) const;
    PartialEvalResult partial_evaluate(const EvaluatedSolution& current,
                                       const std::vector<int>& flipped) const;

private:
    int n_;
    std::vector<SubfunctionSpec> subfunctions_;
    ProblemKind kind_;
    std::optional<double> known_global_fitness_;
    std::vector<std::vector<int>> by_variable_;
    int max_arity_ = 0;
};

// Eq.-level primitives for the deceptive families.
int trap_value(int u, int k);
double bimodal_trap_value(int u, int k);

enum class TrapKind { standard, bimodal };
enum class OverlapVariant { conforming, conflicting };

AdditiveProblem build_concatenated_traps(int m, int k, TrapKind kind);
AdditiveProblem build_overlapping_traps(int m, int k, int o, TrapKind kind, bool cyclic,
                                        OverlapVariant variant);
AdditiveProblem generate_nk(int n, int k, std::uint64_t seed);
AdditiveProblem generate_max3sat(int n, double cr, std::uint64_t seed);

struct OptimaSets {
    std::vector<Bits> global_optima;
    std::vector<Bits> local_optima;  // 1-flip strict local optima, globals included
    double global_fitness = 0.0;
};

// Exhaustive 2^n oracle, refused above n = 20.
OptimaSets enumerate_optima(const AdditiveProblem& problem);

// Line-oriented `kbounded v1` instance format.
void write_instance(std::ostream& out, const AdditiveProblem& problem);
AdditiveProblem read_instance(std::istream& in);
void save_instance(const std::string& path, const AdditiveProblem& problem);
AdditiveProblem load_instance(const std::string& path);

// DIMACS CNF import/export for MAX3SAT instances.
void write_dimacs(std::ostream& out, const AdditiveProblem& problem);
AdditiveProblem read_dimacs(std::istream& in);

}  // namespace lonlab
