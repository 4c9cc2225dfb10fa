#include "lonlab/problems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lonlab {

namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string bits_to_string(const Bits& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) s[i] = '1';
    }
    return s;
}

Bits bits_from_string(const std::string& s) {
    Bits bits(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            bits[i] = 1;
        } else if (s[i] != '0') {
            throw std::invalid_argument("bad bit character in '" + s + "'");
        }
    }
    return bits;
}

std::string kind_to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::trap_concat: return "trap_concat";
        case ProblemKind::trap_overlap: return "trap_overlap";
        case ProblemKind::bimodal_concat: return "bimodal_concat";
        case ProblemKind::bimodal_overlap: return "bimodal_overlap";
        case ProblemKind::nk: return "nk";
        case ProblemKind::max3sat: return "max3sat";
    }
    throw std::logic_error("unreachable");
}

ProblemKind kind_from_string(const std::string& s) {
    if (s == "trap_concat") return ProblemKind::trap_concat;
    if (s == "trap_overlap") return ProblemKind::trap_overlap;
    if (s == "bimodal_concat") return ProblemKind::bimodal_concat;
    if (s == "bimodal_overlap") return ProblemKind::bimodal_overlap;
    if (s == "nk") return ProblemKind::nk;
    if (s == "max3sat") return ProblemKind::max3sat;
    throw std::invalid_argument("unknown problem kind '" + s + "'");
}

AdditiveProblem::AdditiveProblem(int n, std::vector<SubfunctionSpec> subfunctions,
                                 ProblemKind kind, std::optional<double> known_global_fitness)
    : n_(n),
      subfunctions_(std::move(subfunctions)),
      kind_(kind),
      known_global_fitness_(known_global_fitness),
      by_variable_(n) {
    if (n <= 0) throw std::invalid_argument("n must be positive");
    if (subfunctions_.empty()) throw std::invalid_argument("need at least one subfunction");
    std::vector<bool> covered(n, false);
    for (std::size_t s = 0; s < subfunctions_.size(); ++s) {
        const auto& sf = subfunctions_[s];
        if (sf.table.size() != (std::size_t{1} << sf.indices.size())) {
            throw std::invalid_argument("table length must be 2^arity");
        }
        std::vector<int> sorted = sf.indices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("duplicate variable index in subfunction");
        }
        for (int g : sf.indices) {
            if (g < 0 || g >= n) throw std::invalid_argument("variable index out of range");
            covered[g] = true;
            by_variable_[g].push_back(static_cast<int>(s));
        }
        max_arity_ = std::max(max_arity_, sf.arity());
    }
    for (int g = 0; g < n; ++g) {
        if (!covered[g]) {
            throw std::invalid_argument("variable " + std::to_string(g) +
                                        " not covered by any subfunction");
        }
    }
    if (kind_ == ProblemKind::max3sat) {
        for (const auto& sf : subfunctions_) {
            if (sf.arity() != 3) throw std::invalid_argument("max3sat clauses must have arity 3");
        }
    }
}

EvaluatedSolution AdditiveProblem::evaluate(const Bits& bits) const {
    if (static_cast<int>(bits.size()) != n_) {
        throw std::invalid_argument("bit vector length mismatch");
    }
    EvaluatedSolution sol;
    sol.bits = bits;
    sol.sub_values.resize(subfunctions_.size());
    double total = 0.0;
    for (std::size_t s = 0; s < subfunctions_.size(); ++s) {
        sol.sub_values[s] = subfunctions_[s].value(bits);
        total += sol.sub_values[s];
    }
    sol.fitness = total;
    return sol;
}

PartialEvalResult AdditiveProblem::partial_evaluate(const EvaluatedSolution& current,
                                                    const std::vector<int>& flipped) const {
    PartialEvalResult result;
    result.solution = current;
    auto& sol = result.solution;
    for (int g : flipped) {
        if (g < 0 || g >= n_) throw std::invalid_argument("flip index out of range");
        sol.bits[g] ^= 1;
    }
    std::vector<bool> touched(subfunctions_.size(), false);
    for (int g : flipped) {
        for (int s : by_variable_[g]) touched[s] = true;
    }
    for (std::size_t s = 0; s < subfunctions_.size(); ++s) {
        if (!touched[s]) continue;
        const double fresh = subfunctions_[s].value(sol.bits);
        sol.fitness += fresh - sol.sub_values[s];
        sol.sub_values[s] = fresh;
        ++result.recomputed;
    }
    return result;
}

int trap_value(int u, int k) {
    if (k < 2) throw std::invalid_argument("trap order must be >= 2");
    if (u < 0 || u > k) throw std::invalid_argument("unitation out of range");
    return u < k ? k - u - 1 : k;
}

double bimodal_trap_value(int u, int k) {
    if (k < 2) throw std::invalid_argument("trap order must be >= 2");
    if (u < 0 || u > k) throw std::invalid_argument("unitation out of range");
    const double half = k / 2.0;
    if (u == 0 || u == k) return half;
    return half - std::abs(u - half) - 1.0;
}

namespace {

std::vector<double> trap_table(int k, TrapKind kind, unsigned complement_mask) {
    std::vector<double> table(std::size_t{1} << k);
    for (std::size_t p = 0; p < table.size(); ++p) {
        const int u = std::popcount(static_cast<unsigned>(p) ^ complement_mask);
        table[p] = kind == TrapKind::standard ? static_cast<double>(trap_value(u, k))
                                              : bimodal_trap_value(u, k);
    }
    return table;
}

}  // namespace

AdditiveProblem build_concatenated_traps(int m, int k, TrapKind kind) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    const int n = m * k;
    std::vector<SubfunctionSpec> subs(m);
    for (int s = 0; s < m; ++s) {
        for (int j = 0; j < k; ++j) subs[s].indices.push_back(s * k + j);
        subs[s].table = trap_table(k, kind, 0);
    }
    const double global = kind == TrapKind::standard ? static_cast<double>(m) * k
                                                     : static_cast<double>(m) * (k / 2.0);
    return AdditiveProblem(n, std::move(subs),
                           kind == TrapKind::standard ? ProblemKind::trap_concat
                                                      : ProblemKind::bimodal_concat,
                           global);
}

AdditiveProblem build_overlapping_traps(int m, int k, int o, TrapKind kind, bool cyclic,
                                        OverlapVariant variant) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (o < 1 || o >= k) throw std::invalid_argument("overlap must satisfy 1 <= o < k");
    const int step = k - o;
    const int n = cyclic ? m * step : k + (m - 1) * step;
    if (cyclic && n < k) throw std::invalid_argument("cyclic layout needs m*(k-o) >= k");
    std::vector<SubfunctionSpec> subs(m);
    for (int s = 0; s < m; ++s) {
        for (int j = 0; j < k; ++j) {
            const int idx = s * step + j;
            subs[s].indices.push_back(cyclic ? idx % n : idx);
        }
        unsigned complement_mask = 0;
        if (variant == OverlapVariant::conflicting && s % 2 == 1) {
            // Complement the bits shared with the left and right neighbours,
            // so this subfunction's optimum disagrees with theirs there.
            for (int j = 0; j < o; ++j) complement_mask |= 1u << j;
            if (cyclic || s + 1 < m) {
                for (int j = k - o; j < k; ++j) complement_mask |= 1u << j;
            }
        }
        subs[s].table = trap_table(k, kind, complement_mask);
    }
    std::optional<double> global;
    if (variant == OverlapVariant::conforming) {
        global = kind == TrapKind::standard ? static_cast<double>(m) * k
                                            : static_cast<double>(m) * (k / 2.0);
    }
    return AdditiveProblem(n, std::move(subs),
                           kind == TrapKind::standard ? ProblemKind::trap_overlap
                                                      : ProblemKind::bimodal_overlap,
                           global);
}

AdditiveProblem generate_nk(int n, int k, std::uint64_t seed) {
    if (n <= k + 1) throw std::invalid_argument("nk requires n > k+1");
    Rng rng(seed);
    std::vector<SubfunctionSpec> subs(n);
    for (int s = 0; s < n; ++s) {
        for (int j = 0; j <= k; ++j) subs[s].indices.push_back((s + j) % n);
        subs[s].table.resize(std::size_t{1} << (k + 1));
        for (auto& v : subs[s].table) v = rng.uniform();
    }
    return AdditiveProblem(n, std::move(subs), ProblemKind::nk);
}

AdditiveProblem generate_max3sat(int n, double cr, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("max3sat requires n >= 3");
    Rng rng(seed);
    const int m = static_cast<int>(std::floor(cr * n + 0.5));
    std::vector<SubfunctionSpec> subs(m);
    for (int c = 0; c < m; ++c) {
        subs[c].indices = rng.sample_distinct(n, 3);
        unsigned falsifying = 0;
        for (int j = 0; j < 3; ++j) {
            const bool negated = rng.coin();
            // A positive literal is falsified by 0, a negated one by 1.
            if (negated) falsifying |= 1u << j;
        }
        subs[c].table.assign(8, 1.0);
        subs[c].table[falsifying] = 0.0;
    }
    return AdditiveProblem(n, std::move(subs), ProblemKind::max3sat);
}

OptimaSets enumerate_optima(const AdditiveProblem& problem) {
    const int n = problem.n();
    if (n > 20) throw std::invalid_argument("enumerate_optima refuses n > 20");
    OptimaSets out;
    double best = -1e300;
    const std::uint64_t total = std::uint64_t{1} << n;
    Bits bits(n, 0);
    for (std::uint64_t x = 0; x < total; ++x) {
        for (int g = 0; g < n; ++g) bits[g] = static_cast<std::uint8_t>((x >> g) & 1);
        EvaluatedSolution sol = problem.evaluate(bits);
        if (sol.fitness > best) {
            best = sol.fitness;
            out.global_optima.clear();
        }
        if (sol.fitness == best) out.global_optima.push_back(bits);
        bool local = true;
        for (int g = 0; g < n && local; ++g) {
            double delta = 0.0;
            bits[g] ^= 1;
            for (int s : problem.subfunctions_of_variable(g)) {
                delta += problem.subfunctions()[s].value(bits) - sol.sub_values[s];
            }
            bits[g] ^= 1;
            if (delta > 0.0) local = false;
        }
        if (local) out.local_optima.push_back(bits);
    }
    out.global_fitness = best;
    return out;
}

void write_instance(std::ostream& out, const AdditiveProblem& problem) {
    out << "kbounded v1\n";
    out << "n " << problem.n() << "\n";
    out << "kind " << kind_to_string(problem.kind()) << "\n";
    if (problem.known_global_fitness()) {
        out << "global " << format_real(*problem.known_global_fitness()) << "\n";
    }
    for (const auto& sf : problem.subfunctions()) {
        for (std::size_t i = 0; i < sf.indices.size(); ++i) {
            if (i) out << ' ';
            out << sf.indices[i];
        }
        out << " |";
        for (double v : sf.table) out << ' ' << format_real(v);
        out << "\n";
    }
}

AdditiveProblem read_instance(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "kbounded v1") {
        throw std::invalid_argument("missing 'kbounded v1' header");
    }
    int n = -1;
    ProblemKind kind = ProblemKind::nk;
    bool kind_seen = false;
    std::optional<double> global;
    std::vector<SubfunctionSpec> subs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (line.rfind("n ", 0) == 0) {
            std::string key;
            ls >> key >> n;
        } else if (line.rfind("kind ", 0) == 0) {
            std::string key, value;
            ls >> key >> value;
            kind = kind_from_string(value);
            kind_seen = true;
        } else if (line.rfind("global ", 0) == 0) {
            std::string key;
            double v;
            ls >> key >> v;
            global = v;
        } else {
            SubfunctionSpec sf;
            std::string tok;
            while (ls >> tok && tok != "|") sf.indices.push_back(std::stoi(tok));
            double v;
            while (ls >> v) sf.table.push_back(v);
            subs.push_back(std::move(sf));
        }
    }
    if (n < 0 || !kind_seen) throw std::invalid_argument("instance file missing n or kind");
    return AdditiveProblem(n, std::move(subs), kind, global);
}

void save_instance(const std::string& path, const AdditiveProblem& problem) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_instance(out, problem);
}

AdditiveProblem load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return read_instance(in);
}

void write_dimacs(std::ostream& out, const AdditiveProblem& problem) {
    if (problem.kind() != ProblemKind::max3sat) {
        throw std::invalid_argument("DIMACS export only for max3sat instances");
    }
    out << "p cnf " << problem.n() << " " << problem.subfunction_count() << "\n";
    for (const auto& sf : problem.subfunctions()) {
        std::size_t falsifying = sf.table.size();
        for (std::size_t p = 0; p < sf.table.size(); ++p) {
            if (sf.table[p] == 0.0) falsifying = p;
        }
        if (falsifying == sf.table.size()) {
            throw std::invalid_argument("clause table has no falsifying assignment");
        }
        for (int j = 0; j < 3; ++j) {
            const bool negated = ((falsifying >> j) & 1) != 0;
            out << (negated ? -(sf.indices[j] + 1) : sf.indices[j] + 1) << ' ';
        }
        out << "0\n";
    }
}

AdditiveProblem read_dimacs(std::istream& in) {
    std::string line;
    int n = -1, m = -1;
    std::vector<SubfunctionSpec> subs;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, cnf;
            ls >> p >> cnf >> n >> m;
            continue;
        }
        SubfunctionSpec sf;
        unsigned falsifying = 0;
        long lit;
        int j = 0;
        while (ls >> lit && lit != 0) {
            if (j >= 3) throw std::invalid_argument("clause with more than 3 literals");
            sf.indices.push_back(static_cast<int>(std::labs(lit)) - 1);
            if (lit < 0) falsifying |= 1u << j;
            ++j;
        }
        if (j != 3) throw std::invalid_argument("clause must have exactly 3 literals");
        sf.table.assign(8, 1.0);
        sf.table[falsifying] = 0.0;
        subs.push_back(std::move(sf));
    }
    if (n < 0) throw std::invalid_argument("missing 'p cnf' line");
    if (m >= 0 && m != static_cast<int>(subs.size())) {
        throw std::invalid_argument("clause count mismatch against header");
    }
    return AdditiveProblem(n, std::move(subs), ProblemKind::max3sat);
}

}  // namespace lonlab
