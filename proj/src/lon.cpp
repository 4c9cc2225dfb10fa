#include "lonlab/lon.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lonlab {

namespace {

constexpr double kTol = 1e-9;

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

int Lon::add_node(const EvaluatedSolution& sol, bool is_global) {
    if (static_cast<int>(sol.bits.size()) != n_vars_) {
        throw std::invalid_argument("node bit length does not match LON");
    }
    auto it = index_.find(sol.bits);
    if (it != index_.end()) return it->second;
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(LonNode{sol.bits, sol.fitness, sol.sub_values, is_global});
    index_.emplace(sol.bits, id);
    return id;
}

int Lon::find_node(const Bits& bits) const {
    auto it = index_.find(bits);
    return it == index_.end() ? -1 : it->second;
}

void Lon::add_transition(int src, int dst) {
    auto it = edge_index_.find({src, dst});
    if (it != edge_index_.end()) {
        ++edges_[it->second].weight;
        return;
    }
    edge_index_.emplace(std::make_pair(src, dst), static_cast<int>(edges_.size()));
    edges_.push_back(LonEdge{src, dst, 1, -1, -1, -1});
}

void Lon::set_edge(int src, int dst, long long weight) {
    auto it = edge_index_.find({src, dst});
    if (it != edge_index_.end()) {
        edges_[it->second].weight = weight;
        return;
    }
    edge_index_.emplace(std::make_pair(src, dst), static_cast<int>(edges_.size()));
    edges_.push_back(LonEdge{src, dst, weight, -1, -1, -1});
}

Lon annotate_edges(Lon lon, const AdditiveProblem& problem) {
    if (problem.n() != lon.n_vars()) throw std::invalid_argument("problem does not match LON");
    std::vector<std::vector<double>> sub_values;
    sub_values.reserve(lon.nodes().size());
    for (auto& node : lon.mutable_nodes()) {
        EvaluatedSolution sol = problem.evaluate(node.bits);
        if (std::abs(sol.fitness - node.fitness) > kTol) {
            throw std::invalid_argument("node fitness inconsistent with problem");
        }
        // Loaded LONs carry only bits and fitness; restore the cached
        // subfunction values so downstream consumers see complete nodes.
        node.sub_values = sol.sub_values;
        sub_values.push_back(std::move(sol.sub_values));
    }
    for (auto& edge : lon.mutable_edges()) {
        const auto& src = sub_values[edge.src];
        const auto& dst = sub_values[edge.dst];
        edge.changed = edge.positive = edge.negative = 0;
        for (std::size_t s = 0; s < src.size(); ++s) {
            const double delta = dst[s] - src[s];
            if (delta > kTol) {
                ++edge.changed;
                ++edge.positive;
            } else if (delta < -kTol) {
                ++edge.changed;
                ++edge.negative;
            }
        }
    }
    return lon;
}

std::vector<LonEdge> improving_edges(const Lon& lon, double eps) {
    std::vector<LonEdge> out;
    for (const auto& edge : lon.edges()) {
        if (edge.src == edge.dst) continue;
        if (lon.nodes()[edge.dst].fitness > lon.nodes()[edge.src].fitness + eps) {
            out.push_back(edge);
        }
    }
    return out;
}

Lon merge_lons(const Lon& a, const Lon& b) {
    if (a.n_vars() != b.n_vars()) throw std::invalid_argument("LON size mismatch in merge");
    Lon out(a.n_vars());
    auto copy_nodes = [&out](const Lon& src) {
        for (const auto& node : src.nodes()) {
            EvaluatedSolution sol{node.bits, node.fitness, node.sub_values};
            out.add_node(sol, node.is_global);
        }
    };
    copy_nodes(a);
    copy_nodes(b);
    auto copy_edges = [&out](const Lon& src) {
        for (const auto& edge : src.edges()) {
            const int s = out.find_node(src.nodes()[edge.src].bits);
            const int d = out.find_node(src.nodes()[edge.dst].bits);
            for (long long i = 0; i < edge.weight; ++i) out.add_transition(s, d);
        }
    };
    copy_edges(a);
    copy_edges(b);
    // Annotations carry over unchanged: endpoints are identical solutions.
    for (auto& edge : out.mutable_edges()) {
        for (const Lon* src : {&a, &b}) {
            const int s = src->find_node(out.nodes()[edge.src].bits);
            const int d = src->find_node(out.nodes()[edge.dst].bits);
            if (s < 0 || d < 0) continue;
            for (const auto& e : src->edges()) {
                if (e.src == s && e.dst == d && e.changed >= 0) {
                    edge.changed = e.changed;
                    edge.positive = e.positive;
                    edge.negative = e.negative;
                }
            }
        }
    }
    return out;
}

void write_lon(std::ostream& out, const Lon& lon) {
    out << "lon v1 n=" << lon.n_vars() << "\n";
    out << "#nodes\n";
    out << "id\tbits\tfitness\tis_global\n";
    for (std::size_t id = 0; id < lon.nodes().size(); ++id) {
        const auto& node = lon.nodes()[id];
        out << id << '\t' << bits_to_string(node.bits) << '\t' << format_real(node.fitness)
            << '\t' << (node.is_global ? 1 : 0) << "\n";
    }
    out << "#edges\n";
    out << "src\tdst\tweight\tchanged\tpositive\tnegative\tsrc_fitness\tdst_fitness\n";
    for (const auto& edge : lon.edges()) {
        out << edge.src << '\t' << edge.dst << '\t' << edge.weight << '\t' << edge.changed
            << '\t' << edge.positive << '\t' << edge.negative << '\t'
            << format_real(lon.nodes()[edge.src].fitness) << '\t'
            << format_real(lon.nodes()[edge.dst].fitness) << "\n";
    }
}

Lon read_lon(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("lon v1 n=", 0) != 0) {
        throw std::invalid_argument("missing 'lon v1' header");
    }
    Lon lon(std::stoi(line.substr(9)));
    enum class Section { none, nodes, edges } section = Section::none;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line == "#nodes") {
            section = Section::nodes;
            std::getline(in, line);  // column header
            continue;
        }
        if (line == "#edges") {
            section = Section::edges;
            std::getline(in, line);
            continue;
        }
        std::istringstream ls(line);
        if (section == Section::nodes) {
            long id;
            std::string bits;
            double fitness;
            int is_global;
            ls >> id >> bits >> fitness >> is_global;
            EvaluatedSolution sol{bits_from_string(bits), fitness, {}};
            lon.add_node(sol, is_global != 0);
        } else if (section == Section::edges) {
            LonEdge edge;
            double src_f, dst_f;
            ls >> edge.src >> edge.dst >> edge.weight >> edge.changed >> edge.positive >>
                edge.negative >> src_f >> dst_f;
            lon.set_edge(edge.src, edge.dst, edge.weight);
            auto& stored = lon.mutable_edges().back();
            stored.changed = edge.changed;
            stored.positive = edge.positive;
            stored.negative = edge.negative;
        } else {
            throw std::invalid_argument("row outside #nodes/#edges sections");
        }
    }
    return lon;
}

void save_lon(const std::string& path, const Lon& lon) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_lon(out, lon);
}

Lon load_lon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return read_lon(in);
}

}  // namespace lonlab
