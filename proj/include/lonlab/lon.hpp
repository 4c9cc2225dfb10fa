#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lonlab/problems.hpp"

namespace lonlab {

struct LonNode {
    Bits bits;
    double fitness = 0.0;
    std::vector<double> sub_values;
    bool is_global = false;
};

// changed/positive/negative are -1 until annotate_edges runs.
struct LonEdge {
    int src = 0;
    int dst = 0;
    long long weight = 0;
    int changed = -1;
    int positive = -1;
    int negative = -1;
};

// Directed weighted graph of sampled local optima. Node ids are dense
// integers in first-seen order; the bit vector is the canonical identity.
class Lon {
public:
    Lon() = default;
    explicit Lon(int n_vars) : n_vars_(n_vars) {}

    int n_vars() const { return n_vars_; }
    const std::vector<LonNode>& nodes() const { return nodes_; }
    const std::vector<LonEdge>& edges() const { return edges_; }
    std::vector<LonEdge>& mutable_edges() { return edges_; }
    std::vector<LonNode>& mutable_nodes() { return nodes_; }

    int add_node(const EvaluatedSolution& sol, bool is_global);
    int find_node(const Bits& bits) const;  // -1 when absent
    void add_transition(int src, int dst);
    void set_edge(int src, int dst, long long weight);

private:
    int n_vars_ = 0;
    std::vector<LonNode> nodes_;
    std::vector<LonEdge> edges_;
    std::map<Bits, int> index_;
    std::map<std::pair<int, int>, int> edge_index_;
};

// Computes the subfunction-change annotation of every edge.
Lon annotate_edges(Lon lon, const AdditiveProblem& problem);

// Strictly improving edges of an annotated LON: excludes self-loops and
// neutral (equal-fitness) edges.
std::vector<LonEdge> improving_edges(const Lon& lon, double eps = 0.0);

Lon merge_lons(const Lon& a, const Lon& b);

// Container file: `#nodes` section then `#edges` section, TSV rows.
void write_lon(std::ostream& out, const Lon& lon);
Lon read_lon(std::istream& in);
void save_lon(const std::string& path, const Lon& lon);
Lon load_lon(const std::string& path);

}  // namespace lonlab
