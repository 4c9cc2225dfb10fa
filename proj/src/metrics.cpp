#include "lonlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <ostream>
#include <stdexcept>

namespace lonlab {

namespace {

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Population form: divide by the count.
double stdev_of(const std::vector<double>& v) {
    const double mu = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

std::vector<std::vector<int>> improving_adjacency(const Lon& lon, double eps) {
    std::vector<std::vector<int>> adj(lon.nodes().size());
    for (const auto& edge : improving_edges(lon, eps)) adj[edge.src].push_back(edge.dst);
    return adj;
}

std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj,
                               const std::vector<int>& sources) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<int> queue;
    for (int s : sources) {
        dist[s] = 0;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace

const std::vector<std::string>& MetricVector::names() {
    static const std::vector<std::string> kNames = {
        "mean_changes", "median_changes", "stdev_changes",
        "mean_positive_changes", "median_positive_changes", "stdev_positive_changes",
        "mean_negative_changes", "median_negative_changes", "stdev_negative_changes",
        "n_local_optima", "n_global_optima",
        "neutral_edge_fraction", "mean_plateau_size",
        "n_sinks", "n_global_sinks", "prop_global_sinks",
        "global_funnel_fraction", "mean_funnel_size", "max_funnel_size",
        "global_sink_incoming_strength", "mean_improving_path_length_to_global",
        "n_funnels", "pagerank_of_global",
    };
    return kNames;
}

std::vector<std::optional<double>> MetricVector::values() const {
    return {mean_changes, median_changes, stdev_changes,
            mean_positive_changes, median_positive_changes, stdev_positive_changes,
            mean_negative_changes, median_negative_changes, stdev_negative_changes,
            n_local_optima, n_global_optima,
            neutral_edge_fraction, mean_plateau_size,
            n_sinks, n_global_sinks, prop_global_sinks,
            global_funnel_fraction, mean_funnel_size, max_funnel_size,
            global_sink_incoming_strength, mean_improving_path_length_to_global,
            n_funnels, pagerank_of_global};
}

SubfunctionStats subfunction_change_stats(const Lon& lon, double eps, bool weighted) {
    std::vector<double> changed, positive, negative;
    for (const auto& edge : improving_edges(lon, eps)) {
        if (edge.changed < 0) throw std::invalid_argument("LON edges are not annotated");
        const long long reps = weighted ? edge.weight : 1;
        for (long long i = 0; i < reps; ++i) {
            changed.push_back(edge.changed);
            positive.push_back(edge.positive);
            negative.push_back(edge.negative);
        }
    }
    SubfunctionStats stats;
    if (changed.empty()) return stats;
    stats.mean_changed = mean_of(changed);
    stats.median_changed = median_of(changed);
    stats.stdev_changed = stdev_of(changed);
    stats.mean_positive = mean_of(positive);
    stats.median_positive = median_of(positive);
    stats.stdev_positive = stdev_of(positive);
    stats.mean_negative = mean_of(negative);
    stats.median_negative = median_of(negative);
    stats.stdev_negative = stdev_of(negative);
    return stats;
}

std::pair<int, int> optima_counts(const Lon& lon) {
    int globals = 0;
    for (const auto& node : lon.nodes()) globals += node.is_global;
    return {static_cast<int>(lon.nodes().size()), globals};
}

std::pair<double, double> neutrality_metrics(const Lon& lon, double eps) {
    int neutral = 0, total = 0;
    std::vector<std::vector<int>> neutral_adj(lon.nodes().size());
    for (const auto& edge : lon.edges()) {
        if (edge.src == edge.dst) continue;
        ++total;
        const double df =
            std::abs(lon.nodes()[edge.dst].fitness - lon.nodes()[edge.src].fitness);
        if (df <= eps) {
            ++neutral;
            neutral_adj[edge.src].push_back(edge.dst);
            neutral_adj[edge.dst].push_back(edge.src);
        }
    }
    const double fraction = total == 0 ? 0.0 : static_cast<double>(neutral) / total;
    // Plateaus: components of size >= 2 in the undirected neutral subgraph.
    std::vector<bool> seen(lon.nodes().size(), false);
    double size_sum = 0.0;
    int plateau_count = 0;
    for (std::size_t start = 0; start < lon.nodes().size(); ++start) {
        if (seen[start] || neutral_adj[start].empty()) continue;
        int size = 0;
        std::vector<int> stack{static_cast<int>(start)};
        seen[start] = true;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            ++size;
            for (int w : neutral_adj[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        if (size >= 2) {
            size_sum += size;
            ++plateau_count;
        }
    }
    const double mean_plateau = plateau_count == 0 ? 0.0 : size_sum / plateau_count;
    return {fraction, mean_plateau};
}

FunnelMetrics funnel_metrics(const Lon& lon, double eps) {
    FunnelMetrics out;
    const std::size_t n = lon.nodes().size();
    if (n == 0) return out;
    const auto adj = improving_adjacency(lon, eps);
    std::vector<std::vector<int>> reverse_adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (int w : adj[v]) reverse_adj[w].push_back(static_cast<int>(v));
    }
    std::vector<int> sinks;
    std::vector<int> global_sinks;
    for (std::size_t v = 0; v < n; ++v) {
        if (adj[v].empty()) {
            sinks.push_back(static_cast<int>(v));
            if (lon.nodes()[v].is_global) global_sinks.push_back(static_cast<int>(v));
        }
    }
    out.n_sinks = static_cast<int>(sinks.size());
    out.n_funnels = out.n_sinks;
    out.n_global_sinks = static_cast<int>(global_sinks.size());
    out.prop_global_sinks =
        sinks.empty() ? 0.0 : static_cast<double>(global_sinks.size()) / sinks.size();

    // Funnel of a sink: all nodes that reach it along improving edges.
    double size_sum = 0.0;
    double size_max = 0.0;
    for (int s : sinks) {
        const auto dist = bfs_distances(reverse_adj, {s});
        const double size = static_cast<double>(std::count_if(
            dist.begin(), dist.end(), [](int d) { return d >= 0; }));
        size_sum += size;
        size_max = std::max(size_max, size);
    }
    out.mean_funnel_size = sinks.empty() ? 0.0 : size_sum / sinks.size();
    out.max_funnel_size = size_max;

    if (!global_sinks.empty()) {
        const auto dist = bfs_distances(reverse_adj, global_sinks);
        double reachable = 0.0, path_sum = 0.0;
        for (int d : dist) {
            if (d >= 0) {
                reachable += 1.0;
                path_sum += d;
            }
        }
        out.global_funnel_fraction = reachable / static_cast<double>(n);
        out.mean_improving_path_length_to_global = path_sum / reachable;
    }

    long long total_weight = 0, global_in = 0;
    for (const auto& edge : lon.edges()) {
        total_weight += edge.weight;
        if (std::find(global_sinks.begin(), global_sinks.end(), edge.dst) !=
            global_sinks.end()) {
            global_in += edge.weight;
        }
    }
    out.global_sink_incoming_strength =
        total_weight == 0 ? 0.0 : static_cast<double>(global_in) / total_weight;
    return out;
}

std::vector<double> pagerank(const Lon& lon, double damping) {
    const std::size_t n = lon.nodes().size();
    if (n == 0) return {};
    std::vector<double> out_strength(n, 0.0);
    for (const auto& edge : lon.edges()) out_strength[edge.src] += edge.weight;
    std::vector<double> rank(n, 1.0 / n), next(n);
    for (int iter = 0; iter < 1000; ++iter) {
        double dangling = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (out_strength[v] == 0.0) dangling += rank[v];
        }
        const double base = (1.0 - damping) / n + damping * dangling / n;
        std::fill(next.begin(), next.end(), base);
        for (const auto& edge : lon.edges()) {
            next[edge.dst] += damping * rank[edge.src] * edge.weight / out_strength[edge.src];
        }
        double residual = 0.0;
        for (std::size_t v = 0; v < n; ++v) residual += std::abs(next[v] - rank[v]);
        rank.swap(next);
        if (residual < 1e-12) break;
    }
    return rank;
}

std::optional<double> pagerank_of_global(const Lon& lon, double damping) {
    if (lon.nodes().empty()) return std::nullopt;
    const auto rank = pagerank(lon, damping);
    double best = 0.0;
    for (std::size_t v = 0; v < lon.nodes().size(); ++v) {
        if (lon.nodes()[v].is_global) best = std::max(best, rank[v]);
    }
    return best;
}

MetricVector metric_vector(const Lon& lon, const AdditiveProblem& problem) {
    const double eps = problem.fitness_eps();
    MetricVector m;
    const auto stats = subfunction_change_stats(lon, eps);
    m.mean_changes = stats.mean_changed;
    m.median_changes = stats.median_changed;
    m.stdev_changes = stats.stdev_changed;
    m.mean_positive_changes = stats.mean_positive;
    m.median_positive_changes = stats.median_positive;
    m.stdev_positive_changes = stats.stdev_positive;
    m.mean_negative_changes = stats.mean_negative;
    m.median_negative_changes = stats.median_negative;
    m.stdev_negative_changes = stats.stdev_negative;

    const auto [n_local, n_global] = optima_counts(lon);
    m.n_local_optima = n_local;
    m.n_global_optima = n_global;

    const auto [neutral_fraction, plateau] = neutrality_metrics(lon, eps);
    m.neutral_edge_fraction = neutral_fraction;
    m.mean_plateau_size = plateau;

    const auto funnels = funnel_metrics(lon, eps);
    m.n_sinks = funnels.n_sinks;
    m.n_global_sinks = funnels.n_global_sinks;
    m.prop_global_sinks = funnels.prop_global_sinks;
    m.global_funnel_fraction = funnels.global_funnel_fraction;
    m.mean_funnel_size = funnels.mean_funnel_size;
    m.max_funnel_size = funnels.max_funnel_size;
    m.global_sink_incoming_strength = funnels.global_sink_incoming_strength;
    m.mean_improving_path_length_to_global = funnels.mean_improving_path_length_to_global;
    m.n_funnels = funnels.n_funnels;

    m.pagerank_of_global = pagerank_of_global(lon);
    return m;
}

void write_metrics_csv_header(std::ostream& out) {
    out << "instance,algorithm";
    for (const auto& name : MetricVector::names()) out << ',' << name;
    out << "\n";
}

void write_metrics_csv_row(std::ostream& out, const std::string& instance,
                           const std::string& algorithm, const MetricVector& metrics) {
    out << instance << ',' << algorithm;
    for (const auto& value : metrics.values()) {
        out << ',';
        if (value) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", *value);
            out << buf;
        }
    }
    out << "\n";
}

}  // namespace lonlab
