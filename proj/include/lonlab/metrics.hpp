#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lonlab/lon.hpp"

namespace lonlab {

// 9 subfunction-change statistics plus 14 classic LON metrics for one LON.
// Missing values (edge-less LONs, no global sampled) stay unset.
struct MetricVector {
    std::optional<double> mean_changes, median_changes, stdev_changes;
    std::optional<double> mean_positive_changes, median_positive_changes, stdev_positive_changes;
    std::optional<double> mean_negative_changes, median_negative_changes, stdev_negative_changes;

    std::optional<double> n_local_optima, n_global_optima;
    std::optional<double> neutral_edge_fraction, mean_plateau_size;
    std::optional<double> n_sinks, n_global_sinks, prop_global_sinks;
    std::optional<double> global_funnel_fraction, mean_funnel_size, max_funnel_size;
    std::optional<double> global_sink_incoming_strength;
    std::optional<double> mean_improving_path_length_to_global;
    std::optional<double> n_funnels;
    std::optional<double> pagerank_of_global;

    // Fixed CSV column order.
    static const std::vector<std::string>& names();
    std::vector<std::optional<double>> values() const;
};

struct SubfunctionStats {
    std::optional<double> mean_changed, median_changed, stdev_changed;
    std::optional<double> mean_positive, median_positive, stdev_positive;
    std::optional<double> mean_negative, median_negative, stdev_negative;
};

// mean/median/population-stdev of changed/positive/negative over the
// improving edges, each distinct edge counted once. `weighted` repeats each
// edge w_ij times instead (sensitivity variant).
SubfunctionStats subfunction_change_stats(const Lon& lon, double eps = 0.0,
                                          bool weighted = false);

std::pair<int, int> optima_counts(const Lon& lon);

// (neutral_edge_fraction, mean_plateau_size); plateaus are connected
// components of size >= 2 in the neutral-edge subgraph.
std::pair<double, double> neutrality_metrics(const Lon& lon, double eps = 0.0);

struct FunnelMetrics {
    int n_sinks = 0;
    int n_global_sinks = 0;
    double prop_global_sinks = 0.0;
    double global_funnel_fraction = 0.0;
    double mean_funnel_size = 0.0;
    double max_funnel_size = 0.0;
    double global_sink_incoming_strength = 0.0;
    std::optional<double> mean_improving_path_length_to_global;
    int n_funnels = 0;
};

FunnelMetrics funnel_metrics(const Lon& lon, double eps = 0.0);

std::vector<double> pagerank(const Lon& lon, double damping = 0.85);
std::optional<double> pagerank_of_global(const Lon& lon, double damping = 0.85);

MetricVector metric_vector(const Lon& lon, const AdditiveProblem& problem);

// Metrics CSV: `instance,algorithm` then the MetricVector columns; missing
// values are empty cells.
void write_metrics_csv_header(std::ostream& out);
void write_metrics_csv_row(std::ostream& out, const std::string& instance,
                           const std::string& algorithm, const MetricVector& metrics);

}  // namespace lonlab
