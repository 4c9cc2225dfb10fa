#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lonlab {

struct SampleSet {
    std::string label;
    std::vector<double> values;
};

struct MannWhitneyResult {
    double u = 0.0;  // U statistic of the first sample
    double p = 1.0;  // two-sided
    std::string stars;
    bool exact = false;  // permutation enumeration vs normal approximation
};

// Rank-sum U with midrank ties. Exact permutation enumeration for
// min(|a|,|b|) < 8, normal approximation with tie and continuity corrections
// otherwise. Stars: ns, * p<0.05, ** p<0.01, *** p<0.001.
MannWhitneyResult mann_whitney(const SampleSet& a, const SampleSet& b);

std::string significance_stars(double p);

// Tau-b with tie correction, direct pair enumeration.
double kendall_tau(const std::vector<double>& x, const std::vector<double>& y);

// Pearson correlation of midranks; missing when either vector has zero rank
// variance.
std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y);

enum class CorrelationMethod { kendall, spearman };

struct CorrelationMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<std::optional<double>>> cells;
};

// Pairwise deletion of missing entries (NaN marks missing); a cell needs at
// least 2 complete pairs.
CorrelationMatrix correlation_matrix(const std::map<std::string, std::vector<double>>& vectors,
                                     CorrelationMethod method);

// `metric alg_a alg_b U p stars n_a n_b` rows.
void write_comparison_csv_header(std::ostream& out);
void write_comparison_csv_row(std::ostream& out, const std::string& metric, const SampleSet& a,
                              const SampleSet& b, const MannWhitneyResult& result);

// Correlation matrix CSV with 6-decimal cells, empty for missing.
void write_correlation_csv(std::ostream& out, const CorrelationMatrix& matrix);

}  // namespace lonlab
