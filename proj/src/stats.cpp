#include "lonlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace lonlab {

namespace {

std::vector<double> midranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
        i = j + 1;
    }
    return ranks;
}

double u_statistic(const std::vector<double>& pooled_ranks, std::size_t n_a) {
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < n_a; ++i) rank_sum += pooled_ranks[i];
    return rank_sum - static_cast<double>(n_a) * (n_a + 1) / 2.0;
}

// Enumerates every split of the pooled ranks into groups of sizes (n_a, n_b)
// and tallies the U distribution against the observed value.
void enumerate_splits(const std::vector<double>& ranks, std::size_t n_a, std::size_t start,
                      double partial_rank_sum, std::size_t taken, double u_obs,
                      double rank_offset, long long& count_le, long long& count_ge,
                      long long& count_total) {
    if (taken == n_a) {
        const double u = partial_rank_sum - rank_offset;
        ++count_total;
        if (u <= u_obs + 1e-12) ++count_le;
        if (u >= u_obs - 1e-12) ++count_ge;
        return;
    }
    if (start >= ranks.size() || ranks.size() - start < n_a - taken) return;
    enumerate_splits(ranks, n_a, start + 1, partial_rank_sum + ranks[start], taken + 1, u_obs,
                     rank_offset, count_le, count_ge, count_total);
    enumerate_splits(ranks, n_a, start + 1, partial_rank_sum, taken, u_obs, rank_offset,
                     count_le, count_ge, count_total);
}

double normal_two_sided_p(double u, std::size_t n_a, std::size_t n_b,
                          const std::vector<double>& pooled) {
    const double n1 = static_cast<double>(n_a);
    const double n2 = static_cast<double>(n_b);
    const double big_n = n1 + n2;
    // Tie correction from the pooled value multiplicities.
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    const double variance =
        n1 * n2 / 12.0 * ((big_n + 1.0) - tie_term / (big_n * (big_n - 1.0)));
    if (variance <= 0.0) return 1.0;
    const double z = std::max(0.0, std::abs(u - n1 * n2 / 2.0) - 0.5) / std::sqrt(variance);
    return std::erfc(z / std::sqrt(2.0));
}

}  // namespace

std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "ns";
}

MannWhitneyResult mann_whitney(const SampleSet& a, const SampleSet& b) {
    if (a.values.empty() || b.values.empty()) {
        throw std::invalid_argument("mann_whitney needs non-empty samples");
    }
    std::vector<double> pooled = a.values;
    pooled.insert(pooled.end(), b.values.begin(), b.values.end());
    const std::vector<double> ranks = midranks(pooled);
    const std::size_t n_a = a.values.size();
    const std::size_t n_b = b.values.size();

    MannWhitneyResult result;
    result.u = u_statistic(ranks, n_a);
    if (std::min(n_a, n_b) < 8) {
        result.exact = true;
        const double rank_offset = static_cast<double>(n_a) * (n_a + 1) / 2.0;
        long long count_le = 0, count_ge = 0, count_total = 0;
        enumerate_splits(ranks, n_a, 0, 0.0, 0, result.u, rank_offset, count_le, count_ge,
                         count_total);
        const double p_le = static_cast<double>(count_le) / count_total;
        const double p_ge = static_cast<double>(count_ge) / count_total;
        result.p = std::min(1.0, 2.0 * std::min(p_le, p_ge));
    } else {
        result.p = normal_two_sided_p(result.u, n_a, n_b, pooled);
    }
    result.stars = significance_stars(result.p);
    return result;
}

double kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("kendall_tau length mismatch");
    if (x.size() < 2) throw std::invalid_argument("kendall_tau needs length >= 2");
    long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            if (dx == 0.0 && dy == 0.0) continue;
            if (dx == 0.0) {
                ++ties_x;
            } else if (dy == 0.0) {
                ++ties_y;
            } else if ((dx > 0.0) == (dy > 0.0)) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const double n0_minus_tx = static_cast<double>(concordant + discordant + ties_y);
    const double n0_minus_ty = static_cast<double>(concordant + discordant + ties_x);
    const double denom = std::sqrt(n0_minus_tx * n0_minus_ty);
    if (denom == 0.0) return std::nan("");
    return static_cast<double>(concordant - discordant) / denom;
}

std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman length mismatch");
    if (x.size() < 2) throw std::invalid_argument("spearman needs length >= 2");
    const std::vector<double> rx = midranks(x);
    const std::vector<double> ry = midranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

CorrelationMatrix correlation_matrix(const std::map<std::string, std::vector<double>>& vectors,
                                     CorrelationMethod method) {
    CorrelationMatrix matrix;
    std::vector<const std::vector<double>*> columns;
    std::size_t length = 0;
    for (const auto& [name, column] : vectors) {
        matrix.names.push_back(name);
        columns.push_back(&column);
        length = column.size();
    }
    for (const auto* column : columns) {
        if (column->size() != length) {
            throw std::invalid_argument("metric vectors must share the instance index set");
        }
    }
    const std::size_t k = matrix.names.size();
    matrix.cells.assign(k, std::vector<std::optional<double>>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            std::vector<double> xs, ys;
            for (std::size_t t = 0; t < length; ++t) {
                const double xv = (*columns[i])[t];
                const double yv = (*columns[j])[t];
                if (std::isnan(xv) || std::isnan(yv)) continue;
                xs.push_back(xv);
                ys.push_back(yv);
            }
            std::optional<double> value;
            if (xs.size() >= 2) {
                if (method == CorrelationMethod::kendall) {
                    const double tau = kendall_tau(xs, ys);
                    if (!std::isnan(tau)) value = tau;
                } else {
                    value = spearman(xs, ys);
                }
            }
            matrix.cells[i][j] = value;
            matrix.cells[j][i] = value;
        }
    }
    return matrix;
}

void write_comparison_csv_header(std::ostream& out) {
    out << "metric,alg_a,alg_b,U,p,stars,n_a,n_b\n";
}

void write_comparison_csv_row(std::ostream& out, const std::string& metric, const SampleSet& a,
                              const SampleSet& b, const MannWhitneyResult& result) {
    char u_buf[40], p_buf[40];
    std::snprintf(u_buf, sizeof(u_buf), "%.17g", result.u);
    std::snprintf(p_buf, sizeof(p_buf), "%.17g", result.p);
    out << metric << ',' << a.label << ',' << b.label << ',' << u_buf << ',' << p_buf << ','
        << result.stars << ',' << a.values.size() << ',' << b.values.size() << "\n";
}

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& matrix) {
    out << "metric";
    for (const auto& name : matrix.names) out << ',' << name;
    out << "\n";
    for (std::size_t i = 0; i < matrix.names.size(); ++i) {
        out << matrix.names[i];
        for (std::size_t j = 0; j < matrix.names.size(); ++j) {
            out << ',';
            if (matrix.cells[i][j]) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.6f", *matrix.cells[i][j]);
                out << buf;
            }
        }
        out << "\n";
    }
}

}  // namespace lonlab
