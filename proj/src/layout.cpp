#include "lonlab/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
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

std::string format_coord(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

}  // namespace

std::vector<std::vector<int>> hamming_matrix(const std::vector<Bits>& nodes) {
    const std::size_t n = nodes.size();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (nodes[i].size() != nodes[j].size()) {
                throw std::invalid_argument("hamming_matrix needs equal-length vectors");
            }
            int count = 0;
            for (std::size_t b = 0; b < nodes[i].size(); ++b) count += nodes[i][b] != nodes[j][b];
            d[i][j] = d[j][i] = count;
        }
    }
    return d;
}

std::vector<double> classical_mds_1d(const std::vector<std::vector<int>>& distances,
                                     int anchor) {
    const std::size_t n = distances.size();
    if (n == 0) return {};
    for (std::size_t i = 0; i < n; ++i) {
        if (distances[i].size() != n || distances[i][i] != 0) {
            throw std::invalid_argument("distance matrix must be square with zero diagonal");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (distances[i][j] != distances[j][i]) {
                throw std::invalid_argument("distance matrix must be symmetric");
            }
        }
    }
    if (n == 1) return {0.0};

    // Double-centred Gram matrix B = -1/2 J D^2 J.
    std::vector<std::vector<double>> sq(n, std::vector<double>(n));
    std::vector<double> row_mean(n, 0.0);
    double grand_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            sq[i][j] = static_cast<double>(distances[i][j]) * distances[i][j];
            row_mean[i] += sq[i][j];
        }
        grand_mean += row_mean[i];
        row_mean[i] /= static_cast<double>(n);
    }
    grand_mean /= static_cast<double>(n) * n;
    std::vector<std::vector<double>> b(n, std::vector<double>(n));
    double shift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double abs_row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            b[i][j] = -0.5 * (sq[i][j] - row_mean[i] - row_mean[j] + grand_mean);
            abs_row += std::abs(b[i][j]);
        }
        shift = std::max(shift, abs_row);
    }

    // Power iteration on B + shift*I keeps the dominant eigenvalue of B on top
    // even when B has large negative eigenvalues. The start vector is the
    // largest column of B: it always has a component along the dominant
    // eigenvector, which a fixed arbitrary start cannot guarantee.
    std::vector<double> v(n), av(n);
    std::size_t best_column = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += b[i][j] * b[i][j];
        if (norm > best_norm) {
            best_norm = norm;
            best_column = j;
        }
    }
    if (best_norm <= 1e-24) return std::vector<double>(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i] = b[i][best_column];
    auto normalise = [n](std::vector<double>& w) {
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 0) {
            for (double& x : w) x /= norm;
        }
        return norm;
    };
    normalise(v);
    for (int iter = 0; iter < 10000; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            av[i] = shift * v[i];
            for (std::size_t j = 0; j < n; ++j) av[i] += b[i][j] * v[j];
        }
        normalise(av);
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff += std::abs(av[i] - v[i]);
        v.swap(av);
        if (diff < 1e-10) break;
    }
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double bv = 0.0;
        for (std::size_t j = 0; j < n; ++j) bv += b[i][j] * v[j];
        lambda += v[i] * bv;
    }
    if (lambda <= 0.0) return std::vector<double>(n, 0.0);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::sqrt(lambda) * v[i];
    double mean = 0.0;
    for (double c : x) mean += c;
    mean /= static_cast<double>(n);
    for (double& c : x) c -= mean;
    if (anchor >= 0 && anchor < static_cast<int>(n) && x[anchor] < 0.0) {
        for (double& c : x) c = -c;
    }
    return x;
}

LayoutTable make_layout(const Lon& lon) {
    std::vector<Bits> bits;
    bits.reserve(lon.nodes().size());
    int anchor = 0;
    for (std::size_t i = 0; i < lon.nodes().size(); ++i) {
        bits.push_back(lon.nodes()[i].bits);
        if (lon.nodes()[i].fitness > lon.nodes()[anchor].fitness) anchor = static_cast<int>(i);
    }
    LayoutTable layout;
    layout.x = classical_mds_1d(hamming_matrix(bits), anchor);
    return layout;
}

void write_layout(std::ostream& out, const Lon& lon, const LayoutTable& layout) {
    if (layout.x.size() != lon.nodes().size()) {
        throw std::invalid_argument("layout does not match LON");
    }
    out << "id\tx\tfitness\n";
    for (std::size_t id = 0; id < lon.nodes().size(); ++id) {
        out << id << '\t' << format_coord(layout.x[id]) << '\t'
            << format_real(lon.nodes()[id].fitness) << "\n";
    }
}

ExportFormat export_format_from_string(const std::string& s) {
    if (s == "tsv") return ExportFormat::tsv;
    if (s == "dot") return ExportFormat::dot;
    if (s == "graphml") return ExportFormat::graphml;
    throw std::invalid_argument("unknown export format '" + s + "'");
}

namespace {

void export_dot(std::ostream& out, const Lon& lon, const LayoutTable& layout) {
    out << "digraph lon {\n";
    for (std::size_t id = 0; id < lon.nodes().size(); ++id) {
        const auto& node = lon.nodes()[id];
        out << "  n" << id << " [bits=\"" << bits_to_string(node.bits) << "\", fitness=\""
            << format_real(node.fitness) << "\", is_global=" << (node.is_global ? 1 : 0)
            << ", x=\"" << format_coord(layout.x.empty() ? 0.0 : layout.x[id]) << "\"];\n";
    }
    for (const auto& edge : lon.edges()) {
        out << "  n" << edge.src << " -> n" << edge.dst << " [label=\"" << edge.changed
            << "\", weight=" << edge.weight << ", positive=" << edge.positive
            << ", negative=" << edge.negative << "];\n";
    }
    out << "}\n";
}

void export_graphml(std::ostream& out, const Lon& lon, const LayoutTable& layout) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out << "  <key id=\"bits\" for=\"node\" attr.name=\"bits\" attr.type=\"string\"/>\n";
    out << "  <key id=\"fitness\" for=\"node\" attr.name=\"fitness\" attr.type=\"double\"/>\n";
    out << "  <key id=\"is_global\" for=\"node\" attr.name=\"is_global\" attr.type=\"boolean\"/>\n";
    out << "  <key id=\"x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n";
    out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n";
    out << "  <key id=\"changed\" for=\"edge\" attr.name=\"changed\" attr.type=\"int\"/>\n";
    out << "  <key id=\"positive\" for=\"edge\" attr.name=\"positive\" attr.type=\"int\"/>\n";
    out << "  <key id=\"negative\" for=\"edge\" attr.name=\"negative\" attr.type=\"int\"/>\n";
    out << "  <graph id=\"lon\" edgedefault=\"directed\" n_vars=\"" << lon.n_vars() << "\">\n";
    for (std::size_t id = 0; id < lon.nodes().size(); ++id) {
        const auto& node = lon.nodes()[id];
        out << "    <node id=\"n" << id << "\">\n";
        out << "      <data key=\"bits\">" << bits_to_string(node.bits) << "</data>\n";
        out << "      <data key=\"fitness\">" << format_real(node.fitness) << "</data>\n";
        out << "      <data key=\"is_global\">" << (node.is_global ? "true" : "false")
            << "</data>\n";
        out << "      <data key=\"x\">" << format_coord(layout.x.empty() ? 0.0 : layout.x[id])
            << "</data>\n";
        out << "    </node>\n";
    }
    for (const auto& edge : lon.edges()) {
        out << "    <edge source=\"n" << edge.src << "\" target=\"n" << edge.dst << "\">\n";
        out << "      <data key=\"weight\">" << edge.weight << "</data>\n";
        out << "      <data key=\"changed\">" << edge.changed << "</data>\n";
        out << "      <data key=\"positive\">" << edge.positive << "</data>\n";
        out << "      <data key=\"negative\">" << edge.negative << "</data>\n";
        out << "    </edge>\n";
    }
    out << "  </graph>\n";
    out << "</graphml>\n";
}

std::string tag_content(const std::string& line) {
    const auto open = line.find('>');
    const auto close = line.rfind("</");
    if (open == std::string::npos || close == std::string::npos || close <= open) {
        throw std::invalid_argument("malformed graphml data line: " + line);
    }
    return line.substr(open + 1, close - open - 1);
}

std::string attr_value(const std::string& line, const std::string& name) {
    const std::string needle = name + "=\"";
    const auto pos = line.find(needle);
    if (pos == std::string::npos) throw std::invalid_argument("missing attribute " + name);
    const auto end = line.find('"', pos + needle.size());
    return line.substr(pos + needle.size(), end - pos - needle.size());
}

}  // namespace

void export_lon(std::ostream& out, const Lon& lon, const LayoutTable& layout,
                ExportFormat format) {
    if (!layout.x.empty() && layout.x.size() != lon.nodes().size()) {
        throw std::invalid_argument("layout does not match LON");
    }
    switch (format) {
        case ExportFormat::tsv: write_lon(out, lon); return;
        case ExportFormat::dot: export_dot(out, lon, layout); return;
        case ExportFormat::graphml: export_graphml(out, lon, layout); return;
    }
    throw std::invalid_argument("unknown export format");
}

Lon read_graphml(std::istream& in) {
    std::string line;
    Lon lon;
    bool in_node = false, in_edge = false;
    EvaluatedSolution node_sol;
    bool node_global = false;
    LonEdge edge;
    std::string key;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(' ');
        if (first == std::string::npos) continue;
        const std::string trimmed = line.substr(first);
        if (trimmed.rfind("<graph ", 0) == 0) {
            lon = Lon(std::stoi(attr_value(trimmed, "n_vars")));
        } else if (trimmed.rfind("<node ", 0) == 0) {
            in_node = true;
            node_sol = EvaluatedSolution{};
            node_global = false;
        } else if (trimmed == "</node>") {
            lon.add_node(node_sol, node_global);
            in_node = false;
        } else if (trimmed.rfind("<edge ", 0) == 0) {
            in_edge = true;
            edge = LonEdge{};
            edge.src = std::stoi(attr_value(trimmed, "source").substr(1));
            edge.dst = std::stoi(attr_value(trimmed, "target").substr(1));
        } else if (trimmed == "</edge>") {
            lon.set_edge(edge.src, edge.dst, edge.weight);
            auto& stored = lon.mutable_edges().back();
            stored.changed = edge.changed;
            stored.positive = edge.positive;
            stored.negative = edge.negative;
            in_edge = false;
        } else if (trimmed.rfind("<data ", 0) == 0) {
            key = attr_value(trimmed, "key");
            const std::string value = tag_content(trimmed);
            if (in_node) {
                if (key == "bits") {
                    node_sol.bits = bits_from_string(value);
                } else if (key == "fitness") {
                    node_sol.fitness = std::stod(value);
                } else if (key == "is_global") {
                    node_global = value == "true";
                }
            } else if (in_edge) {
                if (key == "weight") edge.weight = std::stoll(value);
                if (key == "changed") edge.changed = std::stoi(value);
                if (key == "positive") edge.positive = std::stoi(value);
                if (key == "negative") edge.negative = std::stoi(value);
            }
        }
    }
    return lon;
}

}  // namespace lonlab
