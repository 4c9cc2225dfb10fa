#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lonlab/lon.hpp"

namespace lonlab {

// D[i][j] = number of differing bits.
std::vector<std::vector<int>> hamming_matrix(const std::vector<Bits>& nodes);

// 1-D classical (Torgerson) MDS: double-centre -1/2 D^2 and take the dominant
// eigenpair by power iteration. Coordinates are centred; the sign is fixed so
// coordinate `anchor` is >= 0. A non-positive dominant eigenvalue yields all
// zeros.
std::vector<double> classical_mds_1d(const std::vector<std::vector<int>>& distances,
                                     int anchor = 0);

struct LayoutTable {
    std::vector<double> x;  // one entry per LON node
};

// MDS-on-Hamming layout; the anchor is the highest-fitness node.
LayoutTable make_layout(const Lon& lon);

// `id x fitness` rows, 9-decimal x.
void write_layout(std::ostream& out, const Lon& lon, const LayoutTable& layout);

enum class ExportFormat { tsv, dot, graphml };
ExportFormat export_format_from_string(const std::string& s);

void export_lon(std::ostream& out, const Lon& lon, const LayoutTable& layout,
                ExportFormat format);

// Reads back a GraphML file produced by export_lon.
Lon read_graphml(std::istream& in);

}  // namespace lonlab
