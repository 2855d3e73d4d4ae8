#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxrep/gluing.hpp"

namespace maxrep {

// Text format, one item per line, '#' starts a comment:
//
//   maxrep 1
//   n 2
//   surface 0 3
//   option eq_tol 1e-9
//   seed 7
//   pants P1            followed by X1, X2, X3 headers each with n rows, then end
//   edge P1.3 P2.1      cbar side first; n rows of the twist, then end
//   boundary P1.2 C1
//   generator A1        2n rows, then end
//   point | point inf   n rows, then end
struct RepFile {
    int version = 1;
    int n = 0;
    std::optional<std::pair<int, int>> surface;
    std::optional<double> eq_tol;
    std::optional<std::uint64_t> seed;
    GluingGraph graph;
    std::vector<std::pair<std::string, Mat>> generators;
    std::vector<BoundaryPoint> points;
};

// strict: every number must be the shortest round-trip spelling of its value
RepFile parse_repfile(const std::string& text, bool strict = false, const std::string& source = "<input>");
RepFile read_repfile(const std::string& path, bool strict = false);

std::string format_number(double x);
std::string format_matrix(const Mat& m, const std::string& indent = "");
std::string format_repfile(const RepFile& f);
// shortest spelling check used by strict mode
bool is_shortest_spelling(const std::string& token, double value);

}  // namespace maxrep
