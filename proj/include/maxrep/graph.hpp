#pragma once

#include <vector>

#include "maxrep/gluing.hpp"

namespace maxrep {

SurfaceRep build_from_graph(const GluingGraph& graph, const Tolerance& tol = {});

// Standard decomposition of a surface with g handles and m >= 1 boundaries.
//
// Chain pants P1..Pk (k = g + m - 2) with P_j.3 glued to P_{j+1}.1. The
// slots P1.1, P1.2, ..., Pk.2, Pk.3 are filled left to right: the first g
// carry handle pants H_i (port 2 attached by the twist J_i, ports 3 and 1
// glued to each other by the twist H_i), the remaining m are the boundary
// components C1..Cm. For (g, m) = (1, 1) the graph is the single handle
// pants H1 with H1.2 as boundary.
struct HandleCoords {
    Mat y;      // X1 of H_i
    Mat h;      // twist closing H_i.3 to H_i.1
    Mat m;      // SPD; X2 of H_i solves Y^-T H Y^T H^-1 X2^-T = M
    Mat j;      // attachment twist (unused for (1,1))
};

struct ChainCoords {
    Mat s;      // SPD product X3 X2^-T X1 of P_j
    Mat twist;  // twist to P_{j+1} (unused for the last pants)
};

struct StandardCoords {
    int genus = 0;
    int boundary = 0;
    int n = 0;
    std::vector<HandleCoords> handles;
    std::vector<ChainCoords> chain;
    std::vector<Mat> free_lengths;  // first m - 1 boundary slots, raw pants parameter

    int chain_length() const { return genus + boundary - 2; }
};

void check_standard_topology(int g, int m);
StandardCoords standard_coords_template(int g, int m, int n);
GluingGraph realize(const StandardCoords& c);
// inverse of realize; throws GraphInvalid if the graph is not in standard layout
StandardCoords extract_coords(const GluingGraph& graph, const Tolerance& tol = {});

std::vector<int> component_signature(const StandardCoords& c, const Tolerance& tol = {});
std::vector<int> component_signature(const GluingGraph& graph, const Tolerance& tol = {});
std::vector<int> component_signature(const SurfaceRep& rep, const Tolerance& tol = {});

// diag(s/2, 1/2, ..., 1/2) and diag(s, 1, ..., 1)
Mat standard_length(int n, int sign);
Mat standard_twist(int n, int sign);

// representative with the given designated signs (length 2g + m - 1);
// remaining twists are the identity
GluingGraph standard_representative(int g, int m, int n, const std::vector<int>& signs);

int component_count(int g, int m);  // 2^(2g+m-1)

}  // namespace maxrep
