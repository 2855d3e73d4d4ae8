#pragma once

#include <random>

#include "maxrep/graph.hpp"

namespace maxrep::testing {

using Rng = std::mt19937_64;

Mat gaussian(Rng& rng, int rows, int cols);
Mat random_orthogonal(Rng& rng, int n);
Mat random_symmetric(Rng& rng, int n, double scale = 1.0);
Mat random_spd(Rng& rng, int n, double max_cond = 50.0);
Mat random_invertible(Rng& rng, int n, double max_cond = 20.0);
// spectral radius drawn from [lo, hi]
Mat random_contracting(Rng& rng, int n, double lo = 0.2, double hi = 0.85, double max_cond = 20.0);
PantsParams random_rstar(Rng& rng, int n, double max_cond = 1e3);
SpMat random_symplectic(Rng& rng, int n, double max_cond = 1e2);

struct HandleInput {
    Mat x1, x2, g;
};
HandleInput random_handle(Rng& rng, int n);

// random coordinates in standard layout whose graph lies in R* at every node;
// signs[i] forces the determinant sign of the i-th designated parameter when given
StandardCoords random_standard_coords(Rng& rng, int g, int m, int n, const std::vector<int>& signs = {});

}  // namespace maxrep::testing

namespace maxrep::testing {

// rounding floor of the surface relation: eps * sum |prefix| |letter| |suffix|
double relation_floor(const SurfaceRep& rep);

}  // namespace maxrep::testing
