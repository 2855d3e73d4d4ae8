#pragma once

#include <vector>

#include "maxrep/graph.hpp"

namespace maxrep {

// Path in GL(n) from x0 to x1 (same determinant sign): QR factors with the
// triangular part interpolated linearly and the orthogonal part along a
// one-parameter subgroup.
class GlPath {
public:
    GlPath(const Mat& x0, const Mat& x1);
    Mat at(double t) const;

private:
    Mat q0_, log_, r0_, r1_;
};

// Path through contracting matrices ending at a fixed endpoint.
class ContractingPath {
public:
    ContractingPath(const Mat& x0, const Mat& x1);
    Mat at(double t) const;

private:
    GlPath gl_;
    double rho0_, rho1_;
};

// real skew-symmetric L with exp(L) = q, for q in SO(n)
Mat orthogonal_log(const Mat& q);

struct DeformPath {
    std::vector<StandardCoords> coords;
    std::vector<GluingGraph> snapshots;  // steps + 1 graphs, first = input, last = standard
    std::vector<int> signature;
};

// endpoint of the deformation: designated parameters standard, other
// twists diag(+-1, 1, ..., 1) by determinant sign
StandardCoords standard_target(const StandardCoords& c, const Tolerance& tol = {});

DeformPath deform_to_standard(const GluingGraph& graph, int steps = 100, const Tolerance& tol = {});
DeformPath deform_to_standard(const SurfaceRep& rep, int steps = 100, const Tolerance& tol = {});

}  // namespace maxrep
