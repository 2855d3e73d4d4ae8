#pragma once

#include <vector>

#include "maxrep/symplectic.hpp"

namespace maxrep {

// c = (A, 0; A + A^-T S, A^-T) with S positive definite
struct StandardBoundary {
    Mat a;
    SymMat s;

    static StandardBoundary make(const Mat& a, const Mat& s, const Tolerance& tol = {});
    SpMat element() const;
};

enum class DifferentialClass { Contracting, Expanding, NonExpanding, NonContracting, Indeterminate };
const char* to_string(DifferentialClass c);

// v -> L v R on symmetric matrices; for a point at infinity the map is
// expressed in the chart Y -> -Y^-1, where the point sits at 0.
struct DifferentialMap {
    Mat left;
    Mat right;
    bool infinity_chart = false;
    std::vector<double> moduli;  // eigenvalue moduli on Sym_n, ascending
    DifferentialClass cls = DifferentialClass::Indeterminate;

    Mat apply(const Mat& v) const { return left * v * right; }
};

struct FixedPointReport {
    BoundaryPoint point;
    DifferentialClass differential_class = DifferentialClass::Indeterminate;
    double residual = 0.0;
    double conjugator_condition = 1.0;  // condition of the element carrying 0 to the point
};

// relative tolerance used when checking that a point is fixed
double fixed_point_band(const Tolerance& tol);
double fixed_point_defect(const SpMat& g, const BoundaryPoint& y, const Tolerance& tol = {});

// Y C Y + Y A^-T - A Y, C = A + A^-T S
Mat fixed_point_equation(const StandardBoundary& sb, const Mat& y);

FixedPointReport fixed_point_expanding_side(const StandardBoundary& sb, const Tolerance& tol = {});
DifferentialMap differential_at(const SpMat& g, const BoundaryPoint& y, const Tolerance& tol = {});
FixedPointReport canonical_fixed_point(const StandardBoundary& sb, const Tolerance& tol = {});

enum class IsometryClass { SHyperbolic, SParabolic, MixedNonExpandingFP };
const char* to_string(IsometryClass c);

struct IsometryReport {
    IsometryClass cls = IsometryClass::MixedNonExpandingFP;
    std::optional<BoundaryPoint> attracting;
    std::optional<BoundaryPoint> repelling;
};
IsometryReport classify_isometry(const StandardBoundary& sb, const Tolerance& tol = {});

// Canonical fixed point of an arbitrary element: the invariant Lagrangian
// made of the expanding eigenspace and the unit-modulus eigenvectors.
FixedPointReport canonical_fixed_point_of(const SpMat& g, const Tolerance& tol = {});

// Lagrangian frames (2n x n, orthonormal columns) of the expanding and
// contracting eigenspaces; throws NotSHyperbolic when either is not n-dimensional.
struct HyperbolicFrames {
    Mat attracting;
    Mat repelling;
};
HyperbolicFrames hyperbolic_frames(const SpMat& g, const Tolerance& tol = {});

// 0 -> Y chart change used for conditioning reports
double chart_condition(const BoundaryPoint& y);

}  // namespace maxrep
