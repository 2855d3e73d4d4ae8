#pragma once

#include <complex>

#include "maxrep/matcore.hpp"

namespace maxrep {

using CMat = Eigen::MatrixXcd;

// Element of Sp(2n,R), held as the full 2n x 2n matrix with block views.
class SpMat {
public:
    SpMat() = default;
    static SpMat identity(int n);
    // no relation check; for products of known symplectic elements
    static SpMat from_full_unchecked(const Mat& full);
    static SpMat from_blocks_unchecked(const Mat& a, const Mat& b, const Mat& c, const Mat& d);

    int n() const { return static_cast<int>(m_.rows() / 2); }
    const Mat& full() const { return m_; }
    Mat a() const { return m_.topLeftCorner(n(), n()); }
    Mat b() const { return m_.topRightCorner(n(), n()); }
    Mat c() const { return m_.bottomLeftCorner(n(), n()); }
    Mat d() const { return m_.bottomRightCorner(n(), n()); }

    SpMat operator*(const SpMat& o) const { return from_full_unchecked(m_ * o.m_); }

private:
    Mat m_;
};

struct SymplecticDefect {
    double worst = 0.0;
    const char* relation = "";
};
SymplecticDefect symplectic_defect(const Mat& a, const Mat& b, const Mat& c, const Mat& d);

SpMat make_symplectic(const Mat& a, const Mat& b, const Mat& c, const Mat& d, const Tolerance& tol = {});
SpMat make_symplectic(const Mat& full, const Tolerance& tol = {});
SpMat sp_inverse(const SpMat& g);

SpMat translation(const Mat& b);              // (I, B; 0, I)
SpMat block_diag(const Mat& a);               // (A, 0; 0, A^-T)
SpMat standard_j(int n);                      // (0, -I; I, 0)
SpMat port_rotation(int n);                   // (0, -I; I, -I): 0 -> e -> inf -> 0

class BoundaryPoint {
public:
    BoundaryPoint() = default;
    static BoundaryPoint finite(const SymMat& y) { return BoundaryPoint(y, false); }
    static BoundaryPoint finite(const Mat& y, const Tolerance& tol = {}) { return BoundaryPoint(SymMat(y, tol), false); }
    static BoundaryPoint infinity(int n) { BoundaryPoint p; p.inf_ = true; p.n_ = n; return p; }

    bool is_infinite() const { return inf_; }
    int dim() const { return n_; }
    const Mat& value() const;

private:
    BoundaryPoint(const SymMat& y, bool) : value_(y), n_(y.dim()) {}
    SymMat value_;
    bool inf_ = false;
    int n_ = 0;
};

double point_distance(const BoundaryPoint& p, const BoundaryPoint& q);

BoundaryPoint moebius_act(const SpMat& g, const BoundaryPoint& p, const Tolerance& tol = {});

CMat cayley(const CMat& z, const Tolerance& tol = {});
CMat inverse_cayley(const CMat& w, const Tolerance& tol = {});

struct Transversality {
    bool transverse = false;
    bool ambiguous = false;
};
Transversality transversality(const BoundaryPoint& p, const BoundaryPoint& q, const Tolerance& tol = {});
inline bool transverse(const BoundaryPoint& p, const BoundaryPoint& q, const Tolerance& tol = {}) {
    return transversality(p, q, tol).transverse;
}

// n x n Lagrangian frame [Y; I] or [I; 0]
Mat lagrangian_frame(const BoundaryPoint& p);
// Graph chart of a 2n x n Lagrangian frame; Infinity for span[I;0]
BoundaryPoint point_from_frame(const Mat& frame, const Tolerance& tol = {});

}  // namespace maxrep
