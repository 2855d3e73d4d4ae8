#include "maxrep/symplectic.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <sstream>

namespace maxrep {

SpMat SpMat::identity(int n) { return from_full_unchecked(Mat::Identity(2 * n, 2 * n)); }

SpMat SpMat::from_full_unchecked(const Mat& full) {
    if (full.rows() != full.cols() || full.rows() % 2 != 0)
        fail(ErrorKind::InvalidArgument, "symplectic matrix must be 2n x 2n");
    SpMat g;
    g.m_ = full;
    return g;
}

SpMat SpMat::from_blocks_unchecked(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || b.rows() != n || b.cols() != n || c.rows() != n || c.cols() != n || d.rows() != n ||
        d.cols() != n)
        fail(ErrorKind::InvalidArgument, "block dimensions do not match");
    Mat full(2 * n, 2 * n);
    full << a, b, c, d;
    return from_full_unchecked(full);
}

SymplecticDefect symplectic_defect(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
    const Eigen::Index n = a.rows();
    double scale = std::max({1.0, inf_norm(a), inf_norm(b), inf_norm(c), inf_norm(d)});
    scale *= scale;
    SymplecticDefect out;
    auto check = [&](const Mat& r, const char* name) {
        double v = inf_norm(r) / scale;
        if (v >= out.worst) {
            out.worst = v;
            out.relation = name;
        }
    };
    check(a.transpose() * d - c.transpose() * b - Mat::Identity(n, n), "A^T D - C^T B = I");
    check(a.transpose() * c - c.transpose() * a, "A^T C = C^T A");
    check(d.transpose() * b - b.transpose() * d, "D^T B = B^T D");
    return out;
}

SpMat make_symplectic(const Mat& a, const Mat& b, const Mat& c, const Mat& d, const Tolerance& tol) {
    SpMat g = SpMat::from_blocks_unchecked(a, b, c, d);
    if (!g.full().allFinite()) fail(ErrorKind::NotSymplectic, "non-finite entry");
    SymplecticDefect def = symplectic_defect(a, b, c, d);
    if (def.worst > tol.eq_tol) {
        std::ostringstream os;
        os << "relation " << def.relation << " violated, residual " << def.worst;
        fail(ErrorKind::NotSymplectic, os.str());
    }
    return g;
}

SpMat make_symplectic(const Mat& full, const Tolerance& tol) {
    SpMat g = SpMat::from_full_unchecked(full);
    return make_symplectic(g.a(), g.b(), g.c(), g.d(), tol);
}

SpMat sp_inverse(const SpMat& g) {
    return SpMat::from_blocks_unchecked(g.d().transpose(), -g.b().transpose(), -g.c().transpose(),
                                        g.a().transpose());
}

SpMat translation(const Mat& b) {
    const Eigen::Index n = b.rows();
    return SpMat::from_blocks_unchecked(Mat::Identity(n, n), b, Mat::Zero(n, n), Mat::Identity(n, n));
}

SpMat block_diag(const Mat& a) {
    const Eigen::Index n = a.rows();
    return SpMat::from_blocks_unchecked(a, Mat::Zero(n, n), Mat::Zero(n, n), a.inverse().transpose());
}

SpMat standard_j(int n) {
    Mat i = Mat::Identity(n, n), z = Mat::Zero(n, n);
    return SpMat::from_blocks_unchecked(z, -i, i, z);
}

SpMat port_rotation(int n) {
    Mat i = Mat::Identity(n, n), z = Mat::Zero(n, n);
    return SpMat::from_blocks_unchecked(z, -i, i, -i);
}

const Mat& BoundaryPoint::value() const {
    if (inf_) fail(ErrorKind::InvalidArgument, "point at infinity has no finite value");
    return value_.mat();
}

double point_distance(const BoundaryPoint& p, const BoundaryPoint& q) {
    if (p.is_infinite() && q.is_infinite()) return 0.0;
    if (p.is_infinite() || q.is_infinite()) return std::numeric_limits<double>::infinity();
    return inf_norm(p.value() - q.value());
}

Mat lagrangian_frame(const BoundaryPoint& p) {
    const int n = p.dim();
    Mat f(2 * n, n);
    if (p.is_infinite()) {
        f << Mat::Identity(n, n), Mat::Zero(n, n);
    } else {
        f << p.value(), Mat::Identity(n, n);
    }
    return f;
}

BoundaryPoint point_from_frame(const Mat& frame, const Tolerance& tol) {
    const Eigen::Index n = frame.cols();
    Mat u = frame.topRows(n), v = frame.bottomRows(n);
    Eigen::JacobiSVD<Mat> fs(frame);
    double scale = fs.singularValues()(0);
    Eigen::JacobiSVD<Mat> vs(v);
    const Vec& sv = vs.singularValues();
    if (sv(0) < tol.eq_tol * scale) return BoundaryPoint::infinity(static_cast<int>(n));
    if (sv(n - 1) < tol.eq_tol * scale) {
        std::ostringstream os;
        os << "image is near the point at infinity but not within its band (sigma_min " << sv(n - 1) / scale
           << ", sigma_max " << sv(0) / scale << " relative)";
        fail(ErrorKind::IllConditioned, os.str());
    }
    // Y = U V^-1, solved as V^T Y^T = U^T
    Mat y = v.transpose().fullPivLu().solve(u.transpose()).transpose();
    if (symmetry_defect(y) > std::sqrt(tol.eq_tol))
        fail(ErrorKind::IllConditioned, "frame is not Lagrangian within tolerance");
    return BoundaryPoint::finite(SymMat::unchecked(y));
}

BoundaryPoint moebius_act(const SpMat& g, const BoundaryPoint& p, const Tolerance& tol) {
    if (p.dim() != g.n()) fail(ErrorKind::InvalidArgument, "dimension mismatch in action");
    return point_from_frame(g.full() * lagrangian_frame(p), tol);
}

CMat cayley(const CMat& z, const Tolerance& tol) {
    const Eigen::Index n = z.rows();
    CMat id = CMat::Identity(n, n);
    CMat m = id - z;
    Eigen::JacobiSVD<CMat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) <= tol.eq_tol * std::max(1.0, sv(0))) fail(ErrorKind::NotInvertible, "I - Z is singular");
    const std::complex<double> i(0.0, 1.0);
    return i * (id + z) * m.inverse();
}

CMat inverse_cayley(const CMat& w, const Tolerance& tol) {
    const Eigen::Index n = w.rows();
    const std::complex<double> i(0.0, 1.0);
    CMat id = CMat::Identity(n, n);
    CMat m = w + i * id;
    Eigen::JacobiSVD<CMat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) <= tol.eq_tol * std::max(1.0, sv(0))) fail(ErrorKind::NotInvertible, "W + iI is singular");
    return (w - i * id) * m.inverse();
}

Transversality transversality(const BoundaryPoint& p, const BoundaryPoint& q, const Tolerance& tol) {
    Transversality t;
    if (p.is_infinite() && q.is_infinite()) return t;
    if (p.is_infinite() || q.is_infinite()) {
        t.transverse = true;
        return t;
    }
    Eigen::JacobiSVD<Mat> svd(p.value() - q.value());
    const Vec& sv = svd.singularValues();
    double s = sv(sv.size() - 1);
    double band = tol.eq_tol * std::max({1.0, p.value().norm(), q.value().norm()});
    if (s <= band) return t;
    if (s <= 100.0 * band) {
        t.ambiguous = true;
        return t;
    }
    t.transverse = true;
    return t;
}

}  // namespace maxrep
