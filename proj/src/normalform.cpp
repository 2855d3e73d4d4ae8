#include "maxrep/normalform.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "maxrep/schur.hpp"

namespace maxrep {

StandardBoundary StandardBoundary::make(const Mat& a, const Mat& s, const Tolerance& tol) {
    if (a.rows() != a.cols() || s.rows() != a.rows()) fail(ErrorKind::InvalidArgument, "dimension mismatch");
    if (condition_number(a) > 1.0 / tol.eq_tol) fail(ErrorKind::Singular, "boundary matrix A is singular");
    SymMat ss(s, tol);
    if (!is_spd(ss.mat(), tol)) fail(ErrorKind::InvalidArgument, "S must be positive definite");
    return StandardBoundary{a, ss};
}

SpMat StandardBoundary::element() const {
    Mat ait = a.inverse().transpose();
    const Eigen::Index n = a.rows();
    return SpMat::from_blocks_unchecked(a, Mat::Zero(n, n), a + ait * s.mat(), ait);
}

const char* to_string(DifferentialClass c) {
    switch (c) {
        case DifferentialClass::Contracting: return "Contracting";
        case DifferentialClass::Expanding: return "Expanding";
        case DifferentialClass::NonExpanding: return "NonExpanding";
        case DifferentialClass::NonContracting: return "NonContracting";
        case DifferentialClass::Indeterminate: return "Indeterminate";
    }
    return "?";
}

const char* to_string(IsometryClass c) {
    switch (c) {
        case IsometryClass::SHyperbolic: return "SHyperbolic";
        case IsometryClass::SParabolic: return "SParabolic";
        case IsometryClass::MixedNonExpandingFP: return "MixedNonExpandingFP";
    }
    return "?";
}

double fixed_point_band(const Tolerance& tol) { return 1e3 * tol.eq_tol; }

double fixed_point_defect(const SpMat& g, const BoundaryPoint& y, const Tolerance& tol) {
    BoundaryPoint img;
    try {
        img = moebius_act(g, y, tol);
    } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
    }
    if (img.is_infinite() || y.is_infinite())
        return img.is_infinite() == y.is_infinite() ? 0.0 : std::numeric_limits<double>::infinity();
    return rel_residual(img.value(), y.value());
}

Mat fixed_point_equation(const StandardBoundary& sb, const Mat& y) {
    Mat ait = sb.a.inverse().transpose();
    Mat c = sb.a + ait * sb.s.mat();
    return y * c * y + y * ait - sb.a * y;
}

double chart_condition(const BoundaryPoint& y) {
    if (y.is_infinite()) return 1.0;
    return condition_number(translation(y.value()).full());
}

namespace {

std::vector<double> sym_operator_moduli(const Mat& l, const Mat& r) {
    const int n = static_cast<int>(l.rows());
    const int dim = n * (n + 1) / 2;
    Mat op(dim, dim);
    int col = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Mat e = Mat::Zero(n, n);
            e(i, j) = 1.0;
            e(j, i) = 1.0;
            Mat img = symmetrize(l * e * r);
            int row = 0;
            for (int p = 0; p < n; ++p)
                for (int q = p; q < n; ++q) op(row++, col) = img(p, q);
            ++col;
        }
    CVec ev = eigenvalues(op);
    std::vector<double> m(ev.size());
    for (int i = 0; i < ev.size(); ++i) m[i] = std::abs(ev(i));
    std::sort(m.begin(), m.end());
    return m;
}

DifferentialClass classify_moduli(const std::vector<double>& m, double band) {
    if (m.empty()) return DifferentialClass::Indeterminate;
    double lo = m.front(), hi = m.back();
    if (hi < 1.0 - band) return DifferentialClass::Contracting;
    if (lo > 1.0 + band) return DifferentialClass::Expanding;
    if (hi <= 1.0 + band) return DifferentialClass::NonExpanding;
    if (lo >= 1.0 - band) return DifferentialClass::NonContracting;
    return DifferentialClass::Indeterminate;
}

FixedPointReport finish_report(const SpMat& g, const BoundaryPoint& y, const Tolerance& tol) {
    FixedPointReport rep;
    rep.point = y;
    DifferentialMap d = differential_at(g, y, tol);
    rep.differential_class = d.cls;
    rep.conjugator_condition = chart_condition(y);
    return rep;
}

// Y solving the c-form fixed point equation on the contracting side of A
Mat expanding_side_solution(const Mat& a, const Mat& s, const Tolerance& tol) {
    Mat sbar = a.transpose() * a + s;
    SymMat p = stein_solve(a, SymMat::unchecked(sbar), tol);
    return symmetrize(p.mat().inverse());
}

}  // namespace

DifferentialMap differential_at(const SpMat& g, const BoundaryPoint& y, const Tolerance& tol) {
    double defect = fixed_point_defect(g, y, tol);
    if (!(defect <= fixed_point_band(tol))) {
        std::ostringstream os;
        os << "point is not fixed (relative defect " << defect << ")";
        fail(ErrorKind::NotFixed, os.str());
    }
    DifferentialMap d;
    if (y.is_infinite()) {
        SpMat j = standard_j(g.n());
        SpMat h = j * g * sp_inverse(j);
        d.left = h.a();
        d.right = h.d().inverse();
        d.infinity_chart = true;
    } else {
        const Mat& yv = y.value();
        d.left = g.a() - yv * g.c();
        d.right = (g.c() * yv + g.d()).inverse();
    }
    d.moduli = sym_operator_moduli(d.left, d.right);
    d.cls = classify_moduli(d.moduli, tol.unit_circle_band);
    return d;
}

FixedPointReport fixed_point_expanding_side(const StandardBoundary& sb, const Tolerance& tol) {
    if (!is_contracting(sb.a, tol)) fail(ErrorKind::NotContracting, "A must be contracting");
    Mat y = expanding_side_solution(sb.a, sb.s.mat(), tol);
    BoundaryPoint p = BoundaryPoint::finite(SymMat::unchecked(y));
    FixedPointReport rep = finish_report(sb.element(), p, tol);
    rep.residual = inf_norm(fixed_point_equation(sb, y));
    return rep;
}

FixedPointReport canonical_fixed_point(const StandardBoundary& sb, const Tolerance& tol) {
    const int n = static_cast<int>(sb.a.rows());
    const double band = tol.unit_circle_band;
    OrderedSchur sch = ordered_schur(sb.a, [&](std::complex<double> z) { return std::abs(z) > 1.0 + band; });
    for (int i = 0; i < n; ++i) {
        double r = std::abs(sch.eigenvalues(i));
        bool expanding = r > 1.0 + band;
        if (expanding != (i < sch.selected))
            fail(ErrorKind::DefectiveSplit, "eigenvalue cluster straddles the unit-circle band");
    }
    const int k = sch.selected;
    Mat y = Mat::Zero(n, n);
    if (k > 0) {
        Mat s2 = sch.q.transpose() * sb.s.mat() * sch.q;
        Mat t11 = sch.t.topLeftCorner(k, k);
        Mat y1 = expanding_side_solution(t11, s2.topLeftCorner(k, k), tol);
        Mat yb = Mat::Zero(n, n);
        yb.topLeftCorner(k, k) = y1;
        y = symmetrize(sch.q * yb * sch.q.transpose());
    }
    BoundaryPoint p = BoundaryPoint::finite(SymMat::unchecked(y));
    FixedPointReport rep = finish_report(sb.element(), p, tol);
    rep.residual = inf_norm(fixed_point_equation(sb, y));
    return rep;
}

IsometryReport classify_isometry(const StandardBoundary& sb, const Tolerance& tol) {
    IsometryReport out;
    const int n = static_cast<int>(sb.a.rows());
    const double band = tol.unit_circle_band;
    CVec ev = eigenvalues(sb.a);
    int on_circle = 0;
    for (int i = 0; i < n; ++i)
        if (std::abs(std::abs(ev(i)) - 1.0) <= band) ++on_circle;
    if (on_circle == n) {
        out.cls = IsometryClass::SParabolic;
        out.attracting = BoundaryPoint::finite(SymMat::unchecked(Mat::Zero(n, n)));
        return out;
    }
    if (on_circle > 0) {
        out.cls = IsometryClass::MixedNonExpandingFP;
        out.attracting = canonical_fixed_point(sb, tol).point;
        return out;
    }
    out.cls = IsometryClass::SHyperbolic;
    out.attracting = canonical_fixed_point(sb, tol).point;
    // repelling point: contracting block leading, expanding-side solution there
    OrderedSchur sch = ordered_schur(sb.a, [&](std::complex<double> z) { return std::abs(z) < 1.0 - band; });
    const int k = sch.selected;
    Mat y = Mat::Zero(n, n);
    if (k > 0) {
        Mat s2 = sch.q.transpose() * sb.s.mat() * sch.q;
        Mat y1 = expanding_side_solution(sch.t.topLeftCorner(k, k), s2.topLeftCorner(k, k), tol);
        Mat yb = Mat::Zero(n, n);
        yb.topLeftCorner(k, k) = y1;
        y = symmetrize(sch.q * yb * sch.q.transpose());
    }
    out.repelling = BoundaryPoint::finite(SymMat::unchecked(y));
    return out;
}

namespace {

double element_band(const Tolerance& tol) { return std::max(tol.unit_circle_band, 1e-6); }

Mat orthonormal_columns(const Mat& m) {
    Eigen::HouseholderQR<Mat> qr(m);
    return qr.householderQ() * Mat::Identity(m.rows(), m.cols());
}

double isotropy_defect(const Mat& l) {
    const Eigen::Index n = l.rows() / 2;
    Mat omega = Mat::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Mat::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return (l.transpose() * omega * l).cwiseAbs().maxCoeff();
}

}  // namespace

FixedPointReport canonical_fixed_point_of(const SpMat& g, const Tolerance& tol) {
    const int n = g.n();
    const double band = element_band(tol);
    const Mat& m = g.full();
    OrderedSchur up = ordered_schur(m, [&](std::complex<double> z) { return std::abs(z) > 1.0 + band; });
    const int k = up.selected;
    if (k > n) fail(ErrorKind::NoCanonicalFixedPoint, "expanding eigenspace exceeds half dimension");
    Mat frame(2 * n, n);
    frame.leftCols(k) = up.q.leftCols(k);
    if (k < n) {
        OrderedSchur uc =
            ordered_schur(m, [&](std::complex<double> z) { return std::abs(std::abs(z) - 1.0) <= band; });
        const int d0 = uc.selected;
        if (d0 == 0) fail(ErrorKind::NoCanonicalFixedPoint, "no unit-modulus eigenvalues to complete the frame");
        Mat u0 = uc.q.leftCols(d0);
        Mat t0 = uc.t.topLeftCorner(d0, d0);
        // cluster unit eigenvalues (conjugate pairs merged) and collect eigenvectors
        std::vector<std::complex<double>> reps;
        std::vector<int> counts;
        for (int i = 0; i < d0; ++i) {
            std::complex<double> z = uc.eigenvalues(i);
            if (z.imag() < 0) z = std::conj(z);
            bool found = false;
            for (std::size_t c = 0; c < reps.size(); ++c)
                if (std::abs(reps[c] / double(counts[c]) - z) < 1e-4) {
                    reps[c] += z;
                    counts[c]++;
                    found = true;
                    break;
                }
            if (!found) {
                reps.push_back(z);
                counts.push_back(1);
            }
        }
        std::vector<Mat> kernels;
        int total = k;
        for (std::size_t c = 0; c < reps.size(); ++c) {
            std::complex<double> lam = reps[c] / double(counts[c]);
            Mat p;
            Mat id = Mat::Identity(d0, d0);
            if (std::abs(lam.imag()) < 1e-6) {
                p = t0 - lam.real() * id;
            } else {
                p = t0 * t0 - 2.0 * lam.real() * t0 + std::norm(lam) * id;
            }
            Eigen::JacobiSVD<Mat> svd(p, Eigen::ComputeFullV);
            const Vec& sv = svd.singularValues();
            int dim = 0;
            double thr = 1e-6 * std::max(1.0, sv(0));
            for (int i = d0 - 1; i >= 0 && sv(i) <= thr; --i) ++dim;
            if (dim > 0) {
                kernels.push_back(u0 * svd.matrixV().rightCols(dim));
                total += dim;
            }
        }
        if (total != n) {
            std::ostringstream os;
            os << "invariant frame has dimension " << total << " instead of " << n;
            fail(ErrorKind::NoCanonicalFixedPoint, os.str());
        }
        int col = k;
        for (const Mat& kb : kernels) {
            frame.middleCols(col, kb.cols()) = kb;
            col += static_cast<int>(kb.cols());
        }
        frame = orthonormal_columns(frame);
    }
    if (isotropy_defect(frame) > 1e-6)
        fail(ErrorKind::NoCanonicalFixedPoint, "invariant frame is not Lagrangian");
    BoundaryPoint y;
    try {
        y = point_from_frame(frame, tol);
    } catch (const Error& e) {
        fail(ErrorKind::NoCanonicalFixedPoint, std::string("fixed Lagrangian is not representable: ") + e.what());
    }
    FixedPointReport rep = finish_report(g, y, tol);
    rep.residual = fixed_point_defect(g, y, tol);
    return rep;
}

HyperbolicFrames hyperbolic_frames(const SpMat& g, const Tolerance& tol) {
    const int n = g.n();
    const double band = element_band(tol);
    OrderedSchur up = ordered_schur(g.full(), [&](std::complex<double> z) { return std::abs(z) > 1.0 + band; });
    if (up.selected != n) fail(ErrorKind::NotSHyperbolic, "expanding eigenspace is not n-dimensional");
    OrderedSchur dn = ordered_schur(g.full(), [&](std::complex<double> z) { return std::abs(z) < 1.0 - band; });
    if (dn.selected != n) fail(ErrorKind::NotSHyperbolic, "contracting eigenspace is not n-dimensional");
    return HyperbolicFrames{up.q.leftCols(n), dn.q.leftCols(n)};
}

}  // namespace maxrep
