#include "maxrep/pants.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace maxrep {

std::string HalfInteger::str() const {
    if (is_integer()) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

const char* to_string(ParamClass c) {
    switch (c) {
        case ParamClass::NotValid: return "NotValid";
        case ParamClass::InTildeR: return "InTildeR";
        case ParamClass::InR: return "InR";
        case ParamClass::InRStar: return "InRStar";
    }
    return "?";
}

const char* to_string(Equivalence e) {
    switch (e) {
        case Equivalence::Equivalent: return "Equivalent";
        case Equivalence::NotEquivalent: return "NotEquivalent";
        case Equivalence::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

void check_shapes(const Mat& x1, const Mat& x2, const Mat& x3) {
    const Eigen::Index n = x1.rows();
    if (n == 0 || x1.cols() != n || x2.rows() != n || x2.cols() != n || x3.rows() != n || x3.cols() != n)
        fail(ErrorKind::InvalidArgument, "length matrices must be square of equal size");
    if (!x1.allFinite() || !x2.allFinite() || !x3.allFinite())
        fail(ErrorKind::InvalidArgument, "non-finite entry in length matrix");
}

void check_invertible(const Mat& x, const Tolerance& tol, const char* name) {
    if (condition_number(x) > 1.0 / tol.eq_tol) fail(ErrorKind::Singular, std::string(name) + " is near-singular");
}

Mat product_of(const Mat& x1, const Mat& x2, const Mat& x3) {
    return x3 * x2.transpose().inverse() * x1;
}

}  // namespace

Mat pants_product(const PantsParams& p) { return product_of(p.x1, p.x2, p.x3); }

ParamClass classify_params(const PantsParams& p, const Tolerance& tol) {
    check_shapes(p.x1, p.x2, p.x3);
    check_invertible(p.x1, tol, "X1");
    check_invertible(p.x2, tol, "X2");
    check_invertible(p.x3, tol, "X3");
    Mat prod = pants_product(p);
    if (symmetry_defect(prod) > tol.eq_tol || !is_spd(symmetrize(prod), tol)) return ParamClass::NotValid;
    bool closed = true, open = true;
    for (int i = 0; i < 3; ++i) {
        double r = spectral_radius(p[i]);
        if (r > 1.0 + tol.unit_circle_band) closed = false;
        if (!(r < 1.0 - tol.unit_circle_band)) open = false;
    }
    if (!closed) return ParamClass::InTildeR;
    return open ? ParamClass::InRStar : ParamClass::InR;
}

bool has_boundary_length(const PantsParams& p, const Tolerance& tol) {
    for (int i = 0; i < 3; ++i)
        if (std::abs(spectral_radius(p[i]) - 1.0) <= tol.unit_circle_band) return true;
    return false;
}

double relation_residual(const PantsRep& r) {
    return product_residual({r.c3.full(), r.c2.full(), r.c1.full()});
}

PantsRep conjugate(const PantsRep& r, const SpMat& h) {
    SpMat hi = sp_inverse(h);
    return PantsRep{h * r.c1 * hi, h * r.c2 * hi, h * r.c3 * hi};
}

namespace {

void check_relation(const PantsRep& r, const Tolerance& tol) {
    double res = relation_residual(r);
    double scale = std::max({1.0, inf_norm(r.c1.full()), inf_norm(r.c2.full()), inf_norm(r.c3.full())});
    if (res > std::sqrt(tol.eq_tol) * scale * scale) {
        std::ostringstream os;
        os << "group relation residual " << res << " too large";
        fail(ErrorKind::IllConditioned, os.str());
    }
}

}  // namespace

PantsRep build_maximal(const PantsParams& p, const Tolerance& tol) {
    ParamClass cls = classify_params(p, tol);
    if (cls == ParamClass::NotValid)
        fail(ErrorKind::NotValid, "X3 X2^-T X1 is not symmetric positive definite");
    const Mat& x1 = p.x1;
    const Mat& x2 = p.x2;
    const Mat& x3 = p.x3;
    Mat x1it = x1.inverse().transpose();
    Mat x2i = x2.inverse();
    Mat x2it = x2i.transpose();
    Mat x3i = x3.inverse();
    Mat w = x3i * x1.transpose();  // X3^-1 X1^T
    PantsRep r;
    r.c1 = make_symplectic(x1, Mat::Zero(p.n(), p.n()), x1 + x2i * x3.transpose(), x1it, tol);
    r.c2 = make_symplectic(-w - x2 - x2it, x2 + w, -w - x2it, w, tol);
    r.c3 = make_symplectic(x3i.transpose(), -x3i.transpose() - x1.inverse() * x2.transpose(),
                           Mat::Zero(p.n(), p.n()), x3, tol);
    check_relation(r, tol);
    return r;
}

PantsRep build_general(const GeneralPantsParams& p, const Tolerance& tol) {
    check_shapes(p.x1, p.x2, p.x3);
    const int n = static_cast<int>(p.x1.rows());
    if (p.i < 0 || p.i > n) fail(ErrorKind::InvalidArgument, "index i must lie in [0, n]");
    check_invertible(p.x1, tol, "X1");
    check_invertible(p.x2, tol, "X2");
    check_invertible(p.x3, tol, "X3");
    Mat prod = product_of(p.x1, p.x2, p.x3);
    if (symmetry_defect(prod) > tol.eq_tol) fail(ErrorKind::NotValid, "X3 X2^-T X1 is not symmetric");
    check_invertible(prod, tol, "X3 X2^-T X1");
    const Mat ii = signature_matrix(n, p.i);
    const Mat& x1 = p.x1;
    const Mat& x2 = p.x2;
    const Mat& x3 = p.x3;
    Mat x2i = x2.inverse();
    Mat x2it = x2i.transpose();
    Mat x3i = x3.inverse();
    Mat w = x3i * x1.transpose();
    Mat z = Mat::Zero(n, n);
    PantsRep r;
    r.c1 = make_symplectic(x1, z, x2i * x3.transpose() + ii * x1, x1.inverse().transpose(), tol);
    r.c2 = make_symplectic(-ii * x2it - ii * w * ii - x2 * ii, ii * w + x2, -x2it - w * ii, w, tol);
    r.c3 = make_symplectic(x3i.transpose(), -x3i.transpose() * ii - x1.inverse() * x2.transpose(), z, x3, tol);
    check_relation(r, tol);
    return r;
}

Triple standard_fixed_points(int n, int i, const Tolerance& tol) {
    return Triple(BoundaryPoint::finite(SymMat::unchecked(Mat::Zero(n, n))),
                  BoundaryPoint::finite(SymMat::unchecked(signature_matrix(n, i))), BoundaryPoint::infinity(n), tol);
}

HalfInteger toledo(const PantsRep& rep, const Triple& fp, const Tolerance& tol) {
    for (int i = 0; i < 3; ++i) {
        double d = fixed_point_defect(rep[i], fp[i], tol);
        if (!(d <= fixed_point_band(tol))) {
            std::ostringstream os;
            os << "y" << (i + 1) << " is not fixed by c" << (i + 1) << " (relative defect " << d << ")";
            fail(ErrorKind::NotFixed, os.str());
        }
    }
    int b1 = maslov(fp.p1(), fp.p2(), fp.p3(), tol);
    BoundaryPoint z = moebius_act(rep.c1, fp.p3(), tol);
    int b2 = maslov(fp.p1(), z, fp.p2(), tol);
    return HalfInteger{b1 + b2};
}

HalfInteger toledo_signature_shortcut(const PantsParams& p, const Tolerance& tol) {
    check_shapes(p.x1, p.x2, p.x3);
    Mat prod = pants_product(p);
    if (symmetry_defect(prod) > tol.eq_tol) fail(ErrorKind::NotValid, "X3 X2^-T X1 is not symmetric");
    return HalfInteger{p.n() + signature(SymMat::unchecked(prod), tol)};
}

RecoveredParams recover_params(const PantsRep& rep, const Tolerance& tol) {
    const int n = rep.c1.n();
    BoundaryPoint y[3];
    for (int i = 0; i < 3; ++i) y[i] = canonical_fixed_point_of(rep[i], tol).point;
    std::optional<Triple> t;
    try {
        t.emplace(y[0], y[1], y[2], tol);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotTransverse)
            fail(ErrorKind::NotMaximal, std::string("canonical fixed points are not transverse: ") + e.what());
        throw;
    }
    SpMat h = normalize_maximal_triple(*t, tol);
    PantsRep r = conjugate(rep, h);
    RecoveredParams out{PantsParams{r.c1.a(), r.c2.b() - r.c2.d(), r.c3.d()}, h};
    ParamClass cls = classify_params(out.params, tol);
    if (cls != ParamClass::InR && cls != ParamClass::InRStar) {
        std::ostringstream os;
        os << "recovered parameters classify as " << to_string(cls);
        fail(ErrorKind::NotMaximal, os.str());
    }
    (void)n;
    return out;
}

Vec trace_fingerprint(const PantsParams& p) {
    Mat letters[6] = {p.x1, p.x2, p.x3, p.x1.transpose(), p.x2.transpose(), p.x3.transpose()};
    Vec out(6 + 36 + 216);
    int k = 0;
    for (int a = 0; a < 6; ++a) out(k++) = letters[a].trace();
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) out(k++) = (letters[a] * letters[b]).trace();
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            Mat ab = letters[a] * letters[b];
            for (int c = 0; c < 6; ++c) out(k++) = (ab * letters[c]).trace();
        }
    return out;
}

double fingerprint_distance(const PantsParams& p, const PantsParams& q) {
    if (p.n() != q.n()) return std::numeric_limits<double>::infinity();
    Vec a = trace_fingerprint(p), b = trace_fingerprint(q);
    double d = 0.0;
    for (int i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a(i) - b(i)) / std::max({1.0, std::abs(a(i)), std::abs(b(i))}));
    return d;
}

std::optional<Mat> orthogonal_alignment(const PantsParams& p, const PantsParams& q, const Tolerance& tol) {
    const int n = p.n();
    std::mt19937_64 rng(0xa11a11ULL);
    std::normal_distribution<double> nd(0.0, 1.0);
    auto covariant = [&](const PantsParams& x, const std::vector<double>& w) {
        Mat f = Mat::Zero(n, n);
        int k = 0;
        for (int i = 0; i < 3; ++i) {
            f += w[k++] * (x[i] + x[i].transpose());
            f += w[k++] * x[i] * x[i].transpose();
            f += w[k++] * x[i].transpose() * x[i];
        }
        f += w[k++] * symmetrize(pants_product(x));
        return symmetrize(f);
    };
    const double accept = std::max(1e3 * tol.eq_tol, 1e-7);
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<double> w(10);
        for (double& v : w) v = nd(rng);
        Eigen::SelfAdjointEigenSolver<Mat> ep(covariant(p, w)), eq(covariant(q, w));
        const Vec& lp = ep.eigenvalues();
        const Vec& lq = eq.eigenvalues();
        double scale = std::max(1.0, lp.cwiseAbs().maxCoeff());
        if ((lp - lq).cwiseAbs().maxCoeff() > 1e-6 * scale) return std::nullopt;
        double gap = std::numeric_limits<double>::infinity();
        for (int i = 1; i < n; ++i) gap = std::min(gap, lp(i) - lp(i - 1));
        if (gap < 1e-6 * scale) continue;
        Mat up = ep.eigenvectors(), uq = eq.eigenvectors();
        // k = uq D up^T; signs from d_a d_b Mp(a,b) = Mq(a,b)
        Mat mp[3], mq[3];
        for (int i = 0; i < 3; ++i) {
            mp[i] = up.transpose() * p[i] * up;
            mq[i] = uq.transpose() * q[i] * uq;
        }
        std::vector<int> sign(n, 0);
        sign[0] = 1;
        for (int added = 1; added < n; ++added) {
            int best_a = -1, best_b = -1, best_i = 0;
            double best = -1.0;
            for (int a = 0; a < n; ++a) {
                if (sign[a] == 0) continue;
                for (int b = 0; b < n; ++b) {
                    if (sign[b] != 0) continue;
                    for (int i = 0; i < 3; ++i) {
                        double v = std::max(std::abs(mp[i](a, b)), std::abs(mp[i](b, a)));
                        if (v > best) { best = v; best_a = a; best_b = b; best_i = i; }
                    }
                }
            }
            double vp = std::abs(mp[best_i](best_a, best_b)) >= std::abs(mp[best_i](best_b, best_a))
                            ? mp[best_i](best_a, best_b) : mp[best_i](best_b, best_a);
            double vq = std::abs(mp[best_i](best_a, best_b)) >= std::abs(mp[best_i](best_b, best_a))
                            ? mq[best_i](best_a, best_b) : mq[best_i](best_b, best_a);
            sign[best_b] = (vp * vq >= 0 ? 1 : -1) * sign[best_a];
        }
        Mat d = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i) d(i, i) = sign[i];
        Mat k = uq * d * up.transpose();
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) worst = std::max(worst, rel_residual(k * p[i] * k.transpose(), q[i]));
        if (worst <= accept) return k;
    }
    return std::nullopt;
}

Equivalence params_equivalent(const PantsParams& p, const PantsParams& q, const Tolerance& tol) {
    if (p.n() != q.n()) return Equivalence::NotEquivalent;
    double fp = fingerprint_distance(p, q);
    if (fp > std::max(1e-7, 100.0 * tol.eq_tol)) return Equivalence::NotEquivalent;
    if (orthogonal_alignment(p, q, tol)) return Equivalence::Equivalent;
    return Equivalence::Inconclusive;
}

}  // namespace maxrep
