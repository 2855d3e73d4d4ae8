#include "maxrep/matcore.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace maxrep {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotSymplectic: return "NotSymplectic";
        case ErrorKind::NotTransverse: return "NotTransverse";
        case ErrorKind::NotMaximal: return "NotMaximal";
        case ErrorKind::NotValid: return "NotValid";
        case ErrorKind::NotFixed: return "NotFixed";
        case ErrorKind::NotContracting: return "NotContracting";
        case ErrorKind::NotCompatible: return "NotCompatible";
        case ErrorKind::NotSHyperbolic: return "NotSHyperbolic";
        case ErrorKind::NoCanonicalFixedPoint: return "NoCanonicalFixedPoint";
        case ErrorKind::CannotGlue: return "CannotGlue";
        case ErrorKind::GraphInvalid: return "GraphInvalid";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NearSingular: return "NearSingular";
        case ErrorKind::NearSingularDet: return "NearSingularDet";
        case ErrorKind::Singular: return "Singular";
        case ErrorKind::NotInvertible: return "NotInvertible";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::ResonantSpectrum: return "ResonantSpectrum";
        case ErrorKind::DefectiveSplit: return "DefectiveSplit";
        case ErrorKind::Parse: return "ParseError";
    }
    return "Unknown";
}

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse: return 2;
        case ErrorKind::NearSingular:
        case ErrorKind::NearSingularDet:
        case ErrorKind::Singular:
        case ErrorKind::NotInvertible:
        case ErrorKind::IllConditioned:
        case ErrorKind::ResonantSpectrum:
        case ErrorKind::DefectiveSplit: return 4;
        default: return 3;
    }
}

void Tolerance::validate() const {
    if (!(eq_tol > 0) || !(series_tol > 0) || !(unit_circle_band > 0))
        fail(ErrorKind::InvalidArgument, "tolerances must be strictly positive");
    if (series_tol > eq_tol) fail(ErrorKind::InvalidArgument, "series_tol must not exceed eq_tol");
}

double inf_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double product_residual(const std::vector<Mat>& factors) {
    using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    if (factors.empty()) return 0.0;
    LMat w = factors.front().cast<long double>();
    for (std::size_t i = 1; i < factors.size(); ++i) w = w * factors[i].cast<long double>();
    w -= LMat::Identity(w.rows(), w.cols());
    return static_cast<double>(w.cwiseAbs().rowwise().sum().maxCoeff());
}

bool all_finite(const Mat& m) { return m.allFinite(); }

double rel_residual(const Mat& a, const Mat& b) {
    double s = std::max({1.0, inf_norm(a), inf_norm(b)});
    return inf_norm(a - b) / s;
}

bool rel_close(const Mat& a, const Mat& b, double tol) { return rel_residual(a, b) <= tol; }

double symmetry_defect(const Mat& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff() / std::max(1.0, inf_norm(m));
}

Mat symmetrize(const Mat& m) { return 0.5 * (m + m.transpose()); }

Mat signature_matrix(int n, int k) {
    Mat d = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = i < k ? 1.0 : -1.0;
    return d;
}

SymMat::SymMat(const Mat& m, const Tolerance& tol) {
    if (m.rows() != m.cols()) fail(ErrorKind::InvalidArgument, "symmetric matrix must be square");
    if (!all_finite(m)) fail(ErrorKind::InvalidArgument, "non-finite entry");
    double d = symmetry_defect(m);
    if (d > tol.eq_tol) {
        std::ostringstream os;
        os << "matrix not symmetric (defect " << d << ")";
        fail(ErrorKind::InvalidArgument, os.str());
    }
    m_ = symmetrize(m);
}

SymMat SymMat::unchecked(const Mat& m) {
    SymMat s;
    s.m_ = symmetrize(m);
    return s;
}

int signature(const SymMat& s, const Tolerance& tol) {
    const Mat& m = s.mat();
    if (m.rows() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    const Vec& ev = es.eigenvalues();
    double norm = ev.cwiseAbs().maxCoeff();
    double band = tol.eq_tol * norm;
    int sig = 0;
    for (int i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i)) <= band || norm == 0.0) {
            std::ostringstream os;
            os << "eigenvalue " << ev(i) << " inside zero band " << band;
            fail(ErrorKind::NearSingular, os.str());
        }
        sig += ev(i) > 0 ? 1 : -1;
    }
    return sig;
}

CVec eigenvalues(const Mat& x) {
    if (x.rows() == 0) return CVec();
    Eigen::EigenSolver<Mat> es(x, false);
    return es.eigenvalues();
}

double spectral_radius(const Mat& x) {
    if (x.rows() == 0) return 0.0;
    return eigenvalues(x).cwiseAbs().maxCoeff();
}

const char* to_string(CircleClass c) {
    switch (c) {
        case CircleClass::Contracting: return "Contracting";
        case CircleClass::HasUnitModulusEigenvalue: return "HasUnitModulusEigenvalue";
        case CircleClass::Expanding: return "Expanding";
        case CircleClass::Mixed: return "Mixed";
    }
    return "?";
}

namespace {

void require_invertible(const Mat& x, const Tolerance& tol, const char* what) {
    Eigen::JacobiSVD<Mat> svd(x);
    const Vec& sv = svd.singularValues();
    if (sv.size() == 0) return;
    if (sv(sv.size() - 1) <= tol.eq_tol * std::max(1.0, sv(0)))
        fail(ErrorKind::Singular, std::string(what) + " is singular within tolerance");
}

}  // namespace

CircleClass circle_class(const Mat& x, const Tolerance& tol) {
    require_invertible(x, tol, "matrix");
    CVec ev = eigenvalues(x);
    bool inside = false, outside = false;
    for (int i = 0; i < ev.size(); ++i) {
        double r = std::abs(ev(i));
        if (std::abs(r - 1.0) <= tol.unit_circle_band) return CircleClass::HasUnitModulusEigenvalue;
        if (r < 1.0) inside = true; else outside = true;
    }
    if (inside && outside) return CircleClass::Mixed;
    return inside ? CircleClass::Contracting : CircleClass::Expanding;
}

bool is_contracting(const Mat& x, const Tolerance& tol) {
    return x.rows() == 0 || spectral_radius(x) < 1.0 - tol.unit_circle_band;
}

SymMat stein_series(const Mat& a, const Mat& q, const Tolerance& tol, int max_terms) {
    Mat sum = Mat::Zero(q.rows(), q.cols());
    Mat term = q;
    double scale = std::max(1.0, inf_norm(q));
    for (int i = 0; i < max_terms; ++i) {
        sum += term;
        if (inf_norm(term) <= tol.series_tol * 1e-3 * scale) break;
        term = a.transpose() * term * a;
    }
    return SymMat::unchecked(-sum);
}

namespace {

Mat stein_residual(const Mat& a, const Mat& p, const Mat& q) { return a.transpose() * p * a - p - q; }

Mat stein_kronecker(const Mat& a, const Mat& q) {
    const int n = static_cast<int>(a.rows());
    const int nn = n * n;
    Mat at = a.transpose();
    Mat k(nn, nn);
    // vec(A^T P A) = (A^T (x) A^T) vec(P), column-major vec
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) k.block(j * n, i * n, n, n) = at(j, i) * at;
    k -= Mat::Identity(nn, nn);
    Eigen::PartialPivLU<Mat> lu(k);
    Eigen::Map<const Vec> rhs(q.data(), nn);
    Vec sol = lu.solve(rhs);
    Mat p = Eigen::Map<Mat>(sol.data(), n, n);
    p = symmetrize(p);
    // one step of refinement
    Mat r = stein_residual(a, p, q);
    Eigen::Map<const Vec> rv(r.data(), nn);
    Vec corr = lu.solve(rv);
    p -= symmetrize(Eigen::Map<Mat>(corr.data(), n, n));
    return p;
}

Mat stein_doubling(const Mat& a, const Mat& q, const Tolerance& tol) {
    Mat p = -q;
    Mat ak = a;
    double scale = std::max(1.0, inf_norm(q));
    for (int it = 0; it < 200; ++it) {
        Mat inc = ak.transpose() * p * ak;
        p += inc;
        if (inf_norm(inc) <= 1e-3 * tol.series_tol * scale) break;
        ak = ak * ak;
    }
    return symmetrize(p);
}

}  // namespace

SymMat stein_solve(const Mat& a, const SymMat& qs, const Tolerance& tol) {
    const Mat& q = qs.mat();
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n || q.rows() != n) fail(ErrorKind::InvalidArgument, "stein_solve: dimension mismatch");
    if (n == 0) return qs;
    CVec ev = eigenvalues(a);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (std::abs(ev(i) * ev(j) - 1.0) <= tol.unit_circle_band) {
                std::ostringstream os;
                os << "eigenvalue product " << ev(i) * ev(j) << " is within band of 1";
                fail(ErrorKind::ResonantSpectrum, os.str());
            }
    Mat p;
    if (n <= 32) {
        p = stein_kronecker(a, q);
    } else {
        double rho = ev.cwiseAbs().maxCoeff();
        double rmin = ev.cwiseAbs().minCoeff();
        if (rho < 1.0) {
            p = stein_doubling(a, q, tol);
        } else if (rmin > 1.0) {
            Mat ai = a.inverse();
            p = stein_doubling(ai, -ai.transpose() * q * ai, tol);
        } else {
            p = stein_kronecker(a, q);
        }
    }
    double res = inf_norm(stein_residual(a, p, q));
    if (!(res <= tol.series_tol * std::max(1.0, inf_norm(q)))) {
        std::ostringstream os;
        os << "Stein residual " << res << " exceeds bound";
        fail(ErrorKind::IllConditioned, os.str());
    }
    return SymMat::unchecked(p);
}

namespace {

bool spectra_match(const CVec& a, const CVec& b, double tol) {
    std::vector<bool> used(b.size(), false);
    for (int i = 0; i < a.size(); ++i) {
        int best = -1;
        double bd = 0.0;
        for (int j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            double d = std::abs(a(i) - b(j));
            if (best < 0 || d < bd) { best = j; bd = d; }
        }
        if (best < 0 || bd > tol * std::max(1.0, std::abs(a(i)))) return false;
        used[best] = true;
    }
    return true;
}

}  // namespace

std::optional<Mat> similarity_witness(const Mat& x, const Mat& y, const Tolerance& tol) {
    const int n = static_cast<int>(x.rows());
    if (x.cols() != n || y.rows() != n || y.cols() != n) return std::nullopt;
    if (n == 0) return Mat(0, 0);
    auto accept = [&](const Mat& g) {
        Eigen::FullPivLU<Mat> lu(g);
        if (!lu.isInvertible()) return false;
        Mat gi = lu.inverse();
        if (!gi.allFinite()) return false;
        double r = inf_norm(g * x * gi - y);
        return r <= tol.eq_tol * std::max(1.0, inf_norm(y));
    };
    if (accept(Mat::Identity(n, n))) return Mat::Identity(n, n);
    // cheap reject on spectra; defective eigenvalues move by about eps^(1/n)
    double eig_tol = std::max(1e-5, std::pow(1e-15, 1.0 / n) * 10.0);
    if (!spectra_match(eigenvalues(x), eigenvalues(y), eig_tol)) return std::nullopt;

    // commutant-type nullspace of G -> G X - Y G
    const int nn = n * n;
    Mat k = Mat::Zero(nn, nn);
    Mat xt = x.transpose();
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) k.block(j * n, i * n, n, n) += xt(j, i) * Mat::Identity(n, n);
    for (int j = 0; j < n; ++j) k.block(j * n, j * n, n, n) -= y;
    Eigen::BDCSVD<Mat> svd(k, Eigen::ComputeFullV);
    const Vec& sv = svd.singularValues();
    double smax = std::max(sv(0), 1.0);
    int nullity = 0;
    for (int i = nn - 1; i >= 0 && sv(i) <= 1.5e-8 * smax; --i) ++nullity;
    if (nullity == 0) return std::nullopt;
    Mat basis = svd.matrixV().rightCols(nullity);
    std::mt19937_64 rng(0x5eed5eedULL);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int attempt = 0; attempt < 24; ++attempt) {
        Vec c(nullity);
        for (int i = 0; i < nullity; ++i) c(i) = nd(rng);
        Vec gv = basis * c;
        Mat g = Eigen::Map<Mat>(gv.data(), n, n);
        g /= std::max(1e-300, inf_norm(g));
        if (accept(g)) return g;
    }
    return std::nullopt;
}

SignatureFactor factor_signature(const SymMat& s, const Tolerance& tol) {
    const Mat& m = s.mat();
    const int n = s.dim();
    int sig = signature(s, tol);
    SignatureFactor out;
    out.k = (n + sig) / 2;
    if (out.k == n) {
        Eigen::LLT<Mat> llt(m);
        if (llt.info() == Eigen::Success) {
            out.m = llt.matrixL();
            return out;
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    Vec ev = es.eigenvalues();
    Mat u = es.eigenvectors();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        bool pa = ev(a) > 0, pb = ev(b) > 0;
        if (pa != pb) return pa;
        return false;
    });
    out.m.resize(n, n);
    for (int c = 0; c < n; ++c) {
        int i = order[c];
        Vec col = u.col(i);
        Eigen::Index idx;
        col.cwiseAbs().maxCoeff(&idx);
        if (col(idx) < 0) col = -col;
        out.m.col(c) = col * std::sqrt(std::abs(ev(i)));
    }
    return out;
}

double condition_number(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    const Vec& sv = svd.singularValues();
    if (sv.size() == 0) return 1.0;
    double lo = sv(sv.size() - 1);
    return lo == 0.0 ? std::numeric_limits<double>::infinity() : sv(0) / lo;
}

bool is_spd(const Mat& s, const Tolerance& tol) {
    if (s.rows() != s.cols()) return false;
    if (symmetry_defect(s) > tol.eq_tol) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es(symmetrize(s), Eigen::EigenvaluesOnly);
    const Vec& ev = es.eigenvalues();
    if (ev.size() == 0) return true;
    return ev(0) > tol.eq_tol * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
}

}  // namespace maxrep
