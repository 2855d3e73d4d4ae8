#include "maxrep/deform.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace maxrep {

Mat orthogonal_log(const Mat& q) {
    const Eigen::Index n = q.rows();
    Eigen::RealSchur<Mat> rs(q);
    const Mat& t = rs.matrixT();
    const Mat& u = rs.matrixU();
    Mat l = Mat::Zero(n, n);
    std::vector<Eigen::Index> minus;
    for (Eigen::Index i = 0; i < n;) {
        if (i + 1 < n && std::abs(t(i + 1, i)) > 1e-14) {
            double th = std::atan2(0.5 * (t(i + 1, i) - t(i, i + 1)), 0.5 * (t(i, i) + t(i + 1, i + 1)));
            l(i, i + 1) = -th;
            l(i + 1, i) = th;
            i += 2;
        } else {
            if (t(i, i) < 0) minus.push_back(i);
            ++i;
        }
    }
    if (minus.size() % 2 != 0) fail(ErrorKind::InvalidArgument, "orthogonal matrix has determinant -1");
    for (std::size_t k = 0; k < minus.size(); k += 2) {
        l(minus[k], minus[k + 1]) = -M_PI;
        l(minus[k + 1], minus[k]) = M_PI;
    }
    Mat out = u * l * u.transpose();
    return 0.5 * (out - out.transpose());
}

namespace {

void positive_qr(const Mat& x, Mat& q, Mat& r) {
    Eigen::HouseholderQR<Mat> qr(x);
    q = qr.householderQ();
    r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        if (r(i, i) < 0) {
            r.row(i) *= -1.0;
            q.col(i) *= -1.0;
        }
}

int det_sign(const Mat& x) { return x.determinant() > 0 ? 1 : -1; }

}  // namespace

GlPath::GlPath(const Mat& x0, const Mat& x1) {
    if (det_sign(x0) != det_sign(x1)) fail(ErrorKind::InvalidArgument, "GL path endpoints have different determinant signs");
    Mat q1;
    positive_qr(x0, q0_, r0_);
    positive_qr(x1, q1, r1_);
    log_ = orthogonal_log(q0_.transpose() * q1);
}

Mat GlPath::at(double t) const {
    Mat q = q0_ * Mat(t * log_).exp();
    return q * ((1.0 - t) * r0_ + t * r1_);
}

ContractingPath::ContractingPath(const Mat& x0, const Mat& x1)
    : gl_(x0, x1), rho0_(spectral_radius(x0)), rho1_(spectral_radius(x1)) {}

Mat ContractingPath::at(double t) const {
    Mat nt = gl_.at(t);
    double r = (1.0 - t) * rho0_ + t * rho1_;
    return (r / spectral_radius(nt)) * nt;
}

StandardCoords standard_target(const StandardCoords& c, const Tolerance& tol) {
    component_signature(c, tol);
    StandardCoords t = c;
    const int n = c.n;
    Mat id = Mat::Identity(n, n);
    for (auto& h : t.handles) {
        h.y = standard_length(n, det_sign(h.y));
        h.h = standard_twist(n, det_sign(h.h));
        h.m = 2.0 * id;
        h.j = standard_twist(n, det_sign(h.j));
    }
    for (auto& ch : t.chain) {
        ch.s = 0.5 * id;
        ch.twist = standard_twist(n, det_sign(ch.twist));
    }
    for (auto& f : t.free_lengths) f = standard_length(n, det_sign(f));
    return t;
}

namespace {

Mat handle_x2(const HandleCoords& h) {
    Mat x3 = h.h * h.y.transpose() * h.h.inverse();
    return (x3.inverse() * h.y.transpose() * h.m).inverse().transpose();
}

}  // namespace

DeformPath deform_to_standard(const GluingGraph& graph, int steps, const Tolerance& tol) {
    if (steps < 1) fail(ErrorKind::InvalidArgument, "steps must be positive");
    graph.validate();
    for (const auto& nd : graph.nodes) {
        ParamClass cls = classify_params(nd.params, tol);
        if (cls != ParamClass::InR && cls != ParamClass::InRStar)
            fail(ErrorKind::NotMaximal, "node '" + nd.id + "' is not maximal (" + to_string(cls) + ")");
    }
    StandardCoords c0 = extract_coords(graph, tol);
    StandardCoords c1 = standard_target(c0, tol);
    const int g = c0.genus, k = c0.chain_length();

    DeformPath out;
    out.signature = component_signature(c0, tol);

    std::vector<ContractingPath> ypath, fpath;
    std::vector<GlPath> hpath, jpath, tpath;
    std::vector<double> hcap, scap;
    for (int i = 0; i < g; ++i) {
        ypath.emplace_back(c0.handles[i].y, c1.handles[i].y);
        hpath.emplace_back(c0.handles[i].h, c1.handles[i].h);
        jpath.emplace_back(c0.handles[i].j, c1.handles[i].j);
        hcap.push_back(std::max(spectral_radius(handle_x2(c0.handles[i])), 0.5));
    }
    GluingGraph g0 = realize(c0);
    for (int j = 0; j < k; ++j) {
        tpath.emplace_back(c0.chain[j].twist, c1.chain[j].twist);
        scap.push_back(std::max(spectral_radius(g0.nodes[j].params.x3), 0.5));
    }
    for (std::size_t j = 0; j < c0.free_lengths.size(); ++j) fpath.emplace_back(c0.free_lengths[j], c1.free_lengths[j]);

    for (int s = 0; s <= steps; ++s) {
        if (s == 0 || s == steps) {
            const StandardCoords& c = s == 0 ? c0 : c1;
            out.coords.push_back(c);
            out.snapshots.push_back(s == 0 ? g0 : realize(c));
            continue;
        }
        const double t = static_cast<double>(s) / steps;
        StandardCoords c = c0;
        for (int i = 0; i < g; ++i) {
            HandleCoords& h = c.handles[i];
            h.y = ypath[i].at(t);
            h.h = hpath[i].at(t);
            h.j = jpath[i].at(t);
            h.m = (1.0 - t) * c0.handles[i].m + t * c1.handles[i].m;
            double lam = std::min(1.0, hcap[i] / spectral_radius(handle_x2(h)));
            h.m /= lam;
        }
        for (std::size_t j = 0; j < fpath.size(); ++j) c.free_lengths[j] = fpath[j].at(t);
        for (int j = 0; j < k; ++j) {
            c.chain[j].twist = tpath[j].at(t);
            c.chain[j].s = (1.0 - t) * c0.chain[j].s + t * c1.chain[j].s;
        }
        // rescale S along the chain; each X3 feeds the next X1
        for (int j = 0; j < k; ++j) {
            GluingGraph gr = realize(c);
            double lam = std::min(1.0, scap[j] / spectral_radius(gr.nodes[j].params.x3));
            c.chain[j].s *= lam;
        }
        out.snapshots.push_back(realize(c));
        out.coords.push_back(std::move(c));
    }
    return out;
}

DeformPath deform_to_standard(const SurfaceRep& rep, int steps, const Tolerance& tol) {
    return deform_to_standard(rep.graph, steps, tol);
}

}  // namespace maxrep
