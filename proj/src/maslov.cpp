#include "maxrep/maslov.hpp"

#include <sstream>

namespace maxrep {

namespace {

void require_transverse(const BoundaryPoint& p, const BoundaryPoint& q, const Tolerance& tol, const char* which) {
    Transversality t = transversality(p, q, tol);
    if (!t.transverse)
        fail(ErrorKind::NotTransverse,
             std::string("points ") + which + (t.ambiguous ? " are within the transversality band" : " are not transverse"));
}

}  // namespace

Triple::Triple(BoundaryPoint p1, BoundaryPoint p2, BoundaryPoint p3, const Tolerance& tol)
    : p_{std::move(p1), std::move(p2), std::move(p3)} {
    if (p_[0].dim() != p_[1].dim() || p_[1].dim() != p_[2].dim())
        fail(ErrorKind::InvalidArgument, "triple points have different dimensions");
    require_transverse(p_[0], p_[1], tol, "1,2");
    require_transverse(p_[1], p_[2], tol, "2,3");
    require_transverse(p_[0], p_[2], tol, "1,3");
}

SpMat normalize_pair(const BoundaryPoint& p1, const BoundaryPoint& p3, const Tolerance& tol) {
    require_transverse(p1, p3, tol, "1,3");
    const int n = p1.dim();
    if (p3.is_infinite()) return translation(-p1.value());
    if (p1.is_infinite()) return standard_j(n) * translation(-p3.value());
    Mat d = p1.value() - p3.value();
    Mat di = symmetrize(d.inverse());
    return translation(di) * standard_j(n) * translation(-p3.value());
}

int maslov(const Triple& t, const Tolerance& tol) {
    SpMat g = normalize_pair(t.p1(), t.p3(), tol);
    BoundaryPoint y = moebius_act(g, t.p2(), tol);
    if (y.is_infinite()) fail(ErrorKind::NotTransverse, "middle point is mapped to infinity");
    return signature(SymMat::unchecked(y.value()), tol);
}

int maslov(const BoundaryPoint& p1, const BoundaryPoint& p2, const BoundaryPoint& p3, const Tolerance& tol) {
    return maslov(Triple(p1, p2, p3, tol), tol);
}

bool is_maximal(const Triple& t, const Tolerance& tol) { return maslov(t, tol) == t.p1().dim(); }

SpMat normalize_maximal_triple(const Triple& t, const Tolerance& tol) {
    SpMat g = normalize_pair(t.p1(), t.p3(), tol);
    BoundaryPoint y = moebius_act(g, t.p2(), tol);
    const int n = t.p1().dim();
    if (y.is_infinite()) fail(ErrorKind::NotTransverse, "middle point is mapped to infinity");
    SymMat ys = SymMat::unchecked(y.value());
    int sig = signature(ys, tol);
    if (sig != n) {
        std::ostringstream os;
        os << "Maslov index " << sig << " differs from " << n;
        fail(ErrorKind::NotMaximal, os.str());
    }
    SignatureFactor f = factor_signature(ys, tol);
    return block_diag(f.m.inverse()) * g;
}

}  // namespace maxrep
