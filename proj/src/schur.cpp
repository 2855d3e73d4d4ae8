#include "maxrep/schur.hpp"

#include <lapacke.h>

#include <sstream>

namespace maxrep {

namespace {

thread_local const std::function<bool(std::complex<double>)>* g_select = nullptr;

lapack_logical select_trampoline(const double* wr, const double* wi) {
    return (*g_select)(std::complex<double>(*wr, *wi)) ? 1 : 0;
}

}  // namespace

OrderedSchur ordered_schur(const Mat& a, const std::function<bool(std::complex<double>)>& select) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    OrderedSchur out;
    out.t = a;
    out.q = Mat::Identity(n, n);
    if (n == 0) return out;
    Vec wr(n), wi(n);
    lapack_int sdim = 0;
    const auto* saved = g_select;
    g_select = &select;
    lapack_int info = LAPACKE_dgees(LAPACK_COL_MAJOR, 'V', 'S', select_trampoline, n, out.t.data(), n, &sdim,
                                    wr.data(), wi.data(), out.q.data(), n);
    g_select = saved;
    if (info != 0) {
        std::ostringstream os;
        os << "ordered Schur decomposition failed (dgees info " << info << ")";
        fail(ErrorKind::DefectiveSplit, os.str());
    }
    out.selected = sdim;
    out.eigenvalues.resize(n);
    for (lapack_int i = 0; i < n; ++i) out.eigenvalues(i) = std::complex<double>(wr(i), wi(i));
    return out;
}

}  // namespace maxrep
