#pragma once

#include <complex>
#include <functional>

#include "maxrep/matcore.hpp"

namespace maxrep {

// Real Schur form A = Q T Q^T with the selected eigenvalues leading.
struct OrderedSchur {
    Mat q;
    Mat t;
    int selected = 0;
    CVec eigenvalues;  // in Schur order
};

OrderedSchur ordered_schur(const Mat& a, const std::function<bool(std::complex<double>)>& select);

}  // namespace maxrep
