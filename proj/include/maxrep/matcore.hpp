#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

#include "maxrep/error.hpp"

namespace maxrep {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

struct Tolerance {
    double eq_tol = 1e-9;
    double series_tol = 1e-12;
    double unit_circle_band = 1e-8;

    void validate() const;
};

// Symmetric matrix; construction checks symmetry and stores the exact
// symmetric part.
class SymMat {
public:
    SymMat() = default;
    explicit SymMat(const Mat& m, const Tolerance& tol = {});
    static SymMat unchecked(const Mat& m);

    const Mat& mat() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    operator const Mat&() const { return m_; }

private:
    Mat m_;
};

double inf_norm(const Mat& m);
// ||f[0] f[1] ... f[k-1] - I|| in the infinity norm, accumulated in extended precision
double product_residual(const std::vector<Mat>& factors);
bool all_finite(const Mat& m);
// |a-b| <= tol*max(1,|a|,|b|) in the infinity norm
bool rel_close(const Mat& a, const Mat& b, double tol);
double rel_residual(const Mat& a, const Mat& b);
double symmetry_defect(const Mat& m);
Mat symmetrize(const Mat& m);
Mat signature_matrix(int n, int k);  // diag(1_k, -1_(n-k))

int signature(const SymMat& s, const Tolerance& tol = {});
CVec eigenvalues(const Mat& x);
double spectral_radius(const Mat& x);

enum class CircleClass { Contracting, HasUnitModulusEigenvalue, Expanding, Mixed };
const char* to_string(CircleClass c);
CircleClass circle_class(const Mat& x, const Tolerance& tol = {});
bool is_contracting(const Mat& x, const Tolerance& tol = {});

SymMat stein_solve(const Mat& a, const SymMat& q, const Tolerance& tol = {});
// -sum (A^T)^i Q A^i, truncated once terms drop below series_tol
SymMat stein_series(const Mat& a, const Mat& q, const Tolerance& tol = {}, int max_terms = 100000);

std::optional<Mat> similarity_witness(const Mat& x, const Mat& y, const Tolerance& tol = {});

struct SignatureFactor {
    Mat m;
    int k = 0;
};
SignatureFactor factor_signature(const SymMat& s, const Tolerance& tol = {});

double condition_number(const Mat& m);
bool is_spd(const Mat& s, const Tolerance& tol = {});

}  // namespace maxrep
