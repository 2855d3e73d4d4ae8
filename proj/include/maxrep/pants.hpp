#pragma once

#include <array>
#include <string>

#include "maxrep/maslov.hpp"
#include "maxrep/normalform.hpp"

namespace maxrep {

struct PantsParams {
    Mat x1, x2, x3;
    int n() const { return static_cast<int>(x1.rows()); }
    const Mat& operator[](int i) const { return i == 0 ? x1 : (i == 1 ? x2 : x3); }
};

// Signed count of half units; toledo values are integers or half-integers.
struct HalfInteger {
    int twice = 0;
    bool is_integer() const { return twice % 2 == 0; }
    double value() const { return twice / 2.0; }
    std::string str() const;
    friend bool operator==(HalfInteger a, HalfInteger b) { return a.twice == b.twice; }
    friend HalfInteger operator+(HalfInteger a, HalfInteger b) { return HalfInteger{a.twice + b.twice}; }
};

enum class ParamClass { NotValid, InTildeR, InR, InRStar };
const char* to_string(ParamClass c);

// X3 X2^-T X1
Mat pants_product(const PantsParams& p);
ParamClass classify_params(const PantsParams& p, const Tolerance& tol = {});
// "boundary": spectral radius inside the unit-circle band for some X_i
bool has_boundary_length(const PantsParams& p, const Tolerance& tol = {});

struct PantsRep {
    SpMat c1, c2, c3;
    const SpMat& operator[](int i) const { return i == 0 ? c1 : (i == 1 ? c2 : c3); }
};
double relation_residual(const PantsRep& r);  // ||c3 c2 c1 - I||_inf
PantsRep conjugate(const PantsRep& r, const SpMat& h);  // h r h^-1

PantsRep build_maximal(const PantsParams& p, const Tolerance& tol = {});

struct GeneralPantsParams {
    int i = 0;
    Mat x1, x2, x3;
};
PantsRep build_general(const GeneralPantsParams& p, const Tolerance& tol = {});
// y1 = 0, y2 = I_i, y3 = infinity
Triple standard_fixed_points(int n, int i, const Tolerance& tol = {});

HalfInteger toledo(const PantsRep& rep, const Triple& fixed_points, const Tolerance& tol = {});
HalfInteger toledo_signature_shortcut(const PantsParams& p, const Tolerance& tol = {});

struct RecoveredParams {
    PantsParams params;
    SpMat h;  // h rep h^-1 has the standard block shape
};
RecoveredParams recover_params(const PantsRep& rep, const Tolerance& tol = {});

enum class Equivalence { Equivalent, NotEquivalent, Inconclusive };
const char* to_string(Equivalence e);

// traces of words of length <= 3 in X_i, X_i^T
Vec trace_fingerprint(const PantsParams& p);
double fingerprint_distance(const PantsParams& p, const PantsParams& q);
Equivalence params_equivalent(const PantsParams& p, const PantsParams& q, const Tolerance& tol = {});
// k with k X_i k^T = Y_i if found
std::optional<Mat> orthogonal_alignment(const PantsParams& p, const PantsParams& q, const Tolerance& tol = {});

}  // namespace maxrep
