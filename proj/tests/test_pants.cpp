#include <gtest/gtest.h>

#include "random.hpp"

using namespace maxrep;
using namespace maxrep::testing;

namespace {

Mat m2(double a, double b, double c, double d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

Mat s1(double v) { return Mat::Constant(1, 1, v); }

}  // namespace

TEST(Pants, ScalarExample) {
    PantsRep r = build_maximal(PantsParams{s1(0.5), s1(0.5), s1(0.5)});
    EXPECT_LT(inf_norm(r.c1.full() - m2(0.5, 0, 1.5, 2)), 1e-14);
    EXPECT_LT(inf_norm(r.c2.full() - m2(-3.5, 1.5, -3, 1)), 1e-14);
    EXPECT_LT(inf_norm(r.c3.full() - m2(2, -3, 0, 0.5)), 1e-14);
    EXPECT_LT(relation_residual(r), 1e-14);
}

TEST(Pants, RelationOnRandomParams) {
    Rng rng(51);
    for (int trial = 0; trial < 200; ++trial) {
        PantsParams p = random_rstar(rng, 1 + trial % 4);
        PantsRep r = build_maximal(p);
        EXPECT_LT(relation_residual(r), 1e-9);
    }
}

TEST(Pants, Classification) {
    Mat h = s1(0.5);
    EXPECT_EQ(classify_params(PantsParams{h, h, h}), ParamClass::InRStar);
    EXPECT_EQ(classify_params(PantsParams{s1(1.0), h, s1(0.25)}), ParamClass::InR);
    EXPECT_EQ(classify_params(PantsParams{s1(2.0), h, s1(0.5)}), ParamClass::InTildeR);
    EXPECT_EQ(classify_params(PantsParams{s1(-0.5), h, h}), ParamClass::NotValid);
    EXPECT_TRUE(has_boundary_length(PantsParams{s1(1.0), h, s1(0.25)}));
    try {
        build_maximal(PantsParams{s1(-0.5), h, h});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotValid);
    }
}

TEST(Toledo, MaslovFormulaEqualsShortcut) {
    Rng rng(52);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + trial % 4;
        PantsParams p = random_rstar(rng, n);
        PantsRep r = build_maximal(p);
        HalfInteger t = toledo(r, standard_fixed_points(n, n));
        EXPECT_EQ(t, toledo_signature_shortcut(p));
        EXPECT_EQ(t.twice, 2 * n);
    }
}

TEST(Toledo, GeneralParams) {
    Rng rng(53);
    const int n = 2;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            Mat x1 = random_contracting(rng, n), x2 = random_contracting(rng, n);
            Mat q = random_orthogonal(rng, n);
            Vec d(n);
            for (int k = 0; k < n; ++k) d(k) = k < j ? 1.0 + k : -1.0 - k;
            Mat prod = q * d.asDiagonal() * q.transpose();
            Mat x3 = prod * x1.inverse() * x2.transpose();
            PantsRep r = build_general(GeneralPantsParams{i, x1, x2, x3});
            EXPECT_LT(relation_residual(r), 1e-9);
            HalfInteger t = toledo(r, standard_fixed_points(n, i));
            EXPECT_TRUE(t.is_integer());
            EXPECT_EQ(t.twice, 2 * (i + j - n)) << "i=" << i << " j=" << j;
        }
}

TEST(Recover, RoundTripUnderConjugation) {
    Rng rng(54);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + trial % 3;
        PantsParams p = random_rstar(rng, n);
        SpMat g = random_symplectic(rng, n);
        RecoveredParams rp = recover_params(conjugate(build_maximal(p), g));
        EXPECT_LT(fingerprint_distance(rp.params, p), 1e-7);
        EXPECT_EQ(params_equivalent(rp.params, p), Equivalence::Equivalent);
    }
}

TEST(Recover, OrthogonalOrbit) {
    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 2;
        PantsParams p = random_rstar(rng, n);
        Mat k = random_orthogonal(rng, n);
        PantsParams q{k * p.x1 * k.transpose(), k * p.x2 * k.transpose(), k * p.x3 * k.transpose()};
        EXPECT_LT(fingerprint_distance(p, q), 1e-10);
        auto a = orthogonal_alignment(p, q);
        ASSERT_TRUE(a.has_value());
        EXPECT_LT(rel_residual(*a * p.x1 * a->transpose(), q.x1), 1e-7);
        PantsParams other = random_rstar(rng, n);
        EXPECT_EQ(params_equivalent(p, other), Equivalence::NotEquivalent);
    }
}
