#include <gtest/gtest.h>

#include "random.hpp"

using namespace maxrep;
using namespace maxrep::testing;

TEST(SymMat, RejectsAsymmetric) {
    Mat a(2, 2);
    a << 1, 2, 3, 4;
    EXPECT_THROW(SymMat{a}, Error);
    Mat b(2, 2);
    b << 1, 2, 2 + 1e-13, 4;
    SymMat s(b);
    EXPECT_EQ(s.mat()(0, 1), s.mat()(1, 0));
}

TEST(Signature, CountsSigns) {
    for (int n = 1; n <= 5; ++n)
        for (int k = 0; k <= n; ++k) EXPECT_EQ(signature(SymMat(signature_matrix(n, k))), 2 * k - n);
    Mat z = Mat::Identity(2, 2);
    z(1, 1) = 1e-14;
    try {
        signature(SymMat(z));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NearSingular);
    }
}

TEST(CircleClass, Diagonal) {
    auto diag = [](double a, double b) {
        Mat m = Mat::Zero(2, 2);
        m(0, 0) = a;
        m(1, 1) = b;
        return m;
    };
    EXPECT_EQ(circle_class(diag(0.5, 0.3)), CircleClass::Contracting);
    EXPECT_EQ(circle_class(diag(1.0, 0.5)), CircleClass::HasUnitModulusEigenvalue);
    EXPECT_EQ(circle_class(diag(1.0 + 1e-11, 0.5)), CircleClass::HasUnitModulusEigenvalue);
    EXPECT_EQ(circle_class(diag(2.0, 3.0)), CircleClass::Expanding);
    EXPECT_EQ(circle_class(diag(2.0, 0.5)), CircleClass::Mixed);
}

TEST(Stein, AgreesWithSeriesAndSolvesEquation) {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + trial % 4;
        Mat a = random_contracting(rng, n, 0.1, 0.9);
        Mat q = random_spd(rng, n);
        Mat p = stein_solve(a, SymMat(q)).mat();
        Mat ps = stein_series(a, q).mat();
        EXPECT_LT(rel_residual(p, ps), 1e-10);
        EXPECT_LT(inf_norm(p - a.transpose() * p * a + q), 1e-10 * std::max(1.0, inf_norm(p)));
    }
}

TEST(Stein, ExpandingAndMixed) {
    Rng rng(12);
    for (int n = 1; n <= 4; ++n) {
        Mat e = random_contracting(rng, n, 0.2, 0.8).inverse();
        Mat q = random_spd(rng, n);
        Mat p = stein_solve(e, SymMat(q)).mat();
        EXPECT_LT(inf_norm(p - e.transpose() * p * e + q), 1e-9 * std::max(1.0, inf_norm(p)));
    }
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = 0.5;
    Mat q = Mat::Identity(2, 2);
    Mat p = stein_solve(m, SymMat(q)).mat();
    EXPECT_LT(inf_norm(p - m.transpose() * p * m + q), 1e-10);
}

TEST(Stein, ResonanceRefused) {
    Mat a = Mat::Zero(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = 0.5;
    try {
        stein_solve(a, SymMat(Mat::Identity(2, 2)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ResonantSpectrum);
    }
}

TEST(Similarity, FindsWitnessForConjugates) {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + trial % 4;
        Mat x = random_contracting(rng, n);
        Mat p = random_invertible(rng, n);
        Mat y = p * x * p.inverse();
        auto w = similarity_witness(x, y);
        ASSERT_TRUE(w.has_value());
        EXPECT_LT(rel_residual(*w * x * w->inverse(), y), 1e-8);
    }
}

TEST(Similarity, RejectsNonSimilar) {
    Mat j(2, 2);
    j << 0.5, 1.0, 0.0, 0.5;
    Mat d = 0.5 * Mat::Identity(2, 2);
    EXPECT_FALSE(similarity_witness(j, d).has_value());
    Mat e = Mat::Zero(2, 2);
    e(0, 0) = 0.3;
    e(1, 1) = 0.5;
    EXPECT_FALSE(similarity_witness(d, e).has_value());
}

TEST(FactorSignature, Reconstructs) {
    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + trial % 4;
        Mat s = random_symmetric(rng, n, 2.0);
        SignatureFactor f = factor_signature(SymMat(s));
        Mat back = f.m * signature_matrix(n, f.k) * f.m.transpose();
        EXPECT_LT(rel_residual(back, s), 1e-10);
        EXPECT_EQ(2 * f.k - n, signature(SymMat(s)));
    }
}

TEST(Tolerance, Validate) {
    Tolerance t;
    t.validate();
    t.eq_tol = -1;
    EXPECT_THROW(t.validate(), Error);
}
