#include <gtest/gtest.h>

#include "random.hpp"

using namespace maxrep;
using namespace maxrep::testing;

namespace {

Mat omega(int n) {
    Mat j = Mat::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = Mat::Identity(n, n);
    j.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return j;
}

BoundaryPoint fin(const Mat& y) { return BoundaryPoint::finite(SymMat(y)); }

}  // namespace

TEST(SpMat, RandomElementsPreserveForm) {
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + trial % 4;
        SpMat g = random_symplectic(rng, n);
        EXPECT_LT(inf_norm(g.full().transpose() * omega(n) * g.full() - omega(n)), 1e-10 * inf_norm(g.full()) * inf_norm(g.full()));
        EXPECT_LT(inf_norm((g * sp_inverse(g)).full() - Mat::Identity(2 * n, 2 * n)), 1e-10 * inf_norm(g.full()) * inf_norm(g.full()));
    }
}

TEST(SpMat, MakeSymplecticRefuses) {
    Mat m = Mat::Identity(4, 4);
    m(0, 1) = 1.0;
    try {
        make_symplectic(m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSymplectic);
    }
}

TEST(Moebius, StandardElements) {
    Rng rng(22);
    for (int n = 1; n <= 4; ++n) {
        Mat y = random_symmetric(rng, n);
        Mat b = random_symmetric(rng, n);
        Mat a = random_invertible(rng, n);
        EXPECT_LT(rel_residual(moebius_act(translation(b), fin(y)).value(), y + b), 1e-12);
        EXPECT_LT(rel_residual(moebius_act(block_diag(a), fin(y)).value(), a * y * a.transpose()), 1e-12);
        EXPECT_LT(rel_residual(moebius_act(standard_j(n), fin(y)).value(), -y.inverse()), 1e-10);
        EXPECT_TRUE(moebius_act(standard_j(n), fin(Mat::Zero(n, n))).is_infinite());
        EXPECT_TRUE(moebius_act(translation(b), BoundaryPoint::infinity(n)).is_infinite());
    }
}

TEST(Moebius, PortRotationCycles) {
    for (int n = 1; n <= 3; ++n) {
        SpMat t = port_rotation(n);
        BoundaryPoint e = moebius_act(t, fin(Mat::Zero(n, n)));
        EXPECT_LT(rel_residual(e.value(), Mat::Identity(n, n)), 1e-14);
        EXPECT_TRUE(moebius_act(t, e).is_infinite());
        EXPECT_LT(inf_norm(moebius_act(t, BoundaryPoint::infinity(n)).value()), 1e-14);
    }
}

TEST(Moebius, IsAnAction) {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + trial % 3;
        SpMat g = random_symplectic(rng, n), h = random_symplectic(rng, n);
        BoundaryPoint y = fin(random_symmetric(rng, n));
        BoundaryPoint a = moebius_act(g * h, y);
        BoundaryPoint b = moebius_act(g, moebius_act(h, y));
        EXPECT_LT(point_distance(a, b), 1e-8);
    }
}

TEST(Cayley, RoundTripAndShilovImage) {
    Rng rng(24);
    for (int n = 1; n <= 4; ++n) {
        Mat x = random_symmetric(rng, n);
        CMat w = inverse_cayley(x.cast<std::complex<double>>());
        CMat back = cayley(w);
        EXPECT_LT((back - x.cast<std::complex<double>>()).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((inverse_cayley(cayley(w)) - w).cwiseAbs().maxCoeff(), 1e-10);
        // real symmetric points go to symmetric unitary matrices
        EXPECT_LT((w * w.adjoint() - CMat::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((w - w.transpose()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Transversality, Basic) {
    Mat y = Mat::Identity(2, 2);
    Mat z = y;
    z(1, 1) = 2.0;
    EXPECT_TRUE(transverse(fin(y), BoundaryPoint::infinity(2)));
    EXPECT_FALSE(transverse(fin(y), fin(z)));
    EXPECT_TRUE(transverse(fin(y), fin(3.0 * y)));
    Mat w = y;
    w(1, 1) = 1.0 + 1e-12;
    w(0, 0) = 3.0;
    EXPECT_FALSE(transverse(fin(y), fin(w)));
}

TEST(Frames, RoundTrip) {
    Rng rng(25);
    for (int n = 1; n <= 3; ++n) {
        Mat y = random_symmetric(rng, n);
        Mat f = lagrangian_frame(fin(y));
        Mat q = random_invertible(rng, n);
        EXPECT_LT(rel_residual(point_from_frame(f * q).value(), y), 1e-10);
        EXPECT_TRUE(point_from_frame(lagrangian_frame(BoundaryPoint::infinity(n))).is_infinite());
    }
}
