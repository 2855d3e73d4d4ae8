#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "random.hpp"

#include "maxrep/deform.hpp"

using namespace maxrep;
using namespace maxrep::testing;

namespace {

void expect_valid_path(const DeformPath& p, int n) {
    for (const auto& g : p.snapshots) {
        EXPECT_EQ(component_signature(g), p.signature);
        for (const auto& nd : g.nodes) {
            ParamClass c = classify_params(nd.params);
            EXPECT_TRUE(c == ParamClass::InR || c == ParamClass::InRStar) << to_string(c);
            EXPECT_EQ(toledo_signature_shortcut(nd.params).twice, 2 * n);
        }
    }
}

}  // namespace

TEST(OrthogonalLog, ExponentiatesBack) {
    Rng rng(81);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + trial % 5;
        Mat q = random_orthogonal(rng, n);
        if (q.determinant() < 0) q.col(0) *= -1.0;
        Mat l = orthogonal_log(q);
        EXPECT_LT(inf_norm(l + l.transpose()), 1e-12);
        EXPECT_LT(inf_norm(Mat(l.exp()) - q), 1e-10);
    }
    Mat m = -Mat::Identity(2, 2);
    EXPECT_LT(inf_norm(Mat(orthogonal_log(m).exp()) - m), 1e-12);
    Mat r = Mat::Identity(3, 3);
    r(0, 0) = r(2, 2) = -1.0;
    EXPECT_LT(inf_norm(Mat(orthogonal_log(r).exp()) - r), 1e-12);
}

TEST(GlPath, EndpointsAndSign) {
    Rng rng(82);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + trial % 4;
        Mat a = random_invertible(rng, n), b = random_invertible(rng, n);
        if ((a.determinant() > 0) != (b.determinant() > 0)) b.row(0) *= -1.0;
        GlPath p(a, b);
        EXPECT_LT(rel_residual(p.at(0.0), a), 1e-10);
        EXPECT_LT(rel_residual(p.at(1.0), b), 1e-10);
        for (int k = 0; k <= 20; ++k) EXPECT_EQ(p.at(k / 20.0).determinant() > 0, a.determinant() > 0);
    }
}

TEST(ContractingPath, StaysContracting) {
    Rng rng(83);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + trial % 3;
        Mat a = random_contracting(rng, n);
        Mat b = standard_length(n, a.determinant() > 0 ? 1 : -1);
        ContractingPath p(a, b);
        for (int k = 0; k <= 20; ++k) EXPECT_LT(spectral_radius(p.at(k / 20.0)), 1.0);
        EXPECT_LT(rel_residual(p.at(1.0), b), 1e-10);
    }
}

TEST(Deform, StandardIsConstant) {
    GluingGraph g = standard_representative(1, 2, 2, {1, -1, -1});
    DeformPath p = deform_to_standard(g, 10);
    ASSERT_EQ(p.snapshots.size(), 11u);
    for (const auto& s : p.snapshots)
        for (std::size_t i = 0; i < s.nodes.size(); ++i)
            for (int k = 0; k < 3; ++k) EXPECT_LT(rel_residual(s.nodes[i].params[k], g.nodes[i].params[k]), 1e-12);
}

TEST(Deform, PairOfPantsReachesStandard) {
    Rng rng(84);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 1 + trial % 3;
        PantsParams p = random_rstar(rng, n);
        GluingGraph g;
        g.n = n;
        g.nodes = {PantsNode{"P1", p}};
        for (int k = 1; k <= 3; ++k) g.boundaries.push_back(GraphBoundary{PortRef{"P1", k}, "C" + std::to_string(k)});
        DeformPath path = deform_to_standard(g, 100);
        expect_valid_path(path, n);
        const PantsParams& e = path.snapshots.back().nodes[0].params;
        int s1 = p.x1.determinant() > 0 ? 1 : -1, s2 = p.x2.determinant() > 0 ? 1 : -1;
        EXPECT_LT(rel_residual(e.x1, standard_length(n, s1)), 1e-12);
        EXPECT_LT(rel_residual(e.x2, standard_length(n, s2)), 1e-12);
        EXPECT_LT(rel_residual(e.x3, standard_length(n, s1 * s2)), 1e-12);
    }
}

TEST(Deform, HandleReachesStandard) {
    Rng rng(85);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 1 + trial % 3;
        std::vector<int> signs = {trial % 2 ? 1 : -1, trial % 3 ? 1 : -1};
        GluingGraph g = realize(random_standard_coords(rng, 1, 1, n, signs));
        DeformPath path = deform_to_standard(g, 50);
        EXPECT_EQ(path.signature, signs);
        expect_valid_path(path, n);
        const GluingGraph& e = path.snapshots.back();
        EXPECT_LT(rel_residual(e.nodes[0].params.x1, standard_length(n, signs[0])), 1e-12);
        EXPECT_LT(rel_residual(e.nodes[0].params.x2, standard_length(n, 1)), 1e-12);
        EXPECT_LT(rel_residual(e.edges[0].twist, standard_twist(n, signs[1])), 1e-12);
    }
}

TEST(Deform, LargerSurfaces) {
    Rng rng(86);
    const std::pair<int, int> cases[] = {{0, 4}, {1, 2}, {2, 1}};
    for (auto [g, m] : cases)
        for (int n = 1; n <= 2; ++n) {
            GluingGraph gr = realize(random_standard_coords(rng, g, m, n));
            DeformPath path = deform_to_standard(gr, 40);
            expect_valid_path(path, n);
            SurfaceRep mid = build_from_graph(path.snapshots[20]);
            EXPECT_LT(mid.relation_residual(), std::max(1e-7, 10 * relation_floor(mid)));
        }
}

TEST(Deform, RefusesNonMaximal) {
    Mat h = Mat::Constant(1, 1, 0.5);
    GluingGraph g;
    g.n = 1;
    g.nodes = {PantsNode{"P1", PantsParams{Mat::Constant(1, 1, 2.0), h, h}}};
    for (int k = 1; k <= 3; ++k) g.boundaries.push_back(GraphBoundary{PortRef{"P1", k}, "C" + std::to_string(k)});
    try {
        deform_to_standard(g, 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotMaximal);
    }
}
