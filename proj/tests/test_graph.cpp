#include <gtest/gtest.h>

#include <set>

#include "random.hpp"

using namespace maxrep;
using namespace maxrep::testing;

namespace {

Mat s1(double v) { return Mat::Constant(1, 1, v); }

std::vector<std::vector<int>> all_signs(int len) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << len); ++mask) {
        std::vector<int> s(len);
        for (int i = 0; i < len; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
        out.push_back(s);
    }
    return out;
}

const std::pair<int, int> kSmall[] = {{0, 3}, {1, 1}, {0, 4}, {1, 2}, {2, 1}, {0, 5}};

}  // namespace

TEST(BuildFromGraph, SinglePantsMatchesBuildMaximal) {
    Rng rng(71);
    PantsParams p = random_rstar(rng, 2);
    GluingGraph g;
    g.n = 2;
    g.nodes = {PantsNode{"P", p}};
    for (int k = 1; k <= 3; ++k) g.boundaries.push_back(GraphBoundary{PortRef{"P", k}, "C" + std::to_string(k)});
    SurfaceRep s = build_from_graph(g);
    PantsRep r = build_maximal(p);
    ASSERT_EQ(s.boundary_count(), 3);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(s.boundaries[k].image.full(), r[k].full());
}

TEST(BuildFromGraph, StandardRepresentatives) {
    for (auto [g, m] : kSmall)
        for (int n = 1; n <= 3; ++n)
            for (const auto& signs : all_signs(2 * g + m - 1)) {
                SurfaceRep s = build_from_graph(standard_representative(g, m, n, signs));
                EXPECT_EQ(s.genus(), g);
                EXPECT_EQ(s.boundary_count(), m);
                EXPECT_LT(s.relation_residual(), 1e-9);
                EXPECT_EQ(surface_toledo(s).twice, 2 * n * (2 * g - 2 + m));
            }
}

TEST(BuildFromGraph, RandomStandardGraphs) {
    Rng rng(72);
    for (auto [g, m] : kSmall)
        for (int trial = 0; trial < 6; ++trial) {
            int n = 1 + trial % 3;
            GluingGraph gr = realize(random_standard_coords(rng, g, m, n));
            for (const auto& nd : gr.nodes) EXPECT_EQ(classify_params(nd.params), ParamClass::InRStar);
            SurfaceRep s = build_from_graph(gr);
            EXPECT_LT(s.relation_residual(), std::max(1e-7, 10 * relation_floor(s)));
            EXPECT_EQ(surface_toledo(s).twice, 2 * n * (2 * g - 2 + m));
            // boundary ids survive the assembly
            std::set<std::string> ids;
            for (const auto& b : s.boundaries) ids.insert(b.id);
            for (int j = 1; j <= m; ++j) EXPECT_TRUE(ids.count("C" + std::to_string(j)));
        }
}

TEST(BuildFromGraph, ClosedGenusTwo) {
    // two pants glued along all three ports
    for (int n = 1; n <= 2; ++n) {
        Mat x1 = 0.5 * Mat::Identity(n, n), x2 = 0.4 * Mat::Identity(n, n), x3 = 0.6 * Mat::Identity(n, n);
        x1(0, 0) = -0.5;
        x3(0, 0) = -0.6;
        PantsParams p{x1, x2, x3};
        GluingGraph g;
        g.n = n;
        g.nodes = {PantsNode{"P", p}, PantsNode{"Q", p}};
        for (int k = 1; k <= 3; ++k) {
            Mat t = Mat::Identity(n, n);
            if (k == 2) t(0, 0) = -1.0;
            g.edges.push_back(GraphEdge{PortRef{"Q", k}, PortRef{"P", k}, t});
        }
        auto topo = g.validate();
        EXPECT_EQ(topo.genus, 2);
        EXPECT_EQ(topo.boundary, 0);
        SurfaceRep s = build_from_graph(g);
        EXPECT_EQ(s.genus(), 2);
        EXPECT_EQ(s.boundary_count(), 0);
        EXPECT_LT(s.relation_residual(), 1e-9);
        EXPECT_EQ(surface_toledo(s).twice, 4 * n);
    }
}

TEST(BuildFromGraph, UnitModulusEdgeNamed) {
    GluingGraph g;
    g.n = 1;
    g.nodes = {PantsNode{"P1", PantsParams{s1(1.0), s1(0.5), s1(0.25)}},
               PantsNode{"P2", PantsParams{s1(0.25), s1(0.5), s1(1.0)}}};
    g.edges = {GraphEdge{PortRef{"P2", 3}, PortRef{"P1", 1}, s1(1.0)}};
    g.boundaries = {GraphBoundary{PortRef{"P1", 2}, "C1"}, GraphBoundary{PortRef{"P1", 3}, "C2"},
                    GraphBoundary{PortRef{"P2", 1}, "C3"}, GraphBoundary{PortRef{"P2", 2}, "C4"}};
    try {
        build_from_graph(g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CannotGlue);
        EXPECT_NE(std::string(e.what()).find("P2.3"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("UnitModulusObstruction"), std::string::npos);
    }
}

TEST(StandardCoords, RealizeExtractRoundTrip) {
    Rng rng(73);
    for (auto [g, m] : kSmall) {
        StandardCoords c = random_standard_coords(rng, g, m, 2);
        StandardCoords d = extract_coords(realize(c));
        for (int i = 0; i < g; ++i) {
            EXPECT_LT(rel_residual(c.handles[i].y, d.handles[i].y), 1e-12);
            EXPECT_LT(rel_residual(c.handles[i].h, d.handles[i].h), 1e-12);
            EXPECT_LT(rel_residual(c.handles[i].m, d.handles[i].m), 1e-9);
            if (g + m > 2) EXPECT_LT(rel_residual(c.handles[i].j, d.handles[i].j), 1e-12);
        }
        for (int j = 0; j < c.chain_length(); ++j) EXPECT_LT(rel_residual(c.chain[j].s, d.chain[j].s), 1e-9);
        for (int j = 0; j + 1 < m; ++j) EXPECT_LT(rel_residual(c.free_lengths[j], d.free_lengths[j]), 1e-12);
    }
}

TEST(StandardCoords, ExtractRejectsOtherLayouts) {
    GluingGraph g;
    g.n = 1;
    Mat h = s1(0.5);
    g.nodes = {PantsNode{"P", PantsParams{h, h, h}}, PantsNode{"Q", PantsParams{h, h, h}}};
    g.edges = {GraphEdge{PortRef{"Q", 2}, PortRef{"P", 2}, s1(1.0)}};
    g.boundaries = {GraphBoundary{PortRef{"P", 1}, "C1"}, GraphBoundary{PortRef{"P", 3}, "C2"},
                    GraphBoundary{PortRef{"Q", 1}, "C3"}, GraphBoundary{PortRef{"Q", 3}, "C4"}};
    EXPECT_THROW(extract_coords(g), Error);
}

TEST(ComponentSignature, StandardRepresentativesSeparate) {
    for (auto [g, m] : kSmall)
        for (int n = 1; n <= 3; ++n) {
            std::set<std::vector<int>> seen;
            for (const auto& signs : all_signs(2 * g + m - 1)) {
                auto sig = component_signature(standard_representative(g, m, n, signs));
                EXPECT_EQ(sig, signs);
                seen.insert(sig);
            }
            EXPECT_EQ(static_cast<int>(seen.size()), component_count(g, m));
        }
}

TEST(ComponentSignature, HandleWithNegativeTwist) {
    GluingGraph g = standard_representative(1, 1, 2, {1, -1});
    EXPECT_EQ(component_signature(g), (std::vector<int>{1, -1}));
    const PantsParams& p = g.nodes.front().params;
    EXPECT_GT(p.x2.determinant(), 0);
    EXPECT_EQ(component_signature(build_from_graph(g)), (std::vector<int>{1, -1}));
}

TEST(ComponentSignature, Counts) {
    EXPECT_EQ(component_count(0, 3), 4);
    EXPECT_EQ(component_count(1, 1), 4);
    EXPECT_EQ(component_count(1, 2), 8);
    EXPECT_EQ(component_count(0, 4), 8);
}

TEST(ComponentSignature, NearSingular) {
    StandardCoords c = standard_coords_template(0, 3, 2);
    c.free_lengths[0](1, 1) = 1e-13;
    try {
        component_signature(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NearSingularDet);
    }
}
