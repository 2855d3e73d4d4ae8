#include <gtest/gtest.h>

#include "random.hpp"

#include "maxrep/limits.hpp"
#include "maxrep/normalform.hpp"

using namespace maxrep;
using namespace maxrep::testing;

TEST(Words, Counts) {
    for (int k = 1; k <= 3; ++k) {
        auto w = reduced_words(k, 4);
        long want = 0, level = 2 * k;
        for (int len = 1; len <= 4; ++len) {
            want += level;
            level *= 2 * k - 1;
        }
        EXPECT_EQ(static_cast<long>(w.size()), want);
        for (const auto& x : w)
            for (std::size_t i = 1; i < x.size(); ++i) EXPECT_NE(x[i], -x[i - 1]);
    }
}

TEST(Words, Powers) {
    EXPECT_TRUE(is_proper_power({1, 1}));
    EXPECT_TRUE(is_proper_power({1, 2, 1, 2}));
    EXPECT_TRUE(is_proper_power({2, 1, 1, -2}));
    EXPECT_FALSE(is_proper_power({1, 2}));
    EXPECT_FALSE(is_proper_power({1, 2, -1}));
    EXPECT_EQ(cyclic_reduction({2, 1, 3, -2}), (Word{1, 3}));
    EXPECT_EQ(word_string({1, -2}, {"C1", "C2"}), "C1 C2^-1");
}

TEST(Limits, LengthOneOnPants) {
    Rng rng(91);
    for (int n = 1; n <= 3; ++n) {
        PantsParams p = random_rstar(rng, n);
        SurfaceRep s = pants_surface(PantsNode{"P", p});
        LimitSampleOptions o;
        o.max_word_length = 1;
        LimitSample ls = limit_set_sample(s, o);
        EXPECT_EQ(ls.points.size(), 4u);
        EXPECT_TRUE(ls.non_transverse.empty());
        for (const auto& [b, c] : ls.beta_histogram) EXPECT_EQ(b, n);
    }
}

TEST(Limits, EquivariantUnderConjugation) {
    Rng rng(92);
    PantsParams p = random_rstar(rng, 2);
    PantsRep r = build_maximal(p);
    SpMat g = r.c2;
    SpMat w = r.c1;
    HyperbolicFrames a = hyperbolic_frames(w);
    HyperbolicFrames b = hyperbolic_frames(g * w * sp_inverse(g));
    BoundaryPoint pa = moebius_act(g, point_from_frame(a.attracting));
    EXPECT_LT(point_distance(pa, point_from_frame(b.attracting)), 1e-7);
}

TEST(Limits, FrameDistance) {
    Rng rng(94);
    Mat f = random_orthogonal(rng, 4).leftCols(2);
    Mat g = f * random_orthogonal(rng, 2);
    EXPECT_LT(frame_distance(f, g), 1e-14);
    EXPECT_LT(frame_transversality(f, g), 1e-14);
    Mat h = random_orthogonal(rng, 4).leftCols(2);
    EXPECT_GT(frame_distance(f, h), 1e-3);
}

TEST(Limits, NoFalseCoincidencesAtLengthFour) {
    Rng rng(95);
    for (int n = 2; n <= 3; ++n) {
        SurfaceRep s = pants_surface(PantsNode{"P", random_rstar(rng, n)});
        LimitSampleOptions o;
        o.max_triples = 500;
        LimitSample ls = limit_set_sample(s, o);
        EXPECT_TRUE(ls.non_transverse.empty()) << "min sigma " << ls.min_pair_sigma;
        EXPECT_EQ(ls.maslov_failures, 0);
        EXPECT_DOUBLE_EQ(ls.maximal_fraction(n), 1.0);
    }
}

TEST(Limits, TransverseAndMaximalOnRandomPants) {
    Rng rng(93);
    for (int trial = 0; trial < 4; ++trial) {
        int n = 1 + trial % 3;
        SurfaceRep s = pants_surface(PantsNode{"P", random_rstar(rng, n)});
        LimitSampleOptions o;
        o.max_word_length = 3;
        o.max_triples = 300;
        LimitSample ls = limit_set_sample(s, o);
        EXPECT_TRUE(ls.non_transverse.empty()) << "min sigma " << ls.min_pair_sigma;
        EXPECT_GT(ls.triples_sampled, 0);
    }
}

TEST(Limits, RefusesParabolicGenerator) {
    Mat one = Mat::Constant(1, 1, 1.0), h = Mat::Constant(1, 1, 0.5), q = Mat::Constant(1, 1, 0.25);
    SurfaceRep s = pants_surface(PantsNode{"P", PantsParams{one, h, q}});
    try {
        limit_set_sample(s);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSHyperbolic);
    }
}
