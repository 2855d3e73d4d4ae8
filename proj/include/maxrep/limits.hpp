#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxrep/gluing.hpp"

namespace maxrep {

// Letters are 1-based generator indices, negative for inverses.
using Word = std::vector<int>;

// reduced words of length 1..max_len over k generators, shortlex order
std::vector<Word> reduced_words(int k, int max_len);
Word cyclic_reduction(const Word& w);
bool is_proper_power(const Word& w);
std::string word_string(const Word& w, const std::vector<std::string>& names);

struct LimitPoint {
    Word word;
    std::string name;
    Mat frame;                          // attracting Lagrangian, orthonormal 2n x n
    std::optional<BoundaryPoint> point;  // graph chart value when well conditioned
    double frame_error = 0.0;            // gap between the frames of w and w^2
};

struct LimitSampleOptions {
    int max_word_length = 4;
    int max_triples = 2000;
    std::uint64_t seed = 1;
    double transverse_band = 1e-12;  // floor; each pair also clears 10x its frame errors
};

struct LimitSample {
    std::vector<LimitPoint> points;
    int skipped_words = 0;  // powers, or images that are not S-hyperbolic
    long pairs_checked = 0;
    std::vector<std::pair<int, int>> non_transverse;
    double min_pair_sigma = 0.0;
    std::map<int, int> beta_histogram;  // |beta| -> count
    int triples_sampled = 0;
    int maslov_failures = 0;

    double transverse_fraction() const;
    double maximal_fraction(int n) const;
};

// smallest singular value of [F1 F2] for orthonormal Lagrangian frames
double frame_transversality(const Mat& f1, const Mat& f2);
// sine of the largest principal angle between two orthonormal frames
double frame_distance(const Mat& f1, const Mat& f2);
int maslov_of_frames(const Mat& f1, const Mat& f2, const Mat& f3, const Tolerance& tol = {});

// Generators are the surface generators with the last boundary dropped
// (free group of rank 2g + m - 1).
LimitSample limit_set_sample(const SurfaceRep& rep, const LimitSampleOptions& opt = {}, const Tolerance& tol = {});

}  // namespace maxrep
