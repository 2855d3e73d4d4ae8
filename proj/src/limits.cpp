#include "maxrep/limits.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <tuple>

namespace maxrep {

std::vector<Word> reduced_words(int k, int max_len) {
    std::vector<int> letters;
    for (int i = 1; i <= k; ++i) {
        letters.push_back(i);
        letters.push_back(-i);
    }
    std::vector<Word> out, level = {Word{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : level)
            for (int l : letters) {
                if (!w.empty() && w.back() == -l) continue;
                Word v = w;
                v.push_back(l);
                next.push_back(std::move(v));
            }
        out.insert(out.end(), next.begin(), next.end());
        level.swap(next);
    }
    return out;
}

Word cyclic_reduction(const Word& w) {
    std::size_t a = 0, b = w.size();
    while (b - a >= 2 && w[a] == -w[b - 1]) {
        ++a;
        --b;
    }
    return Word(w.begin() + static_cast<std::ptrdiff_t>(a), w.begin() + static_cast<std::ptrdiff_t>(b));
}

bool is_proper_power(const Word& w) {
    Word u = cyclic_reduction(w);
    const std::size_t l = u.size();
    for (std::size_t d = 1; d < l; ++d) {
        if (l % d != 0) continue;
        bool rep = true;
        for (std::size_t i = d; i < l && rep; ++i) rep = u[i] == u[i - d];
        if (rep) return true;
    }
    return false;
}

std::string word_string(const Word& w, const std::vector<std::string>& names) {
    if (w.empty()) return "e";
    std::string s;
    for (int l : w) {
        if (!s.empty()) s += ' ';
        s += names.at(static_cast<std::size_t>(std::abs(l) - 1));
        if (l < 0) s += "^-1";
    }
    return s;
}

double LimitSample::transverse_fraction() const {
    return pairs_checked == 0 ? 1.0 : 1.0 - static_cast<double>(non_transverse.size()) / pairs_checked;
}

double LimitSample::maximal_fraction(int n) const {
    int total = 0;
    for (const auto& [b, c] : beta_histogram) total += c;
    if (total == 0) return 1.0;
    auto it = beta_histogram.find(n);
    return it == beta_histogram.end() ? 0.0 : static_cast<double>(it->second) / total;
}

double frame_transversality(const Mat& f1, const Mat& f2) {
    Mat m(f1.rows(), f1.cols() + f2.cols());
    m << f1, f2;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues().minCoeff();
}

double frame_distance(const Mat& f1, const Mat& f2) {
    Mat r = f2 - f1 * (f1.transpose() * f2);
    return Eigen::JacobiSVD<Mat>(r).singularValues().maxCoeff();
}

int maslov_of_frames(const Mat& f1, const Mat& f2, const Mat& f3, const Tolerance& tol) {
    const Eigen::Index n = f1.cols();
    const Mat* fr[3] = {&f1, &f2, &f3};
    auto rot = [&](double th) {
        Mat r(2 * n, 2 * n);
        Mat id = Mat::Identity(n, n);
        r << std::cos(th) * id, -std::sin(th) * id, std::sin(th) * id, std::cos(th) * id;
        return r;
    };
    double best = -1.0, best_th = 0.0;
    for (int k = 0; k < 24; ++k) {
        double th = M_PI * k / 24.0;
        Mat r = rot(th);
        double worst = 1e300;
        for (const Mat* f : fr) {
            Mat v = (r * *f).bottomRows(n);
            worst = std::min(worst, Eigen::JacobiSVD<Mat>(v).singularValues().minCoeff());
        }
        if (worst > best) {
            best = worst;
            best_th = th;
        }
    }
    Mat r = rot(best_th);
    BoundaryPoint p[3];
    for (int i = 0; i < 3; ++i) p[i] = point_from_frame(r * *fr[i], tol);
    return maslov(p[0], p[1], p[2], tol);
}

LimitSample limit_set_sample(const SurfaceRep& rep, const LimitSampleOptions& opt, const Tolerance& tol) {
    if (opt.max_word_length < 1) fail(ErrorKind::InvalidArgument, "max word length must be positive");
    auto gens = rep.generators();
    if (rep.boundary_count() >= 1) gens.pop_back();
    if (gens.empty()) fail(ErrorKind::InvalidArgument, "representation has no free generators");
    std::vector<std::string> names;
    std::vector<SpMat> img, inv;
    for (const auto& [name, g] : gens) {
        try {
            hyperbolic_frames(g, tol);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NotSHyperbolic)
                fail(ErrorKind::NotSHyperbolic, "generator " + name + " is not S-hyperbolic: " + e.what());
            throw;
        }
        names.push_back(name);
        img.push_back(g);
        inv.push_back(sp_inverse(g));
    }

    LimitSample out;
    const int n = rep.n;
    struct Frame {
        Mat f;
        double err = 1.0;
    };
    std::map<Word, std::optional<Frame>> cache;
    auto product = [&](const Word& w) {
        SpMat x = SpMat::identity(n);
        for (int l : w) x = x * (l > 0 ? img[l - 1] : inv[-l - 1]);
        return x;
    };
    // u x u^-1 is handled as u applied to the frame of the cyclic core x
    std::function<const std::optional<Frame>&(const Word&)> frame_of = [&](const Word& w) -> const std::optional<Frame>& {
        auto it = cache.find(w);
        if (it != cache.end()) return it->second;
        std::optional<Frame> fr;
        Word core = cyclic_reduction(w);
        if (core.size() < w.size()) {
            const auto& fc = frame_of(core);
            if (fc) {
                Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>((w.size() - core.size()) / 2));
                Mat um = product(u).full();
                Eigen::HouseholderQR<Mat> qr(um * fc->f);
                Mat q = qr.householderQ() * Mat::Identity(2 * n, n);
                double k = condition_number(um);
                fr = Frame{q, k * (fc->err + std::numeric_limits<double>::epsilon())};
            }
        } else {
            SpMat x = product(w);
            try {
                fr = Frame{hyperbolic_frames(x, tol).attracting, 1.0};
                try {
                    fr->err = frame_distance(fr->f, hyperbolic_frames(x * x, tol).attracting);
                } catch (const Error&) {
                }
            } catch (const Error&) {
            }
        }
        return cache.emplace(w, std::move(fr)).first->second;
    };

    for (const Word& w : reduced_words(static_cast<int>(names.size()), opt.max_word_length)) {
        if (is_proper_power(w)) {
            ++out.skipped_words;
            continue;
        }
        const auto& fr = frame_of(w);
        if (!fr) {
            ++out.skipped_words;
            continue;
        }
        LimitPoint lp{w, word_string(w, names), fr->f, std::nullopt, fr->err};
        try {
            lp.point = point_from_frame(fr->f, tol);
        } catch (const Error&) {
        }
        out.points.push_back(std::move(lp));
    }

    // Words sharing a prefix u are conjugated by u before comparing:
    // u^-1 attr(w) = attr(u^-1 w u), and both transversality and beta are invariant.
    auto frames_for = [&](std::initializer_list<int> idx) {
        std::vector<Word> ws;
        for (int i : idx) ws.push_back(out.points[i].word);
        for (int round = 0; round < 16; ++round) {
            Word u;
            for (std::size_t i = 0; i < ws.size(); ++i)
                for (std::size_t j = i + 1; j < ws.size(); ++j) {
                    std::size_t k = 0;
                    while (k < ws[i].size() && k < ws[j].size() && ws[i][k] == ws[j][k]) ++k;
                    if (k > u.size()) u.assign(ws[i].begin(), ws[i].begin() + static_cast<std::ptrdiff_t>(k));
                }
            if (u.empty()) break;
            for (Word& w : ws) {
                Word v;
                for (auto it = u.rbegin(); it != u.rend(); ++it) v.push_back(-*it);
                v.insert(v.end(), w.begin(), w.end());
                v.insert(v.end(), u.begin(), u.end());
                Word r;
                for (int l : v) {
                    if (!r.empty() && r.back() == -l) r.pop_back();
                    else r.push_back(l);
                }
                w.swap(r);
            }
        }
        std::vector<Frame> out_f;
        std::size_t slot = 0;
        for (int i : idx) {
            const auto& fr = frame_of(ws[slot++]);
            out_f.push_back(fr ? *fr : Frame{out.points[i].frame, out.points[i].frame_error});
        }
        return out_f;
    };

    const int np = static_cast<int>(out.points.size());
    out.min_pair_sigma = 1.0;
    std::set<std::pair<int, int>> bad;
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j) {
            auto fr = frames_for({i, j});
            double s = frame_transversality(fr[0].f, fr[1].f);
            ++out.pairs_checked;
            out.min_pair_sigma = std::min(out.min_pair_sigma, s);
            const double band = std::max(opt.transverse_band, 10.0 * (fr[0].err + fr[1].err));
            if (s < band) {
                out.non_transverse.emplace_back(i, j);
                bad.insert({i, j});
            }
        }

    auto eval = [&](int a, int b, int c) {
        if (bad.count({a, b}) || bad.count({a, c}) || bad.count({b, c})) return;
        ++out.triples_sampled;
        try {
            auto fr = frames_for({a, b, c});
            int beta = maslov_of_frames(fr[0].f, fr[1].f, fr[2].f, tol);
            ++out.beta_histogram[std::abs(beta)];
        } catch (const Error&) {
            ++out.maslov_failures;
        }
    };
    const long total = static_cast<long>(np) * (np - 1) * (np - 2) / 6;
    if (total <= opt.max_triples) {
        for (int a = 0; a < np; ++a)
            for (int b = a + 1; b < np; ++b)
                for (int c = b + 1; c < np; ++c) eval(a, b, c);
    } else {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<int> pick(0, np - 1);
        for (int t = 0; t < opt.max_triples; ++t) {
            int a = pick(rng), b = pick(rng), c = pick(rng);
            if (a == b || b == c || a == c) {
                --t;
                continue;
            }
            int v[3] = {a, b, c};
            std::sort(v, v + 3);
            eval(v[0], v[1], v[2]);
        }
    }
    return out;
}

}  // namespace maxrep
