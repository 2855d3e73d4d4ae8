#include "maxrep/gluing.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace maxrep {

const char* to_string(GlueStatus s) {
    switch (s) {
        case GlueStatus::Gluable: return "Gluable";
        case GlueStatus::NotSimilar: return "NotSimilar";
        case GlueStatus::UnitModulusObstruction: return "UnitModulusObstruction";
    }
    return "?";
}

SpMat cbar_form(const Mat& xbar, const Mat& sbar) {
    const Eigen::Index n = xbar.rows();
    Mat xit = xbar.inverse().transpose();
    return SpMat::from_blocks_unchecked(xit, -xit - sbar * xbar, Mat::Zero(n, n), xbar);
}

namespace {

double element_scale(const SpMat& g) { return std::max(1.0, inf_norm(g.full())); }

double chart_band(const Tolerance& tol) { return 1e3 * tol.eq_tol; }

}  // namespace

BoundaryForm read_c_form(const SpMat& c, const Tolerance& tol) {
    if (inf_norm(c.b()) > chart_band(tol) * element_scale(c))
        fail(ErrorKind::IllConditioned, "boundary element does not fix 0 in its chart");
    Mat x = c.a();
    return BoundaryForm{x, symmetrize(x.transpose() * (c.c() - x))};
}

BoundaryForm read_cbar_form(const SpMat& cbar, const Tolerance& tol) {
    if (inf_norm(cbar.c()) > chart_band(tol) * element_scale(cbar))
        fail(ErrorKind::IllConditioned, "boundary element does not fix infinity in its chart");
    Mat xb = cbar.d();
    Mat xit = xb.inverse().transpose();
    return BoundaryForm{xb, symmetrize(-(cbar.b() + xit) * xb.inverse())};
}

GlueCheck can_glue(const Mat& x, const Mat& xbar, const Tolerance& tol) {
    GlueCheck out;
    if (x.rows() != xbar.rows()) return out;
    if (circle_class(x, tol) == CircleClass::HasUnitModulusEigenvalue ||
        circle_class(xbar, tol) == CircleClass::HasUnitModulusEigenvalue) {
        out.status = GlueStatus::UnitModulusObstruction;
        return out;
    }
    out.witness = similarity_witness(x.transpose(), xbar, tol);
    out.status = out.witness ? GlueStatus::Gluable : GlueStatus::NotSimilar;
    return out;
}

double twist_conjugation_residual(const SpMat& g, const SpMat& c, const SpMat& cbar) {
    return rel_residual((g * sp_inverse(c) * sp_inverse(g)).full(), cbar.full());
}

SpMat twist_element(const Mat& x, const Mat& s, const Mat& xbar, const Mat& sbar, const TwistParam& tw,
                    const Tolerance& tol) {
    const Eigen::Index n = x.rows();
    const Mat& g = tw.g;
    if (xbar.rows() != n || s.rows() != n || sbar.rows() != n || g.rows() != n)
        fail(ErrorKind::InvalidArgument, "twist element: dimension mismatch");
    if (!is_contracting(x, tol)) fail(ErrorKind::NotContracting, "X is not contracting");
    if (!is_contracting(xbar, tol)) fail(ErrorKind::NotContracting, "Xbar is not contracting");
    if (!is_spd(s, tol) || !is_spd(sbar, tol)) fail(ErrorKind::InvalidArgument, "S and Sbar must be positive definite");
    if (condition_number(g) > 1.0 / tol.eq_tol) fail(ErrorKind::Singular, "twist matrix G is singular");
    Mat gi = g.inverse();
    double compat = rel_residual(xbar, g * x.transpose() * gi);
    if (compat > chart_band(tol)) {
        std::ostringstream os;
        os << "Xbar differs from G X^T G^-1 (relative residual " << compat << ")";
        fail(ErrorKind::NotCompatible, os.str());
    }
    Mat id = Mat::Identity(n, n);
    Mat yinv = stein_solve(x, SymMat::unchecked(x.transpose() * x + s), tol).mat();
    Mat ybar = -stein_solve(xbar, SymMat::unchecked(id + xbar.transpose() * sbar * xbar), tol).mat();
    Mat a = ybar * g * yinv - gi.transpose();
    Mat b = -ybar * g;
    Mat c = g * yinv;
    Mat d = -g;
    SpMat out = make_symplectic(a, b, c, d, Tolerance{std::sqrt(tol.eq_tol), tol.series_tol, tol.unit_circle_band});
    SpMat cf = StandardBoundary{x, SymMat::unchecked(s)}.element();
    SpMat cb = cbar_form(xbar, sbar);
    double res = twist_conjugation_residual(out, cf, cb);
    if (res > std::sqrt(tol.eq_tol)) {
        std::ostringstream os;
        os << "twist conjugation residual " << res << " too large";
        fail(ErrorKind::IllConditioned, os.str());
    }
    return out;
}

Mat boundary_length(const PantsParams& p, int port) {
    switch (port) {
        case 1: return p.x1;
        case 2: return -p.x2;
        case 3: return p.x3;
    }
    fail(ErrorKind::InvalidArgument, "port must be 1, 2 or 3");
}

SpMat port_chart_c(int n, int port) {
    switch (port) {
        case 1: return SpMat::identity(n);
        case 2: return sp_inverse(port_rotation(n));
        case 3: return port_rotation(n);
    }
    fail(ErrorKind::InvalidArgument, "port must be 1, 2 or 3");
}

SpMat port_chart_cbar(int n, int port) {
    switch (port) {
        case 1: return sp_inverse(port_rotation(n));
        case 2: return port_rotation(n);
        case 3: return SpMat::identity(n);
    }
    fail(ErrorKind::InvalidArgument, "port must be 1, 2 or 3");
}

const PantsNode& GluingGraph::node(const std::string& id) const {
    int i = node_index(id);
    if (i < 0) fail(ErrorKind::GraphInvalid, "unknown node '" + id + "'");
    return nodes[i];
}

int GluingGraph::node_index(const std::string& id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id) return static_cast<int>(i);
    return -1;
}

GluingGraph::Topology GluingGraph::validate() const {
    if (nodes.empty()) fail(ErrorKind::GraphInvalid, "graph has no pants nodes");
    std::set<std::string> ids;
    for (const auto& nd : nodes) {
        if (!ids.insert(nd.id).second) fail(ErrorKind::GraphInvalid, "duplicate node id '" + nd.id + "'");
        if (nd.params.n() != n) fail(ErrorKind::GraphInvalid, "node '" + nd.id + "' has wrong dimension");
    }
    std::set<std::pair<std::string, int>> used;
    auto use = [&](const PortRef& p, const std::string& where) {
        if (p.port < 1 || p.port > 3) fail(ErrorKind::GraphInvalid, where + ": port must be 1, 2 or 3");
        if (node_index(p.node) < 0) fail(ErrorKind::GraphInvalid, where + ": unknown node '" + p.node + "'");
        if (!used.insert({p.node, p.port}).second)
            fail(ErrorKind::GraphInvalid, where + ": port " + p.str() + " used twice");
    };
    std::set<std::string> bids;
    for (const auto& e : edges) {
        std::string where = "edge " + e.cbar_side.str() + " " + e.c_side.str();
        use(e.cbar_side, where);
        use(e.c_side, where);
        if (e.twist.rows() != n || e.twist.cols() != n) fail(ErrorKind::GraphInvalid, where + ": twist has wrong size");
    }
    for (const auto& b : boundaries) {
        use(b.port, "boundary " + b.id);
        if (!bids.insert(b.id).second) fail(ErrorKind::GraphInvalid, "duplicate boundary id '" + b.id + "'");
    }
    if (used.size() != 3 * nodes.size()) fail(ErrorKind::GraphInvalid, "some ports are neither glued nor boundary");
    // connectivity
    std::vector<int> parent(nodes.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
    for (const auto& e : edges) parent[find(node_index(e.cbar_side.node))] = find(node_index(e.c_side.node));
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (find(static_cast<int>(i)) != find(0)) fail(ErrorKind::GraphInvalid, "graph is not connected");
    Topology t;
    t.boundary = static_cast<int>(boundaries.size());
    int twice_g = 2 - t.boundary + static_cast<int>(nodes.size());
    if (twice_g < 0 || twice_g % 2 != 0) fail(ErrorKind::GraphInvalid, "Euler count is inconsistent");
    t.genus = twice_g / 2;
    return t;
}

std::vector<std::pair<std::string, SpMat>> SurfaceRep::generators() const {
    std::vector<std::pair<std::string, SpMat>> out;
    for (std::size_t i = 0; i < handles.size(); ++i) {
        out.emplace_back("A" + std::to_string(i + 1), handles[i].a);
        out.emplace_back("B" + std::to_string(i + 1), handles[i].b);
    }
    for (std::size_t j = 0; j < boundaries.size(); ++j) out.emplace_back("C" + std::to_string(j + 1), boundaries[j].image);
    return out;
}

double relation_residual(const std::vector<std::pair<std::string, SpMat>>& gens, int genus, int boundary) {
    if (gens.empty()) return 0.0;
    const int n = gens.front().second.n();
    auto find = [&](const std::string& name) -> const SpMat& {
        for (const auto& g : gens)
            if (g.first == name) return g.second;
        fail(ErrorKind::InvalidArgument, "missing generator " + name);
    };
    std::vector<Mat> word{Mat::Identity(2 * n, 2 * n)};
    for (int i = genus; i >= 1; --i) {
        const SpMat& a = find("A" + std::to_string(i));
        const SpMat& b = find("B" + std::to_string(i));
        for (const SpMat& x : {a, b, sp_inverse(a), sp_inverse(b)}) word.push_back(x.full());
    }
    for (int j = boundary; j >= 1; --j) word.push_back(find("C" + std::to_string(j)).full());
    return product_residual(word);
}

double SurfaceRep::relation_residual() const { return maxrep::relation_residual(generators(), genus(), boundary_count()); }

int SurfaceRep::boundary_index(const std::string& id) const {
    for (std::size_t j = 0; j < boundaries.size(); ++j)
        if (boundaries[j].id == id) return static_cast<int>(j);
    return -1;
}

SurfaceRep pants_surface(const PantsNode& node, const Tolerance& tol) {
    SurfaceRep s;
    const int n = node.params.n();
    s.n = n;
    PantsRep rep = build_maximal(node.params, tol);
    for (int p = 1; p <= 3; ++p) {
        BoundarySlot b{rep[p - 1], port_chart_c(n, p), port_chart_cbar(n, p), node.id + "." + std::to_string(p),
                       PortRef{node.id, p}};
        s.boundaries.push_back(b);
        s.graph.boundaries.push_back(GraphBoundary{b.origin, b.id});
    }
    s.pieces.push_back(PantsPiece{node.id, node.params, rep, SpMat::identity(n)});
    s.graph.n = n;
    s.graph.nodes.push_back(node);
    return s;
}

HalfInteger surface_toledo(const SurfaceRep& rep, const Tolerance& tol) {
    // additive over pants and invariant under the conjugation carried by each piece
    HalfInteger total;
    const int n = rep.n;
    for (const auto& pc : rep.pieces)
        total = total + toledo(build_maximal(pc.params, tol), standard_fixed_points(n, n, tol), tol);
    return total;
}

namespace {

SpMat product(const std::vector<BoundarySlot>& b, int from, int to) {
    // C_to ... C_from for 1-based from <= to; identity if empty
    const int n = b.front().image.n();
    SpMat w = SpMat::identity(n);
    for (int j = to; j >= from; --j) w = w * b[j - 1].image;
    return w;
}

struct TwistData {
    SpMat g;
    Mat twist;
};

TwistData twist_for(const SurfaceRep& crep, const BoundarySlot& cside, const SurfaceRep& cbarrep,
                    const BoundarySlot& cbarside, const std::optional<TwistParam>& twist, const Tolerance& tol) {
    const int n = crep.n;
    // read the boundary element in its own pants, before any conjugation, when the piece is known
    auto chart_form = [&](const SurfaceRep& s, const BoundarySlot& b, bool c) {
        const int p = b.origin.port;
        for (const auto& pc : s.pieces)
            if (pc.id == b.origin.node && p >= 1 && p <= 3) {
                SpMat ch = c ? port_chart_c(n, p) : port_chart_cbar(n, p);
                return ch * build_maximal(pc.params, tol)[p - 1] * sp_inverse(ch);
            }
        SpMat ch = c ? b.c_chart : b.cbar_chart;
        return ch * b.image * sp_inverse(ch);
    };
    BoundaryForm f = read_c_form(chart_form(crep, cside, true), tol);
    BoundaryForm fb = read_cbar_form(chart_form(cbarrep, cbarside, false), tol);
    std::string where = "edge " + cbarside.origin.str() + " " + cside.origin.str();
    GlueCheck chk = can_glue(f.x, fb.x, tol);
    if (chk.status != GlueStatus::Gluable)
        fail(ErrorKind::CannotGlue, where + ": " + to_string(chk.status));
    Mat g = twist ? twist->g : *chk.witness;
    try {
        return TwistData{twist_element(f.x, f.s, fb.x, fb.s, TwistParam{g}, tol), g};
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotCompatible || e.kind() == ErrorKind::NotContracting ||
            e.kind() == ErrorKind::InvalidArgument)
            fail(ErrorKind::CannotGlue, where + ": " + e.what());
        throw;
    }
}

void check_surface_relation(const SurfaceRep& s, const Tolerance& tol) {
    double scale = 1.0;
    for (const auto& g : s.generators()) scale = std::max(scale, inf_norm(g.second.full()));
    double res = s.relation_residual();
    if (res > std::sqrt(tol.eq_tol) * scale * scale) {
        std::ostringstream os;
        os << "surface relation residual " << res << " too large";
        fail(ErrorKind::IllConditioned, os.str());
    }
}

void conjugate_in_place(SurfaceRep& s, const SpMat& h) {
    SpMat hi = sp_inverse(h);
    for (auto& hd : s.handles) {
        hd.a = h * hd.a * hi;
        hd.b = h * hd.b * hi;
    }
    for (auto& b : s.boundaries) {
        b.image = h * b.image * hi;
        b.c_chart = b.c_chart * hi;
        b.cbar_chart = b.cbar_chart * hi;
    }
    for (auto& pc : s.pieces) {
        pc.rep = conjugate(pc.rep, h);
        pc.conj = h * pc.conj;
    }
}

void drop_boundary(GluingGraph& g, const PortRef& p) {
    std::vector<GraphBoundary> keep;
    for (const auto& b : g.boundaries)
        if (!(b.port == p)) keep.push_back(b);
    g.boundaries.swap(keep);
}

std::string unique_id(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (int k = 2;; ++k) {
        std::string c = base + "_" + std::to_string(k);
        if (!taken.count(c)) return c;
    }
}

// rename nodes of s that clash with ids in taken
void rename_nodes(SurfaceRep& s, const std::set<std::string>& taken) {
    std::set<std::string> all = taken;
    std::map<std::string, std::string> ren;
    for (auto& nd : s.graph.nodes) {
        std::string id = unique_id(nd.id, all);
        all.insert(id);
        ren[nd.id] = id;
        nd.id = id;
    }
    auto fix = [&](PortRef& p) { p.node = ren.at(p.node); };
    for (auto& e : s.graph.edges) {
        fix(e.cbar_side);
        fix(e.c_side);
    }
    for (auto& b : s.graph.boundaries) {
        std::string old = b.port.node;
        fix(b.port);
        if (b.id == old + "." + std::to_string(b.port.port)) b.id = b.port.str();
    }
    for (auto& b : s.boundaries) {
        std::string old = b.origin.node;
        fix(b.origin);
        if (b.id == old + "." + std::to_string(b.origin.port)) b.id = b.origin.str();
    }
    for (auto& pc : s.pieces) pc.id = ren.at(pc.id);
}

}  // namespace

SurfaceRep glue_reps(const SurfaceRep& rep1, int ci, const SurfaceRep& rep2, int ki, const std::optional<TwistParam>& twist,
                     const Tolerance& tol) {
    return glue_reps_oriented(rep1, ci, true, rep2, ki, twist, tol);
}

SurfaceRep glue_reps_oriented(const SurfaceRep& rep1, int ci, bool rep1_is_c_side, const SurfaceRep& rep2_in, int ki,
                              const std::optional<TwistParam>& twist, const Tolerance& tol) {
    if (ci < 0 || ci >= rep1.boundary_count() || ki < 0 || ki >= rep2_in.boundary_count())
        fail(ErrorKind::InvalidArgument, "boundary index out of range");
    if (rep1.n != rep2_in.n) fail(ErrorKind::InvalidArgument, "dimension mismatch");
    SurfaceRep rep2 = rep2_in;
    std::set<std::string> taken;
    for (const auto& nd : rep1.graph.nodes) taken.insert(nd.id);
    rename_nodes(rep2, taken);

    const BoundarySlot& b1 = rep1.boundaries[ci];
    const BoundarySlot b2 = rep2.boundaries[ki];
    const BoundarySlot& cs = rep1_is_c_side ? b1 : b2;
    const BoundarySlot& us = rep1_is_c_side ? b2 : b1;
    TwistData td = rep1_is_c_side ? twist_for(rep1, cs, rep2, us, twist, tol) : twist_for(rep2, cs, rep1, us, twist, tol);
    SpMat h = rep1_is_c_side ? sp_inverse(b1.c_chart) * sp_inverse(td.g) * b2.cbar_chart
                             : sp_inverse(b1.cbar_chart) * td.g * b2.c_chart;
    conjugate_in_place(rep2, h);
    double inv_res = rel_residual((rep2.boundaries[ki].image * b1.image).full(), Mat::Identity(2 * rep1.n, 2 * rep1.n));
    if (inv_res > std::sqrt(tol.eq_tol)) {
        std::ostringstream os;
        os << "glued boundaries are not inverse (residual " << inv_res << ")";
        fail(ErrorKind::IllConditioned, os.str());
    }

    const int i = ci + 1, k = ki + 1;
    const int m1 = rep1.boundary_count(), m2 = rep2.boundary_count();
    SpMat l1 = product(rep1.boundaries, i + 1, m1);
    SpMat r2 = product(rep2.boundaries, 1, k - 1);
    SpMat u = l1 * r2, ui = sp_inverse(u);

    SurfaceRep out;
    out.n = rep1.n;
    for (const auto& hd : rep2.handles) out.handles.push_back(Handle{u * hd.a * ui, u * hd.b * ui});
    for (const auto& hd : rep1.handles) out.handles.push_back(hd);
    for (int j = 1; j < i; ++j) out.boundaries.push_back(rep1.boundaries[j - 1]);
    for (int j = k + 1; j <= m2; ++j) out.boundaries.push_back(rep2.boundaries[j - 1]);
    for (int j = 1; j < k; ++j) out.boundaries.push_back(rep2.boundaries[j - 1]);
    for (int j = i + 1; j <= m1; ++j) out.boundaries.push_back(rep1.boundaries[j - 1]);
    out.pieces = rep1.pieces;
    out.pieces.insert(out.pieces.end(), rep2.pieces.begin(), rep2.pieces.end());

    out.graph = rep1.graph;
    for (const auto& nd : rep2.graph.nodes) out.graph.nodes.push_back(nd);
    for (const auto& e : rep2.graph.edges) out.graph.edges.push_back(e);
    for (const auto& b : rep2.graph.boundaries) out.graph.boundaries.push_back(b);
    drop_boundary(out.graph, b1.origin);
    drop_boundary(out.graph, b2.origin);
    out.graph.edges.push_back(GraphEdge{us.origin, cs.origin, td.twist});
    check_surface_relation(out, tol);
    return out;
}

SurfaceRep close_boundaries(const SurfaceRep& rep, int ci, int ui, const std::optional<TwistParam>& twist,
                            const Tolerance& tol) {
    const int m = rep.boundary_count();
    if (ci < 0 || ci >= m || ui < 0 || ui >= m || ci == ui) fail(ErrorKind::InvalidArgument, "invalid boundary indices");
    const BoundarySlot& bv = rep.boundaries[ci];
    const BoundarySlot& bu = rep.boundaries[ui];
    TwistData td = twist_for(rep, bv, rep, bu, twist, tol);
    SpMat h = sp_inverse(bv.c_chart) * sp_inverse(td.g) * bu.cbar_chart;
    // h b_u h^-1 = b_v^-1
    const int v = ci + 1, uu = ui + 1;
    const int hi = std::max(v, uu), lo = std::min(v, uu);
    SpMat s = (lo == v) ? h : sp_inverse(h);
    double chk = rel_residual((s * sp_inverse(rep.boundaries[hi - 1].image) * sp_inverse(s)).full(),
                              rep.boundaries[lo - 1].image.full());
    if (chk > std::sqrt(tol.eq_tol)) {
        std::ostringstream os;
        os << "closing element does not conjugate the boundaries (residual " << chk << ")";
        fail(ErrorKind::IllConditioned, os.str());
    }
    SpMat l = product(rep.boundaries, hi + 1, m);
    SpMat mm = product(rep.boundaries, lo + 1, hi - 1);
    SpMat li = sp_inverse(l);

    SurfaceRep out;
    out.n = rep.n;
    out.handles.push_back(Handle{l * rep.boundaries[hi - 1].image * li, l * mm * s * li});
    for (const auto& hd : rep.handles) out.handles.push_back(hd);
    for (int j = 1; j <= m; ++j)
        if (j != hi && j != lo) out.boundaries.push_back(rep.boundaries[j - 1]);
    out.pieces = rep.pieces;
    out.graph = rep.graph;
    drop_boundary(out.graph, bu.origin);
    drop_boundary(out.graph, bv.origin);
    out.graph.edges.push_back(GraphEdge{bu.origin, bv.origin, td.twist});
    check_surface_relation(out, tol);
    return out;
}

SurfaceRep close_handle(const Mat& x1, const Mat& x2, const TwistParam& tw, const Tolerance& tol) {
    const int n = static_cast<int>(x1.rows());
    if (!is_contracting(x1, tol)) fail(ErrorKind::NotValid, "X1 must be contracting");
    if (condition_number(tw.g) > 1.0 / tol.eq_tol) fail(ErrorKind::Singular, "twist matrix G is singular");
    Mat x3 = tw.g * x1.transpose() * tw.g.inverse();
    PantsParams p{x1, x2, x3};
    ParamClass cls = classify_params(p, tol);
    if (cls != ParamClass::InR && cls != ParamClass::InRStar)
        fail(ErrorKind::NotValid, std::string("(X1, X2, G X1^T G^-1) classifies as ") + to_string(cls));
    PantsRep rep = build_maximal(p, tol);
    Mat prod = symmetrize(pants_product(p));
    SpMat b = twist_element(x1, prod, x3, symmetrize(prod.inverse()), tw, tol);
    SurfaceRep s;
    s.n = n;
    s.handles.push_back(Handle{rep.c1, b});
    s.boundaries.push_back(BoundarySlot{rep.c2, port_chart_c(n, 2), port_chart_cbar(n, 2), "C1", PortRef{"H1", 2}});
    s.pieces.push_back(PantsPiece{"H1", p, rep, SpMat::identity(n)});
    s.graph.n = n;
    s.graph.nodes.push_back(PantsNode{"H1", p});
    s.graph.edges.push_back(GraphEdge{PortRef{"H1", 3}, PortRef{"H1", 1}, tw.g});
    s.graph.boundaries.push_back(GraphBoundary{PortRef{"H1", 2}, "C1"});
    check_surface_relation(s, tol);
    return s;
}

Vec surface_fingerprint(const SurfaceRep& rep, int max_len) {
    std::vector<Mat> letters;
    for (const auto& g : rep.generators()) {
        letters.push_back(g.second.full());
        letters.push_back(sp_inverse(g.second).full());
    }
    std::vector<double> tr;
    std::vector<Mat> level = {Mat::Identity(2 * rep.n, 2 * rep.n)};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Mat> next;
        next.reserve(level.size() * letters.size());
        for (const Mat& w : level)
            for (const Mat& l : letters) {
                next.push_back(w * l);
                tr.push_back(next.back().trace());
            }
        level.swap(next);
    }
    return Eigen::Map<Vec>(tr.data(), static_cast<Eigen::Index>(tr.size()));
}

}  // namespace maxrep
