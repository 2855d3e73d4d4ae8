#include "maxrep/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace maxrep {

namespace {

int boundary_slot_of(const SurfaceRep& s, const PortRef& p) {
    for (std::size_t j = 0; j < s.boundaries.size(); ++j)
        if (s.boundaries[j].origin == p) return static_cast<int>(j);
    return -1;
}

std::string edge_name(const GraphEdge& e) { return "edge " + e.cbar_side.str() + " " + e.c_side.str(); }

}  // namespace

SurfaceRep build_from_graph(const GluingGraph& graph, const Tolerance& tol) {
    graph.validate();
    for (const auto& nd : graph.nodes) {
        ParamClass cls = classify_params(nd.params, tol);
        if (cls != ParamClass::InR && cls != ParamClass::InRStar)
            fail(ErrorKind::NotValid, "node '" + nd.id + "' classifies as " + to_string(cls));
    }
    SurfaceRep cur = pants_surface(graph.nodes.front(), tol);
    std::set<std::string> placed = {graph.nodes.front().id};
    std::vector<bool> done(graph.edges.size(), false);

    auto guarded = [&](const GraphEdge& e, auto&& f) {
        try {
            return f();
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::CannotGlue) throw;
            if (err.kind() == ErrorKind::NotCompatible || err.kind() == ErrorKind::NotContracting)
                fail(ErrorKind::CannotGlue, edge_name(e) + ": " + err.what());
            throw;
        }
    };

    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t k = 0; k < graph.edges.size(); ++k) {
            if (done[k]) continue;
            const GraphEdge& e = graph.edges[k];
            bool ub = placed.count(e.cbar_side.node) > 0, uc = placed.count(e.c_side.node) > 0;
            if (ub == uc) continue;
            const PortRef& here = uc ? e.c_side : e.cbar_side;
            const PortRef& there = uc ? e.cbar_side : e.c_side;
            SurfaceRep other = pants_surface(graph.node(there.node), tol);
            int i1 = boundary_slot_of(cur, here), i2 = boundary_slot_of(other, there);
            cur = guarded(e, [&] { return glue_reps_oriented(cur, i1, uc, other, i2, TwistParam{e.twist}, tol); });
            placed.insert(there.node);
            done[k] = true;
            grew = true;
        }
    }
    for (std::size_t k = graph.edges.size(); k-- > 0;) {
        if (done[k]) continue;
        const GraphEdge& e = graph.edges[k];
        int ci = boundary_slot_of(cur, e.c_side), ui = boundary_slot_of(cur, e.cbar_side);
        cur = guarded(e, [&] { return close_boundaries(cur, ci, ui, TwistParam{e.twist}, tol); });
    }
    for (auto& b : cur.boundaries)
        for (const auto& gb : graph.boundaries)
            if (gb.port == b.origin) b.id = gb.id;
    cur.graph = graph;
    return cur;
}

void check_standard_topology(int g, int m) {
    if (g < 0 || m < 1) fail(ErrorKind::InvalidArgument, "standard layout needs g >= 0 and m >= 1");
    if (2 * g + m < 3) fail(ErrorKind::InvalidArgument, "surface must have negative Euler characteristic");
}

Mat standard_length(int n, int sign) {
    Mat x = 0.5 * Mat::Identity(n, n);
    if (sign < 0) x(0, 0) = -0.5;
    return x;
}

Mat standard_twist(int n, int sign) {
    Mat x = Mat::Identity(n, n);
    if (sign < 0) x(0, 0) = -1.0;
    return x;
}

StandardCoords standard_coords_template(int g, int m, int n) {
    check_standard_topology(g, m);
    StandardCoords c;
    c.genus = g;
    c.boundary = m;
    c.n = n;
    Mat id = Mat::Identity(n, n);
    for (int i = 0; i < g; ++i) c.handles.push_back(HandleCoords{standard_length(n, 1), id, 2.0 * id, id});
    for (int j = 0; j < c.chain_length(); ++j) c.chain.push_back(ChainCoords{0.5 * id, id});
    for (int j = 0; j + 1 < m; ++j) c.free_lengths.push_back(standard_length(n, 1));
    return c;
}

namespace {

std::string pid(int j) { return "P" + std::to_string(j + 1); }
std::string hid(int i) { return "H" + std::to_string(i + 1); }

// slot index s of the chain: (node, port)
PortRef slot_port(int s, int k) {
    if (s == 0) return PortRef{pid(0), 1};
    if (s <= k) return PortRef{pid(s - 1), 2};
    return PortRef{pid(k - 1), 3};
}

PantsParams handle_params(const HandleCoords& h) {
    Mat x3 = h.h * h.y.transpose() * h.h.inverse();
    Mat x2 = (x3.inverse() * h.y.transpose() * h.m).inverse().transpose();
    return PantsParams{h.y, x2, x3};
}

void check_coords(const StandardCoords& c) {
    check_standard_topology(c.genus, c.boundary);
    if (static_cast<int>(c.handles.size()) != c.genus || static_cast<int>(c.chain.size()) != c.chain_length() ||
        static_cast<int>(c.free_lengths.size()) != c.boundary - 1)
        fail(ErrorKind::InvalidArgument, "coordinates do not match the topology");
}

}  // namespace

GluingGraph realize(const StandardCoords& c) {
    check_coords(c);
    const int g = c.genus, m = c.boundary, k = c.chain_length(), n = c.n;
    GluingGraph out;
    out.n = n;
    std::vector<PantsParams> hp;
    for (const auto& h : c.handles) hp.push_back(handle_params(h));
    if (k == 0) {
        out.nodes.push_back(PantsNode{hid(0), hp[0]});
        out.edges.push_back(GraphEdge{PortRef{hid(0), 3}, PortRef{hid(0), 1}, c.handles[0].h});
        out.boundaries.push_back(GraphBoundary{PortRef{hid(0), 2}, "C1"});
        return out;
    }
    // raw slot values: port 1 takes X1, port 2 takes X2
    auto slot_value = [&](int s) -> Mat {
        if (s < g) {
            const Mat& j = c.handles[s].j;
            Mat v = (j.inverse() * hp[s].x2 * j).transpose();
            return s == 0 ? Mat(-v) : v;
        }
        return c.free_lengths[s - g];
    };
    Mat x1 = slot_value(0);
    for (int j = 0; j < k; ++j) {
        if (j > 0) {
            const Mat& gt = c.chain[j - 1].twist;
            x1 = (gt.inverse() * out.nodes.back().params.x3 * gt).transpose();
        }
        Mat x2 = slot_value(j + 1);
        Mat x3 = c.chain[j].s * x1.inverse() * x2.transpose();
        out.nodes.push_back(PantsNode{pid(j), PantsParams{x1, x2, x3}});
    }
    for (int i = 0; i < g; ++i) out.nodes.push_back(PantsNode{hid(i), hp[i]});
    for (int j = 0; j + 1 < k; ++j)
        out.edges.push_back(GraphEdge{PortRef{pid(j), 3}, PortRef{pid(j + 1), 1}, c.chain[j].twist});
    for (int i = 0; i < g; ++i) {
        out.edges.push_back(GraphEdge{PortRef{hid(i), 2}, slot_port(i, k), c.handles[i].j});
        out.edges.push_back(GraphEdge{PortRef{hid(i), 3}, PortRef{hid(i), 1}, c.handles[i].h});
    }
    for (int b = 0; b < m; ++b) out.boundaries.push_back(GraphBoundary{slot_port(g + b, k), "C" + std::to_string(b + 1)});
    return out;
}

StandardCoords extract_coords(const GluingGraph& graph, const Tolerance& tol) {
    auto topo = graph.validate();
    const int g = topo.genus, m = topo.boundary, n = graph.n;
    if (m < 1) fail(ErrorKind::GraphInvalid, "standard layout needs at least one boundary component");
    auto bad = [](const std::string& why) { fail(ErrorKind::GraphInvalid, "graph is not in standard layout: " + why); };

    std::map<std::string, const GraphEdge*> loops, chain_next, attach;
    for (const auto& e : graph.edges) {
        if (e.cbar_side.node == e.c_side.node) {
            if (e.cbar_side.port != 3 || e.c_side.port != 1) bad("self-gluing must join port 3 to port 1");
            loops[e.cbar_side.node] = &e;
        }
    }
    if (static_cast<int>(loops.size()) != g) bad("expected one self-glued pants per handle");
    std::vector<std::string> chain_nodes;
    for (const auto& nd : graph.nodes)
        if (!loops.count(nd.id)) chain_nodes.push_back(nd.id);
    const int k = static_cast<int>(chain_nodes.size());
    if (k != g + m - 2) bad("wrong number of chain pants");
    std::set<std::string> chain_set(chain_nodes.begin(), chain_nodes.end());
    std::map<std::string, std::string> pred;
    for (const auto& e : graph.edges) {
        if (e.cbar_side.node == e.c_side.node) continue;
        bool hb = loops.count(e.cbar_side.node) > 0, hc = loops.count(e.c_side.node) > 0;
        if (hb && hc) bad("two handle pants glued together");
        if (hc) bad("handle pants must be the cbar side of its attachment");
        if (hb) {
            if (e.cbar_side.port != 2) bad("handle pants attach through port 2");
            attach[e.c_side.str()] = &e;
            continue;
        }
        if (e.cbar_side.port != 3 || e.c_side.port != 1) bad("chain pants must be glued port 3 to port 1");
        chain_next[e.cbar_side.node] = &e;
        pred[e.c_side.node] = e.cbar_side.node;
    }
    std::vector<std::string> order;
    if (k > 0) {
        std::string first;
        for (const auto& id : chain_nodes)
            if (!pred.count(id)) {
                if (!first.empty()) bad("chain has more than one start");
                first = id;
            }
        if (first.empty()) bad("chain is cyclic");
        for (std::string cur = first;;) {
            order.push_back(cur);
            auto it = chain_next.find(cur);
            if (it == chain_next.end()) break;
            cur = it->second->c_side.node;
            if (static_cast<int>(order.size()) > k) bad("chain is cyclic");
        }
        if (static_cast<int>(order.size()) != k) bad("chain is not a single path");
    }

    auto params_of = [&](const std::string& id) -> const PantsParams& { return graph.node(id).params; };
    std::vector<std::string> handle_order;
    StandardCoords c;
    c.genus = g;
    c.boundary = m;
    c.n = n;
    auto handle_coords = [&](const std::string& hnode, const Mat& j) {
        const PantsParams& p = params_of(hnode);
        Mat yi = p.x1.inverse();
        Mat mm = symmetrize(yi.transpose() * pants_product(p) * yi);
        return HandleCoords{p.x1, loops.at(hnode)->twist, mm, j};
    };
    if (k == 0) {
        if (g != 1 || m != 1) bad("empty chain");
        const std::string& h = loops.begin()->first;
        if (!(graph.boundaries.front().port == PortRef{h, 2})) bad("boundary must sit at port 2");
        c.handles.push_back(handle_coords(h, Mat::Identity(n, n)));
        handle_order.push_back(h);
    } else {
        auto slot = [&](int s) {
            if (s == 0) return PortRef{order[0], 1};
            if (s <= k) return PortRef{order[s - 1], 2};
            return PortRef{order[k - 1], 3};
        };
        for (int s = 0; s < g + m; ++s) {
            PortRef p = slot(s);
            auto it = attach.find(p.str());
            if (s < g) {
                if (it == attach.end()) bad("slot " + p.str() + " should carry a handle");
                c.handles.push_back(handle_coords(it->second->cbar_side.node, it->second->twist));
                handle_order.push_back(it->second->cbar_side.node);
            } else {
                if (it != attach.end()) bad("slot " + p.str() + " should be a boundary");
                if (s + 1 < g + m) c.free_lengths.push_back(p.port == 1 ? params_of(p.node).x1 : params_of(p.node).x2);
            }
        }
        for (int j = 0; j < k; ++j) {
            Mat tw = j + 1 < k ? chain_next.at(order[j])->twist : Mat::Identity(n, n);
            c.chain.push_back(ChainCoords{symmetrize(pants_product(params_of(order[j]))), tw});
        }
    }

    // the coordinates must reproduce the graph
    GluingGraph re = realize(c);
    const double band = std::sqrt(tol.eq_tol);
    auto compare = [&](const PantsParams& a, const PantsParams& b, const std::string& id) {
        for (int i = 0; i < 3; ++i)
            if (rel_residual(a[i], b[i]) > band)
                fail(ErrorKind::GraphInvalid, "node '" + id + "' is inconsistent with the twists at its ports");
    };
    for (int j = 0; j < k; ++j) compare(re.nodes[j].params, params_of(order[j]), order[j]);
    for (int i = 0; i < g; ++i) compare(re.nodes[k + i].params, params_of(handle_order[i]), handle_order[i]);
    return c;
}

std::vector<int> component_signature(const StandardCoords& c, const Tolerance& tol) {
    check_coords(c);
    auto sgn = [&](const Mat& a, const std::string& what) {
        if (condition_number(a) > 1.0 / tol.eq_tol) fail(ErrorKind::NearSingularDet, what + " is nearly singular");
        return a.determinant() > 0 ? 1 : -1;
    };
    std::vector<int> out;
    for (int i = 0; i < c.genus; ++i) {
        out.push_back(sgn(c.handles[i].y, "handle length " + std::to_string(i + 1)));
        out.push_back(sgn(c.handles[i].h, "handle twist " + std::to_string(i + 1)));
    }
    for (std::size_t j = 0; j < c.free_lengths.size(); ++j)
        out.push_back(sgn(c.free_lengths[j], "boundary length " + std::to_string(j + 1)));
    return out;
}

std::vector<int> component_signature(const GluingGraph& graph, const Tolerance& tol) {
    return component_signature(extract_coords(graph, tol), tol);
}

std::vector<int> component_signature(const SurfaceRep& rep, const Tolerance& tol) {
    return component_signature(rep.graph, tol);
}

GluingGraph standard_representative(int g, int m, int n, const std::vector<int>& signs) {
    StandardCoords c = standard_coords_template(g, m, n);
    if (static_cast<int>(signs.size()) != 2 * g + m - 1)
        fail(ErrorKind::InvalidArgument, "expected " + std::to_string(2 * g + m - 1) + " signs");
    for (int s : signs)
        if (s != 1 && s != -1) fail(ErrorKind::InvalidArgument, "signs must be +1 or -1");
    for (int i = 0; i < g; ++i) {
        c.handles[i].y = standard_length(n, signs[2 * i]);
        c.handles[i].h = standard_twist(n, signs[2 * i + 1]);
    }
    for (int j = 0; j + 1 < m; ++j) c.free_lengths[j] = standard_length(n, signs[2 * g + j]);
    return realize(c);
}

int component_count(int g, int m) {
    check_standard_topology(g, m);
    return 1 << (2 * g + m - 1);
}

}  // namespace maxrep
