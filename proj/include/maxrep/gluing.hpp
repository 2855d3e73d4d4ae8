#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxrep/pants.hpp"

namespace maxrep {

struct TwistParam {
    Mat g;
};

// (Xbar^-T, -Xbar^-T - Sbar Xbar; 0, Xbar)
SpMat cbar_form(const Mat& xbar, const Mat& sbar);

struct BoundaryForm {
    Mat x;
    Mat s;
};
// read (X, S) from an element fixing 0, resp. (Xbar, Sbar) from one fixing infinity
BoundaryForm read_c_form(const SpMat& c, const Tolerance& tol = {});
BoundaryForm read_cbar_form(const SpMat& cbar, const Tolerance& tol = {});

enum class GlueStatus { Gluable, NotSimilar, UnitModulusObstruction };
const char* to_string(GlueStatus s);
struct GlueCheck {
    GlueStatus status = GlueStatus::NotSimilar;
    std::optional<Mat> witness;  // G with G X^T G^-1 = Xbar
};
GlueCheck can_glue(const Mat& x, const Mat& xbar, const Tolerance& tol = {});

SpMat twist_element(const Mat& x, const Mat& s, const Mat& xbar, const Mat& sbar, const TwistParam& g,
                    const Tolerance& tol = {});
// relative residual of g c^-1 g^-1 against cbar
double twist_conjugation_residual(const SpMat& g, const SpMat& c, const SpMat& cbar);

// Ports of a pair of pants are 1, 2, 3. The effective boundary length of
// port p is X1, -X2, X3 respectively; the c-side chart moves the fixed point
// of c_p to 0, the cbar-side chart moves it to infinity.
Mat boundary_length(const PantsParams& p, int port);
SpMat port_chart_c(int n, int port);
SpMat port_chart_cbar(int n, int port);

struct PortRef {
    std::string node;
    int port = 1;
    std::string str() const { return node + "." + std::to_string(port); }
    friend bool operator==(const PortRef& a, const PortRef& b) { return a.node == b.node && a.port == b.port; }
};

struct PantsNode {
    std::string id;
    PantsParams params;
};

// the cbar side carries L_cbar = G L_c^T G^-1
struct GraphEdge {
    PortRef cbar_side;
    PortRef c_side;
    Mat twist;
};

struct GraphBoundary {
    PortRef port;
    std::string id;
};

struct GluingGraph {
    int n = 0;
    std::vector<PantsNode> nodes;
    std::vector<GraphEdge> edges;
    std::vector<GraphBoundary> boundaries;

    struct Topology {
        int genus = 0;
        int boundary = 0;
    };
    Topology validate() const;  // throws GraphInvalid
    const PantsNode& node(const std::string& id) const;
    int node_index(const std::string& id) const;
};

struct Handle {
    SpMat a, b;
};

struct BoundarySlot {
    SpMat image;
    SpMat c_chart;     // c_chart image c_chart^-1 fixes 0
    SpMat cbar_chart;  // cbar_chart image cbar_chart^-1 fixes infinity
    std::string id;
    PortRef origin;
};

// Pants subgroup image: rep = conj build_maximal(params) conj^-1.
struct PantsPiece {
    std::string id;
    PantsParams params;
    PantsRep rep;
    SpMat conj;
};

struct SurfaceRep {
    int n = 0;
    GluingGraph graph;
    std::vector<Handle> handles;           // handles[0] = (A1, B1)
    std::vector<BoundarySlot> boundaries;  // boundaries[0] = C1
    std::vector<PantsPiece> pieces;

    int genus() const { return static_cast<int>(handles.size()); }
    int boundary_count() const { return static_cast<int>(boundaries.size()); }
    std::vector<std::pair<std::string, SpMat>> generators() const;
    // ||[A_g,B_g]...[A_1,B_1] C_m...C_1 - I||_inf
    double relation_residual() const;
    int boundary_index(const std::string& id) const;  // -1 if absent
};

double relation_residual(const std::vector<std::pair<std::string, SpMat>>& gens, int genus, int boundary);

SurfaceRep pants_surface(const PantsNode& node, const Tolerance& tol = {});
// toledo summed over the pants pieces, each evaluated at its fixed points
HalfInteger surface_toledo(const SurfaceRep& rep, const Tolerance& tol = {});

// Glue boundary c_index of rep1 (c side) to boundary cbar_index of rep2
// (cbar side); rep2 is conjugated so that its boundary becomes the inverse.
SurfaceRep glue_reps(const SurfaceRep& rep1, int c_index, const SurfaceRep& rep2, int cbar_index,
                     const std::optional<TwistParam>& twist, const Tolerance& tol = {});
SurfaceRep glue_reps_oriented(const SurfaceRep& rep1, int index1, bool rep1_is_c_side, const SurfaceRep& rep2,
                              int index2, const std::optional<TwistParam>& twist, const Tolerance& tol = {});
// Identify two boundaries of one representation (adds a handle).
SurfaceRep close_boundaries(const SurfaceRep& rep, int c_index, int cbar_index, const std::optional<TwistParam>& twist,
                            const Tolerance& tol = {});
SurfaceRep close_handle(const Mat& x1, const Mat& x2, const TwistParam& g, const Tolerance& tol = {});

// trace-word fingerprint of generator images (words in generators and inverses)
Vec surface_fingerprint(const SurfaceRep& rep, int max_len);

}  // namespace maxrep
