#include "maxrep/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

#include "maxrep/deform.hpp"
#include "maxrep/graph.hpp"
#include "maxrep/limits.hpp"
#include "maxrep/repfile.hpp"

namespace maxrep::cli {

namespace {

using Value = std::variant<std::string, double, long, bool, Mat>;

class Report {
public:
    template <class T>
    void add(const std::string& key, T v) {
        if constexpr (std::is_same_v<T, int>)
            items_.emplace_back(key, Value(static_cast<long>(v)));
        else if constexpr (std::is_same_v<T, const char*>)
            items_.emplace_back(key, Value(std::string(v)));
        else
            items_.emplace_back(key, Value(std::move(v)));
    }

    void print(std::ostream& os, bool json) const {
        if (json) {
            nlohmann::ordered_json j = nlohmann::ordered_json::object();
            for (const auto& [k, v] : items_) j[k] = to_json(v);
            os << j.dump(2) << "\n";
            return;
        }
        for (const auto& [k, v] : items_) {
            if (const Mat* m = std::get_if<Mat>(&v)) {
                os << k << ":\n" << format_matrix(*m, "  ");
                continue;
            }
            os << k << ": " << text(v) << "\n";
        }
    }

private:
    static std::string text(const Value& v) {
        if (auto s = std::get_if<std::string>(&v)) return *s;
        if (auto d = std::get_if<double>(&v)) return format_number(*d);
        if (auto l = std::get_if<long>(&v)) return std::to_string(*l);
        return std::get<bool>(v) ? "true" : "false";
    }

    static nlohmann::ordered_json to_json(const Value& v) {
        if (auto s = std::get_if<std::string>(&v)) return *s;
        if (auto d = std::get_if<double>(&v)) return *d;
        if (auto l = std::get_if<long>(&v)) return *l;
        if (auto b = std::get_if<bool>(&v)) return *b;
        const Mat& m = std::get<Mat>(v);
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (Eigen::Index c = 0; c < m.cols(); ++c) r.push_back(m(i, c));
            rows.push_back(r);
        }
        return rows;
    }

    std::vector<std::pair<std::string, Value>> items_;
};

struct Options {
    std::vector<std::string> files;
    double tol = 0;
    bool tol_set = false;
    std::uint64_t seed = 1;
    bool seed_set = false;
    int steps = 100;
    int max_word_length = 4;
    std::string out;
    bool json = false;
    bool strict = false;
    std::string c_boundary, cbar_boundary;
};

std::string sign_vector(const std::vector<int>& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += s[i] > 0 ? "+" : "-";
    }
    return out + ")";
}

Tolerance tolerance_for(const Options& o, const RepFile& f) {
    Tolerance t;
    const char* env = std::getenv("MAXREP_TOL");
    std::optional<double> fe = f.eq_tol;
    t.eq_tol = resolve_eq_tol(o.tol_set ? &o.tol : nullptr, env, fe ? &*fe : nullptr);
    t.series_tol = std::min(t.series_tol, t.eq_tol);
    t.validate();
    return t;
}

struct Loaded {
    RepFile file;
    Tolerance tol;
};

Loaded load(const Options& o, std::size_t idx = 0) {
    if (o.files.size() <= idx) fail(ErrorKind::Parse, "missing input file");
    Loaded l;
    l.file = read_repfile(o.files[idx], o.strict);
    l.tol = tolerance_for(o, l.file);
    return l;
}

void require_graph(const RepFile& f, const std::string& path) {
    if (f.graph.nodes.empty()) fail(ErrorKind::GraphInvalid, path + ": file has no pants nodes");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) fail(ErrorKind::InvalidArgument, "cannot write " + path);
    os << text;
}

RepFile rep_to_file(const SurfaceRep& rep, const RepFile& base) {
    RepFile out;
    out.n = rep.n;
    out.surface = std::make_pair(rep.genus(), rep.boundary_count());
    out.eq_tol = base.eq_tol;
    out.seed = base.seed;
    out.graph = rep.graph;
    for (const auto& [name, g] : rep.generators()) out.generators.emplace_back(name, g.full());
    return out;
}

void node_report(Report& r, const GluingGraph& g, const Tolerance& tol) {
    for (const auto& nd : g.nodes) r.add("node " + nd.id, std::string(to_string(classify_params(nd.params, tol))));
}

void rep_report(Report& r, const SurfaceRep& rep, const Tolerance& tol) {
    r.add("n", rep.n);
    r.add("genus", rep.genus());
    r.add("boundary", rep.boundary_count());
    node_report(r, rep.graph, tol);
    HalfInteger t = surface_toledo(rep, tol);
    r.add("toledo", t.str());
    r.add("toledo_bound", rep.n * (2 * rep.genus() - 2 + rep.boundary_count()));
    r.add("relation_residual", rep.relation_residual());
    for (std::size_t j = 0; j < rep.boundaries.size(); ++j)
        r.add("boundary C" + std::to_string(j + 1), rep.boundaries[j].id);
    for (const auto& [name, g] : rep.generators()) r.add("generator " + name, g.full());
}

int cmd_build(const Options& o, std::ostream& out) {
    Loaded l = load(o);
    require_graph(l.file, o.files[0]);
    SurfaceRep rep = build_from_graph(l.file.graph, l.tol);
    Report r;
    r.add("command", "build");
    r.add("status", "ok");
    rep_report(r, rep, l.tol);
    if (!o.out.empty()) {
        write_file(o.out, format_repfile(rep_to_file(rep, l.file)));
        r.add("written", o.out);
    }
    r.print(out, o.json);
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    Loaded l = load(o);
    std::vector<std::pair<std::string, SpMat>> gens;
    std::string source = "generators";
    if (l.file.generators.empty()) {
        require_graph(l.file, o.files[0]);
        gens = build_from_graph(l.file.graph, l.tol).generators();
        source = "graph";
    } else {
        for (const auto& [name, m] : l.file.generators) {
            if (m.rows() != 2 * l.file.n) fail(ErrorKind::Parse, "generator " + name + " has the wrong size");
            gens.emplace_back(name, SpMat::from_full_unchecked(m));
        }
    }
    int g = 0, m = 0;
    for (const auto& kv : gens) {
        if (kv.first[0] == 'A') ++g;
        if (kv.first[0] == 'C') ++m;
    }
    double defect = 0, scale = 1;
    for (const auto& kv : gens) {
        const SpMat& x = kv.second;
        defect = std::max(defect, symplectic_defect(x.a(), x.b(), x.c(), x.d()).worst);
        scale = std::max(scale, inf_norm(x.full()));
    }
    double res = relation_residual(gens, g, m);
    bool ok = res <= std::sqrt(l.tol.eq_tol) * scale * scale && defect <= std::sqrt(l.tol.eq_tol);
    Report r;
    r.add("command", "verify");
    r.add("status", ok ? "ok" : "fail");
    r.add("source", source);
    r.add("genus", g);
    r.add("boundary", m);
    r.add("relation_residual", res);
    r.add("symplectic_defect", defect);
    r.print(out, o.json);
    return ok ? 0 : exit_code_for(ErrorKind::NotValid);
}

int cmd_toledo(const Options& o, std::ostream& out) {
    Loaded l = load(o);
    require_graph(l.file, o.files[0]);
    const int n = l.file.n;
    Report r;
    r.add("command", "toledo");
    HalfInteger total;
    bool agree = true;
    for (const auto& nd : l.file.graph.nodes) {
        PantsRep rep = build_maximal(nd.params, l.tol);
        HalfInteger t = toledo(rep, standard_fixed_points(n, n, l.tol), l.tol);
        HalfInteger s = toledo_signature_shortcut(nd.params, l.tol);
        agree = agree && t == s;
        total = total + t;
        r.add("node " + nd.id, "T = " + t.str() + ", shortcut = " + s.str());
    }
    r.add("T", total.str());
    r.add("shortcut_agrees", agree);
    if (l.file.graph.edges.empty() && l.file.graph.nodes.size() == 1) {
        r.print(out, o.json);
        if (!o.json) out << "T = " << total.str() << "\n";
        return 0;
    }
    SurfaceRep rep = build_from_graph(l.file.graph, l.tol);
    r.add("surface_T", surface_toledo(rep, l.tol).str());
    r.print(out, o.json);
    if (!o.json) out << "T = " << total.str() << "\n";
    return 0;
}

int cmd_maslov(const Options& o, std::ostream& out) {
    Loaded l = load(o);
    const auto& p = l.file.points;
    if (p.size() != 3) fail(ErrorKind::InvalidArgument, "maslov needs exactly three points");
    Triple t(p[0], p[1], p[2], l.tol);
    int b = maslov(t, l.tol);
    Report r;
    r.add("command", "maslov");
    r.add("n", l.file.n);
    r.add("maslov", b);
    r.add("maximal", b == l.file.n);
    r.print(out, o.json);
    return 0;
}

int cmd_components(const Options& o, std::ostream& out) {
    Loaded l = load(o);
    require_graph(l.file, o.files[0]);
    auto topo = l.file.graph.validate();
    std::vector<int> s = component_signature(l.file.graph, l.tol);
    Report r;
    r.add("command", "components");
    r.add("genus", topo.genus);
    r.add("boundary", topo.boundary);
    r.add("signature", sign_vector(s));
    r.add("components", component_count(topo.genus, topo.boundary));
    r.print(out, o.json);
    return 0;
}

// relabel boundaries C1..Cm in relation order
void renumber_boundaries(SurfaceRep& rep) {
    std::vector<GraphBoundary> gb;
    for (std::size_t j = 0; j < rep.boundaries.size(); ++j) {
        rep.boundaries[j].id = "C" + std::to_string(j + 1);
        gb.push_back(GraphBoundary{rep.boundaries[j].origin, rep.boundaries[j].id});
    }
    rep.graph.boundaries = gb;
}

int boundary_or_fail(const SurfaceRep& rep, const std::string& id, const std::string& path) {
    int i = rep.boundary_index(id);
    if (i < 0) fail(ErrorKind::InvalidArgument, path + ": no boundary named '" + id + "'");
    return i;
}

int cmd_glue(const Options& o, std::ostream& out) {
    if (o.c_boundary.empty() || o.cbar_boundary.empty())
        fail(ErrorKind::InvalidArgument, "glue needs --c and --cbar boundary ids");
    Loaded l1 = load(o);
    require_graph(l1.file, o.files[0]);
    SurfaceRep r1 = build_from_graph(l1.file.graph, l1.tol);
    SurfaceRep glued;
    if (o.files.size() >= 2) {
        Loaded l2 = load(o, 1);
        require_graph(l2.file, o.files[1]);
        SurfaceRep r2 = build_from_graph(l2.file.graph, l1.tol);
        glued = glue_reps(r1, boundary_or_fail(r1, o.c_boundary, o.files[0]), r2,
                          boundary_or_fail(r2, o.cbar_boundary, o.files[1]), std::nullopt, l1.tol);
    } else {
        glued = close_boundaries(r1, boundary_or_fail(r1, o.c_boundary, o.files[0]),
                                 boundary_or_fail(r1, o.cbar_boundary, o.files[0]), std::nullopt, l1.tol);
    }
    renumber_boundaries(glued);
    Report r;
    r.add("command", "glue");
    r.add("status", "ok");
    r.add("twist", glued.graph.edges.back().twist);
    rep_report(r, glued, l1.tol);
    if (!o.out.empty()) {
        write_file(o.out, format_repfile(rep_to_file(glued, l1.file)));
        r.add("written", o.out);
    }
    r.print(out, o.json);
    return 0;
}

int cmd_deform(const Options& o, std::ostream& out) {
    Loaded l = load(o);
    require_graph(l.file, o.files[0]);
    DeformPath path = deform_to_standard(l.file.graph, o.steps, l.tol);
    bool constant = true, valid = true, maximal = true;
    for (const auto& g : path.snapshots) {
        if (component_signature(g, l.tol) != path.signature) constant = false;
        for (const auto& nd : g.nodes) {
            ParamClass c = classify_params(nd.params, l.tol);
            if (c != ParamClass::InR && c != ParamClass::InRStar) valid = false;
            else if (toledo_signature_shortcut(nd.params, l.tol).twice != 2 * l.file.n) maximal = false;
        }
    }
    Report r;
    r.add("command", "deform");
    r.add("steps", o.steps);
    r.add("snapshots", static_cast<long>(path.snapshots.size()));
    r.add("signature", sign_vector(path.signature));
    r.add("signature_constant", constant);
    r.add("snapshots_valid", valid);
    r.add("snapshots_maximal", maximal);
    if (!o.out.empty()) {
        std::ostringstream os;
        for (std::size_t s = 0; s < path.snapshots.size(); ++s) {
            RepFile f;
            f.n = l.file.n;
            f.graph = path.snapshots[s];
            auto t = f.graph.validate();
            f.surface = std::make_pair(t.genus, t.boundary);
            os << "# snapshot " << s << " t " << format_number(static_cast<double>(s) / o.steps) << "\n"
               << format_repfile(f) << "\n";
        }
        write_file(o.out, os.str());
        r.add("written", o.out);
    }
    r.print(out, o.json);
    return constant && valid ? 0 : exit_code_for(ErrorKind::IllConditioned);
}

int cmd_limits(const Options& o, std::ostream& out) {
    Loaded l = load(o);
    require_graph(l.file, o.files[0]);
    SurfaceRep rep = build_from_graph(l.file.graph, l.tol);
    LimitSampleOptions lo;
    lo.max_word_length = o.max_word_length;
    lo.seed = o.seed_set ? o.seed : l.file.seed.value_or(1);
    LimitSample s = limit_set_sample(rep, lo, l.tol);
    Report r;
    r.add("command", "limits");
    r.add("max_word_length", o.max_word_length);
    r.add("seed", static_cast<long>(lo.seed));
    r.add("points", static_cast<long>(s.points.size()));
    r.add("skipped_words", s.skipped_words);
    r.add("pairs_checked", s.pairs_checked);
    r.add("non_transverse_pairs", static_cast<long>(s.non_transverse.size()));
    r.add("min_pair_sigma", s.min_pair_sigma);
    r.add("transverse_fraction", s.transverse_fraction());
    r.add("triples_sampled", s.triples_sampled);
    r.add("maslov_failures", s.maslov_failures);
    for (const auto& [b, c] : s.beta_histogram) r.add("beta_abs " + std::to_string(b), c);
    r.add("maximal_fraction", s.maximal_fraction(rep.n));
    if (!o.out.empty()) {
        std::ostringstream os;
        os << "# |beta| histogram\n";
        for (const auto& [b, c] : s.beta_histogram) os << "beta " << b << " " << c << "\n";
        for (const auto& p : s.points) {
            os << "\nword " << p.name << "\n";
            if (p.point && p.point->is_infinite())
                os << "point inf\n";
            else if (p.point)
                os << "point\n" << format_matrix(p.point->value(), "  ") << "end\n";
            else
                os << "frame\n" << format_matrix(p.frame, "  ") << "end\n";
        }
        write_file(o.out, os.str());
        r.add("written", o.out);
    }
    r.print(out, o.json);
    return s.non_transverse.empty() ? 0 : exit_code_for(ErrorKind::NotTransverse);
}

}  // namespace

double resolve_eq_tol(const double* flag, const char* env, const double* file) {
    if (flag) return *flag;
    if (env && *env) {
        std::string s(env);
        double v = 0;
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !(v > 0))
            fail(ErrorKind::Parse, "MAXREP_TOL is not a positive number: '" + s + "'");
        return v;
    }
    if (file) return *file;
    return Tolerance{}.eq_tol;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maximal representations of surface groups into Sp(2n,R)", "maxrep"};
    app.require_subcommand(1);
    Options o;
    std::map<std::string, int (*)(const Options&, std::ostream&)> cmds = {
        {"build", cmd_build},   {"verify", cmd_verify},         {"toledo", cmd_toledo}, {"maslov", cmd_maslov},
        {"components", cmd_components}, {"glue", cmd_glue}, {"deform", cmd_deform}, {"limits", cmd_limits},
    };
    std::map<std::string, const char*> help = {
        {"build", "build generator images from a gluing graph"},
        {"verify", "check the surface relation of generator images"},
        {"toledo", "toledo invariant of each pants and of the surface"},
        {"maslov", "maslov index of three boundary points"},
        {"components", "component signature of a standard graph"},
        {"glue", "glue two files along boundaries, or close two boundaries of one file"},
        {"deform", "deform a standard graph to its standard representative"},
        {"limits", "sample attracting fixed points of words"},
    };
    double tol = 0;
    for (const auto& [name, fn] : cmds) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("files", o.files, "input files")->required();
        sub->add_option("--tol", tol, "equality tolerance")->check(CLI::PositiveNumber)->each([&](const std::string&) {
            o.tol_set = true;
        });
        sub->add_option("--seed", o.seed, "seed for randomized probes")->each([&](const std::string&) { o.seed_set = true; });
        sub->add_option("--steps", o.steps, "deformation steps")->check(CLI::PositiveNumber);
        sub->add_option("--max-word-length", o.max_word_length, "word length bound")->check(CLI::PositiveNumber);
        sub->add_option("--out", o.out, "output file");
        sub->add_flag("--json", o.json, "structured output");
        sub->add_flag("--strict", o.strict, "reject numbers that are not shortest round-trip spellings");
        if (name == "glue") {
            sub->add_option("--c", o.c_boundary, "boundary id on the c side (first file)");
            sub->add_option("--cbar", o.cbar_boundary, "boundary id on the cbar side");
        }
    }
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        return exit_code_for(ErrorKind::Parse);
    }
    o.tol = tol;
    for (const auto& [name, fn] : cmds) {
        if (!app.got_subcommand(name)) continue;
        try {
            return fn(o, out);
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return exit_code_for(e.kind());
        }
    }
    return exit_code_for(ErrorKind::Parse);
}

}  // namespace maxrep::cli
