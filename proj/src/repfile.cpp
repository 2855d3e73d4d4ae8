#include "maxrep/repfile.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace maxrep {

namespace {

struct Token {
    std::string text;
    int col = 0;
};

struct Line {
    int no = 0;
    std::vector<Token> tokens;
};

std::vector<Line> lex(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        Line l{no, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            if (i >= raw.size()) break;
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            l.tokens.push_back(Token{raw.substr(i, j - i), static_cast<int>(i) + 1});
            i = j;
        }
        if (!l.tokens.empty()) out.push_back(std::move(l));
    }
    return out;
}

// sign, significant digits and exponent e with value 0.digits * 10^e
struct Decimal {
    bool neg = false;
    std::string digits;
    long exp = 0;
    friend bool operator==(const Decimal& a, const Decimal& b) {
        if (a.digits.empty() && b.digits.empty()) return a.neg == b.neg;
        return a.neg == b.neg && a.digits == b.digits && a.exp == b.exp;
    }
};

std::optional<Decimal> decimal_of(const std::string& s) {
    Decimal d;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) d.neg = s[i++] == '-';
    std::string intpart, frac;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) intpart += s[i++];
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) frac += s[i++];
    }
    if (intpart.empty() && frac.empty()) return std::nullopt;
    long e10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
        std::string ed;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed += s[i++];
        if (ed.empty() || ed.size() > 6) return std::nullopt;
        e10 = std::stol(ed) * (eneg ? -1 : 1);
    }
    if (i != s.size()) return std::nullopt;
    std::string all = intpart + frac;
    long e = static_cast<long>(intpart.size()) + e10;
    std::size_t lead = all.find_first_not_of('0');
    if (lead == std::string::npos) {
        d.digits.clear();
        return d;
    }
    all = all.substr(lead);
    e -= static_cast<long>(lead);
    all.erase(all.find_last_not_of('0') + 1);
    d.digits = all;
    d.exp = e;
    return d;
}

class Parser {
public:
    Parser(const std::string& text, bool strict, std::string source)
        : lines_(lex(text)), strict_(strict), source_(std::move(source)) {}

    RepFile run() {
        RepFile f;
        bool header = false;
        while (pos_ < lines_.size()) {
            const Line& l = lines_[pos_++];
            const std::string& kw = l.tokens[0].text;
            if (!header) {
                if (kw != "maxrep") error(l, 0, "file must start with 'maxrep <version>'");
                need(l, 2);
                f.version = integer(l, 1);
                if (f.version != 1) error(l, 1, "unsupported format version");
                header = true;
                continue;
            }
            if (kw == "n") {
                need(l, 2);
                f.n = integer(l, 1);
                if (f.n < 1) error(l, 1, "n must be positive");
                n_ = f.n;
            } else if (kw == "surface") {
                need(l, 3);
                f.surface = std::make_pair(integer(l, 1), integer(l, 2));
            } else if (kw == "option") {
                need(l, 3);
                if (l.tokens[1].text != "eq_tol") error(l, 1, "unknown option '" + l.tokens[1].text + "'");
                double t = number(l, 2);
                if (!(t > 0)) error(l, 2, "eq_tol must be positive");
                f.eq_tol = t;
            } else if (kw == "seed") {
                need(l, 2);
                f.seed = static_cast<std::uint64_t>(integer(l, 1));
            } else if (kw == "pants") {
                need(l, 2);
                require_n(l);
                PantsNode nd;
                nd.id = l.tokens[1].text;
                Mat x[3];
                for (int i = 0; i < 3; ++i) {
                    const Line& h = next(l, "X" + std::to_string(i + 1));
                    if (h.tokens.size() != 1 || h.tokens[0].text != "X" + std::to_string(i + 1))
                        error(h, 0, "expected 'X" + std::to_string(i + 1) + "'");
                    x[i] = matrix(h, n_, n_);
                }
                expect_end(l);
                nd.params = PantsParams{x[0], x[1], x[2]};
                f.graph.nodes.push_back(std::move(nd));
            } else if (kw == "edge") {
                need(l, 3);
                require_n(l);
                GraphEdge e{port(l, 1), port(l, 2), matrix(l, n_, n_)};
                expect_end(l);
                f.graph.edges.push_back(std::move(e));
            } else if (kw == "boundary") {
                need(l, 3);
                f.graph.boundaries.push_back(GraphBoundary{port(l, 1), l.tokens[2].text});
            } else if (kw == "generator") {
                need(l, 2);
                require_n(l);
                Mat g = matrix(l, 2 * n_, 2 * n_);
                expect_end(l);
                f.generators.emplace_back(l.tokens[1].text, g);
            } else if (kw == "point") {
                require_n(l);
                if (l.tokens.size() == 2 && l.tokens[1].text == "inf") {
                    f.points.push_back(BoundaryPoint::infinity(n_));
                    continue;
                }
                if (l.tokens.size() != 1) error(l, 1, "expected 'point' or 'point inf'");
                Mat y = matrix(l, n_, n_);
                expect_end(l);
                if (symmetry_defect(y) > 1e-12 * std::max(1.0, inf_norm(y))) error(l, 0, "point is not symmetric");
                f.points.push_back(BoundaryPoint::finite(SymMat::unchecked(symmetrize(y))));
            } else {
                error(l, 0, "unknown keyword '" + kw + "'");
            }
        }
        if (!header) fail(ErrorKind::Parse, source_ + ": empty file");
        f.graph.n = f.n;
        if (!f.graph.nodes.empty()) {
            auto t = f.graph.validate();
            if (f.surface && (f.surface->first != t.genus || f.surface->second != t.boundary)) {
                std::ostringstream os;
                os << source_ << ": surface line says (" << f.surface->first << ", " << f.surface->second
                   << ") but the graph has genus " << t.genus << " and " << t.boundary << " boundary components";
                fail(ErrorKind::GraphInvalid, os.str());
            }
        }
        return f;
    }

private:
    [[noreturn]] void error(const Line& l, std::size_t tok, const std::string& msg) const {
        int col = tok < l.tokens.size() ? l.tokens[tok].col : 1;
        fail(ErrorKind::Parse, source_ + ":" + std::to_string(l.no) + ":" + std::to_string(col) + ": " + msg);
    }

    void need(const Line& l, std::size_t k) const {
        if (l.tokens.size() < k) error(l, l.tokens.size() - 1, "missing argument to '" + l.tokens[0].text + "'");
        if (l.tokens.size() > k) error(l, k, "unexpected token '" + l.tokens[k].text + "'");
    }

    void require_n(const Line& l) const {
        if (n_ == 0) error(l, 0, "'n' must be given before matrix blocks");
    }

    const Line& next(const Line& opener, const std::string& what) {
        if (pos_ >= lines_.size()) error(opener, 0, "unexpected end of file, expected " + what);
        return lines_[pos_++];
    }

    void expect_end(const Line& opener) {
        const Line& l = next(opener, "'end'");
        if (l.tokens.size() != 1 || l.tokens[0].text != "end") error(l, 0, "expected 'end'");
    }

    int integer(const Line& l, std::size_t t) const {
        const std::string& s = l.tokens[t].text;
        int v = 0;
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size()) error(l, t, "expected an integer, got '" + s + "'");
        return v;
    }

    double number(const Line& l, std::size_t t) const {
        const std::string& s = l.tokens[t].text;
        const char* b = s.data();
        const char* e = s.data() + s.size();
        if (b != e && *b == '+') ++b;
        double v = 0;
        auto r = std::from_chars(b, e, v);
        if (r.ec != std::errc() || r.ptr != e || !decimal_of(s)) error(l, t, "expected a number, got '" + s + "'");
        if (!std::isfinite(v)) error(l, t, "number is not finite");
        if (strict_ && !is_shortest_spelling(s, v))
            error(l, t, "'" + s + "' is not the shortest round-trip spelling " + format_number(v));
        return v;
    }

    PortRef port(const Line& l, std::size_t t) const {
        const std::string& s = l.tokens[t].text;
        auto dot = s.rfind('.');
        if (dot == std::string::npos || dot == 0 || dot + 2 != s.size() || s[dot + 1] < '1' || s[dot + 1] > '3')
            error(l, t, "expected a port NODE.1, NODE.2 or NODE.3, got '" + s + "'");
        return PortRef{s.substr(0, dot), s[dot + 1] - '0'};
    }

    Mat matrix(const Line& opener, int rows, int cols) {
        Mat m(rows, cols);
        for (int i = 0; i < rows; ++i) {
            const Line& l = next(opener, "a matrix row");
            if (static_cast<int>(l.tokens.size()) != cols) {
                std::ostringstream os;
                os << "expected " << cols << " entries in matrix row, got " << l.tokens.size();
                error(l, std::min<std::size_t>(l.tokens.size(), static_cast<std::size_t>(cols)), os.str());
            }
            for (int j = 0; j < cols; ++j) m(i, j) = number(l, static_cast<std::size_t>(j));
        }
        return m;
    }

    std::vector<Line> lines_;
    std::size_t pos_ = 0;
    bool strict_ = false;
    std::string source_;
    int n_ = 0;
};

}  // namespace

bool is_shortest_spelling(const std::string& token, double value) {
    auto a = decimal_of(token);
    auto b = decimal_of(format_number(value));
    return a && b && *a == *b;
}

RepFile parse_repfile(const std::string& text, bool strict, const std::string& source) {
    return Parser(text, strict, source).run();
}

RepFile read_repfile(const std::string& path, bool strict) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Parse, path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_repfile(ss.str(), strict, path);
}

std::string format_number(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string format_matrix(const Mat& m, const std::string& indent) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += indent;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out += ' ';
            out += format_number(m(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string format_repfile(const RepFile& f) {
    std::ostringstream os;
    os << "maxrep " << f.version << "\n";
    os << "n " << f.n << "\n";
    if (f.surface) os << "surface " << f.surface->first << " " << f.surface->second << "\n";
    if (f.eq_tol) os << "option eq_tol " << format_number(*f.eq_tol) << "\n";
    if (f.seed) os << "seed " << *f.seed << "\n";
    for (const auto& nd : f.graph.nodes) {
        os << "\npants " << nd.id << "\n";
        for (int i = 0; i < 3; ++i) os << "X" << i + 1 << "\n" << format_matrix(nd.params[i], "  ");
        os << "end\n";
    }
    for (const auto& e : f.graph.edges) os << "\nedge " << e.cbar_side.str() << " " << e.c_side.str() << "\n"
                                           << format_matrix(e.twist, "  ") << "end\n";
    if (!f.graph.boundaries.empty()) os << "\n";
    for (const auto& b : f.graph.boundaries) os << "boundary " << b.port.str() << " " << b.id << "\n";
    for (const auto& [name, g] : f.generators) os << "\ngenerator " << name << "\n" << format_matrix(g, "  ") << "end\n";
    for (const auto& p : f.points) {
        if (p.is_infinite())
            os << "\npoint inf\n";
        else
            os << "\npoint\n" << format_matrix(p.value(), "  ") << "end\n";
    }
    return os.str();
}

}  // namespace maxrep
