#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "maxrep/cli.hpp"
#include "maxrep/repfile.hpp"

using namespace maxrep;

namespace {

const std::string kData = MAXREP_DATA_DIR;

std::string data(const std::string& f) { return kData + "/" + f; }

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("maxrep_cli_" + name)).string();
}

std::string field(const std::string& text, const std::string& key) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
    return "";
}

}  // namespace

TEST(Cli, BuildPants) {
    Result r = run({"build", data("pants_half.rep")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(field(r.out, "status"), "ok");
    EXPECT_EQ(field(r.out, "node P1"), "InRStar");
    EXPECT_EQ(field(r.out, "toledo"), "1");
}

TEST(Cli, MalformedRowIsParseError) {
    Result r = run({"build", data("malformed.rep")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("malformed.rep:14:"), std::string::npos) << r.err;
}

TEST(Cli, UnitModulusEdgeRefused) {
    Result r = run({"build", data("unit_modulus.rep")});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("CannotGlue"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("P2.3"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate", "x"}).code, 2);
    EXPECT_EQ(run({"build"}).code, 2);
    EXPECT_EQ(run({"build", data("pants_half.rep"), "--tol", "-1"}).code, 2);
    EXPECT_EQ(run({"build", data("no_such_file.rep")}).code, 2);
}

TEST(Cli, Toledo) {
    Result r = run({"toledo", data("pants_half.rep")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("T = 1\n"), std::string::npos) << r.out;
    Result h = run({"toledo", data("four_holed.rep")});
    EXPECT_EQ(h.code, 0) << h.err;
    EXPECT_NE(h.out.find("T = 2\n"), std::string::npos) << h.out;
    EXPECT_EQ(field(h.out, "surface_T"), "2");
}

TEST(Cli, Maslov) {
    Result r = run({"maslov", data("maslov_std2.rep")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(field(r.out, "maslov"), "2");
    EXPECT_EQ(field(r.out, "maximal"), "true");
}

TEST(Cli, Components) {
    Result r = run({"components", data("handle11_plus.rep")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(field(r.out, "signature"), "(+,+)");
    EXPECT_EQ(field(r.out, "components"), "4");
}

TEST(Cli, BuildThenVerify) {
    std::string out = temp_path("built.rep");
    Result b = run({"build", data("four_holed.rep"), "--out", out});
    ASSERT_EQ(b.code, 0) << b.err;
    Result v1 = run({"verify", data("four_holed.rep")});
    Result v2 = run({"verify", out});
    EXPECT_EQ(v1.code, 0) << v1.err;
    EXPECT_EQ(v2.code, 0) << v2.err;
    EXPECT_EQ(field(v2.out, "source"), "generators");
    EXPECT_EQ(field(v1.out, "relation_residual"), field(v2.out, "relation_residual"));
    std::remove(out.c_str());
}

TEST(Cli, VerifyRejectsBrokenRelation) {
    std::string out = temp_path("broken.rep");
    ASSERT_EQ(run({"build", data("pants_half.rep"), "--out", out}).code, 0);
    RepFile f = read_repfile(out);
    f.generators[0].second(0, 1) += 0.25;
    std::ofstream(out) << format_repfile(f);
    Result v = run({"verify", out});
    EXPECT_EQ(v.code, 3) << v.out;
    EXPECT_EQ(field(v.out, "status"), "fail");
    std::remove(out.c_str());
}

TEST(Cli, Glue) {
    std::string out = temp_path("glued.rep");
    Result r = run({"glue", data("pants_half.rep"), data("pants_half.rep"), "--c", "C1", "--cbar", "C3", "--out", out});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(field(r.out, "boundary"), "4");
    EXPECT_EQ(field(r.out, "toledo"), "2");
    Result v = run({"verify", out});
    EXPECT_EQ(v.code, 0) << v.err;
    Result h = run({"glue", data("pants_half.rep"), "--c", "C1", "--cbar", "C3"});
    EXPECT_EQ(h.code, 0) << h.err;
    EXPECT_EQ(field(h.out, "genus"), "1");
    EXPECT_EQ(run({"glue", data("pants_half.rep"), "--c", "C9", "--cbar", "C3"}).code, 3);
    std::remove(out.c_str());
}

TEST(Cli, Deform) {
    std::string out = temp_path("deform.txt");
    Result r = run({"deform", data("four_holed.rep"), "--steps", "10", "--out", out});
    EXPECT_EQ(r.code, 0) << r.err;
    std::ifstream is(out);
    std::stringstream ss;
    ss << is.rdbuf();
    std::string text = ss.str();
    std::size_t count = 0;
    for (std::size_t p = text.find("# snapshot"); p != std::string::npos; p = text.find("# snapshot", p + 1)) ++count;
    EXPECT_EQ(count, 11u);
    std::remove(out.c_str());
}

TEST(Cli, Limits) {
    Result r = run({"limits", data("pants_half.rep"), "--max-word-length", "3", "--json"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"non_transverse_pairs\": 0"), std::string::npos) << r.out;
}

TEST(Cli, ToleranceResolution) {
    double flag = 1e-7, file = 1e-11;
    EXPECT_EQ(cli::resolve_eq_tol(&flag, "1e-8", &file), 1e-7);
    EXPECT_EQ(cli::resolve_eq_tol(nullptr, "1e-8", &file), 1e-8);
    EXPECT_EQ(cli::resolve_eq_tol(nullptr, "", &file), 1e-11);
    EXPECT_EQ(cli::resolve_eq_tol(nullptr, nullptr, nullptr), Tolerance{}.eq_tol);
    EXPECT_THROW(cli::resolve_eq_tol(nullptr, "tiny", nullptr), Error);
}

TEST(Cli, BinaryExitCode) {
    std::string cmd = std::string("\"") + MAXREP_CLI + "\" build \"" + data("malformed.rep") + "\" 2>/dev/null";
    int status = std::system(cmd.c_str());
    ASSERT_NE(status, -1);
    EXPECT_EQ(WEXITSTATUS(status), 2);
}
