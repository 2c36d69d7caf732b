#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bdk/cli.hpp"
#include "bdk/io.hpp"

using namespace bdk;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int c = run_cli(std::move(args), o, e);
    return {c, o.str(), e.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) v.push_back(l);
    return v;
}

double field(const std::string& line, int k) {
    std::istringstream is(line);
    std::string tok;
    for (int i = 0; i <= k; ++i) std::getline(is, tok, ',');
    return std::stod(tok);
}

const char* header = "a_re,a_im,b_re,b_im,order,value,tail,level";

} // namespace

TEST_CASE("invariants command") {
    auto r = run({"invariants", "-g", "z-w", "-p", "0,0", "-k", "0,1", "--level", "30"});
    REQUIRE(r.code == 0);
    auto l = lines(r.out);
    REQUIRE(l.size() == 3);
    CHECK(l[0] == header);
    const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    CHECK(std::abs(field(l[1], 5) - pi2_6) < 5e-3);
    CHECK(std::abs(field(l[2], 5) - (pi2_6 - 1.0)) < 5e-3);

    r = run({"invariants", "-g", "z", "-p", "0.3,0.4", "-k", "0,1,gap", "--level", "12"});
    REQUIRE(r.code == 0);
    l = lines(r.out);
    CHECK(std::abs(field(l[1], 5) - 1.0) < 5e-3);
    CHECK(std::abs(field(l[2], 5)) < 1e-6);
    CHECK(std::abs(field(l[3], 5) - 1.0) < 5e-3);

    r = run({"invariants", "-g", "z,w", "-p", "0.5,0", "-k", "0", "--level", "12", "--format", "json"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.size() == 1);
    CHECK(std::abs(j[0]["value"].get<double>() - 1.75) < 5e-3);
}

TEST_CASE("exit codes") {
    CHECK(run({"invariants", "-g", "", "-p", "0,0"}).code == 2);
    CHECK(run({"invariants", "-g", "z-", "-p", "0,0"}).code == 2);
    CHECK(run({"invariants", "-g", "z-w", "-p", "0.95,0", "--level", "6"}).code == 3);
    CHECK(run({"invariants", "-g", "z-w", "-k", "x", "--level", "6"}).code == 2);
    CHECK(run({"invariants", "-g", "z-w", "--rmax", "1.5"}).code == 2);
    CHECK(run({"invariants", "-g", "z-w", "--level", "2"}).code == 2);
    CHECK(run({"verify", "nope"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"nevanlinna", "--phi", "zeros=2"}).code == 2);
    const auto r = run({"invariants", "-g", "", "-p", "0,0"});
    CHECK(r.out.empty());
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("sweeps") {
    auto r = run({"sweep", "-g", "z-w", "--grid", "empty", "--level", "6"});
    REQUIRE(r.code == 0);
    CHECK(r.out == std::string(header) + "\n");

    const std::vector<std::string> args{"sweep", "-g", "z-w", "--grid", "polar:3,4,0.6", "-b", "0.2i", "-k", "1",
                                        "--level", "12"};
    auto a = args, b = args;
    b.insert(b.end(), {"--jobs", "4"});
    const auto r1 = run(a), r2 = run(b);
    REQUIRE(r1.code == 0);
    CHECK(r1.out == r2.out);  // byte-identical regardless of worker count
    const auto l = lines(r1.out);
    CHECK(l.size() == 1 + 12);
    for (std::size_t k = 1; k < l.size(); ++k) CHECK(field(l[k], 5) <= 2.0);

    r = run({"sweep", "-g", "z,w", "--grid", "list:0,0;0.3,-0.4i;0.5,0.5", "-k", "gap", "--level", "20"});
    REQUIRE(r.code == 0);
    const auto gl = lines(r.out);
    CHECK(gl.size() == 4);
    for (std::size_t k = 1; k < gl.size(); ++k) CHECK(std::abs(field(gl[k], 5) - 1.0) < 1e-2);

    CHECK(run({"sweep", "-g", "z-w", "--grid", "hex:3"}).code == 2);
}

TEST_CASE("closed-form oracle") {
    auto r = run({"invariants", "--oracle", "zw", "-p", "0,0", "-k", "0,1,gap,hs"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    const double s1 = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
    CHECK(std::abs(field(l[1], 5) - (s1 + 1.0)) < 1e-9);
    CHECK(std::abs(field(l[2], 5) - s1) < 1e-9);
    CHECK(field(l[3], 5) == 1.0);
    CHECK(std::abs(field(l[4], 5) - (2.0 * s1 + 1.0)) < 1e-9);

    // the lift moves the evaluation point through θ, φ
    const auto lifted = run({"invariants", "--oracle", "zw", "--theta", "z^2", "-p", "0.5,0", "-k", "1"});
    const auto base = run({"invariants", "--oracle", "zw", "-p", "0.25,0", "-k", "1"});
    CHECK(field(lines(lifted.out)[1], 5) == field(lines(base.out)[1], 5));

    CHECK(run({"invariants", "--oracle", "zw", "-g", "z+w"}).code == 2);
    CHECK(run({"invariants", "--oracle", "zw", "-k", "2"}).code == 2);
    CHECK(run({"invariants", "--oracle", "bogus", "-g", "z-w"}).code == 2);
}

TEST_CASE("verify, nevanlinna and export commands") {
    auto r = run({"verify", "nevanlinna"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["pass"] == true);

    r = run({"nevanlinna", "--phi", "zeros=0.5,-0.3i", "--targets", "10"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    CHECK(l[0] == "w_re,w_im,N_root,N_closed,abs_gap");
    CHECK(l.size() == 11);
    for (std::size_t k = 1; k < l.size(); ++k) CHECK(field(l[k], 4) < 1e-8);

    const std::string path = "test_cli_basis.bin";
    r = run({"export", "-g", "z-w", "--level", "4", "--basis", path});
    REQUIRE(r.code == 0);
    const json m = json::parse(r.out);
    std::ifstream f(path, std::ios::binary);
    const Eigen::MatrixXcd basis = read_basis_binary(f);
    CHECK(basis.cols() == m["basis_dim"].get<long>());
    CHECK((basis.adjoint() * basis - Eigen::MatrixXcd::Identity(basis.cols(), basis.cols())).norm() < 1e-10);
    std::remove(path.c_str());
}

TEST_CASE("level from the environment") {
    setenv("BDK_LEVEL", "8", 1);
    auto r = run({"invariants", "-g", "z-w", "-k", "1"});
    CHECK(r.code == 0);
    CHECK(field(lines(r.out)[1], 7) == 8);
    // an explicit flag wins
    r = run({"invariants", "-g", "z-w", "-k", "1", "--level", "6"});
    CHECK(field(lines(r.out)[1], 7) == 6);
    setenv("BDK_LEVEL", "abc", 1);
    CHECK(run({"invariants", "-g", "z-w"}).code == 2);
    unsetenv("BDK_LEVEL");
}
