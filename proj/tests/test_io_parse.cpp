#include <doctest.h>

#include <sstream>

#include "bdk/io.hpp"
#include "bdk/parse.hpp"
#include "oracles.hpp"

using namespace bdk;
using oracle::cplx;

TEST_CASE("polynomial parser") {
    const Series2D zw = parse_polynomial("z-w");
    CHECK(zw.coeff(1, 0) == 1.0);
    CHECK(zw.coeff(0, 1) == -1.0);
    CHECK(zw.trimmed().degree().z == 1);

    const Series2D p = parse_polynomial(" z^2 - w^3 ");
    CHECK(p.coeff(2, 0) == 1.0);
    CHECK(p.coeff(0, 3) == -1.0);
    CHECK(std::abs(p.norm() - std::sqrt(2.0)) < 1e-15);

    const Series2D q = parse_polynomial("(0.5+0i)*z - w");
    CHECK(q.coeff(1, 0) == 0.5);
    CHECK(q.coeff(0, 1) == -1.0);

    // implicit products, imaginary unit, nested powers
    const Series2D r = parse_polynomial("2zw + (1+i)w^2 - 3i + (z+w)^2");
    CHECK(r.coeff(1, 1) == cplx(4.0, 0.0));
    CHECK(r.coeff(0, 2) == cplx(2.0, 1.0));
    CHECK(r.coeff(0, 0) == cplx(0.0, -3.0));
    CHECK(r.coeff(2, 0) == 1.0);

    // evaluation agrees with direct arithmetic
    const cplx z(0.3, -0.2), w(-0.1, 0.5);
    const cplx direct = 2.0 * z * w + cplx(1, 1) * w * w - cplx(0, 3) + (z + w) * (z + w);
    CHECK(std::abs(oracle::eval(r, z, w) - direct) < 1e-14);

    CHECK_THROWS_AS(parse_polynomial(""), ParseError);
    CHECK_THROWS_AS(parse_polynomial("z +"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("(z - w"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x + 1"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("z^-1"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("z^1.5"), ParseError);
}

TEST_CASE("generator lists, points and Blaschke symbols") {
    const auto g = parse_generators("z-w, z^2");
    REQUIRE(g.size() == 2);
    CHECK(g[1].coeff(2, 0) == 1.0);
    CHECK(parse_generators("(z+(0.5+0.1i)), w").size() == 2);
    CHECK_THROWS_AS(parse_generators(""), ParseError);
    CHECK_THROWS_AS(parse_generators("z,,w"), ParseError);

    CHECK(parse_complex("-0.3i") == cplx(0.0, -0.3));
    CHECK(parse_complex("(0.1-0.2i)") == cplx(0.1, -0.2));
    CHECK_THROWS_AS(parse_complex("z"), ParseError);
    const BiPoint p = parse_point("0.3, -0.4i");
    CHECK(p.z == 0.3);
    CHECK(p.w == cplx(0.0, -0.4));
    CHECK_THROWS_AS(parse_point("0.3"), ParseError);

    const auto b = parse_blaschke("zeros=0.5,0.3i;gamma=-1");
    REQUIRE(b.degree() == 2);
    CHECK(b.zeros()[1] == cplx(0.0, 0.3));
    CHECK(b.gamma() == -1.0);
    CHECK(parse_blaschke("z^3").degree() == 3);
    CHECK(std::abs(parse_blaschke("w")(0.4) - 0.4) < 1e-15);
    CHECK_THROWS_AS(parse_blaschke("zeros=1.5"), InvalidInput);
    CHECK_THROWS_AS(parse_blaschke("zeros=0.5;gamma=2"), InvalidInput);
    CHECK_THROWS_AS(parse_blaschke("poles=0.5"), ParseError);
}

TEST_CASE("JSON round trips") {
    std::mt19937_64 g(12);
    const Series2D f = oracle::random_poly(g, 3, 2);
    const json j = to_json(f);
    CHECK(j["caps"][0] == 3);
    CHECK(j["caps"][1] == 2);
    CHECK(j["coeffs"].size() == 12);
    const Series2D back = series_from_json(json::parse(j.dump()));
    CHECK((back - f).norm() == 0.0);

    const BlaschkeProduct b({cplx(0.2, -0.7), 0.1}, std::polar(1.0, 0.3));
    const BlaschkeProduct bb = blaschke_from_json(json::parse(to_json(b).dump()));
    CHECK(bb.zeros() == b.zeros());
    CHECK(bb.gamma() == b.gamma());

    CHECK(complex_from_json(to_json(cplx(1.5, -2.0))) == cplx(1.5, -2.0));
    CHECK_THROWS_AS(series_from_json(json{{"caps", {1, 1}}, {"coeffs", json::array()}}), InvalidInput);

    const auto m = build_submodule({parse_polynomial("z-w")}, 5);
    const json mj = to_json(m);
    CHECK(mj["level"] == 5);
    CHECK(mj["basis_dim"] == m.dimension());
    CHECK(series_from_json(mj["generators"][0]).coeff(0, 1) == -1.0);

    InvariantValue v;
    v.value = 0.5;
    v.level = 40;
    const json vj = to_json(v);
    CHECK(vj["value"] == 0.5);
    CHECK(vj["level"] == 40);
}

TEST_CASE("binary basis files") {
    std::mt19937_64 g(3);
    Eigen::MatrixXcd a(7, 3);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = oracle::disk(g, 1.0);
    std::stringstream s;
    write_basis_binary(s, a);
    CHECK(s.str().size() == 16 + 16 * 21);
    CHECK(s.str().substr(0, 4) == "BDKM");
    const Eigen::MatrixXcd back = read_basis_binary(s);
    CHECK(back == a);

    std::stringstream bad("XXXX0000000000000000");
    CHECK_THROWS_AS(read_basis_binary(bad), InvalidInput);
    std::string trunc = s.str();
    trunc.resize(40);
    std::stringstream t(trunc);
    CHECK_THROWS_AS(read_basis_binary(t), InvalidInput);
}
