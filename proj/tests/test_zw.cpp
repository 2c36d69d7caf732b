#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "bdk/submodule.hpp"
#include "bdk/zw.hpp"
#include "oracles.hpp"

using namespace bdk;
using oracle::cplx;

namespace {

const double s10 = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
const Series2D Z = Series2D::monomial(1, 0), W = Series2D::monomial(0, 1);

std::vector<Series2D> family(ZwKind kind, int count, Caps caps) {
    std::vector<Series2D> out;
    for (int n = 0; n < count; ++n) out.push_back(zw_basis(kind, n, caps).realization);
    return out;
}

} // namespace

TEST_CASE("explicit bases") {
    const Caps caps{32, 32};
    CHECK((zw_basis(ZwKind::quotient, 0, caps).realization - Series2D::constant(1.0)).norm() < 1e-15);
    CHECK((zw_basis(ZwKind::quotient, 1, caps).realization - std::sqrt(0.5) * (Z + W)).norm() < 1e-15);
    CHECK((zw_basis(ZwKind::z_wedge, 0, caps).realization - std::sqrt(0.5) * (Z - W)).norm() < 1e-15);
    CHECK((zw_basis(ZwKind::w_wedge, 0, caps).realization - std::sqrt(0.5) * (W - Z)).norm() < 1e-15);
    CHECK_THROWS_AS(zw_basis(ZwKind::quotient, 5, {5, 8}), InvalidInput);

    for (ZwKind kind : {ZwKind::quotient, ZwKind::z_wedge, ZwKind::w_wedge}) {
        const auto f = family(kind, 31, caps);
        for (int i = 0; i <= 30; ++i)
            for (int j = 0; j <= 30; ++j) {
                const cplx ip = inner_product(f[i], f[j]);
                CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-12);
            }
    }
    // e_n is orthogonal to (z - w) z^i w^j
    for (int n = 0; n <= 10; ++n) {
        const Series2D e = zw_basis(ZwKind::quotient, n, {14, 14}).realization;
        double worst = 0.0;
        for (int i = 0; i <= 12; ++i)
            for (int j = 0; j <= 12; ++j) {
                Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(15, 15);
                c(i + 1, j) += 1.0;
                c(i, j + 1) -= 1.0;
                worst = std::max(worst, std::abs(inner_product(e, Series2D(c))));
            }
        CHECK(worst < 1e-10);
    }
    // the z-wedge family sits inside the engine's wedge
    const auto m = build_submodule({Z - W}, 12);
    const WedgeBasis wz = wedge(m, Var::z, 0.0);
    for (const auto& ph : family(ZwKind::z_wedge, 12, m.ambient())) {
        const Eigen::VectorXcd v = m.to_vector(ph);
        CHECK((v - wz.basis * (wz.basis.adjoint() * v)).norm() <= 1e-6);
    }
}

TEST_CASE("sigma1 series") {
    const auto o = sigma1_zw(0.0, 0.0, 100000);
    CHECK(std::abs(o.value - s10) < 1e-9);
    CHECK(o.level >= 100000);
    CHECK(o.tail_estimate >= 0.0);
    CHECK(o.tail_estimate < 1e-9);

    // the uncorrected partial sum at K carries a 1/K deficit
    const double p = sigma1_zw_partial(0.0, 0.0, 1000);
    CHECK(p < s10);
    CHECK(s10 - p < 5e-3);

    std::mt19937_64 g(8);
    for (int t = 0; t < 8; ++t) {
        const cplx a = oracle::disk(g, 0.9), b = oracle::disk(g, 0.9);
        const double v = sigma1_zw(a, b, 10000).value;
        CHECK(v >= 0.0);
        CHECK(v <= 2.0);
        CHECK(std::abs(v - sigma1_zw(b, a, 10000).value) < 1e-12);
        const cplx r = std::polar(1.0, 2.1);
        CHECK(std::abs(v - sigma1_zw(r * a, r * b, 10000).value) < 1e-12);
        // equal phases reduce to the moduli
        const cplx u = std::polar(1.0, std::arg(a));
        CHECK(std::abs(sigma1_zw(std::abs(a) * u, std::abs(b) * u, 10000).value -
                       sigma1_zw(std::abs(a), std::abs(b), 10000).value) < 1e-12);
        // the modulus reduction is an upper bound
        CHECK(v <= sigma1_zw(std::abs(a), std::abs(b), 10000).value + 1e-12);
    }
    CHECK_THROWS_AS(sigma1_zw(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(sigma1_zw(0.0, 0.0, 0), InvalidInput);
}

TEST_CASE("sigma1 series against the generic engine") {
    const InvariantEngine e(build_submodule({Z - W}, 60));
    for (const auto& [a, b] : std::vector<std::pair<cplx, cplx>>{{0.5, 0.5}, {cplx(0.2, 0.4), cplx(-0.3, 0.1)}}) {
        const auto gen = e.sigma(1, a, b);
        const auto cf = sigma1_zw(a, b);
        CHECK(std::abs(gen.value - cf.value) <= gen.tail_estimate + cf.tail_estimate);
        CHECK(std::abs(gen.value - cf.value) < 5e-3);
    }
}

TEST_CASE("sum identity in exact arithmetic") {
    using boost::multiprecision::cpp_rational;
    for (const cpp_rational c : {cpp_rational(3, 7), cpp_rational(-2, 5), cpp_rational(9, 10), cpp_rational(1, 1000)}) {
        for (int k = 0; k <= 50; ++k) {
            cpp_rational lhs = 0, rhs = 0, pw = 1;
            for (int i = 0; i <= k; ++i) {
                lhs += (k + 1 - i) * pw;
                pw *= c;
            }
            pw = c;
            for (int i = 1; i <= k + 1; ++i) {
                rhs += (1 - pw) / (1 - c);
                pw *= c;
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("inner product relation") {
    auto [l0, r0] = zw_inner_product_relation(0, 0, 0, 0);
    CHECK(std::abs(l0 - 0.5) < 1e-14);
    CHECK(std::abs(r0 - 0.5) < 1e-14);
    for (const auto& [k, l, m, n] : std::vector<std::array<int, 4>>{{0, 1, 0, 0}, {5, 5, 2, 2}, {3, 1, 4, 0}, {2, 6, 1, 3}}) {
        const auto [lhs, rhs] = zw_inner_product_relation(k, l, m, n);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("scalar inequalities and series") {
    auto r = lemma64_check(0.3, 0.7, 1);
    CHECK(r.equality_expected);
    CHECK(r.equality);
    r = lemma64_check(0.5, 0.5, 3);
    CHECK(r.holds);
    CHECK(r.lhs <= r.rhs);
    r = lemma64_check(0.0, 0.6, 4);
    CHECK(r.holds);
    CHECK(std::abs(r.lhs - (1.0 - 0.36)) < 1e-15);
    CHECK(std::abs(r.rhs - (1.0 - std::pow(0.6, 8))) < 1e-15);
    std::mt19937_64 g(5);
    for (int t = 0; t < 200; ++t) {
        const double a = 0.999 * oracle::uniform(g), b = 0.999 * oracle::uniform(g);
        const int i = 1 + int(oracle::uniform(g) * 20);
        const auto q = lemma64_check(a, b, i);
        CHECK(q.holds);
        CHECK(q.lhs <= q.rhs * (1.0 + 1e-12));
    }
    CHECK_THROWS_AS(lemma64_check(1.0, 0.5, 2), InvalidInput);

    auto s = lemma65_sum(0.0, 1000000);
    CHECK(std::abs(s.partial - 1.0) < 1e-6);
    CHECK(std::abs(s.value - 1.0) < 1e-6);
    s = lemma65_sum(0.5, 10000);
    CHECK(std::abs(s.value - 1.0) < 1e-5);
    CHECK(s.partial < 1.0);
    s = lemma65_sum(0.99, 1000000);
    CHECK(std::abs(s.value - 1.0) < 1e-3);
    CHECK(std::abs(s.partial - 1.0) < 1e-3);
    CHECK(s.tail > 0.0);
}

TEST_CASE("closed-form examples and the Poisson integral") {
    auto [a0, a1] = example_closed_forms(ClosedFormExample::zplus_w, 0.0, 0.0);
    CHECK(a0 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(a1 == doctest::Approx(1.0).epsilon(1e-15));
    std::tie(a0, a1) = example_closed_forms(ClosedFormExample::zplus_w, 0.5, 0.5);
    CHECK(std::abs(a0 - 1.5625) < 1e-15);
    CHECK(std::abs(a1 - 0.5625) < 1e-15);
    std::tie(a0, a1) = example_closed_forms(ClosedFormExample::beurling, cplx(0.1, 0.7), -0.3);
    CHECK(a0 == 1.0);
    CHECK(a1 == 0.0);

    CHECK(poisson_identity_check(0.0, 0.0, 3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(poisson_identity_check(0.5, 0.0, 256) - 1.0) < 1e-10);
    CHECK(std::abs(poisson_identity_check(0.9, 0.9, 2048) - 1.0) < 1e-8);
    CHECK(std::abs(poisson_identity_check(cplx(0.3, -0.6), cplx(0.0, 0.8), 1024) - 1.0) < 1e-8);
}

TEST_CASE("HS norm of [theta(z) - phi(w)]") {
    const double target = 2.0 * s10 + 1.0;
    auto r = hs_corollary_check(BlaschkeProduct::identity(), BlaschkeProduct::identity());
    CHECK(std::abs(r.hs_closed - target) < 1e-9);
    CHECK(r.bound_holds);
    r = hs_corollary_check(BlaschkeProduct::power(2), BlaschkeProduct::power(3), 30);
    CHECK(std::abs(r.hs_closed - target) < 1e-9);
    CHECK(r.generic_agrees);
    CHECK(r.generic_gap <= r.hs_generic.tail_estimate);
    r = hs_corollary_check(BlaschkeProduct::factor(0.5), BlaschkeProduct::identity());
    CHECK(std::abs(r.hs_closed - (2.0 * sigma1_zw(-0.5, 0.0).value + 1.0)) < 1e-12);
    CHECK(r.bound_holds);

    // the generator clears both denominators
    const auto th = BlaschkeProduct::factor(0.5), ph = BlaschkeProduct({0.2, cplx(0.0, -0.4)});
    const Series2D d = difference_generator(th, ph);
    for (const auto& [z, w] : std::vector<std::pair<cplx, cplx>>{{0.3, 0.1}, {cplx(-0.2, 0.5), 0.6}}) {
        const cplx scale = th.denominator().horner(z) * ph.denominator().horner(w);
        CHECK(std::abs(d.horner(z, w) - (th(z) - ph(w)) * scale) < 1e-13);
    }
}
