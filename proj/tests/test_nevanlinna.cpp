#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "bdk/nevanlinna.hpp"
#include "oracles.hpp"

using namespace bdk;
using oracle::cplx;

namespace {

BlaschkeProduct random_blaschke(std::mt19937_64& g, int degree) {
    std::vector<cplx> zs;
    for (int k = 0; k < degree; ++k) zs.push_back(oracle::disk(g, 0.9));
    return BlaschkeProduct(zs, std::polar(1.0, 6.283185307179586 * oracle::uniform(g)));
}

const double ln2 = std::log(2.0);

} // namespace

TEST_CASE("counting function examples") {
    auto c = counting_function(BlaschkeProduct::identity(), 0.5);
    CHECK(std::abs(c.value - ln2) < 1e-12);
    REQUIRE(c.preimages.size() == 1);
    CHECK(std::abs(c.preimages[0] - 0.5) < 1e-12);

    c = counting_function(BlaschkeProduct::power(2), 0.25);
    CHECK(std::abs(c.value - 2.0 * ln2) < 1e-12);
    CHECK(c.preimages.size() == 2);
    for (const cplx z : c.preimages) CHECK(std::abs(std::abs(z) - 0.5) < 1e-12);

    c = counting_function(BlaschkeProduct::factor(0.5), 0.0);
    CHECK(std::abs(c.value - ln2) < 1e-12);

    // a double zero is one preimage of multiplicity two
    c = counting_function(BlaschkeProduct({0.5, 0.5}), 0.0);
    REQUIRE(c.preimages.size() == 1);
    CHECK(c.multiplicities[0] == 2);
    CHECK(std::abs(c.value - 2.0 * ln2) < 1e-6);

    CHECK(std::abs(counting_closed_form(BlaschkeProduct::identity(), 0.5) - ln2) < 1e-15);
    CHECK(std::abs(counting_closed_form(BlaschkeProduct::factor(0.5), 0.0) - ln2) < 1e-15);
    CHECK(std::abs(counting_closed_form(BlaschkeProduct::power(2), 0.25) - 2.0 * ln2) < 1e-15);
}

TEST_CASE("counting function errors") {
    const auto f = BlaschkeProduct::factor(cplx(0.2, -0.3));
    CHECK_THROWS_AS(counting_function(f, f.at_zero()), SingularTarget);
    CHECK_THROWS_AS(counting_closed_form(f, f.at_zero()), SingularTarget);
    CHECK_THROWS_AS(counting_function(f, 1.0), InvalidInput);
    CHECK_THROWS_AS(counting_function(f, cplx(0.0, -1.2)), InvalidInput);
    CHECK_THROWS_AS(counting_closed_form(f, 1.5), InvalidInput);
}

TEST_CASE("counting function agrees with the closed form") {
    std::mt19937_64 g(2024);
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int d = 1; d <= 5; ++d) {
        const auto phi = random_blaschke(g, d);
        for (int t = 0; t < 100; ++t) {
            const cplx w = oracle::disk(g, 0.99);
            const auto c = counting_function(phi, w);
            int total = 0;
            for (std::size_t j = 0; j < c.preimages.size(); ++j) {
                CHECK(std::abs(phi(c.preimages[j]) - w) <= 1e-8);
                CHECK(std::abs(c.preimages[j]) < 1.0);
                total += c.multiplicities[j];
            }
            CHECK(total == d);  // φ is d-to-1 on the disk
            CHECK(c.value >= 0.0);
            worst = std::max(worst, std::abs(c.value - counting_closed_form(phi, w)));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(worst <= 1e-8);
    CHECK(secs < 10.0);
}

TEST_CASE("logarithmic growth at the singular target") {
    const auto phi = BlaschkeProduct({0.3, cplx(-0.1, 0.5)});
    const cplx c = phi.at_zero();
    double prev = 0.0;
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        const double v = counting_function(phi, c + eps).value;
        CHECK(v > prev);
        // N ~ log(1/eps) + O(1)
        CHECK(std::abs(v - std::log(1.0 / eps) - std::log(1.0 - std::norm(c))) < 5.0 * eps);
        prev = v;
    }
}

TEST_CASE("Gauss–Legendre nodes") {
    std::vector<double> x, w;
    gauss_legendre01(16, x, w);
    REQUIRE(x.size() == 16);
    for (int k = 0; k <= 31; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
        CHECK(std::abs(s - 1.0 / (k + 1)) < 1e-14);
    }
}

TEST_CASE("change of variable formula") {
    const Series1D z{0.0, 1.0};
    auto r = shapiro_change_of_variable(z, BlaschkeProduct::identity());
    CHECK(std::abs(r.lhs - 1.0) < 1e-12);
    CHECK(std::abs(r.rhs - 1.0) < 1e-10);

    r = shapiro_change_of_variable(Series1D{cplx(0.3, 2.0)}, BlaschkeProduct::factor(0.4));
    CHECK(std::abs(r.lhs) < 1e-12);
    CHECK(std::abs(r.rhs) < 1e-12);

    r = shapiro_change_of_variable(z, BlaschkeProduct::power(2));
    CHECK(std::abs(r.lhs - 1.0) < 1e-12);
    CHECK(std::abs(r.rhs - 1.0) < 1e-10);

    std::mt19937_64 g(31);
    for (int t = 0; t < 4; ++t) {
        Eigen::VectorXcd c(5);
        for (auto& x : c) x = cplx(2 * oracle::uniform(g) - 1, 2 * oracle::uniform(g) - 1);
        const auto phi = random_blaschke(g, 1 + t % 3);
        r = shapiro_change_of_variable(Series1D(c), phi);
        CHECK(r.relative_gap < 1e-8);
    }
}

TEST_CASE("subordination bounds") {
    std::mt19937_64 g(77);
    Eigen::VectorXcd c(4);
    for (auto& x : c) x = cplx(2 * oracle::uniform(g) - 1, 2 * oracle::uniform(g) - 1);
    const Series1D f(c);

    auto r = littlewood_subordination_check(f, BlaschkeProduct::power(2));
    CHECK(r.pass);
    CHECK(std::abs(r.ratio - 1.0) < 1e-12);

    r = littlewood_subordination_check(Series1D{1.0}, BlaschkeProduct::factor(cplx(0.6, 0.2)));
    CHECK(std::abs(r.ratio - 1.0) < 1e-12);

    r = littlewood_subordination_check(Series1D{0.0, 1.0}, BlaschkeProduct::factor(0.5));
    CHECK(r.pass);
    CHECK(std::abs(r.lower - 1.0 / std::sqrt(3.0)) < 1e-12);
    CHECK(std::abs(r.upper - std::sqrt(3.0)) < 1e-12);
    // ||φ||^2 = 1 for an inner function
    CHECK(std::abs(r.ratio - 1.0) < 1e-12);

    for (int t = 0; t < 10; ++t) {
        r = littlewood_subordination_check(f, random_blaschke(g, 1 + t % 4));
        CHECK(r.pass);
        CHECK(r.ratio >= r.lower);
        CHECK(r.ratio <= r.upper);
    }
    CHECK_THROWS_AS(littlewood_subordination_check(Series1D{0.0, 0.0}, BlaschkeProduct::power(2)), InvalidInput);
}
