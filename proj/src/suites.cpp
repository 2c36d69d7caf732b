#include "bdk/suites.hpp"

#include <cmath>
#include <numbers>

#include "bdk/nevanlinna.hpp"
#include "bdk/zw.hpp"

namespace bdk {

namespace {

double uniform01(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

cplx disk_point(std::mt19937_64& g, double r) {
    const double rho = r * std::sqrt(uniform01(g));
    return std::polar(rho, 2.0 * std::numbers::pi * uniform01(g));
}

json check(const std::string& what, double value, double expected, double tol) {
    const double err = std::abs(value - expected);
    return {{"check", what}, {"value", value}, {"expected", expected}, {"error", err}, {"tolerance", tol}, {"pass", err <= tol}};
}

json tagged(json j, const BatteryCase& c) {
    j["source"] = c.source_name;
    j["symbols"] = c.symbol_name;
    return j;
}

SuiteResult finish(std::string name, json items) {
    bool pass = true;
    for (const auto& it : items) pass = pass && it.at("pass").get<bool>();
    return {name, pass, {{"suite", name}, {"pass", pass}, {"results", std::move(items)}}};
}

TruncationPolicy policy(const SuiteConfig& c) {
    TruncationPolicy p;
    p.delta = c.delta;
    p.r_max = c.r_max;
    return p;
}

SuiteResult kernel_identity(const SuiteConfig& c) {
    json items = json::array();
    for (const auto& b : lift_battery(c.level))
        items.push_back(tagged(to_json(verify_kernel_identity(b.lifted, standard_grid(c.seed), c.tol)), b));
    return finish("kernel-identity", items);
}

SuiteResult core_pullback(const SuiteConfig& c) {
    json items = json::array();
    for (const auto& b : lift_battery(c.level))
        items.push_back(tagged(to_json(verify_core_pullback(b.lifted, standard_grid(c.seed), c.tol)), b));
    return finish("core-pullback", items);
}

SuiteResult invariant_pullback(const SuiteConfig& c) {
    json items = json::array();
    const std::vector<std::pair<cplx, cplx>> pts{{0.0, 0.0}, {0.3, cplx(0.0, -0.4)}};
    for (const auto& b : lift_battery(c.level))
        for (const auto& [x, y] : pts)
            items.push_back(tagged(to_json(verify_invariant_pullback(b.lifted, x, y, c.sigma_tol, policy(c))), b));
    return finish("invariant-pullback", items);
}

SuiteResult sandwich(const SuiteConfig& c) {
    json items = json::array();
    for (const auto& b : lift_battery(c.level))
        items.push_back(tagged(to_json(littlewood_sandwich(b.lifted, policy(c), c.sigma_tol)), b));
    return finish("sandwich", items);
}

SuiteResult zw_suite(const SuiteConfig& c) {
    json items = json::array();
    const double s10 = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
    items.push_back(check("sigma1_zw(0,0)", sigma1_zw(0.0, 0.0, 100000).value, s10, 1e-9));

    // polar coordinates in each variable: a = r_i e^{iθ_i}, b = r_j e^{iθ_j}
    double vmax = 0.0;
    cplx amax = 0.0, bmax = 0.0;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
            const cplx a = std::polar(0.95 * i / 20.0, 2.0 * std::numbers::pi * i / 21.0);
            const cplx b = std::polar(0.95 * j / 20.0, 2.0 * std::numbers::pi * j / 21.0);
            const double v = sigma1_zw(a, b, 10000).value;
            if (v > vmax) {
                vmax = v;
                amax = a;
                bmax = b;
            }
        }
    items.push_back({{"check", "sigma1_zw <= 2 on 21x21 polar grid"}, {"max", vmax}, {"pass", vmax <= 2.0}});
    items.push_back({{"check", "grid maximum vs sigma1(0,0) (exploratory)"},
                     {"max", vmax},
                     {"argmax", {to_json(amax), to_json(bmax)}},
                     {"exceeds_origin_value", vmax > s10 + 1e-9},
                     {"pass", true}});

    bool l64 = true;
    const double av[] = {0.0, 0.25, 0.5, 0.75, 0.95}, bv[] = {0.0, 0.3, 0.5, 0.8, 0.99};
    for (double a : av)
        for (double b : bv)
            for (int i : {1, 4}) {
                const auto r = lemma64_check(a, b, i);
                l64 = l64 && r.holds && (!r.equality_expected || r.equality);
            }
    items.push_back({{"check", "lemma64 on 50 cases"}, {"pass", l64}});
    items.push_back(check("lemma65_sum(0.5, 1e4)", lemma65_sum(0.5, 10000).value, 1.0, 1e-5));
    items.push_back(check("lemma65_sum(0, 1e6)", lemma65_sum(0.0, 1000000).value, 1.0, 1e-6));
    items.push_back(check("poisson(0.5, 0; 256)", poisson_identity_check(0.5, 0.0, 256), 1.0, 1e-10));
    items.push_back(check("poisson(0.9, 0.9; 2048)", poisson_identity_check(0.9, 0.9, 2048), 1.0, 1e-8));

    const auto hc = hs_corollary_check(BlaschkeProduct::power(2), BlaschkeProduct::power(3));
    items.push_back(check("HS norm of [z^2 - w^3]", hc.hs_closed, std::numbers::pi * std::numbers::pi / 3.0 - 1.0, 1e-6));
    std::mt19937_64 g(c.seed);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto t = random_blaschke(g, 3), p = random_blaschke(g, 3);
        worst = std::max(worst, hs_corollary_check(t, p).hs_closed);
    }
    items.push_back({{"check", "2 sigma1 + 1 <= 5 on 20 random pairs"}, {"max", worst}, {"pass", worst <= 5.0}});
    return finish("zw", items);
}

SuiteResult nevanlinna_suite(const SuiteConfig& c) {
    json items = json::array();
    std::mt19937_64 g(c.seed);
    for (int k = 0; k < 5; ++k) {
        const BlaschkeProduct phi = random_blaschke(g, 5);
        double worst = 0.0;
        int n = 0;
        while (n < 100) {
            const cplx w = disk_point(g, 0.95);
            if (std::abs(w - phi.at_zero()) < 1e-6) continue;
            worst = std::max(worst, std::abs(counting_function(phi, w).value - counting_closed_form(phi, w)));
            ++n;
        }
        items.push_back({{"check", "counting function, 100 targets"},
                         {"phi", to_json(phi)},
                         {"max_gap", worst},
                         {"tolerance", 1e-8},
                         {"pass", worst <= 1e-8}});
    }
    const Series1D z{0.0, 1.0};
    const auto s0 = shapiro_change_of_variable(z, BlaschkeProduct::identity());
    items.push_back(check("shapiro f=z, phi=z: lhs", s0.lhs, 1.0, 1e-6));
    items.push_back(check("shapiro f=z, phi=z: rhs", s0.rhs, 1.0, 1e-6));
    const std::vector<std::pair<Series1D, BlaschkeProduct>> cases{
        {Series1D{0.0, 1.0}, BlaschkeProduct::power(2)},
        {Series1D{1.0, cplx(0.5, 0.2), -0.3, 0.1}, BlaschkeProduct::factor(0.5)},
        {Series1D{0.0, 0.0, 1.0, cplx(0.0, 0.5)}, BlaschkeProduct({0.3, cplx(0.0, 0.6), -0.7})}};
    for (const auto& [f, phi] : cases) {
        const auto s = shapiro_change_of_variable(f, phi);
        items.push_back({{"check", "shapiro"}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"relative_gap", s.relative_gap},
                         {"pass", s.relative_gap <= 1e-3}});
    }
    for (const auto& [f, phi] : cases) {
        const auto s = littlewood_subordination_check(f, phi);
        items.push_back({{"check", "littlewood"}, {"ratio", s.ratio}, {"lower", s.lower}, {"upper", s.upper},
                         {"pass", s.pass}});
    }
    return finish("nevanlinna", items);
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"kernel-identity", "core-pullback", "invariant-pullback",
                                                "sandwich",        "zw",            "nevanlinna"};
    return names;
}

std::vector<SuiteResult> run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "all") {
        std::vector<SuiteResult> out;
        for (const auto& n : suite_names()) out.push_back(run_suite(n, cfg).front());
        return out;
    }
    if (name == "kernel-identity") return {kernel_identity(cfg)};
    if (name == "core-pullback") return {core_pullback(cfg)};
    if (name == "invariant-pullback") return {invariant_pullback(cfg)};
    if (name == "sandwich") return {sandwich(cfg)};
    if (name == "zw") return {zw_suite(cfg)};
    if (name == "nevanlinna") return {nevanlinna_suite(cfg)};
    throw InvalidInput("unknown suite '" + name + "'");
}

std::vector<BatteryCase> lift_battery(int level) {
    const Series2D z = Series2D::monomial(1, 0), w = Series2D::monomial(0, 1);
    const std::vector<std::pair<std::string, std::vector<Series2D>>> sources{
        {"H2", {Series2D::constant(1.0)}}, {"[z-w]", {z - w}}, {"[z]", {z}}};
    const std::vector<std::tuple<std::string, BlaschkeProduct, BlaschkeProduct>> symbols{
        {"(z^2, w^2)", BlaschkeProduct::power(2), BlaschkeProduct::power(2)},
        {"(mobius(0.5), w^3)", BlaschkeProduct::factor(0.5), BlaschkeProduct::power(3)}};
    std::vector<BatteryCase> out;
    for (const auto& [sn, gens] : sources) {
        const SubmoduleApprox m = build_submodule(gens, level);
        for (const auto& [yn, t, p] : symbols) out.push_back({sn, yn, lift(m, t, p, level)});
    }
    return out;
}

BlaschkeProduct random_blaschke(std::mt19937_64& g, int max_degree, double radius) {
    const int d = 1 + int(g() % std::uint64_t(max_degree));
    std::vector<cplx> zeros;
    for (int k = 0; k < d; ++k) zeros.push_back(disk_point(g, radius));
    return BlaschkeProduct(std::move(zeros));
}

} // namespace bdk
