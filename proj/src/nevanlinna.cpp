#include "bdk/nevanlinna.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "bdk/roots.hpp"

namespace bdk {

namespace {

constexpr double boundary_reject = 1.0 - 1e-12;
constexpr double singular_tol = 1e-12;
constexpr double cluster_tol = 1e-6;

void check_target(const BlaschkeProduct& phi, cplx w) {
    if (!(std::abs(w) < 1.0)) throw InvalidInput("counting function: target must lie in the open disk");
    if (std::abs(w - phi.at_zero()) <= singular_tol)
        throw SingularTarget("counting function: target equals phi(0)");
}

} // namespace

CountingResult counting_function(const BlaschkeProduct& phi, cplx w) {
    check_target(phi, w);
    const Eigen::VectorXcd num = phi.numerator().coeffs(), den = phi.denominator().coeffs();
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(std::max(num.size(), den.size()));
    c.head(num.size()) += num;
    c.head(den.size()) -= w * den;

    CountingResult r;
    r.target = w;
    for (const cplx z : polynomial_roots(c)) {
        if (std::abs(z) > boundary_reject) continue;
        bool merged = false;
        for (std::size_t k = 0; k < r.preimages.size(); ++k)
            if (std::abs(r.preimages[k] - z) < cluster_tol) {
                ++r.multiplicities[k];
                merged = true;
                break;
            }
        if (!merged) {
            r.preimages.push_back(z);
            r.multiplicities.push_back(1);
        }
        r.value += -std::log(std::abs(z));
    }
    return r;
}

double counting_closed_form(const BlaschkeProduct& phi, cplx w) {
    check_target(phi, w);
    const cplx c = phi.at_zero();
    return std::log(std::abs((1.0 - std::conj(c) * w) / (c - w)));
}

void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& wt) {
    // Golub–Welsch on the Jacobi matrix of the Legendre polynomials
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) j(k, k - 1) = j(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    x.resize(n);
    wt.resize(n);
    for (int k = 0; k < n; ++k) {
        x[k] = 0.5 * (es.eigenvalues()[k] + 1.0);
        wt[k] = std::pow(es.eigenvectors()(0, k), 2);  // 2 v0^2 on [-1,1], halved
    }
}

ShapiroReport shapiro_change_of_variable(const Series1D& f, const BlaschkeProduct& phi, QuadratureConfig q) {
    ShapiroReport r;
    r.radial = q.radial;
    r.angular = q.angular;

    const int cap = std::max({q.cap, phi.degree(), f.cap() * phi.degree()});
    const Series1D fc = compose(f, blaschke_taylor(phi, cap), cap);
    const cplx c = phi.at_zero();
    r.lhs = std::pow(fc.norm(), 2) - std::norm(f.horner(c));

    // w = (c - u)/(1 - conj(c) u) turns N_phi(w) into log(1/|u|), so the only singularity sits at
    // u = 0 and is absorbed by u = s^2 e^{it}: r log(1/r) dr = -4 s^3 log(s) ds.
    const Series1D df = f.derivative();
    std::vector<double> s, ws;
    gauss_legendre01(q.radial, s, ws);
    const double sc = 1.0 - std::norm(c);
    double acc = 0.0;
    for (int i = 0; i < q.radial; ++i) {
        const double rho = s[i] * s[i];
        double ring = 0.0;
        for (int k = 0; k < q.angular; ++k) {
            const cplx u = std::polar(rho, 2.0 * std::numbers::pi * k / q.angular);
            const cplx den = 1.0 - std::conj(c) * u;
            const cplx wpt = (c - u) / den;
            const double jac = sc * sc / std::norm(den * den);
            ring += std::norm(df.horner(wpt)) * jac;
        }
        ring *= 2.0 * std::numbers::pi / q.angular;
        acc += ws[i] * ring * (-4.0 * std::pow(s[i], 3) * std::log(s[i]));
    }
    r.rhs = 2.0 * acc / std::numbers::pi;
    r.relative_gap = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), 1e-300);
    if (std::abs(r.lhs) < 1e-14) r.relative_gap = std::abs(r.lhs - r.rhs);
    return r;
}

SubordinationReport littlewood_subordination_check(const Series1D& f, const BlaschkeProduct& phi, int cap) {
    if (f.degree() < 0) throw InvalidInput("littlewood_subordination_check: f must be nonzero");
    cap = std::max({cap, phi.degree(), f.degree() * phi.degree()});
    const Series1D fc = compose(f, blaschke_taylor(phi, cap), cap);
    SubordinationReport r;
    r.ratio = fc.norm() / f.norm();
    const double c = std::abs(phi.at_zero());
    r.lower = std::sqrt((1.0 - c) / (1.0 + c));
    r.upper = std::sqrt((1.0 + c) / (1.0 - c));
    r.tail = fc.coeffs().tail(std::min<Eigen::Index>(8, fc.coeffs().size())).norm() / f.norm();
    const double slack = 1e-12 + r.tail;
    r.pass = r.ratio >= r.lower - slack && r.ratio <= r.upper + slack;
    return r;
}

} // namespace bdk
