#include "bdk/lift.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace bdk {

namespace {

Eigen::VectorXcd poly_mul(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// columns: coefficients of num^i den^{d-i}, i = 0..d, each of length d*deg + 1
Eigen::MatrixXcd power_table(const BlaschkeProduct& b, int d) {
    const Eigen::VectorXcd p = b.numerator().coeffs(), q = b.denominator().coeffs();
    std::vector<Eigen::VectorXcd> pp{Eigen::VectorXcd::Ones(1)}, qq{Eigen::VectorXcd::Ones(1)};
    for (int i = 1; i <= d; ++i) {
        pp.push_back(poly_mul(pp.back(), p));
        qq.push_back(poly_mul(qq.back(), q));
    }
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(d * b.degree() + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
        Eigen::VectorXcd c = poly_mul(pp[i], qq[d - i]);
        t.col(i).head(c.size()) = c;
    }
    return t;
}

cplx eval_frame(const Series2D& f, BiPoint x) { return f.horner(x.z, x.w); }

double uniform01(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

BiPoint random_point(std::mt19937_64& g, double r) {
    auto disk = [&] {
        const double rho = r * std::sqrt(uniform01(g));
        const double t = 2.0 * std::numbers::pi * uniform01(g);
        return std::polar(rho, t);
    };
    BiPoint p;
    p.z = disk();
    p.w = disk();
    return p;
}

VerificationReport finish(std::string id, int level, const std::vector<PointPair>& grid,
                          std::vector<double> res, double tol) {
    VerificationReport r;
    r.identity = std::move(id);
    r.level = level;
    r.grid = grid;
    r.residuals = std::move(res);
    for (double x : r.residuals) r.max_residual = std::max(r.max_residual, x);
    r.tolerance = tol;
    r.pass = r.max_residual <= tol;
    return r;
}

BiPoint image(const LiftedSubmodule& l, BiPoint p) { return {l.theta(p.z), l.phi(p.w)}; }

} // namespace

Series2D clear_denominators(const Series2D& g, const BlaschkeProduct& theta, const BlaschkeProduct& phi) {
    const Series2D t = g.trimmed();
    const Caps d = t.degree();
    if (d.z < 0) return t;
    const Eigen::MatrixXcd az = power_table(theta, d.z), aw = power_table(phi, d.w);
    return Series2D(Eigen::MatrixXcd(az * t.coeffs() * aw.transpose()));
}

LiftedSubmodule lift(const SubmoduleApprox& m, const BlaschkeProduct& theta, const BlaschkeProduct& phi, int level) {
    if (theta.degree() == 0 || phi.degree() == 0) throw InvalidInput("lift: theta and phi must be nonconstant");
    std::vector<Series2D> cleared;
    for (const auto& g : m.generators()) cleared.push_back(clear_denominators(g, theta, phi));
    SubmoduleApprox lifted = build_submodule(cleared, level, m.rank_tol());

    const Caps caps = lifted.ambient();
    const Series1D tz = blaschke_taylor(theta, std::max(caps.z, theta.degree()));
    const Series1D tw = blaschke_taylor(phi, std::max(caps.w, phi.degree()));
    std::vector<Series2D> composed;
    for (const auto& g : m.generators()) composed.push_back(compose_pair(g, tz, tw, caps));

    return LiftedSubmodule{m, theta, phi, std::move(lifted), std::move(composed), std::move(cleared), level};
}

cplx rk_factor(const BlaschkeProduct& theta, const BlaschkeProduct& phi, BiPoint lm, BiPoint zw, double rmax) {
    check_radius(lm.z, rmax, "lambda");
    check_radius(lm.w, rmax, "mu");
    check_radius(zw.z, rmax, "z");
    check_radius(zw.w, rmax, "w");
    const cplx fz = (1.0 - std::conj(theta(lm.z)) * theta(zw.z)) / (1.0 - std::conj(lm.z) * zw.z);
    const cplx fw = (1.0 - std::conj(phi(lm.w)) * phi(zw.w)) / (1.0 - std::conj(lm.w) * zw.w);
    return fz * fw;
}

std::vector<BiPoint> seeded_points(int n, std::uint64_t seed, double r) {
    std::mt19937_64 g(seed);
    std::vector<BiPoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_point(g, r));
    return pts;
}

std::vector<PointPair> standard_grid(std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::vector<PointPair> grid;
    for (int i = 0; i < 10; ++i) {
        BiPoint p = random_point(g, 0.5);
        BiPoint q = random_point(g, 0.5);
        grid.emplace_back(p, q);
    }
    const cplx I(0.0, 1.0);
    grid.push_back({{0.0, 0.0}, {0.0, 0.0}});
    grid.push_back({{0.3, 0.3}, {-0.2, -0.2}});
    grid.push_back({{0.4, 0.0}, {0.25 * I, 0.0}});
    grid.push_back({{0.0, -0.35}, {0.0, 0.45}});
    grid.push_back({{0.35, -0.2 * I}, {0.35, -0.2 * I}});
    return grid;
}

VerificationReport verify_kernel_identity(const LiftedSubmodule& l, const std::vector<PointPair>& grid, double tol) {
    std::vector<double> res;
    for (const auto& [p, q] : grid) {
        const cplx lhs = kernel_eval(l.lifted, p, q);
        const cplx rhs = kernel_eval(l.source, image(l, p), image(l, q)) * rk_factor(l.theta, l.phi, p, q);
        res.push_back(std::abs(lhs - rhs) / (std::abs(lhs) + 1.0));
    }
    return finish("kernel-identity", l.level, grid, std::move(res), tol);
}

VerificationReport verify_core_pullback(const LiftedSubmodule& l, const std::vector<PointPair>& grid, double tol) {
    std::vector<double> res;
    for (const auto& [p, q] : grid) {
        const cplx lhs = core_function_eval(l.lifted, p, q);
        const cplx rhs = core_function_eval(l.source, image(l, p), image(l, q));
        res.push_back(std::abs(lhs - rhs) / (std::abs(lhs) + 1.0));
    }
    return finish("core-pullback", l.level, grid, std::move(res), tol);
}

PullbackReport verify_invariant_pullback(const LiftedSubmodule& l, cplx a, cplx b, double tol, TruncationPolicy p) {
    check_radius(a, p.r_max, "a");
    check_radius(b, p.r_max, "b");
    const InvariantEngine el(l.lifted, p), es(l.source, p);
    PullbackReport r;
    r.a = a;
    r.b = b;
    r.tolerance = tol;
    for (int k = 0; k < 2; ++k) {
        r.lifted[k] = el.sigma(k, a, b);
        r.source[k] = es.sigma(k, l.theta(a), l.phi(b));
        r.residual[k] = std::abs(r.lifted[k].value - r.source[k].value);
        r.max_residual = std::max(r.max_residual, r.residual[k]);
    }
    r.pass = r.max_residual <= tol;
    return r;
}

SandwichReport littlewood_sandwich(const LiftedSubmodule& l, TruncationPolicy p, double equality_tol) {
    const InvariantValue vs = InvariantEngine(l.source, p).hs_norm_squared(0.0, 0.0);
    const InvariantValue vl = InvariantEngine(l.lifted, p).hs_norm_squared(0.0, 0.0);
    SandwichReport r;
    r.hs_source = std::sqrt(vs.value);
    r.hs_lifted = std::sqrt(vl.value);
    const double t0 = std::abs(l.theta.at_zero()), s0 = std::abs(l.phi.at_zero());
    r.lower = (1.0 - t0) / (1.0 + t0) * (1.0 - s0) / (1.0 + s0);
    r.upper = 1.0 / r.lower;
    auto dsqrt = [](const InvariantValue& v) { return v.tail_estimate / (2.0 * std::sqrt(std::max(v.value, 1e-300))); };
    r.slack = dsqrt(vl) + r.upper * dsqrt(vs);
    r.equality_expected = t0 < 1e-14 && s0 < 1e-14;
    r.relative_gap = std::abs(r.hs_lifted - r.hs_source) / std::max(r.hs_source, 1e-300);
    r.pass = r.hs_lifted >= r.lower * r.hs_source - r.slack && r.hs_lifted <= r.upper * r.hs_source + r.slack &&
             (!r.equality_expected || r.relative_gap <= equality_tol);
    return r;
}

IsometryReport weighted_composition_isometry(const Series2D& f, const BlaschkeProduct& theta,
                                             const BlaschkeProduct& phi, const std::vector<Series2D>& samples,
                                             Caps caps, double tol) {
    if (std::abs(f.norm() - 1.0) > 1e-10) throw InvalidInput("weighted_composition_isometry: f must have unit norm");
    const Series2D ft = f.truncated(caps);
    const auto ma = model_space_basis(theta, caps.z).elements;
    const auto mb = model_space_basis(phi, caps.w).elements;
    // distance from f to its projection; computed from the residual vector, not 1 - |Pf|^2, to stay
    // accurate near zero
    Series2D res = ft;
    for (const auto& al : ma)
        for (const auto& be : mb) {
            const Series2D e(Eigen::MatrixXcd(al.truncated(caps.z).coeffs() * be.truncated(caps.w).coeffs().transpose()));
            res = res - inner_product(ft, e) * e;
        }
    if (res.norm() > 1e-8) throw InvalidInput("weighted_composition_isometry: f is not in the model space of the pair");

    const Series1D tz = blaschke_taylor(theta, std::max(caps.z, theta.degree()));
    const Series1D tw = blaschke_taylor(phi, std::max(caps.w, phi.degree()));
    IsometryReport r;
    r.tolerance = tol;
    for (const auto& p : samples) {
        const Series2D pb = compose_pair(p, tz, tw, caps);
        const double d = std::abs(multiply(ft, pb, caps).norm() - p.norm());
        r.deviations.push_back(d);
        r.max_deviation = std::max(r.max_deviation, d);
    }
    r.pass = r.max_deviation <= tol;
    return r;
}

VerificationReport parseval_frame_check(const std::vector<Series2D>& frame, const KernelFn& space_kernel,
                                        const std::vector<PointPair>& grid, double tol, int level) {
    std::vector<double> res;
    for (const auto& [y, x] : grid) {
        cplx s = 0.0;
        for (const auto& f : frame) s += eval_frame(f, x) * std::conj(eval_frame(f, y));
        const cplx k = space_kernel(y, x);
        res.push_back(std::abs(k - s) / (std::abs(k) + 1.0));
    }
    return finish("parseval-frame", level, grid, std::move(res), tol);
}

VerificationReport parseval_frame_check(const std::vector<Series2D>& frame, const SubmoduleApprox& space,
                                        const std::vector<PointPair>& grid, double tol) {
    return parseval_frame_check(frame, [&](BiPoint y, BiPoint x) { return kernel_eval(space, y, x); }, grid, tol,
                                space.level());
}

VerificationReport parseval_frame_check(const std::vector<Series2D>& frame, const WedgeBasis& space,
                                        const std::vector<PointPair>& grid, double tol) {
    const Caps caps = space.parent.ambient();
    auto k = [&](BiPoint y, BiPoint x) {
        const Eigen::VectorXcd ux = space.basis.transpose() * box::monomials(caps, x.z, x.w);
        const Eigen::VectorXcd uy = space.basis.transpose() * box::monomials(caps, y.z, y.w);
        return uy.dot(ux);  // sum ux_k conj(uy_k)
    };
    return parseval_frame_check(frame, k, grid, tol, space.parent.level());
}

PsdReport kernel_psd_check(const KernelFn& kernel, const std::vector<BiPoint>& points, std::string name, double tol) {
    const Eigen::Index n = Eigen::Index(points.size());
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = kernel(points[j], points[i]);
    PsdReport r;
    r.name = std::move(name);
    r.tolerance = tol;
    r.hermitian_defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues();
    r.min_eigenvalue = ev.minCoeff();
    // relative to the largest eigenvalue so that large kernels are judged on the same footing
    r.pass = r.min_eigenvalue >= tol * std::max(1.0, ev.maxCoeff());
    return r;
}

cplx szego(BiPoint y, BiPoint x) {
    return 1.0 / ((1.0 - std::conj(y.z) * x.z) * (1.0 - std::conj(y.w) * x.w));
}

} // namespace bdk
