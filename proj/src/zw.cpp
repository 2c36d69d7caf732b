#include "bdk/zw.hpp"

#include <cmath>
#include <numbers>

namespace bdk {

namespace {

void check_caps(int n, Caps caps) {
    if (n < 0) throw InvalidInput("zw_basis: index must be nonnegative");
    if (caps.z < n + 1 || caps.w < n + 1) throw InvalidInput("zw_basis: caps must be at least n+1");
}

Series2D times_monomial(const Series2D& f, int i, int j) {
    const Caps c = f.caps();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(c.z + i + 1, c.w + j + 1);
    m.bottomRightCorner(c.z + 1, c.w + 1) = f.coeffs();
    return Series2D(std::move(m));
}

Eigen::VectorXcd padded(const Eigen::VectorXcd& v, Eigen::Index n) {
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(n);
    r.head(v.size()) = v;
    return r;
}

} // namespace

ZwBasisElement zw_basis(ZwKind kind, int n, Caps caps) {
    check_caps(n, caps);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(caps.z + 1, caps.w + 1);
    const double en = 1.0 / std::sqrt(n + 1.0);
    if (kind == ZwKind::quotient) {
        for (int i = 0; i <= n; ++i) c(n - i, i) = en;
    } else {
        // z e_n - sqrt(n+1) w^{n+1}, then swap roles for ψ
        const double s = 1.0 / std::sqrt(n + 2.0);
        for (int i = 0; i <= n; ++i) c(n + 1 - i, i) = en * s;
        c(0, n + 1) = -std::sqrt(n + 1.0) * s;
        if (kind == ZwKind::w_wedge) c.transposeInPlace();
    }
    return {kind, n, Series2D(std::move(c))};
}

double sigma1_zw_partial(cplx a, cplx b, long cutoff) {
    if (cutoff < 1) throw InvalidInput("sigma1_zw: cutoff must be positive");
    const double x = std::norm(a), y = std::norm(b);
    const cplx c = a * std::conj(b);
    // T_k = Σ_{1<=m<K-k} (x^m + y^m)/((k+m+1)(k+m+2)), by backward recurrence
    std::vector<double> t(cutoff, 0.0);
    double tx = 0.0, ty = 0.0;
    for (long k = cutoff - 2; k >= 0; --k) {
        const double d = 1.0 / ((k + 2.0) * (k + 3.0));
        tx = x * (d + tx);
        ty = y * (d + ty);
        t[k] = tx + ty;
    }
    long double acc = 0.0;
    cplx geo = 0.0, pw = 1.0, s = 0.0;  // Σ_{i<=k} c^i, c^k, S_k
    for (long k = 0; k < cutoff; ++k) {
        geo += pw;
        pw *= c;
        s += geo;
        const double d = 1.0 / ((k + 1.0) * (k + 2.0));
        acc += std::norm(s) * d * (d + t[k]);
    }
    return (1.0 - x) * (1.0 - y) * double(acc);
}

InvariantValue sigma1_zw(cplx a, cplx b, long cutoff, double tol) {
    if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0)) throw DomainError("sigma1_zw: point outside the bidisk");
    if (cutoff < 1) throw InvalidInput("sigma1_zw: cutoff must be positive");
    long k = std::max(64L, (cutoff + 7) / 8 * 8);
    const long kmax = 1L << 23;
    InvariantValue r;
    r.quantity = Quantity::sigma;
    r.order = 1;
    r.a = a;
    r.b = b;
    while (true) {
        const double v1 = sigma1_zw_partial(a, b, k), v2 = sigma1_zw_partial(a, b, k / 2);
        const double v4 = sigma1_zw_partial(a, b, k / 4), v8 = sigma1_zw_partial(a, b, k / 8);
        const double r1 = (8.0 * v1 - 6.0 * v2 + v4) / 3.0, r2 = (8.0 * v2 - 6.0 * v4 + v8) / 3.0;
        r.level = int(std::min<long>(k, std::numeric_limits<int>::max()));
        r.refined_level = int(k / 2);
        r.raw = v1;
        r.refined = v2;
        r.value = r1;
        r.tail_estimate = std::abs(r1 - r2);
        if (r.tail_estimate <= tol * std::max(1.0, std::abs(r1)) || k * 4 > kmax) break;
        k *= 4;
    }
    return r;
}

std::pair<cplx, cplx> zw_inner_product_relation(int k, int l, int m, int n) {
    const int cap = k + l + m + n + 4;
    const Caps caps{cap, cap};
    const Series2D phk = zw_basis(ZwKind::z_wedge, k, caps).realization;
    const Series2D psl = zw_basis(ZwKind::w_wedge, l, caps).realization;
    const Series2D ek = zw_basis(ZwKind::quotient, k, caps).realization;
    const Series2D el = zw_basis(ZwKind::quotient, l, caps).realization;
    const cplx lhs = inner_product(times_monomial(phk, 0, n + 1), times_monomial(psl, m + 1, 0));
    const cplx rhs = inner_product(times_monomial(ek, 0, n), times_monomial(el, m, 0)) / std::sqrt((k + 2.0) * (l + 2.0));
    return {lhs, rhs};
}

Lemma64Report lemma64_check(double a, double b, int i) {
    if (a < 0.0 || a >= 1.0 || b < 0.0 || b >= 1.0 || i < 1) throw InvalidInput("lemma64_check: need 0 <= a,b < 1, i >= 1");
    Lemma64Report r;
    const double ai = std::pow(a, i), bi = std::pow(b, i);
    r.lhs = std::pow(1.0 - ai * bi, 2) * (1.0 - a * a) * (1.0 - b * b);
    r.rhs = std::pow(1.0 - a * b, 2) * (1.0 - ai * ai) * (1.0 - bi * bi);
    const double eps = 1e-14 * std::max(1.0, r.rhs);
    r.holds = r.lhs <= r.rhs + eps;
    r.equality_expected = i == 1 || a == b;
    r.equality = std::abs(r.lhs - r.rhs) <= eps;
    return r;
}

Lemma65Sum lemma65_sum(double a, long cutoff) {
    if (a < 0.0 || a >= 1.0) throw InvalidInput("lemma65_sum: need 0 <= a < 1");
    if (cutoff < 1) throw InvalidInput("lemma65_sum: cutoff must be positive");
    Lemma65Sum r;
    r.cutoff = cutoff;
    long double acc = 0.0;
    double an = 1.0;  // a^n
    for (long n = 1; n <= cutoff; ++n) {
        an *= a;
        // Σ_{k=1}^n (1 - a^k) a^{n-k} = (1 - a^n)/(1 - a) - n a^n
        const double inner = (1.0 - an) / (1.0 - a) - n * an;
        acc += inner / (double(n) * (n + 1.0));
    }
    r.partial = double(acc);
    r.tail = 1.0 / ((1.0 - a) * (cutoff + 1.0));
    r.value = r.partial + r.tail;
    return r;
}

std::pair<double, double> example_closed_forms(ClosedFormExample which, cplx a, cplx b) {
    if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0)) throw DomainError("example_closed_forms: point outside the bidisk");
    if (which == ClosedFormExample::beurling) return {1.0, 0.0};
    const double p = (1.0 - std::norm(a)) * (1.0 - std::norm(b));
    return {p + 1.0, p};
}

double poisson_identity_check(cplx a, cplx b, int nodes) {
    if (nodes < 1) throw InvalidInput("poisson_identity_check: need at least one node");
    if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0)) throw DomainError("poisson_identity_check: point outside the bidisk");
    // the product rule on the torus factors into two one-dimensional means
    auto mean = [nodes](cplx p) {
        long double s = 0.0;
        for (int j = 0; j < nodes; ++j) {
            const cplx l = std::polar(1.0, 2.0 * std::numbers::pi * j / nodes);
            s += (1.0 - std::norm(p)) / std::norm(1.0 - std::conj(p) * l);
        }
        return double(s / nodes);
    };
    return mean(a) * mean(b);
}

Series2D difference_generator(const BlaschkeProduct& theta, const BlaschkeProduct& phi) {
    const Eigen::Index nz = theta.degree() + 1, nw = phi.degree() + 1;
    const Eigen::VectorXcd p = padded(theta.numerator().coeffs(), nz), q = padded(theta.denominator().coeffs(), nz);
    const Eigen::VectorXcd r = padded(phi.numerator().coeffs(), nw), s = padded(phi.denominator().coeffs(), nw);
    return Series2D(Eigen::MatrixXcd(p * s.transpose() - q * r.transpose()));
}

HsCorollaryReport hs_corollary_check(const BlaschkeProduct& theta, const BlaschkeProduct& phi, int level,
                                     double generic_tol, TruncationPolicy p) {
    HsCorollaryReport r;
    r.t0 = theta.at_zero();
    r.s0 = phi.at_zero();
    r.sigma1 = sigma1_zw(r.t0, r.s0);
    r.hs_closed = 2.0 * r.sigma1.value + 1.0;
    r.bound_holds = r.hs_closed <= 5.0;
    if (level > 0) {
        const SubmoduleApprox m = build_submodule({difference_generator(theta, phi)}, level);
        r.hs_generic = InvariantEngine(m, p).hs_norm_squared(0.0, 0.0);
        r.generic_gap = std::abs(r.hs_generic.value - r.hs_closed);
        r.generic_agrees = r.generic_gap <= std::max(r.hs_generic.tail_estimate, generic_tol);
    }
    return r;
}

} // namespace bdk
