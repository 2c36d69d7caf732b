#include "bdk/roots.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace bdk {

namespace {

// Parlett–Reinsch balancing with radix-2 scalings, so the similarity is exact in floating point.
void balance(Eigen::MatrixXcd& a) {
    const Eigen::Index n = a.rows();
    const double radix = 2.0;
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0, s = c + r;
            while (c < g) { f *= radix; c *= radix * radix; }
            g = r * radix;
            while (c > g) { f /= radix; c /= radix * radix; }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

cplx horner(const Eigen::VectorXcd& c, cplx z, cplx& deriv) {
    cplx p = 0.0, d = 0.0;
    for (Eigen::Index k = c.size() - 1; k >= 0; --k) {
        d = d * z + p;
        p = p * z + c[k];
    }
    deriv = d;
    return p;
}

} // namespace

std::vector<cplx> polynomial_roots(const Eigen::VectorXcd& coeffs) {
    Eigen::Index d = coeffs.size() - 1;
    while (d > 0 && coeffs[d] == 0.0) --d;
    if (d <= 0) return {};
    if (d == 1) return {-coeffs[0] / coeffs[1]};

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) comp(0, k) = -coeffs[d - 1 - k] / coeffs[d];
    for (Eigen::Index k = 1; k < d; ++k) comp(k, k - 1) = 1.0;
    balance(comp);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);

    Eigen::VectorXcd c = coeffs.head(d + 1);
    for (cplx& z : roots) {
        for (int it = 0; it < 3; ++it) {
            cplx dp;
            cplx p = horner(c, z, dp);
            if (std::abs(dp) < 1e-8 * (1.0 + std::abs(p))) break;  // clustered root: leave it
            cplx step = p / dp;
            z -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
        }
    }
    return roots;
}

} // namespace bdk
