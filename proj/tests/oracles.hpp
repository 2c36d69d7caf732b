#pragma once

// Test-side helpers that do not go through the library's own algorithms.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bdk/series.hpp"

namespace oracle {

using cplx = std::complex<double>;

inline double uniform(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

inline cplx disk(std::mt19937_64& g, double r) {
    return std::polar(r * std::sqrt(uniform(g)), 6.283185307179586 * uniform(g));
}

// Random polynomial with coefficients in the unit square and bidegree <= (dz, dw).
inline bdk::Series2D random_poly(std::mt19937_64& g, int dz, int dw) {
    Eigen::MatrixXcd c(dz + 1, dw + 1);
    for (int i = 0; i <= dz; ++i)
        for (int j = 0; j <= dw; ++j) c(i, j) = cplx(2 * uniform(g) - 1, 2 * uniform(g) - 1);
    return bdk::Series2D(c);
}

// Plain double loop, no Horner.
inline cplx eval(const bdk::Series2D& f, cplx z, cplx w) {
    cplx s = 0.0;
    for (int i = 0; i <= f.caps().z; ++i)
        for (int j = 0; j <= f.caps().w; ++j) s += f.coeff(i, j) * std::pow(z, i) * std::pow(w, j);
    return s;
}

// Columns z^i w^j g_k (0 <= i,j <= n) flattened in a (caps.z+1) x (caps.w+1) box, column-major per series.
inline Eigen::MatrixXcd multiples(const std::vector<bdk::Series2D>& gens, int n, int boxz, int boxw) {
    std::vector<Eigen::VectorXcd> cols;
    for (const auto& g : gens)
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(boxz + 1, boxw + 1);
                for (int a = 0; a <= g.caps().z; ++a)
                    for (int b = 0; b <= g.caps().w; ++b)
                        if (a + i <= boxz && b + j <= boxw) m(a + i, b + j) += g.coeff(a, b);
                cols.emplace_back(Eigen::Map<Eigen::VectorXcd>(m.data(), m.size()));
            }
    Eigen::MatrixXcd out(cols.front().size(), Eigen::Index(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) out.col(Eigen::Index(k)) = cols[k];
    return out;
}

inline int numerical_rank(const Eigen::MatrixXcd& a, double rel = 1e-10) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s[k] > rel * s[0]) ++r;
    return r;
}

// Szegő kernel of the bidisk in closed form
inline cplx szego(cplx l, cplx m, cplx z, cplx w) { return 1.0 / ((1.0 - std::conj(l) * z) * (1.0 - std::conj(m) * w)); }

} // namespace oracle
