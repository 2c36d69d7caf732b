#pragma once

#include <utility>

#include "bdk/blaschke.hpp"
#include "bdk/invariants.hpp"

namespace bdk {

// Closed forms for the submodule [z - w].

enum class ZwKind { quotient, z_wedge, w_wedge };  // e_n, φ_n, ψ_n

struct ZwBasisElement {
    ZwKind kind = ZwKind::quotient;
    int index = 0;
    Series2D realization;
};

// e_n = (z^{n+1} - w^{n+1}) / ((z - w) sqrt(n+1))
// φ_n = (z e_n - sqrt(n+1) w^{n+1}) / sqrt(n+2), ψ_n the same with z and w swapped
ZwBasisElement zw_basis(ZwKind kind, int n, Caps caps);

// Σ1 of [z - w] from the series over the wedge bases:
//   (1-|a|^2)(1-|b|^2) Σ_k |S_k(a b̄)|^2 / ((k+1)(k+2)) [ 1/((k+1)(k+2)) + Σ_{m>=1} (|a|^{2m} + |b|^{2m}) / ((k+m+1)(k+m+2)) ]
// with S_k(c) = Σ_{i<=k} (k+1-i) c^i, both indices cut at K.  The cut sums behave like
// v∞ + c1/K + c2/K^2, so `value` is the Richardson combination of K, K/2, K/4; K is raised
// (×4, up to 1e7) until two successive combinations agree to `tol`.
// level = final K; raw = partial sum at K; refined = partial sum at K/2.
InvariantValue sigma1_zw(cplx a, cplx b, long cutoff = 100000, double tol = 1e-12);

// Partial sum of the series above with both indices < K.
double sigma1_zw_partial(cplx a, cplx b, long cutoff);

// (<w^{n+1} φ_k, z^{m+1} ψ_l>, <w^n e_k, z^m e_l> / sqrt((k+2)(l+2))), both from coefficients.
std::pair<cplx, cplx> zw_inner_product_relation(int k, int l, int m, int n);

struct Lemma64Report {
    double lhs = 0.0;  // (1 - a^i b^i)^2 (1 - a^2)(1 - b^2)
    double rhs = 0.0;  // (1 - ab)^2 (1 - a^{2i})(1 - b^{2i})
    bool holds = false;
    bool equality_expected = false;  // a = b or i = 1
    bool equality = false;
};
Lemma64Report lemma64_check(double a, double b, int i);

struct Lemma65Sum {
    long cutoff = 0;
    double partial = 0.0;  // terms with m + k <= K
    double tail = 0.0;     // 1/((1-a)(K+1)), the limit of the omitted terms
    double value = 0.0;    // partial + tail
};
// Σ_{m>=0, k>=1} (1 - a^k) a^m / ((m+k)(m+k+1)), summed along n = m + k.
Lemma65Sum lemma65_sum(double a, long cutoff);

enum class ClosedFormExample { zplus_w, beurling };
// (Σ0, Σ1) for zH² + wH² and for θH²
std::pair<double, double> example_closed_forms(ClosedFormExample which, cplx a, cplx b);

// Trapezoidal product rule for the integral of the Poisson-kernel product over the torus (= 1).
double poisson_identity_check(cplx a, cplx b, int nodes);

struct HsCorollaryReport {
    cplx t0 = 0.0, s0 = 0.0;   // θ(0), φ(0)
    InvariantValue sigma1;      // sigma1_zw(θ(0), φ(0))
    double hs_closed = 0.0;     // 2 Σ1 + 1
    bool bound_holds = false;   // hs_closed <= 5
    InvariantValue hs_generic;  // Σ0 + Σ1 of [θ(z) - φ(w)] from the generic engine
    double generic_gap = 0.0;
    bool generic_agrees = false;  // gap <= max(tail, generic_tol)
};
// level <= 0 skips the generic cross-check.
HsCorollaryReport hs_corollary_check(const BlaschkeProduct& theta, const BlaschkeProduct& phi, int level = 0,
                                     double generic_tol = 1e-2, TruncationPolicy p = {});

// p(z) s(w) - r(w) q(z) for θ = p/q, φ = r/s: generates [θ(z) - φ(w)].
Series2D difference_generator(const BlaschkeProduct& theta, const BlaschkeProduct& phi);

} // namespace bdk
