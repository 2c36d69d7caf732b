#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bdk/blaschke.hpp"
#include "bdk/invariants.hpp"
#include "bdk/submodule.hpp"

namespace bdk {

// M_{θ,φ} = [C_{θ,φ} M].
//
// For theta = p/q and phi = r/s, g(theta, phi) * q^{dz} s^{dw} is a polynomial (dz, dw the
// bidegree of g) and q^{dz} s^{dw} is invertible in H^∞ of the bidisk, so the cleared
// polynomials generate the same submodule as the composed series.  `lifted` is built from
// those; `composed` keeps the truncated series g(theta(z), phi(w)) for cross-checks.
struct LiftedSubmodule {
    SubmoduleApprox source;
    BlaschkeProduct theta;
    BlaschkeProduct phi;
    SubmoduleApprox lifted;
    std::vector<Series2D> composed;
    std::vector<Series2D> cleared;
    int level = 0;
};

LiftedSubmodule lift(const SubmoduleApprox& m, const BlaschkeProduct& theta, const BlaschkeProduct& phi, int level);

// g(p/q, r/s) q^{dz} s^{dw} for the trimmed bidegree (dz, dw) of g.
Series2D clear_denominators(const Series2D& g, const BlaschkeProduct& theta, const BlaschkeProduct& phi);

cplx rk_factor(const BlaschkeProduct& theta, const BlaschkeProduct& phi, BiPoint lm, BiPoint zw,
               double rmax = default_rmax);

using PointPair = std::pair<BiPoint, BiPoint>;

// 10 seeded pairs in the radius-0.5 bidisk plus 5 structured ones (origin, diagonal, axes).
std::vector<PointPair> standard_grid(std::uint64_t seed = 0x5EED);
// n seeded points in the bidisk of radius r.
std::vector<BiPoint> seeded_points(int n, std::uint64_t seed, double r = 0.5);

struct VerificationReport {
    std::string identity;
    int level = 0;
    std::vector<PointPair> grid;
    std::vector<double> residuals;
    double max_residual = 0.0;
    bool pass = false;
    double tolerance = 0.0;
};

// |K^{M_{θ,φ}}(p,q) - K^M(B p, B q) R(p,q)| / (|K^{M_{θ,φ}}(p,q)| + 1) over the grid
VerificationReport verify_kernel_identity(const LiftedSubmodule& l, const std::vector<PointPair>& grid,
                                          double tol = 1e-3);
VerificationReport verify_core_pullback(const LiftedSubmodule& l, const std::vector<PointPair>& grid,
                                        double tol = 1e-3);

struct PullbackReport {
    cplx a = 0.0, b = 0.0;
    InvariantValue lifted[2];  // Σ0, Σ1 of M_{θ,φ} at (a, b)
    InvariantValue source[2];  // Σ0, Σ1 of M at (θ(a), φ(b))
    double residual[2] = {0.0, 0.0};
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};
PullbackReport verify_invariant_pullback(const LiftedSubmodule& l, cplx a, cplx b, double tol = 1e-2,
                                         TruncationPolicy p = {});

struct SandwichReport {
    double hs_source = 0.0;  // ||C_M||_HS
    double hs_lifted = 0.0;  // ||C_{M_{θ,φ}}||_HS
    double lower = 0.0, upper = 0.0;  // factors
    double slack = 0.0;               // from the tail estimates
    bool equality_expected = false;   // θ(0) = φ(0) = 0
    double relative_gap = 0.0;        // |hs_lifted - hs_source| / hs_source
    bool pass = false;
};
SandwichReport littlewood_sandwich(const LiftedSubmodule& l, TruncationPolicy p = {}, double equality_tol = 1e-2);

struct IsometryReport {
    std::vector<double> deviations;  // | ||f (p∘B)|| - ||p|| |
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};
// f must be a unit vector of K_θ ⊗ K_φ; `caps` bounds the truncated products.
IsometryReport weighted_composition_isometry(const Series2D& f, const BlaschkeProduct& theta,
                                             const BlaschkeProduct& phi, const std::vector<Series2D>& samples,
                                             Caps caps = {96, 96}, double tol = 1e-6);

// K(y, x) = K_y(x)
using KernelFn = std::function<cplx(BiPoint, BiPoint)>;

VerificationReport parseval_frame_check(const std::vector<Series2D>& frame, const KernelFn& space_kernel,
                                        const std::vector<PointPair>& grid, double tol, int level = 0);
VerificationReport parseval_frame_check(const std::vector<Series2D>& frame, const SubmoduleApprox& space,
                                        const std::vector<PointPair>& grid, double tol = 1e-9);
VerificationReport parseval_frame_check(const std::vector<Series2D>& frame, const WedgeBasis& space,
                                        const std::vector<PointPair>& grid, double tol = 1e-3);

struct PsdReport {
    std::string name;
    double min_eigenvalue = 0.0;
    double hermitian_defect = 0.0;
    double tolerance = -1e-9;
    bool pass = false;
};
PsdReport kernel_psd_check(const KernelFn& kernel, const std::vector<BiPoint>& points, std::string name = "",
                           double tol = -1e-9);

// Szegő kernel of the bidisk, K_y(x) = 1/((1 - conj(y.z) x.z)(1 - conj(y.w) x.w))
cplx szego(BiPoint y, BiPoint x);

} // namespace bdk
