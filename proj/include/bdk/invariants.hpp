#pragma once

#include <algorithm>
#include <string>

#include "bdk/submodule.hpp"

namespace bdk {

enum class Quantity { sigma, hs_norm_squared, gap };

// A truncated invariant together with the two levels it was computed at.
//
// `value` is the limit estimate: the level-N and level-(N+Δ) values are combined under the
// harmonic tail model v(N) ≈ v∞ − c/N, which is how the truncated sums converge for
// polynomial generators (faster-converging cases are left essentially unchanged).
// `tail_estimate` is |v(N+Δ) − v(N)| plus the geometric tail of the Szegő weights.
struct InvariantValue {
    Quantity quantity = Quantity::sigma;
    int order = 0;
    cplx a = 0.0, b = 0.0;
    int level = 0;
    int refined_level = 0;
    double value = 0.0;
    double raw = 0.0;      // at level
    double refined = 0.0;  // at refined_level
    double tail_estimate = 0.0;
};

struct TruncationPolicy {
    int delta = 0;  // 0 selects level / 2
    double r_max = default_rmax;
    bool extrapolate = true;

    int refined(int level) const { return level + (delta > 0 ? delta : std::max(1, level / 2)); }
};

// Richardson step for v(N) ≈ v∞ − c/N.
double harmonic_extrapolate(int n1, double v1, int n2, double v2);

// The two 0-wedges of M_N and the raw (single-level) invariant sums built from them.
class WedgePair {
public:
    explicit WedgePair(const SubmoduleApprox& m);

    const SubmoduleApprox& submodule() const { return z_.parent; }
    const WedgeBasis& z_wedge() const { return z_; }
    const WedgeBasis& w_wedge() const { return w_; }

    // Σ_k(a,b) at this level, no guard.
    double sigma(int k, cplx a, cplx b) const;

private:
    WedgeBasis z_, w_;
};

// Caches the wedges at level N and N+Δ so grids of points cost one build.
class InvariantEngine {
public:
    InvariantEngine(const SubmoduleApprox& m, TruncationPolicy policy = {});

    InvariantValue sigma(int k, cplx a, cplx b) const;
    InvariantValue gap(cplx a, cplx b) const;
    // Σ0 + Σ1, which equals the squared HS norm of C_M(a,b)
    InvariantValue hs_norm_squared(cplx a, cplx b) const;

    const WedgePair& coarse() const { return coarse_; }
    const WedgePair& fine() const { return fine_; }
    const TruncationPolicy& policy() const { return policy_; }

private:
    InvariantValue combine(Quantity q, int k, cplx a, cplx b, double v1, double v2) const;

    TruncationPolicy policy_;
    WedgePair coarse_, fine_;
};

InvariantValue sigma0(const SubmoduleApprox& m, cplx a, cplx b, TruncationPolicy p = {});
InvariantValue sigma1(const SubmoduleApprox& m, cplx a, cplx b, TruncationPolicy p = {});
InvariantValue sigma_k(const SubmoduleApprox& m, int k, cplx a, cplx b, TruncationPolicy p = {});
InvariantValue sigma_gap(const SubmoduleApprox& m, cplx a, cplx b, TruncationPolicy p = {});

// Frobenius norm squared of core_operator_matrix at level N and N+Δ (dense; meant for moderate N).
InvariantValue hs_norm_core(const SubmoduleApprox& m, cplx a, cplx b, TruncationPolicy p = {});

struct FringeMatrix {
    Eigen::MatrixXcd entries;  // in the wedge(M, z, a) basis
    cplx a = 0.0, b = 0.0;
};

// f -> P_a((b - w)/(1 - conj(b) w) f) on M_N ⊖ (z - a) M_{N-1}
FringeMatrix fringe_operator(const SubmoduleApprox& m, cplx a, cplx b, double rmax = default_rmax);

struct FringeAnalysis {
    double trace_commutator = 0.0;  // tr [F*, F] over the level-N wedge, F taken at level N+Δ
    int kernel_dim = 0;
    int cokernel_dim = 0;
    int index = 0;
    int level = 0;
    int refined_level = 0;
};

// Kernel from the level-N wedge into the level-(N+Δ) wedge (no truncation loss in the range);
// cokernel from ker F* at level N, where F* lowers degree and is captured by the truncation.
FringeAnalysis fringe_analysis(const SubmoduleApprox& m, cplx a, cplx b, TruncationPolicy p = {});

std::string to_string(Quantity q);

} // namespace bdk
