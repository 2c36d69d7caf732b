#include "bdk/invariants.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace bdk {

double harmonic_extrapolate(int n1, double v1, int n2, double v2) {
    return (double(n2) * v2 - double(n1) * v1) / double(n2 - n1);
}

std::string to_string(Quantity q) {
    switch (q) {
    case Quantity::sigma: return "sigma";
    case Quantity::hs_norm_squared: return "hs_norm_squared";
    case Quantity::gap: return "gap";
    }
    return "?";
}

namespace {

void guard(cplx a, cplx b, double rmax) {
    check_radius(a, rmax, "invariant point a");
    check_radius(b, rmax, "invariant point b");
}

Eigen::MatrixXcd shift_k(Eigen::MatrixXcd x, Caps c, Var v, int k) {
    for (int s = 0; s < k; ++s) x = box::shift(x, c, v);
    return x;
}

} // namespace

WedgePair::WedgePair(const SubmoduleApprox& m) : z_(wedge(m, Var::z, 0.0)), w_(wedge(m, Var::w, 0.0)) {}

double WedgePair::sigma(int k, cplx a, cplx b) const {
    if (k < 0) throw InvalidInput("sigma: order must be nonnegative");
    const Caps c = z_.parent.ambient();
    const double p = (1.0 - std::norm(a)) * (1.0 - std::norm(b));
    Eigen::MatrixXcd x, y;
    if (k == 0) {
        x = box::weight(z_.basis, c, Var::z, a);
        y = box::weight(w_.basis, c, Var::w, b);
    } else {
        x = box::weight(shift_k(z_.basis, c, Var::w, k), c, Var::w, b);
        y = box::weight(shift_k(w_.basis, c, Var::z, k), c, Var::z, a);
    }
    // both factors agree with the untruncated products on the ambient box, which is all the
    // inner product sees
    return p * (x.adjoint() * y).squaredNorm();
}

InvariantEngine::InvariantEngine(const SubmoduleApprox& m, TruncationPolicy policy)
    : policy_(policy), coarse_(m), fine_(rebuild(m, policy.refined(m.level()))) {}

InvariantValue InvariantEngine::combine(Quantity q, int k, cplx a, cplx b, double v1, double v2) const {
    InvariantValue out;
    out.quantity = q;
    out.order = k;
    out.a = a;
    out.b = b;
    out.level = coarse_.submodule().level();
    out.refined_level = fine_.submodule().level();
    out.raw = v1;
    out.refined = v2;
    out.value = policy_.extrapolate ? harmonic_extrapolate(out.level, v1, out.refined_level, v2) : v2;
    if (q != Quantity::gap) out.value = std::max(out.value, 0.0);
    double rho = std::max(std::abs(a), std::abs(b));
    out.tail_estimate = std::abs(v2 - v1) + std::pow(rho, out.level + 1) / (1.0 - rho);
    return out;
}

InvariantValue InvariantEngine::sigma(int k, cplx a, cplx b) const {
    guard(a, b, policy_.r_max);
    return combine(Quantity::sigma, k, a, b, coarse_.sigma(k, a, b), fine_.sigma(k, a, b));
}

InvariantValue InvariantEngine::gap(cplx a, cplx b) const {
    guard(a, b, policy_.r_max);
    return combine(Quantity::gap, 0, a, b, coarse_.sigma(0, a, b) - coarse_.sigma(1, a, b),
                   fine_.sigma(0, a, b) - fine_.sigma(1, a, b));
}

InvariantValue InvariantEngine::hs_norm_squared(cplx a, cplx b) const {
    guard(a, b, policy_.r_max);
    return combine(Quantity::hs_norm_squared, 0, a, b, coarse_.sigma(0, a, b) + coarse_.sigma(1, a, b),
                   fine_.sigma(0, a, b) + fine_.sigma(1, a, b));
}

InvariantValue sigma0(const SubmoduleApprox& m, cplx a, cplx b, TruncationPolicy p) {
    return sigma_k(m, 0, a, b, p);
}

InvariantValue sigma1(const SubmoduleApprox& m, cplx a, cplx b, TruncationPolicy p) {
    return sigma_k(m, 1, a, b, p);
}

InvariantValue sigma_k(const SubmoduleApprox& m, int k, cplx a, cplx b, TruncationPolicy p) {
    guard(a, b, p.r_max);
    return InvariantEngine(m, p).sigma(k, a, b);
}

InvariantValue sigma_gap(const SubmoduleApprox& m, cplx a, cplx b, TruncationPolicy p) {
    guard(a, b, p.r_max);
    return InvariantEngine(m, p).gap(a, b);
}

InvariantValue hs_norm_core(const SubmoduleApprox& m, cplx a, cplx b, TruncationPolicy p) {
    guard(a, b, p.r_max);
    SubmoduleApprox fine = rebuild(m, p.refined(m.level()));
    double v1 = core_operator_matrix(m, a, b).entries.squaredNorm();
    double v2 = core_operator_matrix(fine, a, b).entries.squaredNorm();
    InvariantValue out;
    out.quantity = Quantity::hs_norm_squared;
    out.a = a;
    out.b = b;
    out.level = m.level();
    out.refined_level = fine.level();
    out.raw = v1;
    out.refined = v2;
    out.value = p.extrapolate ? harmonic_extrapolate(out.level, v1, out.refined_level, v2) : v2;
    double rho = std::max(std::abs(a), std::abs(b));
    out.tail_estimate = std::abs(v2 - v1) + std::pow(rho, out.level + 1) / (1.0 - rho);
    return out;
}

namespace {

Eigen::MatrixXcd fringe_entries(const WedgeBasis& e, cplx b) {
    return e.basis.adjoint() * box::mobius(e.basis, e.parent.ambient(), Var::w, b);
}

int count_small(const Eigen::VectorXd& s, double smax) {
    int n = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] <= 1e-8 * smax) ++n;
    return n;
}

} // namespace

FringeMatrix fringe_operator(const SubmoduleApprox& m, cplx a, cplx b, double rmax) {
    guard(a, b, rmax);
    return {fringe_entries(wedge(m, Var::z, a), b), a, b};
}

FringeAnalysis fringe_analysis(const SubmoduleApprox& m, cplx a, cplx b, TruncationPolicy p) {
    guard(a, b, p.r_max);
    WedgeBasis e = wedge(m, Var::z, a);
    WedgeBasis e2 = wedge(rebuild(m, p.refined(m.level())), Var::z, a);
    Eigen::MatrixXcd f2 = fringe_entries(e2, b);

    // coordinates of the level-N wedge inside the refined one
    Eigen::MatrixXcd x = e2.basis.adjoint() * box::embed(e.basis, e.parent.ambient(), e2.parent.ambient());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(x);
    Eigen::MatrixXcd xo = qr.householderQ() * Eigen::MatrixXcd::Identity(x.rows(), x.cols());

    FringeAnalysis out;
    out.level = m.level();
    out.refined_level = e2.parent.level();
    out.trace_commutator = (f2 * xo).squaredNorm() - (f2.adjoint() * xo).squaredNorm();

    // F* lowers degree, so F2* restricted to the level-N wedge is exact there
    Eigen::JacobiSVD<Eigen::MatrixXcd> s1(f2.adjoint() * xo);
    Eigen::JacobiSVD<Eigen::MatrixXcd> s2(f2 * xo);
    double smax = std::max(s1.singularValues().size() ? s1.singularValues()[0] : 0.0,
                           s2.singularValues().size() ? s2.singularValues()[0] : 0.0);
    out.cokernel_dim = count_small(s1.singularValues(), smax);
    out.kernel_dim = count_small(s2.singularValues(), smax);
    out.index = out.kernel_dim - out.cokernel_dim;
    return out;
}

} // namespace bdk
