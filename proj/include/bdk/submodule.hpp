#pragma once

#include <memory>
#include <vector>

#include "bdk/series.hpp"

namespace bdk {

struct BiPoint {
    cplx z = 0.0;
    cplx w = 0.0;
};

// Finite stand-in for the submodule [g_1, ..., g_m]: M_N = span{ z^i w^j g_k : 0 <= i,j <= N }.
//
// Vectors live in the ambient box V of monomials z^i w^j with i <= ambient().z, j <= ambient().w,
// indexed row-major (i * (ambient().w + 1) + j).  M_N is stored through an orthonormal basis of its
// complement V ⊖ M_N, which is small; the orthonormal basis of M_N itself is produced on demand.
class SubmoduleApprox {
public:
    const std::vector<Series2D>& generators() const;
    int level() const;
    double rank_tol() const;
    Caps ambient() const;
    Eigen::Index ambient_dim() const;
    Eigen::Index dimension() const;

    const Eigen::MatrixXcd& complement() const;
    Eigen::MatrixXcd basis_matrix() const;
    std::vector<Series2D> basis() const;

    Eigen::VectorXcd project(const Eigen::VectorXcd& v) const;

    Eigen::VectorXcd to_vector(const Series2D& f) const;  // truncates to the ambient box
    Series2D to_series(const Eigen::VectorXcd& v) const;

    struct Impl;
    explicit SubmoduleApprox(std::shared_ptr<const Impl> p) : p_(std::move(p)) {}

private:
    std::shared_ptr<const Impl> p_;
};

SubmoduleApprox build_submodule(const std::vector<Series2D>& generators, int level, double rank_tol = 1e-10);
// Same generators and tolerance at another level.
SubmoduleApprox rebuild(const SubmoduleApprox& m, int level);

struct WedgeBasis {
    SubmoduleApprox parent;
    Var variable;
    cplx point;
    Eigen::MatrixXcd basis;  // columns in parent's ambient coordinates

    Eigen::Index dimension() const { return basis.cols(); }
    std::vector<Series2D> elements() const;
};

// M_N ⊖ (z - a) span{ z^i w^j g_k : i <= N-1, j <= N }, w-analogue symmetric.
WedgeBasis wedge(const SubmoduleApprox& m, Var v, cplx a);

// K^{M_N}_{lambda,mu}(z,w) = sum_k e_k(z,w) conj(e_k(lambda,mu))
cplx kernel_eval(const SubmoduleApprox& m, BiPoint lm, BiPoint zw, double rmax = default_rmax);
// The kernel function K_{lambda,mu} as an element of M_N.
Series2D kernel_function(const SubmoduleApprox& m, BiPoint lm, double rmax = default_rmax);
// G = (1 - conj(lambda) z)(1 - conj(mu) w) K
cplx core_function_eval(const SubmoduleApprox& m, BiPoint lm, BiPoint zw, double rmax = default_rmax);

struct ShiftCompressions {
    Eigen::MatrixXcd rz, rw;
};
ShiftCompressions shift_compressions(const SubmoduleApprox& m);

struct CoreOperatorMatrix {
    Eigen::MatrixXcd entries;
    cplx a = 0.0, b = 0.0;
};
// I - R_a R_a* - R_b R_b* + R_a R_b R_a* R_b* with R_a the compression of (a - z)/(1 - conj(a) z).
CoreOperatorMatrix core_operator_matrix(const SubmoduleApprox& m, cplx a = 0.0, cplx b = 0.0);

// Ambient-box helpers shared by the invariants code.  All act column-wise on vectors in V.
namespace box {
Eigen::MatrixXcd shift(const Eigen::MatrixXcd& x, Caps caps, Var v);            // multiply by z or w, truncate
Eigen::MatrixXcd weight(const Eigen::MatrixXcd& x, Caps caps, Var v, cplx a);  // divide by 1 - conj(a) v
Eigen::MatrixXcd mobius(const Eigen::MatrixXcd& x, Caps caps, Var v, cplx a);  // multiply by (a - v)/(1 - conj(a) v)
Eigen::MatrixXcd embed(const Eigen::MatrixXcd& x, Caps from, Caps to);           // zero-pad / truncate
Eigen::VectorXcd monomials(Caps caps, cplx z, cplx w);                           // z^i w^j in box order
} // namespace box

} // namespace bdk
