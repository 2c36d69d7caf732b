#pragma once

// Householder QR for tall sparse column sets whose columns are shifted copies of a few short
// polynomials.  Columns enter in the given order; a column whose residual (after the previous
// reflectors) is below rank_tol * max column norm is dropped.  Each reflector maps the residual
// onto a single pivot row chosen among the not-yet-pivoted rows, so the reflectors stay sparse
// and Q is never formed.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace bdk::detail {

using cplx = std::complex<double>;

struct SparseColumn {
    std::vector<int> rows;
    std::vector<cplx> vals;
};

class SparseHouseholderQR {
public:
    SparseHouseholderQR(int nrows, const std::vector<SparseColumn>& cols, double rank_tol);

    int rows() const { return nrows_; }
    int rank() const { return int(refl_.size()); }
    const std::vector<int>& kept_columns() const { return kept_; }

    // Q e_p for the pivot row of the t-th reflector: an orthonormal basis of the column span.
    Eigen::MatrixXcd range_basis() const;
    // Q e_m for every unpivoted row m: an orthonormal basis of the orthogonal complement.
    Eigen::MatrixXcd complement_basis() const;

    void apply_q(Eigen::VectorXcd& x, int lo, int hi, int last) const;

private:
    struct Reflector {
        int lo, hi, pivot;
        double tau;
        std::vector<int> idx;
        std::vector<cplx> v;
    };

    int nrows_;
    std::vector<Reflector> refl_;
    std::vector<int> kept_;
    std::vector<char> pivoted_;
};

} // namespace bdk::detail
