#include "sparse_qr.hpp"

#include <algorithm>
#include <cmath>

namespace bdk::detail {

SparseHouseholderQR::SparseHouseholderQR(int nrows, const std::vector<SparseColumn>& cols, double rank_tol)
    : nrows_(nrows), pivoted_(std::size_t(nrows), 0) {
    double maxnorm = 0.0;
    for (const auto& c : cols) {
        double s = 0.0;
        for (cplx v : c.vals) s += std::norm(v);
        maxnorm = std::max(maxnorm, std::sqrt(s));
    }
    const double thresh = rank_tol * maxnorm;

    std::vector<cplx> x(std::size_t(nrows), 0.0);
    std::vector<char> touched(std::size_t(nrows), 0);
    std::vector<int> support;

    auto touch = [&](int r) {
        if (!touched[r]) {
            touched[r] = 1;
            support.push_back(r);
        }
    };

    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& col = cols[c];
        if (col.rows.empty()) continue;
        int lo = nrows, hi = -1;
        for (std::size_t k = 0; k < col.rows.size(); ++k) {
            int r = col.rows[k];
            x[r] += col.vals[k];
            touch(r);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        for (const auto& h : refl_) {
            if (h.hi < lo || h.lo > hi) continue;
            cplx dot = 0.0;
            for (std::size_t k = 0; k < h.idx.size(); ++k) dot += std::conj(h.v[k]) * x[h.idx[k]];
            if (dot == 0.0) continue;
            dot *= h.tau;
            for (std::size_t k = 0; k < h.idx.size(); ++k) {
                int r = h.idx[k];
                x[r] -= h.v[k] * dot;
                touch(r);
            }
            lo = std::min(lo, h.lo);
            hi = std::max(hi, h.hi);
        }

        double res2 = 0.0, amax = 0.0;
        for (int r : support)
            if (!pivoted_[r]) {
                res2 += std::norm(x[r]);
                amax = std::max(amax, std::abs(x[r]));
            }
        double res = std::sqrt(res2);

        if (res > thresh && res > 0.0) {
            std::sort(support.begin(), support.end());
            // first unpivoted row carrying a sizeable share of the residual
            int p = -1;
            for (int r : support)
                if (!pivoted_[r] && std::abs(x[r]) >= 0.1 * amax) {
                    p = r;
                    break;
                }
            Reflector h;
            cplx xp = x[p];
            double axp = std::abs(xp);
            cplx phase = axp > 0.0 ? xp / axp : cplx(1.0);
            cplx alpha = -phase * res;
            h.pivot = p;
            h.tau = 1.0 / (res * (res + axp));
            h.lo = nrows;
            h.hi = -1;
            for (int r : support) {
                if (pivoted_[r] || x[r] == 0.0) {
                    if (r != p) continue;
                }
                cplx v = (r == p) ? x[r] - alpha : x[r];
                h.idx.push_back(r);
                h.v.push_back(v);
                h.lo = std::min(h.lo, r);
                h.hi = std::max(h.hi, r);
            }
            pivoted_[p] = 1;
            refl_.push_back(std::move(h));
            kept_.push_back(int(c));
        }

        for (int r : support) {
            x[r] = 0.0;
            touched[r] = 0;
        }
        support.clear();
    }
}

void SparseHouseholderQR::apply_q(Eigen::VectorXcd& x, int lo, int hi, int last) const {
    for (int s = last; s >= 0; --s) {
        const auto& h = refl_[std::size_t(s)];
        if (h.hi < lo || h.lo > hi) continue;
        cplx dot = 0.0;
        for (std::size_t k = 0; k < h.idx.size(); ++k) dot += std::conj(h.v[k]) * x[h.idx[k]];
        if (dot == 0.0) continue;
        dot *= h.tau;
        for (std::size_t k = 0; k < h.idx.size(); ++k) x[h.idx[k]] -= h.v[k] * dot;
        lo = std::min(lo, h.lo);
        hi = std::max(hi, h.hi);
    }
}

Eigen::MatrixXcd SparseHouseholderQR::range_basis() const {
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(nrows_, rank());
    Eigen::VectorXcd x(nrows_);
    for (int t = 0; t < rank(); ++t) {
        x.setZero();
        int p = refl_[std::size_t(t)].pivot;
        x[p] = 1.0;
        // reflectors after t do not touch row p
        apply_q(x, p, p, t);
        q.col(t) = x;
    }
    return q;
}

Eigen::MatrixXcd SparseHouseholderQR::complement_basis() const {
    std::vector<int> free_rows;
    for (int r = 0; r < nrows_; ++r)
        if (!pivoted_[std::size_t(r)]) free_rows.push_back(r);
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(nrows_, Eigen::Index(free_rows.size()));
    Eigen::VectorXcd x(nrows_);
    for (std::size_t k = 0; k < free_rows.size(); ++k) {
        x.setZero();
        int m = free_rows[k];
        x[m] = 1.0;
        apply_q(x, m, m, rank() - 1);
        q.col(Eigen::Index(k)) = x;
    }
    return q;
}

} // namespace bdk::detail
