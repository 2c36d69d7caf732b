#include "bdk/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bdk {

namespace {

template <class M>
void require_finite(const M& m, const char* what) {
    if (!m.allFinite()) throw InvalidInput(std::string(what) + ": non-finite coefficient");
}

} // namespace

void check_radius(cplx p, double rmax, const char* what) {
    if (!(std::abs(p) <= rmax))
        throw DomainError(std::string(what) + ": |" + std::to_string(std::abs(p)) + "| exceeds r_max=" +
                          std::to_string(rmax) + " (tail bound C*r_max^(N+1)/(1-r_max) no longer small)");
}

// ---- Series1D ----

Series1D::Series1D(Eigen::VectorXcd c) : c_(std::move(c)) {
    if (c_.size() == 0) c_ = Eigen::VectorXcd::Zero(1);
    require_finite(c_, "Series1D");
}

Series1D::Series1D(std::initializer_list<cplx> c) : c_(std::max<Eigen::Index>(1, Eigen::Index(c.size()))) {
    c_.setZero();
    Eigen::Index k = 0;
    for (cplx v : c) c_[k++] = v;
    require_finite(c_, "Series1D");
}

Series1D Series1D::zero(int cap) { return Series1D(Eigen::VectorXcd::Zero(cap + 1)); }

Series1D Series1D::monomial(int k, int cap) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(std::max(cap, k) + 1);
    c[k] = 1.0;
    return Series1D(std::move(c));
}

int Series1D::degree() const {
    for (int k = cap(); k >= 0; --k)
        if (c_[k] != 0.0) return k;
    return -1;
}

Series1D Series1D::truncated(int cap) const {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cap + 1);
    int n = std::min(cap, this->cap());
    c.head(n + 1) = c_.head(n + 1);
    return Series1D(std::move(c));
}

Series1D Series1D::derivative() const {
    if (cap() == 0) return Series1D::zero(0);
    Eigen::VectorXcd d(cap());
    for (int k = 1; k <= cap(); ++k) d[k - 1] = double(k) * c_[k];
    return Series1D(std::move(d));
}

cplx Series1D::horner(cplx z) const {
    cplx acc = 0.0;
    for (int k = cap(); k >= 0; --k) acc = acc * z + c_[k];
    return acc;
}

// ---- Series2D ----

Series2D::Series2D(Eigen::MatrixXcd c) : c_(std::move(c)) {
    if (c_.size() == 0) c_ = Eigen::MatrixXcd::Zero(1, 1);
    require_finite(c_, "Series2D");
}

Series2D Series2D::zero(Caps caps) { return Series2D(Eigen::MatrixXcd::Zero(caps.z + 1, caps.w + 1)); }

Series2D Series2D::monomial(int i, int j, cplx c) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(i + 1, j + 1);
    m(i, j) = c;
    return Series2D(std::move(m));
}

Series2D Series2D::from_1d(const Series1D& f, Var v) {
    if (v == Var::z) return Series2D(Eigen::MatrixXcd(f.coeffs()));
    return Series2D(Eigen::MatrixXcd(f.coeffs().transpose()));
}

cplx Series2D::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i >= c_.rows() || j >= c_.cols()) return 0.0;
    return c_(i, j);
}

Caps Series2D::degree() const {
    Caps d{-1, -1};
    for (Eigen::Index i = 0; i < c_.rows(); ++i)
        for (Eigen::Index j = 0; j < c_.cols(); ++j)
            if (c_(i, j) != 0.0) {
                d.z = std::max(d.z, int(i));
                d.w = std::max(d.w, int(j));
            }
    return d;
}

Series2D Series2D::truncated(Caps caps) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(caps.z + 1, caps.w + 1);
    Eigen::Index r = std::min<Eigen::Index>(caps.z + 1, c_.rows());
    Eigen::Index c = std::min<Eigen::Index>(caps.w + 1, c_.cols());
    m.topLeftCorner(r, c) = c_.topLeftCorner(r, c);
    return Series2D(std::move(m));
}

Series2D Series2D::trimmed() const {
    Caps d = degree();
    return truncated({std::max(d.z, 0), std::max(d.w, 0)});
}

cplx Series2D::horner(cplx z, cplx w) const {
    cplx acc = 0.0;
    for (Eigen::Index i = c_.rows() - 1; i >= 0; --i) {
        cplx row = 0.0;
        for (Eigen::Index j = c_.cols() - 1; j >= 0; --j) row = row * w + c_(i, j);
        acc = acc * z + row;
    }
    return acc;
}

Series2D& Series2D::operator+=(const Series2D& o) {
    Caps a = caps(), b = o.caps();
    if (b.z > a.z || b.w > a.w) *this = truncated({std::max(a.z, b.z), std::max(a.w, b.w)});
    c_.topLeftCorner(o.c_.rows(), o.c_.cols()) += o.c_;
    return *this;
}

Series2D& Series2D::operator-=(const Series2D& o) {
    Caps a = caps(), b = o.caps();
    if (b.z > a.z || b.w > a.w) *this = truncated({std::max(a.z, b.z), std::max(a.w, b.w)});
    c_.topLeftCorner(o.c_.rows(), o.c_.cols()) -= o.c_;
    return *this;
}

// ---- operations ----

cplx inner_product(const Series1D& f, const Series1D& g) {
    Eigen::Index n = std::min(f.coeffs().size(), g.coeffs().size());
    return g.coeffs().head(n).dot(f.coeffs().head(n));  // Eigen's dot conjugates the left operand
}

cplx inner_product(const Series2D& f, const Series2D& g) {
    Eigen::Index r = std::min(f.coeffs().rows(), g.coeffs().rows());
    Eigen::Index c = std::min(f.coeffs().cols(), g.coeffs().cols());
    auto a = f.coeffs().topLeftCorner(r, c);
    auto b = g.coeffs().topLeftCorner(r, c);
    return (a.array() * b.array().conjugate()).sum();
}

Series1D multiply(const Series1D& f, const Series1D& g, int cap) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(cap + 1);
    int df = std::min(f.cap(), cap);
    for (int i = 0; i <= df; ++i) {
        cplx a = f.coeffs()[i];
        if (a == 0.0) continue;
        int n = std::min(g.cap(), cap - i);
        out.segment(i, n + 1) += a * g.coeffs().head(n + 1);
    }
    return Series1D(std::move(out));
}

Series2D multiply(const Series2D& f, const Series2D& g, Caps caps) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(caps.z + 1, caps.w + 1);
    const auto& F = f.coeffs();
    const auto& G = g.coeffs();
    for (Eigen::Index i = 0; i < F.rows() && i <= caps.z; ++i)
        for (Eigen::Index j = 0; j < F.cols() && j <= caps.w; ++j) {
            cplx a = F(i, j);
            if (a == 0.0) continue;
            Eigen::Index r = std::min<Eigen::Index>(G.rows(), caps.z + 1 - i);
            Eigen::Index c = std::min<Eigen::Index>(G.cols(), caps.w + 1 - j);
            out.block(i, j, r, c) += a * G.topLeftCorner(r, c);
        }
    return Series2D(std::move(out));
}

Series1D compose(const Series1D& f, const Series1D& phi, int cap) {
    if (f.degree() > 0 && std::abs(phi[0]) >= 1.0)
        throw InvalidInput("compose: |phi(0)| >= 1, composition leaves the disk");
    Series1D acc = Series1D::zero(cap);
    for (int k = f.cap(); k >= 0; --k) {
        acc = multiply(acc, phi, cap);
        Eigen::VectorXcd c = acc.coeffs();
        c[0] += f[k];
        acc = Series1D(std::move(c));
    }
    return acc;
}

Series2D compose_pair(const Series2D& f, const Series1D& theta, const Series1D& phi, Caps caps) {
    Caps d = f.degree();
    if (d.z > 0 && std::abs(theta[0]) >= 1.0)
        throw InvalidInput("compose_pair: |theta(0)| >= 1, composition leaves the disk");
    if (d.w > 0 && std::abs(phi[0]) >= 1.0)
        throw InvalidInput("compose_pair: |phi(0)| >= 1, composition leaves the disk");
    if (d.z < 0) return Series2D::zero(caps);

    // h_i(w) = sum_j c_ij phi(w)^j, then Horner in theta along z.
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(caps.z + 1, caps.w + 1);
    Eigen::VectorXcd th = theta.truncated(caps.z).coeffs();
    for (int i = d.z; i >= 0; --i) {
        Eigen::VectorXcd row = f.coeffs().row(i).transpose();
        Series1D hi = compose(Series1D(row), phi, caps.w);
        // acc <- acc * theta(z) + h_i(w)
        Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(caps.z + 1, caps.w + 1);
        for (int k = 0; k <= caps.z; ++k) {
            if (th[k] == 0.0) continue;
            next.bottomRows(caps.z + 1 - k) += th[k] * acc.topRows(caps.z + 1 - k);
        }
        next.row(0) += hi.coeffs().transpose();
        acc = std::move(next);
    }
    return Series2D(std::move(acc));
}

Series1D geometric_weight(const Series1D& f, cplx a, int cap) {
    if (!(std::abs(a) < 1.0)) throw InvalidInput("geometric_weight: |a| >= 1");
    Eigen::VectorXcd out = f.truncated(cap).coeffs();
    cplx ab = std::conj(a);
    for (int k = 1; k <= cap; ++k) out[k] += ab * out[k - 1];
    return Series1D(std::move(out));
}

Series2D geometric_weight(const Series2D& f, cplx a, Var v, Caps caps) {
    if (!(std::abs(a) < 1.0)) throw InvalidInput("geometric_weight: |a| >= 1");
    Eigen::MatrixXcd out = f.truncated(caps).coeffs();
    cplx ab = std::conj(a);
    if (v == Var::z) {
        for (int i = 1; i <= caps.z; ++i) out.row(i) += ab * out.row(i - 1);
    } else {
        for (int j = 1; j <= caps.w; ++j) out.col(j) += ab * out.col(j - 1);
    }
    return Series2D(std::move(out));
}

cplx evaluate(const Series2D& f, cplx lambda, cplx mu, double rmax) {
    check_radius(lambda, rmax, "evaluate");
    check_radius(mu, rmax, "evaluate");
    return f.horner(lambda, mu);
}

cplx evaluate(const Series1D& f, cplx z, double rmax) {
    check_radius(z, rmax, "evaluate");
    return f.horner(z);
}

} // namespace bdk
