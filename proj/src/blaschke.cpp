#include "bdk/blaschke.hpp"

#include <cmath>
#include <string>

#include "bdk/roots.hpp"

namespace bdk {

BlaschkeProduct::BlaschkeProduct(std::vector<cplx> zeros, cplx gamma) : zeros_(std::move(zeros)), gamma_(gamma) {
    if (zeros_.empty()) throw InvalidInput("BlaschkeProduct: degree must be at least 1");
    for (cplx a : zeros_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || std::abs(a) > 1.0 - 1e-12)
            throw InvalidInput("BlaschkeProduct: zero outside the open disk");
    if (!std::isfinite(std::abs(gamma_)) || std::abs(std::abs(gamma_) - 1.0) > 1e-12)
        throw InvalidInput("BlaschkeProduct: unimodular constant has |gamma| != 1");
}

BlaschkeProduct BlaschkeProduct::power(int d) {
    if (d < 1) throw InvalidInput("BlaschkeProduct::power: degree must be at least 1");
    return BlaschkeProduct(std::vector<cplx>(std::size_t(d), 0.0));
}

BlaschkeProduct BlaschkeProduct::factor(cplx a) { return BlaschkeProduct({a}, 1.0); }

BlaschkeProduct BlaschkeProduct::automorphism(cplx a) { return BlaschkeProduct({a}, -1.0); }

cplx BlaschkeProduct::operator()(cplx z) const {
    cplx v = gamma_;
    for (cplx a : zeros_) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
}

Series1D BlaschkeProduct::numerator() const {
    Eigen::VectorXcd p = Eigen::VectorXcd::Zero(degree() + 1);
    p[0] = gamma_;
    for (int k = 0; k < degree(); ++k) {
        // p <- p * (z - a)
        for (int i = k + 1; i >= 1; --i) p[i] = p[i - 1] - zeros_[k] * p[i];
        p[0] *= -zeros_[k];
    }
    return Series1D(std::move(p));
}

Series1D BlaschkeProduct::denominator() const {
    Eigen::VectorXcd q = Eigen::VectorXcd::Zero(degree() + 1);
    q[0] = 1.0;
    for (int k = 0; k < degree(); ++k) {
        cplx ab = std::conj(zeros_[k]);
        for (int i = k + 1; i >= 1; --i) q[i] -= ab * q[i - 1];
    }
    return Series1D(std::move(q));
}

namespace {

// f * (z - a) / (1 - conj(a) z), truncated.
Series1D times_factor(const Series1D& f, cplx a, int cap) {
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(cap + 1);
    for (int k = 0; k <= cap; ++k) g[k] = (k > 0 ? f[k - 1] : cplx(0.0)) - a * f[k];
    return geometric_weight(Series1D(std::move(g)), a, cap);
}

} // namespace

Series1D blaschke_taylor(const BlaschkeProduct& b, int cap) {
    if (cap < b.degree()) throw InvalidInput("blaschke_taylor: cap below degree");
    Eigen::VectorXcd one = Eigen::VectorXcd::Zero(cap + 1);
    one[0] = b.gamma();
    Series1D acc(std::move(one));
    for (cplx a : b.zeros()) acc = times_factor(acc, a, cap);
    return acc;
}

ModelSpaceBasis model_space_basis(const BlaschkeProduct& b, int cap) {
    if (cap < b.degree()) throw InvalidInput("model_space_basis: cap below degree");
    ModelSpaceBasis out{{}, b};
    Series1D prefix = Series1D::monomial(0, cap);
    for (cplx a : b.zeros()) {
        Series1D k = geometric_weight(prefix, a, cap);
        Eigen::VectorXcd c = k.coeffs() * std::sqrt(1.0 - std::norm(a));
        out.elements.emplace_back(std::move(c));
        prefix = times_factor(prefix, a, cap);
    }
    return out;
}

BlaschkeProduct compose(const BlaschkeProduct& outer, const BlaschkeProduct& inner) {
    // zeros of outer(inner(z)) are the inner-preimages of outer's zeros
    std::vector<cplx> zeros;
    Series1D p = inner.numerator(), q = inner.denominator();
    for (cplx a : outer.zeros()) {
        Eigen::VectorXcd c = p.coeffs() - a * q.coeffs();
        for (cplx r : polynomial_roots(c)) zeros.push_back(r);
    }
    BlaschkeProduct raw(zeros, 1.0);
    // fix the unimodular constant at a point where raw does not vanish
    cplx z0 = 0.0;
    for (cplx t : {cplx(0.0), cplx(0.31, 0.17), cplx(-0.23, 0.41)}) {
        if (std::abs(raw(t)) > 1e-3) { z0 = t; break; }
    }
    cplx g = outer(inner(z0)) / raw(z0);
    return BlaschkeProduct(zeros, g / std::abs(g));
}

} // namespace bdk
