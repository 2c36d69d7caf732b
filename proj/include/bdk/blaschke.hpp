#pragma once

#include <vector>

#include "bdk/series.hpp"

namespace bdk {

// gamma * prod (z - a_k) / (1 - conj(a_k) z)
class BlaschkeProduct {
public:
    BlaschkeProduct(std::vector<cplx> zeros, cplx gamma = 1.0);

    static BlaschkeProduct identity() { return BlaschkeProduct({0.0}); }
    static BlaschkeProduct power(int d);            // z^d
    static BlaschkeProduct factor(cplx a);          // (z - a) / (1 - conj(a) z)
    static BlaschkeProduct automorphism(cplx a);    // (a - z) / (1 - conj(a) z), an involution

    const std::vector<cplx>& zeros() const { return zeros_; }
    cplx gamma() const { return gamma_; }
    int degree() const { return int(zeros_.size()); }

    cplx operator()(cplx z) const;
    cplx at_zero() const { return (*this)(0.0); }

    // theta = numerator / denominator with both factors as exact polynomials.
    Series1D numerator() const;    // gamma * prod (z - a_k)
    Series1D denominator() const;  // prod (1 - conj(a_k) z)

private:
    std::vector<cplx> zeros_;
    cplx gamma_;
};

Series1D blaschke_taylor(const BlaschkeProduct& b, int cap);

// theta1 o theta2 as a Blaschke product of degree d1*d2; zeros found as preimages.
BlaschkeProduct compose(const BlaschkeProduct& outer, const BlaschkeProduct& inner);

struct ModelSpaceBasis {
    std::vector<Series1D> elements;
    BlaschkeProduct source;
};

// Takenaka–Malmquist system, one element per zero, orthonormal in H^2 and orthogonal to theta H^2.
ModelSpaceBasis model_space_basis(const BlaschkeProduct& b, int cap);

} // namespace bdk
