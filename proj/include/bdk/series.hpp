#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bdk/errors.hpp"

namespace bdk {

using cplx = std::complex<double>;

inline constexpr double default_rmax = 0.9;

enum class Var { z, w };

struct Caps {
    int z = 0;
    int w = 0;
    friend bool operator==(const Caps&, const Caps&) = default;
};

// Truncated Taylor series c_0 + c_1 z + ... + c_N z^N.
class Series1D {
public:
    Series1D() : c_(Eigen::VectorXcd::Zero(1)) {}
    explicit Series1D(Eigen::VectorXcd c);
    Series1D(std::initializer_list<cplx> c);

    static Series1D zero(int cap);
    static Series1D monomial(int k, int cap);

    int cap() const { return int(c_.size()) - 1; }
    const Eigen::VectorXcd& coeffs() const { return c_; }
    cplx operator[](int k) const { return (k >= 0 && k <= cap()) ? c_[k] : cplx(0.0); }

    double norm() const { return c_.norm(); }
    int degree() const;  // index of last nonzero coefficient, -1 for the zero series
    Series1D truncated(int cap) const;
    Series1D derivative() const;

    // Horner evaluation without the radius guard; evaluate() below applies it.
    cplx horner(cplx z) const;

private:
    Eigen::VectorXcd c_;
};

// Truncated bivariate series; coefficient (i,j) multiplies z^i w^j.
class Series2D {
public:
    Series2D() : c_(Eigen::MatrixXcd::Zero(1, 1)) {}
    explicit Series2D(Eigen::MatrixXcd c);

    static Series2D zero(Caps caps);
    static Series2D monomial(int i, int j, cplx c = 1.0);
    static Series2D constant(cplx c) { return monomial(0, 0, c); }
    // f(z) viewed as a function of one variable of the bidisk
    static Series2D from_1d(const Series1D& f, Var v);

    Caps caps() const { return {int(c_.rows()) - 1, int(c_.cols()) - 1}; }
    const Eigen::MatrixXcd& coeffs() const { return c_; }
    cplx coeff(int i, int j) const;

    double norm() const { return c_.norm(); }
    Caps degree() const;  // trimmed bidegree; {-1,-1} for the zero series
    Series2D truncated(Caps caps) const;  // drops or zero-pads
    Series2D trimmed() const;

    cplx horner(cplx z, cplx w) const;

    Series2D& operator+=(const Series2D& o);
    Series2D& operator-=(const Series2D& o);
    Series2D& operator*=(cplx s) { c_ *= s; return *this; }

    friend Series2D operator+(Series2D a, const Series2D& b) { return a += b; }
    friend Series2D operator-(Series2D a, const Series2D& b) { return a -= b; }
    friend Series2D operator*(cplx s, Series2D a) { return a *= s; }

private:
    Eigen::MatrixXcd c_;
};

cplx inner_product(const Series1D& f, const Series1D& g);
cplx inner_product(const Series2D& f, const Series2D& g);

Series1D multiply(const Series1D& f, const Series1D& g, int cap);
Series2D multiply(const Series2D& f, const Series2D& g, Caps caps);

// f(theta(z), phi(w)) through caps, by Horner substitution in each variable.
Series2D compose_pair(const Series2D& f, const Series1D& theta, const Series1D& phi, Caps caps);
Series1D compose(const Series1D& f, const Series1D& phi, int cap);

// f / (1 - conj(a) v), truncated to caps.
Series2D geometric_weight(const Series2D& f, cplx a, Var v, Caps caps);
Series1D geometric_weight(const Series1D& f, cplx a, int cap);

// Guarded evaluation; throws DomainError outside |.| <= rmax.
cplx evaluate(const Series2D& f, cplx lambda, cplx mu, double rmax = default_rmax);
cplx evaluate(const Series1D& f, cplx z, double rmax = default_rmax);

// Radius check shared by the guarded operations.
void check_radius(cplx p, double rmax, const char* what);

} // namespace bdk
