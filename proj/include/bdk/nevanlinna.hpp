#pragma once

#include <vector>

#include "bdk/blaschke.hpp"

namespace bdk {

struct CountingResult {
    cplx target = 0.0;
    std::vector<cplx> preimages;    // distinct
    std::vector<int> multiplicities;
    double value = 0.0;             // sum of log(1/|z_j|) with multiplicity
};

// Preimages of w under phi from the companion matrix of num - w * den.
CountingResult counting_function(const BlaschkeProduct& phi, cplx w);
// log |(1 - conj(phi(0)) w) / (phi(0) - w)|
double counting_closed_form(const BlaschkeProduct& phi, cplx w);

struct QuadratureConfig {
    int radial = 64;    // Gauss–Legendre nodes
    int angular = 128;  // uniform nodes
    int cap = 400;      // truncation of f∘phi
};

struct ShapiroReport {
    double lhs = 0.0;  // ||f∘phi||^2 - |f(phi(0))|^2
    double rhs = 0.0;  // 2 ∫ |f'|^2 N_phi dA/π
    double relative_gap = 0.0;
    int radial = 0, angular = 0;
};
ShapiroReport shapiro_change_of_variable(const Series1D& f, const BlaschkeProduct& phi, QuadratureConfig q = {});

struct SubordinationReport {
    double ratio = 0.0;  // ||f∘phi|| / ||f||
    double lower = 0.0, upper = 0.0;
    double tail = 0.0;   // size of the last retained coefficients of f∘phi
    bool pass = false;
};
SubordinationReport littlewood_subordination_check(const Series1D& f, const BlaschkeProduct& phi, int cap = 400);

// Nodes and weights on [0, 1].
void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& wt);

} // namespace bdk
