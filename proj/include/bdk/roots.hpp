#pragma once

#include <vector>

#include "bdk/series.hpp"

namespace bdk {

// All roots of c_0 + c_1 z + ... + c_d z^d (leading coefficient nonzero), with multiplicity,
// from the eigenvalues of the balanced companion matrix followed by a Newton polish.
std::vector<cplx> polynomial_roots(const Eigen::VectorXcd& coeffs);

} // namespace bdk
