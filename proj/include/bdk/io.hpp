#pragma once

#include <iosfwd>

#include <json.hpp>

#include "bdk/blaschke.hpp"
#include "bdk/invariants.hpp"
#include "bdk/lift.hpp"
#include "bdk/submodule.hpp"

namespace bdk {

using json = nlohmann::json;

json to_json(cplx c);  // [re, im]
cplx complex_from_json(const json& j);

// {caps: [Nz, Nw], coeffs: row-major [re, im] pairs}
json to_json(const Series2D& f);
Series2D series_from_json(const json& j);

// {zeros: [[re, im], ...], gamma: [re, im]}
json to_json(const BlaschkeProduct& b);
BlaschkeProduct blaschke_from_json(const json& j);

// {generators, level, rank_tol, basis_dim}
json to_json(const SubmoduleApprox& m);

json to_json(const InvariantValue& v);
json to_json(const VerificationReport& r);
json to_json(const PullbackReport& r);
json to_json(const SandwichReport& r);
json to_json(const IsometryReport& r);
json to_json(const PsdReport& r);

// 16-byte header: "BDKM", version, rows, cols (u32, little endian), then column-major (re, im) doubles.
void write_basis_binary(std::ostream& os, const Eigen::MatrixXcd& basis);
Eigen::MatrixXcd read_basis_binary(std::istream& is);

} // namespace bdk
