#include "bdk/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

namespace bdk {

namespace {

constexpr std::uint32_t basis_version = 1;

static_assert(std::endian::native == std::endian::little, "binary basis format assumes a little-endian host");

void put_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }

std::uint32_t get_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
}

json point_json(BiPoint p) { return {to_json(p.z), to_json(p.w)}; }

} // namespace

json to_json(cplx c) { return json::array({c.real(), c.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw InvalidInput("complex number must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Series2D& f) {
    const Caps c = f.caps();
    json coeffs = json::array();
    for (int i = 0; i <= c.z; ++i)
        for (int j = 0; j <= c.w; ++j) coeffs.push_back(to_json(f.coeff(i, j)));
    return {{"caps", {c.z, c.w}}, {"coeffs", coeffs}};
}

Series2D series_from_json(const json& j) {
    try {
        const int nz = j.at("caps").at(0).get<int>(), nw = j.at("caps").at(1).get<int>();
        if (nz < 0 || nw < 0) throw InvalidInput("series caps must be nonnegative");
        const json& cs = j.at("coeffs");
        if (cs.size() != std::size_t(nz + 1) * std::size_t(nw + 1)) throw InvalidInput("series coefficient count mismatch");
        Eigen::MatrixXcd m(nz + 1, nw + 1);
        std::size_t k = 0;
        for (int i = 0; i <= nz; ++i)
            for (int jj = 0; jj <= nw; ++jj) m(i, jj) = complex_from_json(cs[k++]);
        return Series2D(std::move(m));
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed series JSON: ") + e.what());
    }
}

json to_json(const BlaschkeProduct& b) {
    json z = json::array();
    for (cplx a : b.zeros()) z.push_back(to_json(a));
    return {{"zeros", z}, {"gamma", to_json(b.gamma())}};
}

BlaschkeProduct blaschke_from_json(const json& j) {
    try {
        std::vector<cplx> zeros;
        for (const auto& z : j.at("zeros")) zeros.push_back(complex_from_json(z));
        const cplx g = j.contains("gamma") ? complex_from_json(j.at("gamma")) : cplx(1.0);
        return BlaschkeProduct(std::move(zeros), g);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed Blaschke JSON: ") + e.what());
    }
}

json to_json(const SubmoduleApprox& m) {
    json g = json::array();
    for (const auto& s : m.generators()) g.push_back(to_json(s));
    return {{"generators", g}, {"level", m.level()}, {"rank_tol", m.rank_tol()}, {"basis_dim", m.dimension()}};
}

json to_json(const InvariantValue& v) {
    return {{"quantity", to_string(v.quantity)}, {"order", v.order},      {"a", to_json(v.a)},
            {"b", to_json(v.b)},                 {"level", v.level},      {"refined_level", v.refined_level},
            {"value", v.value},                  {"raw", v.raw},          {"refined", v.refined},
            {"tail", v.tail_estimate}};
}

json to_json(const VerificationReport& r) {
    json grid = json::array();
    for (const auto& [p, q] : r.grid) grid.push_back({point_json(p), point_json(q)});
    return {{"identity", r.identity}, {"level", r.level},           {"grid", grid},
            {"residuals", r.residuals}, {"max_residual", r.max_residual}, {"pass", r.pass},
            {"tolerance", r.tolerance}};
}

json to_json(const PullbackReport& r) {
    json lifted = json::array(), source = json::array();
    for (int k = 0; k < 2; ++k) {
        lifted.push_back(to_json(r.lifted[k]));
        source.push_back(to_json(r.source[k]));
    }
    return {{"identity", "invariant-pullback"},
            {"a", to_json(r.a)},
            {"b", to_json(r.b)},
            {"lifted", lifted},
            {"source", source},
            {"residuals", {r.residual[0], r.residual[1]}},
            {"max_residual", r.max_residual},
            {"pass", r.pass},
            {"tolerance", r.tolerance}};
}

json to_json(const SandwichReport& r) {
    return {{"identity", "sandwich"},         {"hs_source", r.hs_source},
            {"hs_lifted", r.hs_lifted},       {"lower", r.lower},
            {"upper", r.upper},               {"slack", r.slack},
            {"equality_expected", r.equality_expected}, {"relative_gap", r.relative_gap},
            {"pass", r.pass}};
}

json to_json(const IsometryReport& r) {
    return {{"identity", "isometry"},
            {"deviations", r.deviations},
            {"max_residual", r.max_deviation},
            {"pass", r.pass},
            {"tolerance", r.tolerance}};
}

json to_json(const PsdReport& r) {
    return {{"identity", "psd"},
            {"name", r.name},
            {"min_eigenvalue", r.min_eigenvalue},
            {"hermitian_defect", r.hermitian_defect},
            {"pass", r.pass},
            {"tolerance", r.tolerance}};
}

void write_basis_binary(std::ostream& os, const Eigen::MatrixXcd& basis) {
    os.write("BDKM", 4);
    put_u32(os, basis_version);
    put_u32(os, std::uint32_t(basis.rows()));
    put_u32(os, std::uint32_t(basis.cols()));
    // Eigen storage is column-major complex<double>, i.e. interleaved (re, im)
    os.write(reinterpret_cast<const char*>(basis.data()), std::streamsize(basis.size() * sizeof(cplx)));
}

Eigen::MatrixXcd read_basis_binary(std::istream& is) {
    std::array<char, 4> magic{};
    is.read(magic.data(), 4);
    if (!is || std::memcmp(magic.data(), "BDKM", 4) != 0) throw InvalidInput("basis file: bad magic");
    const std::uint32_t version = get_u32(is), rows = get_u32(is), cols = get_u32(is);
    if (!is || version != basis_version) throw InvalidInput("basis file: unsupported version");
    Eigen::MatrixXcd m(rows, cols);
    is.read(reinterpret_cast<char*>(m.data()), std::streamsize(m.size() * sizeof(cplx)));
    if (!is) throw InvalidInput("basis file: truncated data");
    return m;
}

} // namespace bdk
