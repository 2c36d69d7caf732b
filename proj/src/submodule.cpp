#include "bdk/submodule.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/SVD>

#include "sparse_qr.hpp"

namespace bdk {

using detail::SparseColumn;
using detail::SparseHouseholderQR;

namespace {

Eigen::Index box_dim(Caps c) { return Eigen::Index(c.z + 1) * (c.w + 1); }
int lex(Caps c, int i, int j) { return i * (c.w + 1) + j; }

// Rows of V sorted by total degree, then z-degree.  Returns lex index -> graded position.
std::vector<int> graded_positions(Caps c) {
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i <= c.z; ++i)
        for (int j = 0; j <= c.w; ++j) pos.emplace_back(i, j);
    std::stable_sort(pos.begin(), pos.end(), [](auto a, auto b) {
        int ta = a.first + a.second, tb = b.first + b.second;
        return ta != tb ? ta < tb : a.first < b.first;
    });
    std::vector<int> g(pos.size());
    for (std::size_t k = 0; k < pos.size(); ++k) g[std::size_t(lex(c, pos[k].first, pos[k].second))] = int(k);
    return g;
}

// z^i w^j h_k for 0 <= i <= imax, 0 <= j <= jmax, in graded multiplier order, rows in graded order.
std::vector<SparseColumn> shift_columns(const std::vector<Series2D>& base, int imax, int jmax, Caps amb,
                                        const std::vector<int>& grad) {
    std::vector<std::pair<int, int>> mult;
    for (int i = 0; i <= imax; ++i)
        for (int j = 0; j <= jmax; ++j) mult.emplace_back(i, j);
    std::stable_sort(mult.begin(), mult.end(), [](auto a, auto b) {
        int ta = a.first + a.second, tb = b.first + b.second;
        return ta != tb ? ta < tb : a.first < b.first;
    });
    std::vector<SparseColumn> cols;
    cols.reserve(mult.size() * base.size());
    for (auto [i, j] : mult)
        for (const auto& h : base) {
            SparseColumn col;
            const auto& c = h.coeffs();
            for (Eigen::Index p = 0; p < c.rows(); ++p)
                for (Eigen::Index q = 0; q < c.cols(); ++q) {
                    if (c(p, q) == 0.0) continue;
                    int r = i + int(p), s = j + int(q);
                    if (r > amb.z || s > amb.w) continue;
                    col.rows.push_back(grad[std::size_t(lex(amb, r, s))]);
                    col.vals.push_back(c(p, q));
                }
            cols.push_back(std::move(col));
        }
    return cols;
}

Eigen::MatrixXcd graded_to_lex(const Eigen::MatrixXcd& g, const std::vector<int>& grad) {
    Eigen::MatrixXcd out(g.rows(), g.cols());
    for (Eigen::Index l = 0; l < g.rows(); ++l) out.row(l) = g.row(grad[std::size_t(l)]);
    return out;
}

} // namespace

struct SubmoduleApprox::Impl {
    std::vector<Series2D> gens;
    int level = 0;
    double tol = 1e-10;
    Caps amb;
    std::vector<int> grad;
    std::shared_ptr<const SparseHouseholderQR> qr;
    Eigen::MatrixXcd comp;
};

const std::vector<Series2D>& SubmoduleApprox::generators() const { return p_->gens; }
int SubmoduleApprox::level() const { return p_->level; }
double SubmoduleApprox::rank_tol() const { return p_->tol; }
Caps SubmoduleApprox::ambient() const { return p_->amb; }
Eigen::Index SubmoduleApprox::ambient_dim() const { return box_dim(p_->amb); }
Eigen::Index SubmoduleApprox::dimension() const { return p_->qr->rank(); }
const Eigen::MatrixXcd& SubmoduleApprox::complement() const { return p_->comp; }

Eigen::MatrixXcd SubmoduleApprox::basis_matrix() const { return graded_to_lex(p_->qr->range_basis(), p_->grad); }

std::vector<Series2D> SubmoduleApprox::basis() const {
    Eigen::MatrixXcd b = basis_matrix();
    std::vector<Series2D> out;
    for (Eigen::Index k = 0; k < b.cols(); ++k) out.push_back(to_series(b.col(k)));
    return out;
}

Eigen::VectorXcd SubmoduleApprox::project(const Eigen::VectorXcd& v) const {
    return v - p_->comp * (p_->comp.adjoint() * v);
}

Eigen::VectorXcd SubmoduleApprox::to_vector(const Series2D& f) const {
    Caps a = p_->amb;
    Eigen::MatrixXcd m = f.truncated(a).coeffs();
    Eigen::VectorXcd v(box_dim(a));
    for (int i = 0; i <= a.z; ++i)
        for (int j = 0; j <= a.w; ++j) v[lex(a, i, j)] = m(i, j);
    return v;
}

Series2D SubmoduleApprox::to_series(const Eigen::VectorXcd& v) const {
    Caps a = p_->amb;
    Eigen::MatrixXcd m(a.z + 1, a.w + 1);
    for (int i = 0; i <= a.z; ++i)
        for (int j = 0; j <= a.w; ++j) m(i, j) = v[lex(a, i, j)];
    return Series2D(std::move(m));
}

SubmoduleApprox build_submodule(const std::vector<Series2D>& generators, int level, double rank_tol) {
    auto impl = std::make_shared<SubmoduleApprox::Impl>();
    Caps deg{0, 0};
    for (const auto& g : generators) {
        Caps d = g.degree();
        if (d.z < 0) continue;  // zero generators contribute nothing
        impl->gens.push_back(g.trimmed());
        deg.z = std::max(deg.z, d.z);
        deg.w = std::max(deg.w, d.w);
    }
    if (impl->gens.empty()) throw InvalidInput("build_submodule: all generators are zero");
    if (level < std::max({1, deg.z, deg.w}))
        throw InvalidInput("build_submodule: level below the generator degree");
    if (!(rank_tol > 0.0)) throw InvalidInput("build_submodule: rank_tol must be positive");

    impl->level = level;
    impl->tol = rank_tol;
    impl->amb = {level + deg.z, level + deg.w};
    impl->grad = graded_positions(impl->amb);
    auto cols = shift_columns(impl->gens, level, level, impl->amb, impl->grad);
    impl->qr = std::make_shared<SparseHouseholderQR>(int(box_dim(impl->amb)), cols, rank_tol);
    impl->comp = graded_to_lex(impl->qr->complement_basis(), impl->grad);
    return SubmoduleApprox(std::move(impl));
}

SubmoduleApprox rebuild(const SubmoduleApprox& m, int level) {
    return build_submodule(m.generators(), level, m.rank_tol());
}

std::vector<Series2D> WedgeBasis::elements() const {
    std::vector<Series2D> out;
    for (Eigen::Index k = 0; k < basis.cols(); ++k) out.push_back(parent.to_series(basis.col(k)));
    return out;
}

WedgeBasis wedge(const SubmoduleApprox& m, Var v, cplx a) {
    if (!(std::abs(a) < 1.0)) throw InvalidInput("wedge: |a| >= 1");
    const int n = m.level();
    const Caps amb = m.ambient();
    const auto grad = graded_positions(amb);

    // shifted copy (v - a) M_{N-1} with the full range kept in the other variable
    Series2D factor = v == Var::z ? Series2D::monomial(1, 0) : Series2D::monomial(0, 1);
    factor -= Series2D::constant(a);
    std::vector<Series2D> shifted;
    for (const auto& g : m.generators()) shifted.push_back(multiply(g, factor, {g.caps().z + 1, g.caps().w + 1}).trimmed());
    int imax = v == Var::z ? n - 1 : n;
    int jmax = v == Var::z ? n : n - 1;
    SparseHouseholderQR sq(int(box_dim(amb)), shift_columns(shifted, imax, jmax, amb, grad), m.rank_tol());
    Eigen::MatrixXcd qs = graded_to_lex(sq.complement_basis(), grad);

    // M_N = shifted copy + span of the edge multiples, so project those.
    int ng = int(m.generators().size());
    Eigen::MatrixXcd edge = Eigen::MatrixXcd::Zero(box_dim(amb), Eigen::Index(n + 1) * ng);
    for (int t = 0; t <= n; ++t)
        for (int k = 0; k < ng; ++k) {
            const auto& c = m.generators()[std::size_t(k)].coeffs();
            for (Eigen::Index p = 0; p < c.rows(); ++p)
                for (Eigen::Index q = 0; q < c.cols(); ++q) {
                    int r = int(p) + (v == Var::w ? t : 0);
                    int s = int(q) + (v == Var::z ? t : 0);
                    edge(lex(amb, r, s), Eigen::Index(t) * ng + k) = c(p, q);
                }
        }
    Eigen::MatrixXcd y = qs.adjoint() * edge;
    Eigen::Index r = m.dimension() - sq.rank();
    WedgeBasis out{m, v, a, {}};
    if (r <= 0) {
        out.basis = Eigen::MatrixXcd::Zero(box_dim(amb), 0);
        return out;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(y, Eigen::ComputeThinU);
    r = std::min<Eigen::Index>(r, svd.singularValues().size());
    out.basis = qs * svd.matrixU().leftCols(r);
    return out;
}

// ---- box helpers ----

namespace box {

Eigen::MatrixXcd shift(const Eigen::MatrixXcd& x, Caps c, Var v) {
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(x.rows(), x.cols());
    const Eigen::Index W = c.w + 1;
    if (v == Var::z) {
        y.bottomRows(x.rows() - W) = x.topRows(x.rows() - W);
    } else {
        for (int i = 0; i <= c.z; ++i) y.middleRows(Eigen::Index(i) * W + 1, c.w) = x.middleRows(Eigen::Index(i) * W, c.w);
    }
    return y;
}

Eigen::MatrixXcd weight(const Eigen::MatrixXcd& x, Caps c, Var v, cplx a) {
    Eigen::MatrixXcd y = x;
    const Eigen::Index W = c.w + 1;
    cplx ab = std::conj(a);
    if (ab == 0.0) return y;
    if (v == Var::z) {
        for (int i = 1; i <= c.z; ++i) y.middleRows(i * W, W) += ab * y.middleRows((i - 1) * W, W);
    } else {
        for (int i = 0; i <= c.z; ++i)
            for (int j = 1; j <= c.w; ++j) y.row(i * W + j) += ab * y.row(i * W + j - 1);
    }
    return y;
}

Eigen::MatrixXcd mobius(const Eigen::MatrixXcd& x, Caps c, Var v, cplx a) {
    return weight(a * x - shift(x, c, v), c, v, a);
}

Eigen::MatrixXcd embed(const Eigen::MatrixXcd& x, Caps from, Caps to) {
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(box_dim(to), x.cols());
    for (int i = 0; i <= std::min(from.z, to.z); ++i)
        for (int j = 0; j <= std::min(from.w, to.w); ++j) y.row(lex(to, i, j)) = x.row(lex(from, i, j));
    return y;
}

Eigen::VectorXcd monomials(Caps c, cplx z, cplx w) {
    Eigen::VectorXcd out(box_dim(c));
    cplx zi = 1.0;
    for (int i = 0; i <= c.z; ++i) {
        cplx t = zi;
        for (int j = 0; j <= c.w; ++j) {
            out[lex(c, i, j)] = t;
            t *= w;
        }
        zi *= z;
    }
    return out;
}

} // namespace box

// ---- kernels ----

namespace {

cplx geometric_sum(cplx x, int n) {  // 1 + x + ... + x^n
    if (std::abs(1.0 - x) < 1e-6) {
        cplx s = 0.0, t = 1.0;
        for (int k = 0; k <= n; ++k, t *= x) s += t;
        return s;
    }
    return (1.0 - std::pow(x, n + 1)) / (1.0 - x);
}

} // namespace

cplx kernel_eval(const SubmoduleApprox& m, BiPoint lm, BiPoint zw, double rmax) {
    for (cplx p : {lm.z, lm.w, zw.z, zw.w}) check_radius(p, rmax, "kernel_eval");
    Caps a = m.ambient();
    cplx kv = geometric_sum(std::conj(lm.z) * zw.z, a.z) * geometric_sum(std::conj(lm.w) * zw.w, a.w);
    const auto& q = m.complement();
    if (q.cols() == 0) return kv;
    Eigen::VectorXcd ux = box::monomials(a, zw.z, zw.w);
    Eigen::VectorXcd uy = box::monomials(a, lm.z, lm.w);
    // q(x) = sum_l q_l x^l, so the complement part is sum_k q_k(x) conj(q_k(y))
    Eigen::VectorXcd qx = q.transpose() * ux;
    Eigen::VectorXcd qy = q.transpose() * uy;
    return kv - qy.dot(qx);
}

Series2D kernel_function(const SubmoduleApprox& m, BiPoint lm, double rmax) {
    check_radius(lm.z, rmax, "kernel_function");
    check_radius(lm.w, rmax, "kernel_function");
    Eigen::VectorXcd s = box::monomials(m.ambient(), lm.z, lm.w).conjugate();
    return m.to_series(m.project(s));
}

cplx core_function_eval(const SubmoduleApprox& m, BiPoint lm, BiPoint zw, double rmax) {
    return (1.0 - std::conj(lm.z) * zw.z) * (1.0 - std::conj(lm.w) * zw.w) * kernel_eval(m, lm, zw, rmax);
}

ShiftCompressions shift_compressions(const SubmoduleApprox& m) {
    Eigen::MatrixXcd b = m.basis_matrix();
    Caps c = m.ambient();
    return {b.adjoint() * box::shift(b, c, Var::z), b.adjoint() * box::shift(b, c, Var::w)};
}

CoreOperatorMatrix core_operator_matrix(const SubmoduleApprox& m, cplx a, cplx b) {
    if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0)) throw DomainError("core_operator_matrix: |a| or |b| >= 1");
    Eigen::MatrixXcd bm = m.basis_matrix();
    Caps c = m.ambient();
    Eigen::MatrixXcd ra = bm.adjoint() * box::mobius(bm, c, Var::z, a);
    Eigen::MatrixXcd rb = bm.adjoint() * box::mobius(bm, c, Var::w, b);
    Eigen::MatrixXcd raa = ra * ra.adjoint();
    Eigen::MatrixXcd rbb = rb * rb.adjoint();
    Eigen::MatrixXcd cm = Eigen::MatrixXcd::Identity(bm.cols(), bm.cols()) - raa - rbb + (ra * rb) * (ra.adjoint() * rb.adjoint()).eval();
    return {cm, a, b};
}

} // namespace bdk
