#include "straticoh/subspace.hpp"

#include <stdexcept>

namespace straticoh {

Subspace::Subspace(int ambient, Matrix basis) : ambient_(ambient), basis_(std::move(basis)) {
    if (basis_.rows() != ambient_)
        throw std::invalid_argument("subspace basis does not live in the ambient space");
    if (rank(basis_) != basis_.cols())
        throw std::invalid_argument("subspace basis columns are dependent");
}

Subspace Subspace::unchecked(int ambient, Matrix basis) {
    Subspace s(ambient);
    if (basis.rows() != ambient)
        throw std::invalid_argument("subspace basis does not live in the ambient space");
    s.basis_ = std::move(basis);
    return s;
}

Subspace Subspace::zero(int ambient) { return unchecked(ambient, Matrix(ambient, 0)); }

Subspace Subspace::full(int ambient) { return unchecked(ambient, Matrix::identity(ambient)); }

Subspace Subspace::span(int ambient, const Matrix& vectors) {
    if (vectors.rows() != ambient)
        throw std::invalid_argument("span vectors do not live in the ambient space");
    // Canonical column-echelon basis: nonzero rows of rref(vectors^T), transposed.
    RrefResult r = rref(vectors.transpose());
    Matrix b(ambient, r.rank());
    for (int j = 0; j < r.rank(); ++j)
        for (int i = 0; i < ambient; ++i) b(i, j) = r.mat(j, i);
    return unchecked(ambient, std::move(b));
}

Matrix Subspace::canonical() const { return span(ambient_, basis_).basis(); }

bool Subspace::contains_vector(const std::vector<Rational>& v) const {
    return try_solve(basis_, Matrix::column(v)).has_value();
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("ambient dimension mismatch");
    return try_solve(basis_, other.basis_).has_value();
}

bool Subspace::equals(const Subspace& other) const {
    return ambient_ == other.ambient_ && canonical() == other.canonical();
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("ambient dimension mismatch");
    if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient());
    // Solutions of A x = B y; the intersection is A * (x-block of the kernel).
    Matrix k = kernel_basis_matrix(Matrix::hcat(a.basis(), -b.basis()));
    Matrix xblock(a.dim(), k.cols());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < k.cols(); ++j) xblock(i, j) = k(i, j);
    return Subspace::span(a.ambient(), a.basis() * xblock);
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("ambient dimension mismatch");
    return Subspace::span(a.ambient(), Matrix::hcat(a.basis(), b.basis()));
}

Subspace complement_in(const Subspace& small, const Subspace& big) {
    if (small.ambient() != big.ambient()) throw std::invalid_argument("ambient dimension mismatch");
    if (!big.contains(small))
        throw std::invalid_argument("complement_in: containment violation");
    // One elimination pass: small's columns are independent, so they all pivot
    // first; the remaining pivots select exactly the greedy extension by
    // big's basis columns.
    RrefResult r = rref(Matrix::hcat(small.basis(), big.basis()));
    std::vector<int> chosen;
    for (int c : r.pivots)
        if (c >= small.dim()) chosen.push_back(c - small.dim());
    return Subspace::unchecked(big.ambient(), big.basis().select_cols(chosen));
}

Matrix restrict_map(const Matrix& f, const Subspace& dom, const Subspace& cod) {
    if (f.cols() != dom.ambient() || f.rows() != cod.ambient())
        throw std::invalid_argument("restrict_map: shape mismatch");
    auto x = try_solve(cod.basis(), f * dom.basis());
    if (!x) throw std::invalid_argument("restrict_map: image not contained in codomain subspace");
    return *x;
}

Matrix induced_quotient_map(const Matrix& f, const Subspace& sub_dom, const Subspace& sub_cod) {
    if (f.cols() != sub_dom.ambient() || f.rows() != sub_cod.ambient())
        throw std::invalid_argument("induced_quotient_map: shape mismatch");
    if (!try_solve(sub_cod.basis(), f * sub_dom.basis()))
        throw std::invalid_argument("induced_quotient_map: f does not preserve the subspaces");
    Subspace cdom = complement_in(sub_dom, Subspace::full(sub_dom.ambient()));
    Subspace ccod = complement_in(sub_cod, Subspace::full(sub_cod.ambient()));
    // f(complement of dom) expressed in complement ⊕ sub coordinates; keep the
    // complement block.
    Matrix rhs = f * cdom.basis();
    Matrix m = solve(Matrix::hcat(ccod.basis(), sub_cod.basis()), rhs);
    Matrix out(ccod.dim(), cdom.dim());
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

}  // namespace straticoh
