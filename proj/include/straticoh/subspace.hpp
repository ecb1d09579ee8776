#pragma once

#include "straticoh/matrix.hpp"

namespace straticoh {

// A linear subspace of Q^ambient given by a basis of independent columns.
// The basis is kept as constructed (operations document their basis choice);
// canonical() gives the unique column-echelon basis used for comparisons.
class Subspace {
public:
    Subspace(int ambient, Matrix basis);

    static Subspace zero(int ambient);
    static Subspace full(int ambient);
    // Span of arbitrary columns; basis reduced to the canonical echelon form.
    static Subspace span(int ambient, const Matrix& vectors);
    // Skips the independence check; for bases produced by rref-based routines.
    static Subspace unchecked(int ambient, Matrix basis);

    int ambient() const { return ambient_; }
    int dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    Matrix canonical() const;

    bool contains_vector(const std::vector<Rational>& v) const;
    bool contains(const Subspace& other) const;
    bool equals(const Subspace& other) const;

private:
    explicit Subspace(int ambient) : ambient_(ambient) {}
    int ambient_;
    Matrix basis_;
};

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

// Complement c of `small` inside `big` with small ⊕ c = big, built by greedily
// extending small's basis with columns of big's basis (pivot policy order).
Subspace complement_in(const Subspace& small, const Subspace& big);

// Matrix of f restricted to dom, in the bases of dom and cod.
// Requires f(dom) ⊆ cod.
Matrix restrict_map(const Matrix& f, const Subspace& dom, const Subspace& cod);

// Matrix of the induced map on quotients Q^n/sub_dom -> Q^m/sub_cod in the
// complement bases chosen by complement_in against the full spaces.
// Requires f(sub_dom) ⊆ sub_cod.
Matrix induced_quotient_map(const Matrix& f, const Subspace& sub_dom, const Subspace& sub_cod);

}  // namespace straticoh
