#pragma once

#include "straticoh/simplicial.hpp"

namespace straticoh {

// Positive diagonal weights on the canonical cochain bases; the discrete
// stand-in for a Riemannian metric on the underlying space.
struct InnerProduct {
    std::map<int, std::vector<Rational>> weights;  // degree -> per-basis weight

    static InnerProduct ones(const GradedComplex& c);
    const std::vector<Rational>& at(int r, int expected_dim) const;
    Rational pair(int r, const std::vector<Rational>& a, const std::vector<Rational>& b) const;
    void validate(const GradedComplex& c) const;  // positivity + sizes
};

// Codifferential d* : C^r -> C^{r-1}, the ip-adjoint of d: ⟨da,b⟩ = ⟨a,d*b⟩.
Matrix adjoint(const GradedComplex& c, const InnerProduct& ip, int r);

struct HodgeSplit {
    Subspace im_dstar;
    Subspace harmonic;  // ker d ∩ ker d*
    Subspace im_d;
};
HodgeSplit hodge_decomposition(const GradedComplex& c, const InnerProduct& ip, int r);

struct Truncation {
    ComplexPtr complex;   // τ_{<k}: full below k, im d^{k-1} in degree k, zero above
    ComplexMap inclusion;
    ComplexMap projection;  // chain map with proj∘incl = id and ker = τ_{≥k}
};
Truncation truncate_below(ComplexPtr c, const InnerProduct& ip, int k);

struct Cotruncation {
    ComplexPtr complex;  // τ_{≥k}: zero below k, ker d* in degree k, full above
    ComplexMap inclusion;
};
Cotruncation cotruncate(ComplexPtr c, const InnerProduct& ip, int k);

// Chain isomorphism κ : τ^g_{≥k} -> τ^{g'}_{≥k}; identity above degree k, and
// in degree k the comparison of the two Hodge splittings of ker d*.
ComplexMap metric_comparison_iso(ComplexPtr c, const InnerProduct& g, const InnerProduct& g2,
                                 int k);

// The cochain automorphism induced by an ip-preserving simplicial automorphism,
// restricted to τ_{≥k}. Verifies f* preserves ip and commutes with d*.
ComplexMap automorphism_action(const SimplicialMap& f, const InnerProduct& ip, int k);

struct CupClosureReport {
    int pairs_checked = 0;
    bool closed = true;
    int failing_degree = -1;
};
// Exhaustive check that cup products of τ_{≥k} basis cochains stay in τ_{≥k}.
CupClosureReport cotruncation_cup_closure_check(ComplexHandle k_complex, const InnerProduct& ip,
                                                int k);

}  // namespace straticoh
