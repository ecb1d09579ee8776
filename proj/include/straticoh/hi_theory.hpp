#pragma once

#include "straticoh/flat_bundle.hpp"

namespace straticoh {

// Goresky–MacPherson perversity: p(2) = 0 and p(k) ≤ p(k+1) ≤ p(k) + 1,
// defined for 2 ≤ k ≤ n and extended by 0 below.
class Perversity {
public:
    Perversity(int n, std::vector<int> values);

    static Perversity zero(int n);
    static Perversity lower_middle(int n);
    static Perversity upper_middle(int n);
    static Perversity top(int n);
    static Perversity preset(const std::string& name, int n);

    int n() const { return n_; }
    int operator()(int k) const;
    Perversity complement() const;  // q(k) = k - 2 - p(k)
    bool operator==(const Perversity& other) const;
    const std::vector<int>& values() const { return vals_; }

private:
    int n_;
    std::vector<int> vals_;  // vals_[k-2] = p(k)
};

struct Cutoffs {
    int c;      // boundary cotruncation degree, n - 1 - p(n)
    int K;      // fiberwise cutoff, m - p(m+1)
    int Kstar;  // complementary cutoff, m - q(m+1); K + Kstar = m + 1
};
Cutoffs cutoffs(const Perversity& p, int n, int m);

struct IsolatedSingularitySpace {
    OrientedPseudomanifold exterior;   // M, dim n
    std::vector<ComplexHandle> links;  // closed (n-1)-pseudomanifold subcomplexes of ∂M
    std::vector<InnerProduct> link_ips;
};
// Validates: links disjoint, their union is the boundary subcomplex, each a
// closed pseudomanifold of dimension n-1. Missing inner products default to
// all-ones weights.
IsolatedSingularitySpace make_isolated_space(OrientedPseudomanifold exterior,
                                             std::vector<ComplexHandle> links,
                                             std::vector<InnerProduct> link_ips = {});

struct HiComplex {
    int c = 0;
    ComplexPtr qi;         // subcomplex of C•(M): boundary restriction in ⊕ τ_{≥c}(L_i)
    ComplexMap inclusion;  // QI -> C•(M)
    // 0 -> QI -> C•(M) -> ⊕ τ_{<c}(L_i) -> 0
    ComplexMap onto_truncated;
    // 0 -> C•(M,∂M) -> QI -> ⊕ τ_{≥c}(L_i) -> 0
    ComplexMap rel_into_qi;
    ComplexMap onto_cotruncated;
};
HiComplex hi_complex_isolated(const IsolatedSingularitySpace& space, const Perversity& p);

struct HIResult {
    std::vector<int> perversity_values;
    int cutoff = 0;
    std::map<int, int> betti;
    std::map<int, Matrix> representatives;  // columns are cocycles in C^r(M)
};
HIResult hi_groups(const IsolatedSingularitySpace& space, const Perversity& p);

struct HiClass {
    int degree = 0;
    std::vector<Rational> coords;
};
// Cup product of HI classes through representative cochains; the product
// cochain is checked to lie in QI before coordinates are taken.
HiClass hi_cup(const IsolatedSingularitySpace& space, const Perversity& p, const HiClass& a,
               const HiClass& b);

struct HiPairingReport {
    std::vector<PairingVerdict> by_degree;
    bool all_nondegenerate = true;
};
// ⟨a ∪ b, fundamental cycle of (M,∂M)⟩ on HI^r_p × HI^{n-r}_q for the
// complementary perversity q.
HiPairingReport hi_pairing(const IsolatedSingularitySpace& space, const Perversity& p,
                           const Perversity& q);

struct DepthOneSpace {
    OrientedPseudomanifold exterior;  // M, dim n
    FlatBundleSystem bundle;          // base Σ^b, fiber L^m, m = n - 1 - b
    RealizationKind realization = RealizationKind::Product;
    std::map<Vertex, Vertex> identification;  // realized-space vertex -> boundary vertex
};
// Validates that the identification is a simplicial isomorphism from the
// realized bundle total space onto the boundary subcomplex.
DepthOneSpace make_depth_one_space(OrientedPseudomanifold exterior, FlatBundleSystem bundle,
                                   RealizationKind realization,
                                   std::map<Vertex, Vertex> identification);

// HI of a depth-1 space from the long exact sequence
// ... -> H^{r-1}(ft_{≥K}) -> H^r(M,∂M) -> HI^r -> H^r(ft_{≥K}) -> ...
// with the map realized on the boundary and composed with the pair connecting
// homomorphism.
HIResult hi_groups_depth1(const DepthOneSpace& space, const Perversity& p);

struct DeRhamReport {
    std::vector<std::tuple<int, int, int>> rows;  // r, dim HI^r, dim H̃_r(I^p X)
    bool equal = true;
    bool link_h1_warning = false;  // some link has nontrivial first homology
};
// Rank-level de Rham crosscheck: HI^r against the reduced homology of the
// intersection space, computed as the cone of ⊕_i H_r(t_{<c} L_i) -> H_r(M).
DeRhamReport derham_crosscheck(const IsolatedSingularitySpace& space, const Perversity& p);

// Simplicial homology with rational coefficients (used by the crosscheck).
struct HomologyResult {
    int degree = 0;
    Matrix reps;    // columns are cycles
    Matrix bnds;    // basis of the boundary space
    int betti() const { return reps.cols(); }
    Matrix coordinates(const Matrix& cycles) const;
};
HomologyResult homology(ComplexHandle k, int r);

}  // namespace straticoh
