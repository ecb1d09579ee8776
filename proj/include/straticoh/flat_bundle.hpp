#pragma once

#include <functional>
#include <tuple>

#include "straticoh/hodge.hpp"

namespace straticoh {

// Flat fiber bundle as a local system on a triangulated base: one fiber
// cochain copy per base simplex (trivialized at its least vertex), with the
// edge monodromies acting on the face that drops the least vertex.
struct FlatBundleSystem {
    ComplexHandle base;
    ComplexHandle fiber;
    InnerProduct fiber_ip;
    std::map<std::pair<Vertex, Vertex>, SimplicialMap> monodromy;  // key (a,b), a<b

    SimplicialMap edge_monodromy(Vertex a, Vertex b) const;
    bool trivial_monodromy() const;
    int base_dim() const { return base->dim(); }
    int fiber_dim() const { return std::max(fiber->dim(), 0); }
};

// Validates automorphisms, inner-product preservation, and the triangle
// cocycle condition g_{ac} = g_{bc} ∘ g_{ab}; violations name the culprit.
FlatBundleSystem build_system(ComplexHandle base, ComplexHandle fiber, InnerProduct fiber_ip,
                              std::map<std::pair<Vertex, Vertex>, SimplicialMap> monodromy);

enum class Selector { Full, Below, AtOrAbove };

struct CoefficientComplex {
    ComplexPtr cx;       // full, τ_{<K} or τ_{≥K} of the fiber cochain complex
    ComplexMap incl;     // into the full fiber cochain complex
};
CoefficientComplex coefficient_complex(const FlatBundleSystem& sys, Selector sel, int K);

// Basis bookkeeping of a twisted total complex: in total degree j, ordered
// blocks (p, base simplex index) each of width dim coeff^{j-p}.
struct TotalLayout {
    std::map<int, std::vector<std::tuple<int, int, int>>> blocks;  // j -> (p, sigma, offset)
    int offset_of(int j, int p, int sigma) const;                  // -1 when absent
};

// Total complex of the double complex with Čech-style horizontal differential
// (transport on the face dropping the least vertex) and vertical (−1)^p d.
ComplexPtr twisted_total(ComplexHandle base, ComplexPtr coeff,
                         const std::function<Matrix(Vertex, Vertex, int)>& transport,
                         TotalLayout* layout = nullptr);

struct StructuredComplex {
    Selector sel = Selector::Full;
    int K = 0;
    CoefficientComplex coeff;
    ComplexPtr total;
    TotalLayout layout;
};
StructuredComplex structured_complex(const FlatBundleSystem& sys, Selector sel, int K = 0);

std::map<int, int> total_cohomology_betti(const FlatBundleSystem& sys, Selector sel, int K = 0);

struct E2Table {
    std::map<std::pair<int, int>, int> dims;  // (p, q) -> dim H^p(B; H^q(fiber))
    int antidiagonal_sum(int r) const;
};
E2Table e2_page(const FlatBundleSystem& sys);

struct CollapseReport {
    std::vector<std::tuple<int, int, int>> rows;  // degree, dim H^r(Tot), E2 sum
    bool collapses = true;
};
CollapseReport collapse_check(const FlatBundleSystem& sys);

struct PoincareLemmaReport {
    std::vector<std::tuple<int, int, int>> rows;  // degree, dim H^r(Tot), dim H^r(τ fiber)
    bool holds = true;
};
// Requires the base to be a single closed simplex.
PoincareLemmaReport poincare_lemma_check(const FlatBundleSystem& sys, Selector sel, int K);

struct PairingVerdict {
    int degree = 0;
    Matrix matrix;
    bool square = false;
    bool nondegenerate = false;
};
struct FiberDualityReport {
    std::vector<PairingVerdict> by_degree;
    bool all_nondegenerate = true;
};
// ⟨a ∪ b, fundamental cycle⟩ on H^r(τ_{<K}) × H^{m-r}(τ_{≥K*}); requires the
// fiber closed and oriented and K + K* = m + 1.
FiberDualityReport fiber_duality_pairing(const OrientedPseudomanifold& fiber,
                                         const InnerProduct& ip, int K, int Kstar);

struct GlobalDualityReport {
    std::vector<std::tuple<int, int, int>> rows;  // r, dim H^r(ft_{<K}), dim H^{n+m-r}(ft_{≥K*})
    bool all_equal = true;
};
// Rank-level duality dim H^r(ft_{<K}) = dim H^{n+m-r}(ft_{≥K*}); gated on a
// closed oriented base and orientation-preserving monodromy.
GlobalDualityReport global_duality_rank_check(const FlatBundleSystem& sys, int K, int Kstar);

enum class RealizationKind { Product, MappingTorus };

struct Realization {
    ComplexHandle space;
    ComplexPtr total;             // the structured total complex being realized
    std::map<int, Matrix> phi;    // chain map Tot^j -> C^j(space), verified exactly
    std::map<int, Matrix> phi_h;  // induced map on cohomology, per degree
    bool injective = true;        // H(phi) injective in every degree
    bool full_iso = false;        // for Selector::Full: H(phi) an isomorphism
};
// Cochain realization of structured classes on the product (trivial
// monodromy, any base) or on the mapping torus (base a standard cycle
// 0..k-1 with the only twist on the closing edge).
Realization realize_structured_classes(const FlatBundleSystem& sys, RealizationKind kind,
                                       Selector sel, int K = 0);

// The realized total space alone, with the same vertex labeling the full
// realization produces.
ComplexHandle realized_total_space(const FlatBundleSystem& sys, RealizationKind kind);

// Inclusion of the cotruncated structured total into the full one (blockwise
// coefficient inclusion).
ComplexMap structured_inclusion(const StructuredComplex& sub,
                                const StructuredComplex& full);

}  // namespace straticoh
