#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "straticoh/graded_complex.hpp"

namespace straticoh {

using Vertex = long long;
using Simplex = std::vector<Vertex>;  // strictly increasing vertex labels

// Sorts v in place; returns the permutation sign, or 0 if v has repeats.
int sort_sign(std::vector<Vertex>& v);

class SimplicialComplex;
using ComplexHandle = std::shared_ptr<const SimplicialComplex>;

// Abstract ordered simplicial complex. Vertices are integer labels ordered by
// value; simplices are stored sorted by dimension then lexicographically.
class SimplicialComplex {
public:
    // Closure of the given simplices. Vertex sets may be unsorted but must
    // have no repeats.
    static ComplexHandle build(const std::vector<Simplex>& maximal);

    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    int count(int r) const;
    const std::vector<Simplex>& simplices(int r) const;
    const std::vector<Vertex>& vertices() const { return vertices_; }
    bool has(const Simplex& s) const;
    int index_of(const Simplex& s) const;  // within its dimension; throws if absent
    std::vector<Simplex> maximal_simplices() const;
    bool is_subcomplex_of(const SimplicialComplex& other) const;

    // Simplicial cochain complex with signed incidence coboundaries. Cached so
    // repeated calls share one GradedComplex instance.
    ComplexPtr cochain_complex() const;

    // Chain boundary matrix ∂_r : C_r -> C_{r-1} (transpose of the coboundary).
    Matrix boundary_matrix(int r) const;

private:
    std::vector<Vertex> vertices_;
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::map<Simplex, int>> index_;
    mutable ComplexPtr cochain_cache_;
    static const std::vector<Simplex> empty_list_;
};

struct Cochain {
    ComplexHandle complex;
    int degree = 0;
    std::vector<Rational> values;  // indexed by the canonical r-simplex order

    static Cochain zero(ComplexHandle k, int degree);
    static Cochain dual(ComplexHandle k, const Simplex& s);  // indicator of one simplex
};

Cochain coboundary(const Cochain& a);

// Alexander–Whitney cup product: (a∪b)(v0…v_{p+q}) = a(front)·b(back).
Cochain cup(const Cochain& a, const Cochain& b);

// Bilinear pairing of an r-cochain with an r-chain.
Rational evaluate(const Cochain& a, const std::vector<Rational>& chain);

// Simplicial map given on vertices; images of simplices are simplices
// (dimension may drop).
class SimplicialMap {
public:
    SimplicialMap(ComplexHandle src, ComplexHandle tgt, std::map<Vertex, Vertex> vertex_map);

    static SimplicialMap identity(ComplexHandle k);

    const ComplexHandle& source() const { return src_; }
    const ComplexHandle& target() const { return tgt_; }
    Vertex operator()(Vertex v) const;

    bool is_isomorphism() const;  // bijection of vertices carrying simplices onto simplices
    bool is_automorphism() const;  // isomorphism from a complex to itself
    SimplicialMap inverse() const;  // requires an isomorphism

    // (sorted image, permutation sign); nullopt when the image degenerates.
    std::optional<std::pair<Simplex, int>> image_simplex(const Simplex& s) const;

    // f^# : C^r(target) -> C^r(source)
    Matrix pullback_matrix(int r) const;
    Cochain pullback(const Cochain& a) const;
    // f_# : C_r(source) -> C_r(target) on chains
    Matrix pushforward_matrix(int r) const;
    // f^# as a map of cochain complexes
    ComplexMap pullback_map() const;

private:
    ComplexHandle src_, tgt_;
    std::map<Vertex, Vertex> v_;
};

// Staircase triangulation of |base| x |fiber| on the lexicographically ordered
// vertex pairs, relabeled 0..N-1.
struct ProductComplex {
    ComplexHandle complex;
    ComplexHandle base, fiber;
    std::vector<std::pair<Vertex, Vertex>> pairs;  // product vertex -> (base, fiber)

    SimplicialMap proj_base() const;
    SimplicialMap proj_fiber() const;
    Vertex vertex_of(Vertex b, Vertex f) const;

    // Cochain cross product π₁#a ∪ π₂#b; a chain map inducing the Künneth
    // isomorphism.
    Cochain cross(const Cochain& a, const Cochain& b) const;
};
ProductComplex ordered_product(ComplexHandle base, ComplexHandle fiber);

// Mapping torus of an automorphism f of L: `layers` >= 3 staircase prisms of
// L x [0,1], the last glued to layer 0 through f.
struct MappingTorus {
    ComplexHandle complex;
    ComplexHandle fiber;
    int layers = 0;
    std::vector<std::pair<int, Vertex>> decode;  // torus vertex -> (layer, fiber vertex)

    Vertex vertex_of(int layer, Vertex fiber_vertex) const;
    SimplicialMap fiber_inclusion() const;  // L into layer 0
};
MappingTorus mapping_torus(const SimplicialMap& f, int layers = 3);

struct OrientedPseudomanifold {
    ComplexHandle complex;
    int n = 0;
    ComplexHandle boundary;                    // subcomplex, same vertex labels
    std::vector<Rational> fundamental_cycle;   // ±1 per n-simplex

    bool closed() const { return boundary->count(n - 1) == 0; }
};

// Checks the pseudomanifold incidence conditions, extracts the boundary
// subcomplex and propagates a coherent orientation (±1 per top simplex).
// Throws on incidence violations or an orientation contradiction.
OrientedPseudomanifold make_pseudomanifold(
    ComplexHandle k, const std::optional<std::vector<int>>& orientation_override = std::nullopt);

// Cochains of `sub` (must be a subcomplex of k, same labels) obtained by
// restricting cochains of k; returned as a ComplexMap C(k) -> C(sub).
ComplexMap restriction_map(ComplexHandle k, ComplexHandle sub);

struct RelativeComplex {
    ComplexPtr complex;    // cochains vanishing on the boundary
    ComplexMap inclusion;  // into the absolute cochain complex
};
RelativeComplex relative_cochain_complex(const OrientedPseudomanifold& p);

}  // namespace straticoh
