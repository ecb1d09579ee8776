#include "straticoh/fixtures.hpp"

namespace straticoh::fixtures {

ComplexHandle circle(int k) {
    std::vector<Simplex> edges;
    for (int i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1});
    edges.push_back({0, k - 1});
    return SimplicialComplex::build(edges);
}

ComplexHandle sphere2() {
    return SimplicialComplex::build({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

ComplexHandle disc2() { return SimplicialComplex::build({{0, 1, 2}}); }

ComplexHandle ball3() { return SimplicialComplex::build({{0, 1, 2, 3}}); }

ComplexHandle interval() { return SimplicialComplex::build({{0, 1}}); }

ComplexHandle point() { return SimplicialComplex::build({{0}}); }

ProductComplex torus() { return ordered_product(circle(3), circle(3)); }

ProductComplex solid_torus() { return ordered_product(disc2(), circle(3)); }

ProductComplex torus_cylinder() { return ordered_product(torus().complex, interval()); }

ProductComplex ball3_times_circle() { return ordered_product(ball3(), circle(3)); }

SimplicialMap rotation_on(ComplexHandle c) {
    int k = static_cast<int>(c->vertices().size());
    std::map<Vertex, Vertex> vm;
    for (int v = 0; v < k; ++v) vm[v] = (v + 1) % k;
    return SimplicialMap(c, c, std::move(vm));
}

SimplicialMap reflection_on(ComplexHandle c) {
    int k = static_cast<int>(c->vertices().size());
    std::map<Vertex, Vertex> vm;
    for (int v = 0; v < k; ++v) vm[v] = (k - v) % k;
    return SimplicialMap(c, c, std::move(vm));
}

SimplicialMap circle_rotation(int k) { return rotation_on(circle(k)); }

SimplicialMap circle_reflection(int k) { return reflection_on(circle(k)); }

MappingTorus klein_bottle() { return mapping_torus(circle_reflection(6), 3); }

namespace {

FlatBundleSystem trivial_system(ComplexHandle base, ComplexHandle fiber) {
    InnerProduct ip = InnerProduct::ones(*fiber->cochain_complex());
    return build_system(std::move(base), std::move(fiber), std::move(ip), {});
}

}  // namespace

FlatBundleSystem trivial_torus_system() { return trivial_system(circle(3), circle(3)); }

FlatBundleSystem klein_system() {
    ComplexHandle fiber = circle(6);
    InnerProduct ip = InnerProduct::ones(*fiber->cochain_complex());
    std::map<std::pair<Vertex, Vertex>, SimplicialMap> mono;
    mono.emplace(std::make_pair<Vertex, Vertex>(0, 2), reflection_on(fiber));
    return build_system(circle(3), fiber, std::move(ip), std::move(mono));
}

FlatBundleSystem trivial_sphere_system() { return trivial_system(circle(3), sphere2()); }

FlatBundleSystem point_fiber_system() { return trivial_system(circle(3), point()); }

FlatBundleSystem simplex_base_system(int base_dim, ComplexHandle fiber, bool twist_first_edge) {
    Simplex top;
    for (int i = 0; i <= base_dim; ++i) top.push_back(i);
    ComplexHandle base = SimplicialComplex::build({top});
    InnerProduct ip = InnerProduct::ones(*fiber->cochain_complex());
    std::map<std::pair<Vertex, Vertex>, SimplicialMap> mono;
    if (twist_first_edge && base_dim >= 1) {
        // putting the same g on every edge [0, j] satisfies the cocycle
        // condition: on [0,a,b] it reads g_{0b} = id ∘ g_{0a}
        SimplicialMap g = reflection_on(fiber);
        for (int j = 1; j <= base_dim; ++j) mono.emplace(std::make_pair<Vertex, Vertex>(0, j), g);
    }
    return build_system(base, fiber, std::move(ip), std::move(mono));
}

IsolatedSingularitySpace cone_on_sphere_space() {
    OrientedPseudomanifold M = make_pseudomanifold(ball3());
    return make_isolated_space(M, {M.boundary});
}

IsolatedSingularitySpace coned_solid_torus_space() {
    OrientedPseudomanifold M = make_pseudomanifold(solid_torus().complex);
    return make_isolated_space(M, {M.boundary});
}

IsolatedSingularitySpace suspension_of_torus_space() {
    ProductComplex cyl = torus_cylinder();
    OrientedPseudomanifold M = make_pseudomanifold(cyl.complex);
    // the two boundary tori sit over interval vertices 0 and 1
    std::vector<Simplex> bottom, top;
    for (int r = 0; r <= M.boundary->dim(); ++r) {
        for (const auto& s : M.boundary->simplices(r)) {
            bool all0 = true, all1 = true;
            for (Vertex v : s) {
                if (cyl.pairs[static_cast<size_t>(v)].second != 0) all0 = false;
                if (cyl.pairs[static_cast<size_t>(v)].second != 1) all1 = false;
            }
            if (all0) bottom.push_back(s);
            if (all1) top.push_back(s);
        }
    }
    return make_isolated_space(M, {SimplicialComplex::build(bottom),
                                   SimplicialComplex::build(top)});
}

namespace {

DepthOneSpace product_boundary_space(const ProductComplex& Mprod, ComplexHandle sigma,
                                     ComplexHandle link) {
    OrientedPseudomanifold M = make_pseudomanifold(Mprod.complex);
    InnerProduct ip = InnerProduct::ones(*link->cochain_complex());
    FlatBundleSystem sys = build_system(sigma, link, std::move(ip), {});
    // realized product is (Σ, L)-ordered; M's boundary pairs are (L, Σ)-ordered
    ProductComplex realized = ordered_product(sigma, link);
    std::map<Vertex, Vertex> ident;
    for (size_t i = 0; i < realized.pairs.size(); ++i) {
        auto [b, f] = realized.pairs[i];
        ident[static_cast<Vertex>(i)] = Mprod.vertex_of(f, b);
    }
    return make_depth_one_space(std::move(M), std::move(sys), RealizationKind::Product,
                                std::move(ident));
}

}  // namespace

DepthOneSpace sphere_times_circle_space() {
    // X = S^2 x S^1 with Σ the circle factor: M = D^2 x S^1, ∂M = S^1 x S^1
    ProductComplex Mprod = solid_torus();
    std::vector<Simplex> rim{{0, 1}, {1, 2}, {0, 2}};
    return product_boundary_space(Mprod, circle(3), SimplicialComplex::build(rim));
}

DepthOneSpace ball_times_circle_space() {
    ProductComplex Mprod = ball3_times_circle();
    return product_boundary_space(Mprod, circle(3), sphere2());
}

DepthOneSpace disc_point_fiber_space() {
    OrientedPseudomanifold M = make_pseudomanifold(disc2());
    ComplexHandle pt = point();
    InnerProduct ip = InnerProduct::ones(*pt->cochain_complex());
    FlatBundleSystem sys = build_system(circle(3), pt, std::move(ip), {});
    ProductComplex realized = ordered_product(circle(3), pt);
    std::map<Vertex, Vertex> ident;
    for (size_t i = 0; i < realized.pairs.size(); ++i)
        ident[static_cast<Vertex>(i)] = realized.pairs[i].first;
    return make_depth_one_space(std::move(M), std::move(sys), RealizationKind::Product,
                                std::move(ident));
}

}  // namespace straticoh::fixtures
