#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "straticoh/fixtures.hpp"

using namespace straticoh;
namespace fx = straticoh::fixtures;

TEST_CASE("perversity presets and validation") {
    Perversity m = Perversity::lower_middle(5);
    CHECK(m(2) == 0);
    CHECK(m(3) == 0);
    CHECK(m(4) == 1);
    CHECK(m(5) == 1);
    Perversity n = Perversity::upper_middle(5);
    CHECK(n(3) == 1);
    CHECK(n(5) == 2);
    Perversity t = Perversity::top(5);
    CHECK(t(5) == 3);
    CHECK(m.complement() == n);
    CHECK(Perversity::zero(5).complement() == t);
    CHECK_THROWS(Perversity(4, {1, 1, 1}));     // p(2) != 0
    CHECK_THROWS(Perversity(4, {0, 2, 2}));     // jump by 2
    CHECK_THROWS(Perversity(4, {0, 1, 0}));     // decreasing
}

TEST_CASE("cutoff arithmetic") {
    // n=3, lower middle: c = n-1-p(n) = 2
    Cutoffs cm = cutoffs(Perversity::lower_middle(3), 3, 2);
    CHECK(cm.c == 2);
    // complementary q has q(3) = 1, so its c is 1
    CHECK(cutoffs(Perversity::lower_middle(3).complement(), 3, 2).c == 1);
    // zero perversity: c = n-1
    for (int n : {3, 4, 6}) CHECK(cutoffs(Perversity::zero(n), n, n - 1).c == n - 1);
    // K + K* = m + 1 for every preset
    for (int n : {3, 4, 5})
        for (const char* name : {"zero", "lower-middle", "upper-middle", "top"})
            for (int m = 1; m < n; ++m) {
                Cutoffs c = cutoffs(Perversity::preset(name, n), n, m);
                CHECK(c.K + c.Kstar == m + 1);
            }
}

TEST_CASE("isolated space validation") {
    OrientedPseudomanifold M = make_pseudomanifold(fx::ball3());
    CHECK_NOTHROW(make_isolated_space(M, {M.boundary}));
    // links must cover the boundary
    ComplexHandle half = SimplicialComplex::build({{0, 1, 2}});
    CHECK_THROWS(make_isolated_space(M, {half}));
}

TEST_CASE("hi_complex_isolated structure") {
    SUBCASE("solid torus: QI degree-2 dimension bookkeeping") {
        IsolatedSingularitySpace sp = fx::coned_solid_torus_space();
        Perversity p = Perversity::lower_middle(3);
        HiComplex hc = hi_complex_isolated(sp, p);
        CHECK(hc.c == 2);
        RelativeComplex rel = relative_cochain_complex(sp.exterior);
        ComplexPtr lc = sp.links[0]->cochain_complex();
        InnerProduct ip = sp.link_ips[0];
        int kerdst = cotruncate(lc, ip, 2).complex->dim(2);
        CHECK(hc.qi->dim(2) == rel.complex->dim(2) + kerdst);
    }
    SUBCASE("both short exact sequences are validated") {
        IsolatedSingularitySpace sp = fx::cone_on_sphere_space();
        HiComplex hc = hi_complex_isolated(sp, Perversity::lower_middle(3));
        CHECK_NOTHROW(validate_ses(hc.inclusion, hc.onto_truncated));
        CHECK_NOTHROW(validate_ses(hc.rel_into_qi, hc.onto_cotruncated));
    }
}

TEST_CASE("HI groups of the isolated fixtures") {
    Perversity m = Perversity::lower_middle(3);
    SUBCASE("cone on the sphere (X = S^3) vanishes") {
        HIResult hi = hi_groups(fx::cone_on_sphere_space(), m);
        CHECK(hi.betti == std::map<int, int>{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    }
    SUBCASE("coned solid torus") {
        HIResult hi = hi_groups(fx::coned_solid_torus_space(), m);
        CHECK(hi.betti == std::map<int, int>{{0, 0}, {1, 0}, {2, 1}, {3, 0}});
        HIResult hiq = hi_groups(fx::coned_solid_torus_space(), m.complement());
        CHECK(hiq.betti == std::map<int, int>{{0, 0}, {1, 1}, {2, 0}, {3, 0}});
    }
    SUBCASE("suspension of the torus") {
        HIResult hi = hi_groups(fx::suspension_of_torus_space(), m);
        CHECK(hi.betti == std::map<int, int>{{0, 0}, {1, 1}, {2, 3}, {3, 0}});
    }
    SUBCASE("representatives restrict into the cotruncated boundary complex") {
        IsolatedSingularitySpace sp = fx::suspension_of_torus_space();
        HIResult hi = hi_groups(sp, m);
        HiComplex hc = hi_complex_isolated(sp, m);
        for (const auto& [r, reps] : hi.representatives)
            if (reps.cols() > 0) CHECK(try_solve(hc.inclusion.at(r), reps).has_value());
    }
}

TEST_CASE("hi_cup") {
    IsolatedSingularitySpace sp = fx::suspension_of_torus_space();
    Perversity m = Perversity::lower_middle(3);
    HIResult hi = hi_groups(sp, m);
    SUBCASE("degree overflow gives the zero class") {
        HiClass a{2, {Rational(1), Rational(0), Rational(0)}};
        HiClass b{2, {Rational(0), Rational(1), Rational(0)}};
        HiClass ab = hi_cup(sp, m, a, b);
        CHECK(ab.degree == 4);
        CHECK(ab.coords.empty());
    }
    SUBCASE("products of HI^1 generators land in HI^2 deterministically") {
        HiClass a{1, {Rational(1)}};
        HiClass ab = hi_cup(sp, m, a, a);
        CHECK(ab.degree == 2);
        CHECK(ab.coords.size() == 3);
        HiClass again = hi_cup(sp, m, a, a);
        CHECK(ab.coords == again.coords);
    }
}

TEST_CASE("hi_pairing duality") {
    Perversity m = Perversity::lower_middle(3);
    SUBCASE("coned solid torus: the 1x1 block is nonzero") {
        HiPairingReport rep =
            hi_pairing(fx::coned_solid_torus_space(), m, m.complement());
        CHECK(rep.all_nondegenerate);
        CHECK(rep.by_degree[2].matrix.rows() == 1);
        CHECK(sgn(rep.by_degree[2].matrix(0, 0)) != 0);
    }
    SUBCASE("suspension of the torus: 3x3 block of rank 3") {
        HiPairingReport rep =
            hi_pairing(fx::suspension_of_torus_space(), m, m.complement());
        CHECK(rep.all_nondegenerate);
        CHECK(rep.by_degree[2].matrix.rows() == 3);
        CHECK(rank(rep.by_degree[2].matrix) == 3);
    }
    SUBCASE("non-complementary perversities are rejected") {
        CHECK_THROWS_WITH_AS(hi_pairing(fx::coned_solid_torus_space(), m, m),
                             doctest::Contains("complementary"), std::invalid_argument);
    }
}

TEST_CASE("depth-1 spaces") {
    Perversity m3 = Perversity::lower_middle(3);
    SUBCASE("S^2 x S^1 with circle stratum vanishes") {
        HIResult hi = hi_groups_depth1(fx::sphere_times_circle_space(), m3);
        CHECK(hi.betti == std::map<int, int>{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    }
    SUBCASE("D^3 x S^1 with sphere fiber and p(3) = 0") {
        DepthOneSpace sp = fx::ball_times_circle_space();
        // the two ingredients of the LES oracle
        CHECK(total_cohomology_betti(sp.bundle, Selector::AtOrAbove, 2) ==
              std::map<int, int>{{0, 0}, {1, 0}, {2, 1}, {3, 1}});
        CHECK(betti_table(relative_cochain_complex(sp.exterior).complex) ==
              std::map<int, int>{{0, 0}, {1, 0}, {2, 0}, {3, 1}, {4, 1}});
        // H(ft_{≥2}) maps isomorphically onto H^{r+1}(M,∂M), so HI vanishes
        HIResult hi = hi_groups_depth1(sp, Perversity::zero(4));
        CHECK(hi.betti == std::map<int, int>{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
    }
    SUBCASE("point base reproduces the isolated-singularity pipeline") {
        // the coned solid torus, presented as a depth-1 space whose stratum
        // is a single point with fiber the whole boundary torus
        ProductComplex Mprod = fx::solid_torus();
        OrientedPseudomanifold M = make_pseudomanifold(Mprod.complex);
        ComplexHandle link = M.boundary;
        InnerProduct ip = InnerProduct::ones(*link->cochain_complex());
        FlatBundleSystem sys = build_system(fx::point(), link, ip, {});
        ProductComplex realized = ordered_product(fx::point(), link);
        std::map<Vertex, Vertex> ident;
        for (size_t i = 0; i < realized.pairs.size(); ++i)
            ident[static_cast<Vertex>(i)] = realized.pairs[i].second;
        DepthOneSpace sp =
            make_depth_one_space(M, sys, RealizationKind::Product, std::move(ident));
        HIResult depth1 = hi_groups_depth1(sp, m3);
        HIResult isolated = hi_groups(fx::coned_solid_torus_space(), m3);
        CHECK(depth1.betti == isolated.betti);
        CHECK(depth1.betti == std::map<int, int>{{0, 0}, {1, 0}, {2, 1}, {3, 0}});
    }
    SUBCASE("twisted solid torus with a mapping-torus boundary identification") {
        // M is the solid mapping torus of a disc rotation; its boundary is
        // the mapping torus of the rim rotation, with identical labels
        ComplexHandle disc = fx::disc2();
        std::map<Vertex, Vertex> rot{{0, 1}, {1, 2}, {2, 0}};
        MappingTorus solid = mapping_torus(SimplicialMap(disc, disc, rot), 3);
        OrientedPseudomanifold M = make_pseudomanifold(solid.complex);
        ComplexHandle rim = SimplicialComplex::build({{0, 1}, {1, 2}, {0, 2}});
        InnerProduct ip = InnerProduct::ones(*rim->cochain_complex());
        // closing-edge monodromy h with h^{-1} the rim rotation
        SimplicialMap h = SimplicialMap(rim, rim, rot).inverse();
        std::map<std::pair<Vertex, Vertex>, SimplicialMap> mono;
        mono.emplace(std::make_pair<Vertex, Vertex>(0, 2), h);
        FlatBundleSystem sys = build_system(fx::circle(3), rim, ip, mono);
        std::map<Vertex, Vertex> ident;
        for (Vertex v = 0; v < 9; ++v) ident[v] = v;
        DepthOneSpace sp =
            make_depth_one_space(M, sys, RealizationKind::MappingTorus, std::move(ident));
        HIResult hi = hi_groups_depth1(sp, m3);
        CHECK(hi.betti == std::map<int, int>{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    }
    SUBCASE("non-simplicial identifications are rejected") {
        // the mapping torus of the identity and the product triangulate the
        // boundary torus with opposite prism diagonals, so the coordinate
        // swap is not a simplicial isomorphism between them
        DepthOneSpace prod_sp = fx::sphere_times_circle_space();
        MappingTorus mt = mapping_torus(SimplicialMap::identity(prod_sp.bundle.fiber), 3);
        ProductComplex Mprod = fx::solid_torus();
        std::map<Vertex, Vertex> ident;
        for (size_t i = 0; i < mt.decode.size(); ++i) {
            auto [layer, v] = mt.decode[i];
            ident[static_cast<Vertex>(i)] = Mprod.vertex_of(v, layer);
        }
        CHECK_THROWS(make_depth_one_space(prod_sp.exterior, prod_sp.bundle,
                                          RealizationKind::MappingTorus, std::move(ident)));
    }
    SUBCASE("point fiber with K <= 0 degenerates to H(M)") {
        HIResult hi = hi_groups_depth1(fx::disc_point_fiber_space(), Perversity::zero(2));
        CHECK(hi.betti == std::map<int, int>{{0, 1}, {1, 0}, {2, 0}});
    }
    SUBCASE("depth-1 representatives are cocycles") {
        HIResult hi = hi_groups_depth1(fx::sphere_times_circle_space(), m3);
        ComplexPtr cm =
            fx::sphere_times_circle_space().exterior.complex->cochain_complex();
        for (const auto& [r, reps] : hi.representatives)
            CHECK((cm->d(r) * reps).is_zero());
    }
    SUBCASE("identification validation rejects a broken vertex map") {
        DepthOneSpace sp = fx::sphere_times_circle_space();
        std::map<Vertex, Vertex> broken = sp.identification;
        auto it = broken.begin();
        auto it2 = std::next(it);
        std::swap(it->second, it2->second);
        CHECK_THROWS(make_depth_one_space(sp.exterior, sp.bundle, sp.realization, broken));
    }
}

TEST_CASE("de Rham crosscheck") {
    SUBCASE("all isolated fixtures at all four presets") {
        for (const auto& sp :
             {fx::cone_on_sphere_space(), fx::coned_solid_torus_space(),
              fx::suspension_of_torus_space()}) {
            for (const char* name : {"zero", "lower-middle", "upper-middle", "top"}) {
                DeRhamReport rep = derham_crosscheck(sp, Perversity::preset(name, 3));
                CHECK(rep.equal);
            }
        }
    }
    SUBCASE("specific cone ranks") {
        DeRhamReport rep =
            derham_crosscheck(fx::coned_solid_torus_space(), Perversity::lower_middle(3));
        CHECK(std::get<2>(rep.rows[2]) == 1);  // H̃_2(IX) = Q
        CHECK(rep.link_h1_warning);            // the torus link has H_1 ≠ 0
        DeRhamReport rep2 =
            derham_crosscheck(fx::cone_on_sphere_space(), Perversity::lower_middle(3));
        CHECK(!rep2.link_h1_warning);
    }
}

TEST_CASE("simplicial homology matches cohomology ranks") {
    for (ComplexHandle k : {fx::circle(3), fx::sphere2(), fx::torus().complex,
                            fx::klein_bottle().complex}) {
        std::map<int, int> coh = betti_table(k->cochain_complex());
        for (int r = 0; r <= k->dim(); ++r) CHECK(homology(k, r).betti() == coh[r]);
    }
}
