#include "straticoh/selftest.hpp"

#include <random>

#include "straticoh/fixtures.hpp"

namespace straticoh {

namespace {

using fixtures::circle;

class Runner {
public:
    explicit Runner(SelfTestReport& rep) : rep_(rep) {}

    void check(const std::string& suite, const std::string& name, bool pass,
               const std::string& detail = "") {
        rep_.checks.push_back({suite, name, pass, detail});
    }

    template <class F>
    void run(const std::string& suite, const std::string& name, F&& f) {
        try {
            f();
            check(suite, name, true);
        } catch (const std::exception& e) {
            check(suite, name, false, e.what());
        }
    }

    void expect(bool cond, const std::string& what) {
        if (!cond) throw std::logic_error(what);
    }

private:
    SelfTestReport& rep_;
};

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = make_rational(num(rng), den(rng));
    return m;
}

std::vector<Rational> random_vector(std::mt19937_64& rng, int n) {
    Matrix m = random_matrix(rng, n, 1);
    return m.col(0);
}

std::map<int, int> expected_betti(std::initializer_list<int> b) {
    std::map<int, int> out;
    int r = 0;
    for (int x : b) out[r++] = x;
    return out;
}

bool betti_eq(const std::map<int, int>& got, const std::map<int, int>& want) {
    for (const auto& [r, b] : want) {
        auto it = got.find(r);
        if ((it == got.end() ? 0 : it->second) != b) return false;
    }
    for (const auto& [r, b] : got) {
        if (b != 0 && !want.count(r)) return false;
    }
    return true;
}

void ratlinalg_suite(Runner& t) {
    std::mt19937_64 rng(20240817);
    for (int it = 0; it < 40; ++it) {
        std::uniform_int_distribution<int> dim(0, 6);
        Matrix m = random_matrix(rng, dim(rng), dim(rng));
        int rk = rank(m);
        t.expect(rk + kernel_basis_matrix(m).cols() == m.cols(), "rank-nullity failed");
        t.expect(rk == rank(m.transpose()), "rank(m) != rank(m^T)");
        RrefResult r = rref(m);
        t.expect(rref(r.mat).mat == r.mat, "rref not idempotent");
    }
    t.check("ratlinalg", "rank_nullity_transpose_idempotent", true);
    for (int it = 0; it < 25; ++it) {
        std::uniform_int_distribution<int> dim(1, 5);
        int n = dim(rng);
        Subspace a = Subspace::span(n, random_matrix(rng, n, dim(rng)));
        Subspace b = Subspace::span(n, random_matrix(rng, n, dim(rng)));
        t.expect(intersect(a, b).dim() + sum(a, b).dim() == a.dim() + b.dim(),
                 "subspace dimension formula failed");
        Subspace big = sum(a, b);
        Subspace comp = complement_in(a, big);
        t.expect(comp.dim() + a.dim() == big.dim() && intersect(comp, a).dim() == 0,
                 "complement is not a complement");
    }
    t.check("ratlinalg", "subspace_dimension_formula", true);
    // determinism: recomputation is bit-identical
    Matrix m = random_matrix(rng, 5, 7);
    t.check("ratlinalg", "deterministic_rref", rref(m).mat == rref(m).mat);
}

void chaincomplex_suite(Runner& t) {
    t.run("chaincomplex", "euler_characteristic", [&] {
        for (ComplexHandle k : {circle(3), fixtures::sphere2(), fixtures::torus().complex}) {
            ComplexPtr c = k->cochain_complex();
            long alt = 0;
            for (const auto& [r, b] : betti_table(c)) alt += (r % 2 == 0 ? b : -b);
            if (alt != c->euler_characteristic())
                throw std::logic_error("Euler characteristic mismatch");
        }
    });
    t.run("chaincomplex", "functoriality", [&] {
        ComplexHandle c6 = circle(6);
        SimplicialMap rot = fixtures::rotation_on(c6);
        ComplexMap f = rot.pullback_map();
        ComplexMap ff = compose(f, f);
        for (int r = 0; r <= 1; ++r) {
            Matrix lhs = map_on_cohomology(ff, r);
            Matrix rhs = map_on_cohomology(f, r) * map_on_cohomology(f, r);
            if (!(lhs == rhs)) throw std::logic_error("H(f∘f) != H(f)H(f)");
        }
    });
    t.run("chaincomplex", "pair_les_exact", [&] {
        for (ComplexHandle k : {fixtures::disc2(), fixtures::solid_torus().complex}) {
            OrientedPseudomanifold p = make_pseudomanifold(k);
            RelativeComplex rel = relative_cochain_complex(p);
            ComplexMap restr = restriction_map(p.complex, p.boundary);
            LongExactSequence les = les_of_ses(rel.inclusion, restr);
            if (!verify_exactness(les.maps, les.labels).all_exact())
                throw std::logic_error("pair LES not exact");
        }
    });
    t.run("chaincomplex", "cone_of_iso_acyclic", [&] {
        ComplexPtr c = fixtures::sphere2()->cochain_complex();
        ComplexPtr cone = mapping_cone(ComplexMap::identity(c));
        for (const auto& [r, b] : betti_table(cone))
            if (b != 0) throw std::logic_error("cone of identity not acyclic");
    });
    t.run("chaincomplex", "randomized_ses_les", [&] {
        std::mt19937_64 rng(777);
        ComplexPtr c = fixtures::torus().complex->cochain_complex();
        for (int it = 0; it < 3; ++it) {
            InnerProduct ip;
            for (int r = c->lo(); r <= c->hi(); ++r) {
                std::vector<Rational> w;
                std::uniform_int_distribution<int> num(1, 5);
                for (int i = 0; i < c->dim(r); ++i) w.emplace_back(num(rng));
                ip.weights[r] = std::move(w);
            }
            int k = it;
            Cotruncation tau = cotruncate(c, ip, k);
            Truncation tlow = truncate_below(c, ip, k);
            LongExactSequence les = les_of_ses(tau.inclusion, tlow.projection);
            if (!verify_exactness(les.maps, les.labels).all_exact())
                throw std::logic_error("truncation SES LES not exact");
        }
    });
}

void simplicial_suite(Runner& t) {
    t.run("simplicial", "cup_unital_associative", [&] {
        ProductComplex tor = fixtures::torus();
        ComplexHandle k = tor.complex;
        std::mt19937_64 rng(4242);
        Cochain one{k, 0, std::vector<Rational>(k->count(0), Rational(1))};
        for (int it = 0; it < 10; ++it) {
            Cochain a{k, 1, random_vector(rng, k->count(1))};
            Cochain b{k, 1, random_vector(rng, k->count(1))};
            Cochain c0{k, 0, random_vector(rng, k->count(0))};
            if (!(cup(one, a).values == a.values)) throw std::logic_error("unit failed");
            Cochain lhs = cup(cup(c0, a), b), rhs = cup(c0, cup(a, b));
            if (!(lhs.values == rhs.values)) throw std::logic_error("associativity failed");
            // Leibniz
            Cochain dab = coboundary(cup(a, c0));
            Cochain want = cup(coboundary(a), c0);
            Cochain corr = cup(a, coboundary(c0));
            for (size_t i = 0; i < dab.values.size(); ++i)
                if (dab.values[i] != want.values[i] - corr.values[i])
                    throw std::logic_error("Leibniz failed");
        }
    });
    t.run("simplicial", "graded_commutativity_on_cohomology", [&] {
        ProductComplex tor = fixtures::torus();
        ComplexPtr c = tor.complex->cochain_complex();
        CohomologyResult h1 = cohomology(c, 1);
        CohomologyResult h2 = cohomology(c, 2);
        for (int i = 0; i < h1.betti(); ++i)
            for (int j = 0; j < h1.betti(); ++j) {
                Cochain a{tor.complex, 1, h1.representatives().col(i)};
                Cochain b{tor.complex, 1, h1.representatives().col(j)};
                Cochain ab = cup(a, b), ba = cup(b, a);
                std::vector<Rational> s(ab.values.size());
                for (size_t x = 0; x < s.size(); ++x) s[x] = ab.values[x] + ba.values[x];
                auto coords = h2.coordinates(s);
                for (const auto& v : coords)
                    if (sgn(v) != 0) throw std::logic_error("a∪b + b∪a not exact");
            }
    });
    t.run("simplicial", "kunneth_betti", [&] {
        if (!betti_eq(betti_table(fixtures::torus().complex->cochain_complex()),
                      expected_betti({1, 2, 1})))
            throw std::logic_error("torus betti");
        ProductComplex cs = ordered_product(circle(3), fixtures::sphere2());
        if (!betti_eq(betti_table(cs.complex->cochain_complex()),
                      expected_betti({1, 1, 1, 1})))
            throw std::logic_error("circle x sphere betti");
    });
    t.run("simplicial", "mapping_torus_of_identity", [&] {
        for (ComplexHandle f : {fixtures::point(), circle(3), fixtures::sphere2()}) {
            MappingTorus mt = mapping_torus(SimplicialMap::identity(f), 3);
            ProductComplex pr = ordered_product(circle(3), f);
            if (!betti_eq(betti_table(mt.complex->cochain_complex()),
                          betti_table(pr.complex->cochain_complex())))
                throw std::logic_error("mapping torus of identity != product");
        }
    });
    t.run("simplicial", "classical_poincare_duality", [&] {
        for (ComplexHandle k : {circle(3), fixtures::torus().complex, fixtures::sphere2()}) {
            OrientedPseudomanifold p = make_pseudomanifold(k);
            ComplexPtr c = k->cochain_complex();
            for (int r = 0; r <= p.n; ++r) {
                CohomologyResult ha = cohomology(c, r), hb = cohomology(c, p.n - r);
                Matrix m(ha.betti(), hb.betti());
                for (int i = 0; i < ha.betti(); ++i)
                    for (int j = 0; j < hb.betti(); ++j) {
                        Cochain a{k, r, ha.representatives().col(i)};
                        Cochain b{k, p.n - r, hb.representatives().col(j)};
                        m(i, j) = evaluate(cup(a, b), p.fundamental_cycle);
                    }
                if (ha.betti() != hb.betti() || rank(m) != ha.betti())
                    throw std::logic_error("PD pairing degenerate");
            }
        }
    });
    t.run("simplicial", "klein_bottle_not_orientable", [&] {
        bool threw = false;
        try {
            make_pseudomanifold(fixtures::klein_bottle().complex);
        } catch (const std::invalid_argument& e) {
            threw = std::string(e.what()).find("non-orientable") != std::string::npos;
        }
        if (!threw) throw std::logic_error("Klein bottle orientation not rejected");
    });
}

void hodgetrunc_suite(Runner& t) {
    t.run("hodgetrunc", "hodge_split_orthogonal", [&] {
        for (ComplexHandle k : {circle(3), fixtures::sphere2(), fixtures::torus().complex}) {
            ComplexPtr c = k->cochain_complex();
            InnerProduct ip = InnerProduct::ones(*c);
            for (int r = c->lo(); r <= c->hi(); ++r) {
                HodgeSplit h = hodge_decomposition(*c, ip, r);
                if (h.im_dstar.dim() + h.harmonic.dim() + h.im_d.dim() != c->dim(r))
                    throw std::logic_error("Hodge split dims");
                if (h.harmonic.dim() != cohomology(c, r).betti())
                    throw std::logic_error("Harm != betti");
                auto orth = [&](const Subspace& a, const Subspace& b) {
                    for (int i = 0; i < a.dim(); ++i)
                        for (int j = 0; j < b.dim(); ++j)
                            if (sgn(ip.pair(r, a.basis().col(i), b.basis().col(j))) != 0)
                                return false;
                    return true;
                };
                if (!orth(h.im_dstar, h.harmonic) || !orth(h.im_dstar, h.im_d) ||
                    !orth(h.harmonic, h.im_d))
                    throw std::logic_error("Hodge split not orthogonal");
            }
        }
    });
    t.run("hodgetrunc", "truncation_ses", [&] {
        for (ComplexHandle k : {circle(3), fixtures::sphere2()}) {
            ComplexPtr c = k->cochain_complex();
            InnerProduct ip = InnerProduct::ones(*c);
            for (int cut = 0; cut <= c->hi() + 1; ++cut) {
                Truncation lo = truncate_below(c, ip, cut);
                Cotruncation hi = cotruncate(c, ip, cut);
                validate_ses(hi.inclusion, lo.projection);
                ComplexMap pi = compose(lo.projection, lo.inclusion);
                for (int r = c->lo(); r <= c->hi(); ++r)
                    if (!(pi.at(r) == Matrix::identity(lo.complex->dim(r))))
                        throw std::logic_error("proj∘incl != id");
            }
        }
    });
    t.run("hodgetrunc", "truncation_cohomology_window", [&] {
        for (ComplexHandle k : {circle(3), fixtures::sphere2(), fixtures::torus().complex}) {
            ComplexPtr c = k->cochain_complex();
            InnerProduct ip = InnerProduct::ones(*c);
            std::map<int, int> full = betti_table(c);
            for (int cut = 0; cut <= c->hi() + 1; ++cut) {
                std::map<int, int> lo = betti_table(truncate_below(c, ip, cut).complex);
                std::map<int, int> hi = betti_table(cotruncate(c, ip, cut).complex);
                for (int r = c->lo(); r <= c->hi(); ++r) {
                    int want_lo = r < cut ? full[r] : 0;
                    int want_hi = r >= cut ? full[r] : 0;
                    if ((lo.count(r) ? lo[r] : 0) != want_lo ||
                        (hi.count(r) ? hi[r] : 0) != want_hi)
                        throw std::logic_error("truncation cohomology window wrong");
                }
            }
        }
    });
    t.run("hodgetrunc", "metric_independence", [&] {
        std::mt19937_64 rng(99);
        for (ComplexHandle k : {circle(3), fixtures::sphere2(), fixtures::torus().complex}) {
            ComplexPtr c = k->cochain_complex();
            InnerProduct ones = InnerProduct::ones(*c);
            for (int it = 0; it < 3; ++it) {
                InnerProduct ip;
                std::uniform_int_distribution<int> num(1, 7);
                for (int r = c->lo(); r <= c->hi(); ++r) {
                    std::vector<Rational> w;
                    for (int i = 0; i < c->dim(r); ++i)
                        w.push_back(make_rational(num(rng), num(rng)));
                    ip.weights[r] = std::move(w);
                }
                int cut = 1;
                ComplexMap kappa = metric_comparison_iso(c, ones, ip, cut);
                if (!betti_eq(betti_table(cotruncate(c, ones, cut).complex),
                              betti_table(cotruncate(c, ip, cut).complex)))
                    throw std::logic_error("cotruncation betti depends on the metric");
            }
        }
    });
    t.run("hodgetrunc", "isometry_action", [&] {
        ComplexHandle c6 = circle(6);
        InnerProduct ip = InnerProduct::ones(*c6->cochain_complex());
        ComplexMap rot = automorphism_action(fixtures::rotation_on(c6), ip, 1);
        ComplexMap refl = automorphism_action(fixtures::reflection_on(c6), ip, 1);
        Matrix r1 = map_on_cohomology(rot, 1), r2 = map_on_cohomology(refl, 1);
        if (!(r1 == Matrix::identity(1)) || !(r2 == -Matrix::identity(1)))
            throw std::logic_error("rotation/reflection action on H^1 wrong");
    });
    t.run("hodgetrunc", "cup_closure", [&] {
        for (ComplexHandle k : {fixtures::torus().complex, fixtures::sphere2()}) {
            InnerProduct ip = InnerProduct::ones(*k->cochain_complex());
            for (int cut = 0; cut <= k->dim() + 1; ++cut)
                if (!cotruncation_cup_closure_check(k, ip, cut).closed)
                    throw std::logic_error("cotruncation not cup-closed");
        }
    });
}

void flatbundle_suite(Runner& t) {
    t.run("flatbundle", "thm_3_10_oracles", [&] {
        if (!betti_eq(total_cohomology_betti(fixtures::trivial_torus_system(), Selector::Full),
                      expected_betti({1, 2, 1})))
            throw std::logic_error("trivial torus total");
        if (!betti_eq(total_cohomology_betti(fixtures::klein_system(), Selector::Full),
                      expected_betti({1, 1, 0})))
            throw std::logic_error("klein total");
        if (!betti_eq(total_cohomology_betti(fixtures::trivial_sphere_system(), Selector::Full),
                      expected_betti({1, 1, 1, 1})))
            throw std::logic_error("circle x sphere total");
    });
    t.run("flatbundle", "realization_comparisons", [&] {
        Realization r1 = realize_structured_classes(fixtures::trivial_torus_system(),
                                                    RealizationKind::Product, Selector::Full);
        Realization r2 = realize_structured_classes(fixtures::klein_system(),
                                                    RealizationKind::MappingTorus, Selector::Full);
        if (!r1.full_iso || !r2.full_iso)
            throw std::logic_error("full-coefficient realization not an isomorphism");
    });
    t.run("flatbundle", "collapse", [&] {
        for (const auto& sys : {fixtures::trivial_torus_system(), fixtures::klein_system(),
                                fixtures::trivial_sphere_system(), fixtures::point_fiber_system()})
            if (!collapse_check(sys).collapses) throw std::logic_error("E2 does not collapse");
    });
    t.run("flatbundle", "naturality_quotient", [&] {
        for (const auto& sys : {fixtures::trivial_torus_system(), fixtures::klein_system()}) {
            int K = 1;
            StructuredComplex sub = structured_complex(sys, Selector::AtOrAbove, K);
            StructuredComplex full = structured_complex(sys, Selector::Full);
            StructuredComplex low = structured_complex(sys, Selector::Below, K);
            ComplexMap incl = structured_inclusion(sub, full);
            std::map<int, Subspace> im;
            for (int r = full.total->lo(); r <= full.total->hi(); ++r)
                im.emplace(r, Subspace(full.total->dim(r), incl.at(r)));
            QuotientResult q = quotient_complex(full.total, im);
            validate_ses(incl, q.projection);
            if (!betti_eq(betti_table(q.complex), betti_table(low.total)))
                throw std::logic_error("H(full/ft_{>=K}) != H(ft_{<K})");
        }
    });
    t.run("flatbundle", "mayer_vietoris_circle", [&] {
        // base circle split into two arcs
        FlatBundleSystem sys = fixtures::klein_system();
        ComplexHandle u = SimplicialComplex::build({{0, 1}, {1, 2}});
        ComplexHandle v = SimplicialComplex::build({{0, 2}});
        ComplexHandle uv = SimplicialComplex::build({{0}, {2}});
        auto restrict_system = [&](ComplexHandle piece) {
            std::map<std::pair<Vertex, Vertex>, SimplicialMap> mono;
            for (const auto& [e, g] : sys.monodromy)
                if (piece->has({e.first, e.second})) mono.emplace(e, g);
            return build_system(piece, sys.fiber, sys.fiber_ip, mono);
        };
        StructuredComplex tb = structured_complex(sys, Selector::Full);
        StructuredComplex tu = structured_complex(restrict_system(u), Selector::Full);
        StructuredComplex tv = structured_complex(restrict_system(v), Selector::Full);
        StructuredComplex tuv = structured_complex(restrict_system(uv), Selector::Full);
        // restriction of structured cochains to a subcomplex of the base
        auto restrict_tot = [&](const StructuredComplex& from, ComplexHandle from_base,
                                const StructuredComplex& to, ComplexHandle to_base) {
            std::map<int, Matrix> comp;
            for (int j = from.total->lo(); j <= from.total->hi(); ++j) {
                Matrix m(to.total->dim(j), from.total->dim(j));
                auto it = to.layout.blocks.find(j);
                if (it != to.layout.blocks.end()) {
                    for (const auto& [p, s, off] : it->second) {
                        const Simplex& sx = to_base->simplices(p)[s];
                        int foff = from.layout.offset_of(j, p, from_base->index_of(sx));
                        int w = to.coeff.cx->dim(j - p);
                        for (int i = 0; i < w; ++i) m(off + i, foff + i) = 1;
                    }
                }
                comp[j] = std::move(m);
            }
            return ComplexMap(from.total, to.total, std::move(comp));
        };
        ComplexMap ru = restrict_tot(tb, sys.base, tu, u);
        ComplexMap rv = restrict_tot(tb, sys.base, tv, v);
        ComplexMap ruv_u = restrict_tot(tu, u, tuv, uv);
        ComplexMap ruv_v = restrict_tot(tv, v, tuv, uv);
        // 0 -> Tot(B) -> Tot(U) ⊕ Tot(V) -> Tot(U∩V) -> 0
        DirectSum mid = direct_sum({tu.total, tv.total});
        std::map<int, Matrix> icomp, pcomp;
        for (int j = tb.total->lo(); j <= tb.total->hi(); ++j) {
            icomp[j] = Matrix::vcat(ru.at(j), rv.at(j));
            pcomp[j] = Matrix::hcat(ruv_u.at(j), -ruv_v.at(j));
        }
        ComplexMap incl(tb.total, mid.complex, std::move(icomp));
        ComplexMap proj(mid.complex, tuv.total, std::move(pcomp));
        LongExactSequence les = les_of_ses(incl, proj);
        if (!verify_exactness(les.maps, les.labels).all_exact())
            throw std::logic_error("structured Mayer-Vietoris not exact");
    });
    t.run("flatbundle", "poincare_lemmas", [&] {
        for (bool twist : {false, true}) {
            FlatBundleSystem edge_sys = fixtures::simplex_base_system(1, circle(6), twist);
            if (!poincare_lemma_check(edge_sys, Selector::AtOrAbove, 1).holds)
                throw std::logic_error("cotruncation Poincare lemma (edge base)");
        }
        FlatBundleSystem tri = fixtures::simplex_base_system(2, fixtures::sphere2(), false);
        if (!poincare_lemma_check(tri, Selector::Below, 2).holds)
            throw std::logic_error("truncation Poincare lemma (triangle base)");
    });
    t.run("flatbundle", "fiber_duality", [&] {
        InnerProduct ipc = InnerProduct::ones(*circle(3)->cochain_complex());
        if (!fiber_duality_pairing(make_pseudomanifold(circle(3)), ipc, 1, 1).all_nondegenerate)
            throw std::logic_error("circle fiber duality");
        InnerProduct ips = InnerProduct::ones(*fixtures::sphere2()->cochain_complex());
        if (!fiber_duality_pairing(make_pseudomanifold(fixtures::sphere2()), ips, 1, 2)
                 .all_nondegenerate ||
            !fiber_duality_pairing(make_pseudomanifold(fixtures::sphere2()), ips, 2, 1)
                 .all_nondegenerate)
            throw std::logic_error("sphere fiber duality");
    });
    t.run("flatbundle", "global_duality_ranks", [&] {
        if (!global_duality_rank_check(fixtures::trivial_torus_system(), 1, 1).all_equal)
            throw std::logic_error("torus system global duality");
        if (!global_duality_rank_check(fixtures::trivial_sphere_system(), 2, 1).all_equal ||
            !global_duality_rank_check(fixtures::trivial_sphere_system(), 1, 2).all_equal)
            throw std::logic_error("sphere system global duality");
    });
    t.run("flatbundle", "orientation_gate", [&] {
        bool caught = false;
        try {
            global_duality_rank_check(fixtures::klein_system(), 1, 1);
        } catch (const std::invalid_argument& e) {
            caught = std::string(e.what()).find("orientation obstruction") != std::string::npos;
        }
        if (!caught) throw std::logic_error("orientation-reversing monodromy not gated");
    });
    t.run("flatbundle", "broken_cocycle_named", [&] {
        ComplexHandle base = fixtures::sphere2();
        ComplexHandle fiber = circle(6);
        InnerProduct ip = InnerProduct::ones(*fiber->cochain_complex());
        std::map<std::pair<Vertex, Vertex>, SimplicialMap> mono;
        mono.emplace(std::make_pair<Vertex, Vertex>(0, 1), fixtures::reflection_on(fiber));
        bool caught = false;
        try {
            build_system(base, fiber, ip, mono);
        } catch (const std::invalid_argument& e) {
            std::string w = e.what();
            caught = w.find("cocycle") != std::string::npos &&
                     w.find("[0,1,2]") != std::string::npos;
        }
        if (!caught) throw std::logic_error("cocycle violation not reported with its triangle");
    });
}

void hitheory_suite(Runner& t) {
    t.run("hitheory", "hi_values", [&] {
        auto check = [&](const IsolatedSingularitySpace& sp, const Perversity& p,
                         std::map<int, int> want, const char* what) {
            HIResult hi = hi_groups(sp, p);
            if (!betti_eq(hi.betti, want)) throw std::logic_error(std::string("HI of ") + what);
        };
        check(fixtures::cone_on_sphere_space(), Perversity::lower_middle(3),
              expected_betti({0, 0, 0, 0}), "cone on S^2");
        check(fixtures::coned_solid_torus_space(), Perversity::lower_middle(3),
              expected_betti({0, 0, 1, 0}), "coned solid torus");
        check(fixtures::coned_solid_torus_space(),
              Perversity::lower_middle(3).complement(), expected_betti({0, 1, 0, 0}),
              "coned solid torus (complementary)");
        check(fixtures::suspension_of_torus_space(), Perversity::lower_middle(3),
              expected_betti({0, 1, 3, 0}), "suspension of T^2");
    });
    t.run("hitheory", "hi_depth1_values", [&] {
        HIResult hi = hi_groups_depth1(fixtures::sphere_times_circle_space(),
                                       Perversity::lower_middle(3));
        if (!betti_eq(hi.betti, expected_betti({0, 0, 0, 0})))
            throw std::logic_error("depth-1 S^2 x S^1 HI");
    });
    t.run("hitheory", "cutoff_endpoints", [&] {
        IsolatedSingularitySpace sp = fixtures::coned_solid_torus_space();
        // c <= 0: QI = C(M); c > n-1: QI = relative complex
        HiComplex top = hi_complex_isolated(sp, Perversity::zero(3));  // c = 2
        ComplexPtr cm = sp.exterior.complex->cochain_complex();
        std::map<int, int> hm = betti_table(cm);
        std::map<int, int> hrel = betti_table(relative_cochain_complex(sp.exterior).complex);
        // emulate the endpoint cutoffs through the cotruncation conventions
        auto betti_at_cutoff = [&](int c) {
            std::map<int, Subspace> s;
            for (int r = 0; r <= sp.exterior.complex->dim(); ++r) {
                if (r > c) { s.emplace(r, Subspace::full(cm->dim(r))); continue; }
                Matrix stacked(0, cm->dim(r));
                ComplexMap restr = restriction_map(sp.exterior.complex, sp.links[0]);
                ComplexPtr lc = sp.links[0]->cochain_complex();
                Matrix block = r < c ? restr.at(r)
                                     : truncate_below(lc, sp.link_ips[0], c).projection.at(c) *
                                           restr.at(c);
                stacked = Matrix::vcat(stacked, block);
                s.emplace(r, Subspace(cm->dim(r), kernel_basis_matrix(stacked)));
            }
            return betti_table(subcomplex_from_subspaces(cm, s).complex);
        };
        if (!betti_eq(betti_at_cutoff(-1), hm)) throw std::logic_error("c<=0 endpoint != H(M)");
        if (!betti_eq(betti_at_cutoff(sp.exterior.n), hrel))
            throw std::logic_error("c>n-1 endpoint != H(M,∂M)");
    });
    t.run("hitheory", "pairing_well_defined", [&] {
        IsolatedSingularitySpace sp = fixtures::suspension_of_torus_space();
        Perversity p = Perversity::lower_middle(3);
        Perversity q = p.complement();
        HiComplex hp = hi_complex_isolated(sp, p);
        HiComplex hq = hi_complex_isolated(sp, q);
        int n = sp.exterior.n;
        ComplexMap restr = restriction_map(sp.exterior.complex, sp.exterior.boundary);
        for (int r = 1; r <= n; ++r) {
            Matrix bnu = hp.inclusion.at(r - 1);
            Matrix beta = hq.inclusion.at(n - r);
            for (int i = 0; i < bnu.cols(); ++i)
                for (int j = 0; j < beta.cols(); ++j) {
                    Cochain nu{sp.exterior.complex, r - 1, bnu.col(i)};
                    Cochain eta{sp.exterior.complex, n - r, beta.col(j)};
                    Cochain prod = cup(nu, eta);
                    std::vector<Rational> on_boundary = restr.at(n - 1).apply(prod.values);
                    for (const auto& x : on_boundary)
                        if (sgn(x) != 0)
                            throw std::logic_error("QI_p ∪ QI_q does not vanish on ∂M");
                }
        }
    });
    t.run("hitheory", "generalized_poincare_duality", [&] {
        Perversity p = Perversity::lower_middle(3);
        for (const auto& sp :
             {fixtures::cone_on_sphere_space(), fixtures::coned_solid_torus_space(),
              fixtures::suspension_of_torus_space()}) {
            if (!hi_pairing(sp, p, p.complement()).all_nondegenerate)
                throw std::logic_error("HI pairing degenerate");
        }
    });
    t.run("hitheory", "cup_closure_on_qi", [&] {
        IsolatedSingularitySpace sp = fixtures::suspension_of_torus_space();
        Perversity p = Perversity::lower_middle(3);
        HiComplex hc = hi_complex_isolated(sp, p);
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; a + b <= 3; ++b) {
                Matrix ba = hc.inclusion.at(a), bb = hc.inclusion.at(b);
                Subspace target(hc.inclusion.at(a + b).rows(), hc.inclusion.at(a + b));
                for (int i = 0; i < ba.cols(); ++i)
                    for (int j = 0; j < bb.cols(); ++j) {
                        Cochain x{sp.exterior.complex, a, ba.col(i)};
                        Cochain y{sp.exterior.complex, b, bb.col(j)};
                        if (!target.contains_vector(cup(x, y).values))
                            throw std::logic_error("QI not closed under cup");
                    }
            }
    });
    t.run("hitheory", "derham_crosscheck", [&] {
        for (const auto& sp :
             {fixtures::cone_on_sphere_space(), fixtures::coned_solid_torus_space(),
              fixtures::suspension_of_torus_space()}) {
            for (const char* name : {"zero", "lower-middle", "upper-middle", "top"}) {
                if (!derham_crosscheck(sp, Perversity::preset(name, 3)).equal)
                    throw std::logic_error("de Rham rank identity failed");
            }
        }
    });
}

}  // namespace

int SelfTestReport::passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.pass;
    return n;
}

int SelfTestReport::failed() const { return static_cast<int>(checks.size()) - passed(); }

Json SelfTestReport::to_json() const {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["command"] = "selftest";
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json j;
        j["suite"] = c.suite;
        j["name"] = c.name;
        j["pass"] = c.pass;
        if (!c.detail.empty()) j["detail"] = c.detail;
        arr.push_back(std::move(j));
    }
    out["checks"] = std::move(arr);
    out["passed"] = passed();
    out["failed"] = failed();
    return out;
}

SelfTestReport run_selftest() {
    SelfTestReport rep;
    Runner t(rep);
    ratlinalg_suite(t);
    chaincomplex_suite(t);
    simplicial_suite(t);
    hodgetrunc_suite(t);
    flatbundle_suite(t);
    hitheory_suite(t);
    return rep;
}

}  // namespace straticoh
