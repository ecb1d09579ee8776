#include "straticoh/flat_bundle.hpp"

#include <algorithm>
#include <stdexcept>

namespace straticoh {

namespace {

std::string simplex_str(const Simplex& s) {
    std::string out = "[";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

}  // namespace

SimplicialMap FlatBundleSystem::edge_monodromy(Vertex a, Vertex b) const {
    if (a >= b) throw std::invalid_argument("edge_monodromy: need a < b");
    auto it = monodromy.find({a, b});
    if (it != monodromy.end()) return it->second;
    return SimplicialMap::identity(fiber);
}

bool FlatBundleSystem::trivial_monodromy() const {
    for (const auto& [e, g] : monodromy)
        for (Vertex v : fiber->vertices())
            if (g(v) != v) return false;
    return true;
}

FlatBundleSystem build_system(ComplexHandle base, ComplexHandle fiber, InnerProduct fiber_ip,
                              std::map<std::pair<Vertex, Vertex>, SimplicialMap> monodromy) {
    FlatBundleSystem sys{std::move(base), std::move(fiber), std::move(fiber_ip),
                         std::move(monodromy)};
    ComplexPtr fc = sys.fiber->cochain_complex();
    sys.fiber_ip.validate(*fc);
    for (const auto& [e, g] : sys.monodromy) {
        auto [a, b] = e;
        Simplex edge{a, b};
        if (a >= b || !sys.base->has(edge))
            throw std::invalid_argument("monodromy assigned to a non-edge " + simplex_str(edge));
        if (g.source() != sys.fiber || !g.is_automorphism())
            throw std::invalid_argument("monodromy on edge " + simplex_str(edge) +
                                        " is not a fiber automorphism");
        for (int r = 0; r <= sys.fiber->dim(); ++r) {
            Matrix p = g.pullback_matrix(r);
            Matrix w = Matrix::diagonal(sys.fiber_ip.at(r, fc->dim(r)));
            if (!(p.transpose() * w * p == w))
                throw std::invalid_argument("monodromy on edge " + simplex_str(edge) +
                                            " does not preserve the fiber inner product");
        }
    }
    // flatness: cocycle condition on every base triangle
    for (const auto& t : sys.base->simplices(2)) {
        SimplicialMap gab = sys.edge_monodromy(t[0], t[1]);
        SimplicialMap gbc = sys.edge_monodromy(t[1], t[2]);
        SimplicialMap gac = sys.edge_monodromy(t[0], t[2]);
        for (Vertex v : sys.fiber->vertices())
            if (gac(v) != gbc(gab(v)))
                throw std::invalid_argument("cocycle condition fails on triangle " +
                                            simplex_str(t));
    }
    return sys;
}

CoefficientComplex coefficient_complex(const FlatBundleSystem& sys, Selector sel, int K) {
    ComplexPtr fc = sys.fiber->cochain_complex();
    switch (sel) {
        case Selector::Full:
            return {fc, ComplexMap::identity(fc)};
        case Selector::Below: {
            Truncation t = truncate_below(fc, sys.fiber_ip, K);
            return {t.complex, t.inclusion};
        }
        case Selector::AtOrAbove: {
            Cotruncation t = cotruncate(fc, sys.fiber_ip, K);
            return {t.complex, t.inclusion};
        }
    }
    throw std::logic_error("unreachable");
}

int TotalLayout::offset_of(int j, int p, int sigma) const {
    auto it = blocks.find(j);
    if (it == blocks.end()) return -1;
    for (const auto& [bp, bs, off] : it->second)
        if (bp == p && bs == sigma) return off;
    return -1;
}

ComplexPtr twisted_total(ComplexHandle base, ComplexPtr coeff,
                         const std::function<Matrix(Vertex, Vertex, int)>& transport,
                         TotalLayout* layout) {
    int bdim = std::max(base->dim(), 0);
    int lo = coeff->lo();
    int hi = bdim + coeff->hi();
    TotalLayout lay;
    std::vector<int> dims;
    for (int j = lo; j <= hi; ++j) {
        int off = 0;
        auto& blocks = lay.blocks[j];
        for (int p = 0; p <= bdim; ++p) {
            int q = j - p;
            int w = coeff->dim(q);
            if (w == 0) continue;
            for (int s = 0; s < base->count(p); ++s) {
                blocks.emplace_back(p, s, off);
                off += w;
            }
        }
        dims.push_back(off);
    }
    std::vector<Matrix> diffs;
    for (int j = lo; j <= hi; ++j) {
        Matrix d(j + 1 <= hi ? dims[j + 1 - lo] : 0, dims[j - lo]);
        for (const auto& [p, s, off] : lay.blocks[j]) {
            int q = j - p;
            int w = coeff->dim(q);
            // vertical: (−1)^p d_coeff into block (p, s) at degree j+1
            int voff = lay.offset_of(j + 1, p, s);
            if (voff >= 0) {
                Matrix dv = coeff->d(q);
                int sign = p % 2 == 0 ? 1 : -1;
                for (int i = 0; i < dv.rows(); ++i)
                    for (int c = 0; c < w; ++c)
                        if (sgn(dv(i, c)) != 0) d(voff + i, off + c) = sign * dv(i, c);
            }
            // horizontal: into every coface of the base simplex
            const Simplex& sigma = base->simplices(p)[s];
            for (int t = 0; t < base->count(p + 1); ++t) {
                const Simplex& tau = base->simplices(p + 1)[t];
                int omit = -1;
                for (size_t i = 0; i <= sigma.size(); ++i) {
                    Simplex face;
                    for (size_t jj = 0; jj < tau.size(); ++jj)
                        if (jj != i) face.push_back(tau[jj]);
                    if (face == sigma) { omit = static_cast<int>(i); break; }
                }
                if (omit < 0) continue;
                int hoff = lay.offset_of(j + 1, p + 1, t);
                if (hoff < 0) continue;
                int sign = omit % 2 == 0 ? 1 : -1;
                if (omit == 0) {
                    Matrix tr = transport(tau[0], tau[1], q);
                    for (int i = 0; i < w; ++i)
                        for (int c = 0; c < w; ++c)
                            if (sgn(tr(i, c)) != 0) d(hoff + i, off + c) += sign * tr(i, c);
                } else {
                    for (int i = 0; i < w; ++i) d(hoff + i, off + i) += sign;
                }
            }
        }
        diffs.push_back(std::move(d));
    }
    std::vector<int> dvec(dims.begin(), dims.end());
    ComplexPtr total = GradedComplex::make(lo, std::move(dvec), std::move(diffs));
    if (layout) *layout = std::move(lay);
    return total;
}

StructuredComplex structured_complex(const FlatBundleSystem& sys, Selector sel, int K) {
    CoefficientComplex coeff = coefficient_complex(sys, sel, K);
    auto transport = [&sys, &coeff](Vertex a, Vertex b, int q) -> Matrix {
        Matrix full = sys.edge_monodromy(a, b).pullback_matrix(q);
        auto restricted = try_solve(coeff.incl.at(q), full * coeff.incl.at(q));
        if (!restricted)
            throw std::logic_error("monodromy does not preserve the truncated coefficients on "
                                   "edge [" + std::to_string(a) + "," + std::to_string(b) + "]");
        return *restricted;
    };
    TotalLayout layout;
    ComplexPtr total = twisted_total(sys.base, coeff.cx, transport, &layout);
    return StructuredComplex{sel, K, std::move(coeff), std::move(total), std::move(layout)};
}

std::map<int, int> total_cohomology_betti(const FlatBundleSystem& sys, Selector sel, int K) {
    return betti_table(structured_complex(sys, sel, K).total);
}

int E2Table::antidiagonal_sum(int r) const {
    int sum = 0;
    for (const auto& [pq, d] : dims)
        if (pq.first + pq.second == r) sum += d;
    return sum;
}

E2Table e2_page(const FlatBundleSystem& sys) {
    E2Table table;
    ComplexPtr fc = sys.fiber->cochain_complex();
    for (int q = 0; q <= std::max(sys.fiber->dim(), 0); ++q) {
        CohomologyResult hq = cohomology(fc, q);
        int bq = hq.betti();
        ComplexPtr stalk = GradedComplex::make(0, {bq}, {Matrix(0, bq)});
        auto transport = [&sys, &hq, q](Vertex a, Vertex b, int qq) -> Matrix {
            if (qq != 0) return Matrix(0, 0);
            return hq.coordinates(sys.edge_monodromy(a, b).pullback_matrix(q) *
                                  hq.representatives());
        };
        ComplexPtr row = twisted_total(sys.base, stalk, transport);
        for (int p = 0; p <= std::max(sys.base->dim(), 0); ++p)
            table.dims[{p, q}] = cohomology(row, p).betti();
    }
    return table;
}

CollapseReport collapse_check(const FlatBundleSystem& sys) {
    CollapseReport rep;
    E2Table e2 = e2_page(sys);
    std::map<int, int> tot = total_cohomology_betti(sys, Selector::Full);
    int top = sys.base_dim() + sys.fiber_dim();
    for (int r = 0; r <= top; ++r) {
        int t = tot.count(r) ? tot[r] : 0;
        int s = e2.antidiagonal_sum(r);
        rep.rows.emplace_back(r, t, s);
        if (t != s) rep.collapses = false;
    }
    return rep;
}

PoincareLemmaReport poincare_lemma_check(const FlatBundleSystem& sys, Selector sel, int K) {
    int bd = sys.base->dim();
    if (static_cast<int>(sys.base->vertices().size()) != bd + 1 || sys.base->count(bd) != 1)
        throw std::invalid_argument("poincare_lemma_check: base is not a single closed simplex");
    PoincareLemmaReport rep;
    std::map<int, int> tot = total_cohomology_betti(sys, sel, K);
    CoefficientComplex coeff = coefficient_complex(sys, sel, K);
    std::map<int, int> fib = betti_table(coeff.cx);
    int top = sys.base_dim() + sys.fiber_dim();
    for (int r = 0; r <= top; ++r) {
        int t = tot.count(r) ? tot[r] : 0;
        int f = fib.count(r) ? fib[r] : 0;
        rep.rows.emplace_back(r, t, f);
        if (t != f) rep.holds = false;
    }
    return rep;
}

FiberDualityReport fiber_duality_pairing(const OrientedPseudomanifold& fiber,
                                         const InnerProduct& ip, int K, int Kstar) {
    if (!fiber.closed())
        throw std::invalid_argument("fiber_duality_pairing: fiber is not closed");
    int m = fiber.n;
    if (K + Kstar != m + 1)
        throw std::invalid_argument("fiber_duality_pairing: cutoff mismatch (K + K* must be m+1)");
    ComplexPtr fc = fiber.complex->cochain_complex();
    Truncation below = truncate_below(fc, ip, K);
    Cotruncation above = cotruncate(fc, ip, Kstar);
    FiberDualityReport rep;
    for (int r = 0; r <= m; ++r) {
        CohomologyResult ha = cohomology(below.complex, r);
        CohomologyResult hb = cohomology(above.complex, m - r);
        Matrix areps = below.inclusion.at(r) * ha.representatives();
        Matrix breps = above.inclusion.at(m - r) * hb.representatives();
        PairingVerdict v;
        v.degree = r;
        v.matrix = Matrix(ha.betti(), hb.betti());
        for (int i = 0; i < ha.betti(); ++i) {
            Cochain a{fiber.complex, r, areps.col(i)};
            for (int j = 0; j < hb.betti(); ++j) {
                Cochain b{fiber.complex, m - r, breps.col(j)};
                v.matrix(i, j) = evaluate(cup(a, b), fiber.fundamental_cycle);
            }
        }
        v.square = ha.betti() == hb.betti();
        v.nondegenerate = v.square && rank(v.matrix) == ha.betti();
        if (!v.nondegenerate) rep.all_nondegenerate = false;
        rep.by_degree.push_back(std::move(v));
    }
    return rep;
}

GlobalDualityReport global_duality_rank_check(const FlatBundleSystem& sys, int K, int Kstar) {
    int m = sys.fiber_dim();
    if (K + Kstar != m + 1)
        throw std::invalid_argument("global_duality_rank_check: cutoff mismatch");
    OrientedPseudomanifold basep = make_pseudomanifold(sys.base);
    if (!basep.closed())
        throw std::invalid_argument("global_duality_rank_check: base is not closed");
    if (sys.fiber->dim() >= 1) {
        OrientedPseudomanifold fiberp = make_pseudomanifold(sys.fiber);
        if (!fiberp.closed())
            throw std::invalid_argument("global_duality_rank_check: fiber is not closed");
        for (const auto& [e, g] : sys.monodromy) {
            std::vector<Rational> img =
                g.pushforward_matrix(fiberp.n).apply(fiberp.fundamental_cycle);
            if (img != fiberp.fundamental_cycle)
                throw std::invalid_argument(
                    "orientation obstruction: monodromy on edge [" + std::to_string(e.first) +
                    "," + std::to_string(e.second) + "] reverses the fiber orientation");
        }
    }
    int n = basep.n;
    std::map<int, int> lowside = total_cohomology_betti(sys, Selector::Below, K);
    std::map<int, int> highside = total_cohomology_betti(sys, Selector::AtOrAbove, Kstar);
    GlobalDualityReport rep;
    for (int r = 0; r <= n + m; ++r) {
        int a = lowside.count(r) ? lowside[r] : 0;
        int b = highside.count(n + m - r) ? highside[n + m - r] : 0;
        rep.rows.emplace_back(r, a, b);
        if (a != b) rep.all_equal = false;
    }
    return rep;
}

ComplexMap structured_inclusion(const StructuredComplex& sub,
                                const StructuredComplex& full) {
    std::map<int, Matrix> comp;
    int lo = std::min(sub.total->lo(), full.total->lo());
    int hi = std::max(sub.total->hi(), full.total->hi());
    for (int j = lo; j <= hi; ++j) {
        Matrix m(full.total->dim(j), sub.total->dim(j));
        auto it = sub.layout.blocks.find(j);
        if (it != sub.layout.blocks.end()) {
            for (const auto& [p, s, off] : it->second) {
                int q = j - p;
                int foff = full.layout.offset_of(j, p, s);
                if (foff < 0) throw std::logic_error("structured_inclusion: missing block");
                Matrix inc = sub.coeff.incl.at(q);
                for (int i = 0; i < inc.rows(); ++i)
                    for (int c = 0; c < inc.cols(); ++c)
                        if (sgn(inc(i, c)) != 0) m(foff + i, off + c) = inc(i, c);
            }
        }
        comp[j] = std::move(m);
    }
    return ComplexMap(sub.total, full.total, std::move(comp));
}

namespace {

// Product-realization cochain map: block (p, σ, q, e) -> χ_σ × (coeff e).
std::map<int, Matrix> product_phi(const ProductComplex& prod, const StructuredComplex& sc) {
    std::map<int, Matrix> phi;
    ComplexPtr pc = prod.complex->cochain_complex();
    for (const auto& [j, blocks] : sc.layout.blocks) {
        Matrix m(pc->dim(j), sc.total->dim(j));
        for (const auto& [p, s, off] : blocks) {
            int q = j - p;
            Cochain chi = Cochain::dual(prod.base, prod.base->simplices(p)[s]);
            Matrix inc = sc.coeff.incl.at(q);
            for (int c = 0; c < inc.cols(); ++c) {
                Cochain gamma{prod.fiber, q, inc.col(c)};
                Cochain crossed = prod.cross(chi, gamma);
                for (int i = 0; i < static_cast<int>(crossed.values.size()); ++i)
                    if (sgn(crossed.values[i]) != 0) m(i, off + c) = crossed.values[i];
            }
        }
        phi[j] = std::move(m);
    }
    return phi;
}

void assert_chain_map(const std::map<int, Matrix>& phi, const ComplexPtr& src,
                      const ComplexPtr& tgt) {
    for (int j = src->lo(); j <= src->hi(); ++j) {
        auto it = phi.find(j);
        Matrix pj = it != phi.end() ? it->second : Matrix(tgt->dim(j), src->dim(j));
        auto it2 = phi.find(j + 1);
        Matrix pj1 = it2 != phi.end() ? it2->second : Matrix(tgt->dim(j + 1), src->dim(j + 1));
        if (!(tgt->d(j) * pj == pj1 * src->d(j)))
            throw std::logic_error("realization is not a chain map at degree " +
                                   std::to_string(j));
    }
}

bool is_standard_cycle(const SimplicialComplex& base, std::vector<Vertex>& verts_out) {
    if (base.dim() != 1) return false;
    const auto& vs = base.vertices();
    int k = static_cast<int>(vs.size());
    if (k < 3 || base.count(1) != k) return false;
    for (int i = 0; i + 1 < k; ++i)
        if (!base.has({vs[i], vs[i + 1]})) return false;
    if (!base.has({vs[0], vs[k - 1]})) return false;
    verts_out = vs;
    return true;
}

}  // namespace

ComplexHandle realized_total_space(const FlatBundleSystem& sys, RealizationKind kind) {
    if (kind == RealizationKind::Product) return ordered_product(sys.base, sys.fiber).complex;
    std::vector<Vertex> cyc;
    if (!is_standard_cycle(*sys.base, cyc))
        throw std::invalid_argument(
            "mapping torus realization requires the base to be a triangulated circle");
    int k = static_cast<int>(cyc.size());
    SimplicialMap f = sys.edge_monodromy(cyc[0], cyc[k - 1]).inverse();
    return mapping_torus(f, k).complex;
}

Realization realize_structured_classes(const FlatBundleSystem& sys, RealizationKind kind,
                                       Selector sel, int K) {
    StructuredComplex sc = structured_complex(sys, sel, K);
    Realization out;
    out.total = sc.total;

    if (kind == RealizationKind::Product) {
        if (!sys.trivial_monodromy())
            throw std::invalid_argument(
                "product realization requires identity monodromy on every edge");
        ProductComplex prod = ordered_product(sys.base, sys.fiber);
        out.space = prod.complex;
        out.phi = product_phi(prod, sc);
    } else {
        std::vector<Vertex> cyc;
        if (!is_standard_cycle(*sys.base, cyc))
            throw std::invalid_argument(
                "mapping torus realization requires the base to be a triangulated circle");
        int k = static_cast<int>(cyc.size());
        for (const auto& [e, g] : sys.monodromy) {
            if (e == std::make_pair(cyc[0], cyc[k - 1])) continue;
            for (Vertex v : sys.fiber->vertices())
                if (g(v) != v)
                    throw std::invalid_argument(
                        "mapping torus realization: only the closing edge may carry monodromy");
        }
        SimplicialMap h = sys.edge_monodromy(cyc[0], cyc[k - 1]);
        SimplicialMap f = h.inverse();
        MappingTorus mt = mapping_torus(f, k);
        out.space = mt.complex;

        // path model: trivial system over the path 0..k, fiber glued by f
        std::vector<Simplex> path_edges;
        for (int i = 0; i < k; ++i) path_edges.push_back({i, i + 1});
        ComplexHandle path = SimplicialComplex::build(path_edges);
        FlatBundleSystem path_sys{path, sys.fiber, sys.fiber_ip, {}};
        StructuredComplex psc = structured_complex(path_sys, sel, K);
        ProductComplex prod = ordered_product(path, sys.fiber);
        std::map<int, Matrix> phi_path = product_phi(prod, psc);

        // Z: circle blocks into path blocks; the closing edge lands on the
        // last path edge through −f*, vertex 0 reappears as path vertex k
        // through f*.
        std::map<int, Matrix> pf;  // restricted pullback of f on coefficients
        for (int q = sc.coeff.cx->lo(); q <= sc.coeff.cx->hi(); ++q)
            pf[q] = solve(sc.coeff.incl.at(q), f.pullback_matrix(q) * sc.coeff.incl.at(q));
        std::map<int, Matrix> zmat;
        for (int j = sc.total->lo(); j <= sc.total->hi(); ++j) {
            Matrix z(psc.total->dim(j), sc.total->dim(j));
            auto it = sc.layout.blocks.find(j);
            if (it != sc.layout.blocks.end()) {
                for (const auto& [p, s, off] : it->second) {
                    int q = j - p;
                    int w = sc.coeff.cx->dim(q);
                    auto put = [&](int target_off, const Matrix& block, int scale) {
                        for (int i = 0; i < block.rows(); ++i)
                            for (int c = 0; c < block.cols(); ++c)
                                if (sgn(block(i, c)) != 0)
                                    z(target_off + i, off + c) += scale * block(i, c);
                    };
                    if (p == 0) {
                        Vertex v = sys.base->simplices(0)[s][0];
                        int idx = static_cast<int>(std::lower_bound(cyc.begin(), cyc.end(), v) -
                                                   cyc.begin());
                        put(psc.layout.offset_of(j, 0, path->index_of({idx})),
                            Matrix::identity(w), 1);
                        if (idx == 0)
                            put(psc.layout.offset_of(j, 0, path->index_of({k})), pf[q], 1);
                    } else {  // p == 1
                        const Simplex& e = sys.base->simplices(1)[s];
                        if (e == Simplex{cyc[0], cyc[k - 1]}) {
                            put(psc.layout.offset_of(j, 1, path->index_of({k - 1, k})), pf[q], -1);
                        } else {
                            int ia = static_cast<int>(
                                std::lower_bound(cyc.begin(), cyc.end(), e[0]) - cyc.begin());
                            put(psc.layout.offset_of(j, 1, path->index_of({ia, ia + 1})),
                                Matrix::identity(w), 1);
                        }
                    }
                }
            }
            zmat[j] = std::move(z);
        }

        // descent along the quotient path-product -> mapping torus
        std::map<Vertex, Vertex> psi_v;
        SimplicialMap finv = f.inverse();
        for (size_t i = 0; i < prod.pairs.size(); ++i) {
            auto [pv, fv] = prod.pairs[i];
            int layer = static_cast<int>(pv);
            psi_v[static_cast<Vertex>(i)] =
                layer == k ? mt.vertex_of(0, f(fv)) : mt.vertex_of(layer, fv);
        }
        SimplicialMap psi(prod.complex, mt.complex, psi_v);
        ComplexPtr mtc = mt.complex->cochain_complex();
        ComplexPtr pathc = prod.complex->cochain_complex();
        for (int j = 0; j <= std::max(mt.complex->dim(), 0); ++j) {
            Matrix r(mtc->dim(j), pathc->dim(j));
            for (int t = 0; t < mt.complex->count(j); ++t) {
                const Simplex& s = mt.complex->simplices(j)[t];
                // canonical preimage: pure layer-0 simplices lift to layer 0,
                // twisted-prism simplices lift through layer k
                bool has0 = false, hasTop = false, other = false;
                for (Vertex v : s) {
                    int layer = mt.decode[static_cast<size_t>(v)].first;
                    if (layer == 0) has0 = true;
                    else if (layer == k - 1) hasTop = true;
                    else other = true;
                }
                bool lift_through_k = has0 && hasTop && !other;
                Simplex pre;
                for (Vertex v : s) {
                    auto [layer, fv] = mt.decode[static_cast<size_t>(v)];
                    if (lift_through_k && layer == 0)
                        pre.push_back(prod.vertex_of(k, finv(fv)));
                    else
                        pre.push_back(prod.vertex_of(layer, fv));
                }
                if (sort_sign(pre) == 0) throw std::logic_error("degenerate canonical preimage");
                // ω(t) = sgn(ψ|_pre) · ω_path(pre), the descent equation of ψ#
                Simplex img;
                for (Vertex v : pre) img.push_back(psi(v));
                int sgn_psi = sort_sign(img);
                r(t, prod.complex->index_of(pre)) = sgn_psi;
            }
            Matrix pp = phi_path.count(j) ? phi_path[j] : Matrix(pathc->dim(j), psc.total->dim(j));
            out.phi[j] = r * pp * zmat[j];
        }
    }

    assert_chain_map(out.phi, sc.total, out.space->cochain_complex());

    // induced map on cohomology, with injectivity / isomorphism verdicts
    ComplexPtr spacec = out.space->cochain_complex();
    for (int r = sc.total->lo(); r <= sc.total->hi(); ++r) {
        CohomologyResult ht = cohomology(sc.total, r);
        CohomologyResult hs = cohomology(spacec, r);
        auto it = out.phi.find(r);
        Matrix pr = it != out.phi.end() ? it->second : Matrix(spacec->dim(r), sc.total->dim(r));
        Matrix h = hs.coordinates(pr * ht.representatives());
        if (rank(h) != ht.betti()) out.injective = false;
        out.phi_h[r] = std::move(h);
    }
    if (sel == Selector::Full) {
        out.full_iso = out.injective;
        for (int r = sc.total->lo(); r <= sc.total->hi() && out.full_iso; ++r)
            if (out.phi_h[r].rows() != out.phi_h[r].cols()) out.full_iso = false;
        for (int r = spacec->lo(); r <= spacec->hi() && out.full_iso; ++r)
            if (cohomology(spacec, r).betti() !=
                (out.phi_h.count(r) ? out.phi_h[r].rows() : 0))
                out.full_iso = false;
    }
    return out;
}

}  // namespace straticoh
