#include "straticoh/hi_theory.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace straticoh {

Perversity::Perversity(int n, std::vector<int> values) : n_(n), vals_(std::move(values)) {
    if (n_ < 2) throw std::invalid_argument("perversity needs n >= 2");
    if (static_cast<int>(vals_.size()) != n_ - 1)
        throw std::invalid_argument("perversity needs values for k = 2..n");
    if (vals_[0] != 0) throw std::invalid_argument("perversity must satisfy p(2) = 0");
    for (size_t i = 0; i + 1 < vals_.size(); ++i) {
        if (vals_[i + 1] < vals_[i] || vals_[i + 1] > vals_[i] + 1)
            throw std::invalid_argument("perversity growth condition violated at k = " +
                                        std::to_string(i + 3));
    }
    for (int v : vals_)
        if (v < 0) throw std::invalid_argument("perversity values must be non-negative");
}

Perversity Perversity::zero(int n) { return Perversity(n, std::vector<int>(n - 1, 0)); }

Perversity Perversity::lower_middle(int n) {
    std::vector<int> v;
    for (int k = 2; k <= n; ++k) v.push_back((k - 2) / 2);
    return Perversity(n, std::move(v));
}

Perversity Perversity::upper_middle(int n) {
    std::vector<int> v;
    for (int k = 2; k <= n; ++k) v.push_back((k - 1) / 2);
    return Perversity(n, std::move(v));
}

Perversity Perversity::top(int n) {
    std::vector<int> v;
    for (int k = 2; k <= n; ++k) v.push_back(k - 2);
    return Perversity(n, std::move(v));
}

Perversity Perversity::preset(const std::string& name, int n) {
    if (name == "zero") return zero(n);
    if (name == "lower-middle") return lower_middle(n);
    if (name == "upper-middle") return upper_middle(n);
    if (name == "top") return top(n);
    throw std::invalid_argument("unknown perversity preset '" + name + "'");
}

int Perversity::operator()(int k) const {
    if (k < 2) return 0;
    if (k > n_) throw std::invalid_argument("perversity evaluated beyond n");
    return vals_[k - 2];
}

Perversity Perversity::complement() const {
    std::vector<int> v;
    for (int k = 2; k <= n_; ++k) v.push_back(k - 2 - vals_[k - 2]);
    return Perversity(n_, std::move(v));
}

bool Perversity::operator==(const Perversity& other) const {
    return n_ == other.n_ && vals_ == other.vals_;
}

Cutoffs cutoffs(const Perversity& p, int n, int m) {
    if (m + 1 > n) throw std::invalid_argument("cutoffs: need m + 1 <= n");
    if (p.n() < n) throw std::invalid_argument("cutoffs: perversity not defined up to n");
    Perversity q = p.complement();
    return {n - 1 - p(n), m - p(m + 1), m - q(m + 1)};
}

IsolatedSingularitySpace make_isolated_space(OrientedPseudomanifold exterior,
                                             std::vector<ComplexHandle> links,
                                             std::vector<InnerProduct> link_ips) {
    int n = exterior.n;
    std::set<Simplex> covered;
    for (const auto& link : links) {
        OrientedPseudomanifold lp = make_pseudomanifold(link);
        if (lp.n != n - 1)
            throw std::invalid_argument("link has dimension " + std::to_string(lp.n) +
                                        ", expected " + std::to_string(n - 1));
        if (!lp.closed()) throw std::invalid_argument("link is not a closed pseudomanifold");
        if (!link->is_subcomplex_of(*exterior.boundary))
            throw std::invalid_argument("link is not a subcomplex of the boundary");
        for (int r = 0; r <= link->dim(); ++r)
            for (const auto& s : link->simplices(r))
                if (!covered.insert(s).second)
                    throw std::invalid_argument("links are not disjoint");
    }
    size_t total = 0;
    for (int r = 0; r <= exterior.boundary->dim(); ++r) total += exterior.boundary->count(r);
    if (covered.size() != total)
        throw std::invalid_argument("links do not cover the boundary");
    if (link_ips.empty())
        for (const auto& link : links)
            link_ips.push_back(InnerProduct::ones(*link->cochain_complex()));
    if (link_ips.size() != links.size())
        throw std::invalid_argument("need one inner product per link");
    return {std::move(exterior), std::move(links), std::move(link_ips)};
}

HiComplex hi_complex_isolated(const IsolatedSingularitySpace& space, const Perversity& p) {
    const auto& M = space.exterior;
    int n = M.n;
    int c = cutoffs(p, n, n - 1).c;
    ComplexPtr cm = M.complex->cochain_complex();

    std::vector<ComplexMap> restr;
    std::vector<Truncation> below;
    std::vector<Cotruncation> above;
    for (size_t i = 0; i < space.links.size(); ++i) {
        restr.push_back(restriction_map(M.complex, space.links[i]));
        ComplexPtr lc = space.links[i]->cochain_complex();
        below.push_back(truncate_below(lc, space.link_ips[i], c));
        above.push_back(cotruncate(lc, space.link_ips[i], c));
    }

    // QI^r = { α : α|_{L_i} ∈ τ_{≥c} C^r(L_i) for all i }
    std::map<int, Subspace> qi_spaces;
    for (int r = 0; r <= M.complex->dim(); ++r) {
        if (r > c) {
            qi_spaces.emplace(r, Subspace::full(cm->dim(r)));
            continue;
        }
        // constraint: proj_{<c} of each link restriction vanishes
        Matrix stacked(0, cm->dim(r));
        for (size_t i = 0; i < space.links.size(); ++i) {
            Matrix block = r < c ? restr[i].at(r) : below[i].projection.at(c) * restr[i].at(c);
            stacked = Matrix::vcat(stacked, block);
        }
        qi_spaces.emplace(r, Subspace::unchecked(cm->dim(r), kernel_basis_matrix(stacked)));
    }
    auto sub = subcomplex_from_subspaces(cm, qi_spaces);

    HiComplex hc{c, sub.complex, sub.inclusion, ComplexMap::identity(cm),
                 ComplexMap::identity(sub.complex), ComplexMap::identity(sub.complex)};

    // 0 -> QI -> C(M) -> ⊕ τ_{<c}(L_i) -> 0
    std::vector<ComplexPtr> tparts, cparts;
    for (const auto& t : below) tparts.push_back(t.complex);
    for (const auto& t : above) cparts.push_back(t.complex);
    DirectSum tsum = direct_sum(tparts), csum = direct_sum(cparts);
    {
        std::map<int, Matrix> comp;
        for (int r = tsum.complex->lo(); r <= tsum.complex->hi(); ++r) {
            Matrix m(tsum.complex->dim(r), cm->dim(r));
            for (size_t i = 0; i < below.size(); ++i) {
                Matrix block = below[i].projection.at(r) * restr[i].at(r);
                int off = tsum.offsets[i].at(r);
                for (int a = 0; a < block.rows(); ++a)
                    for (int b = 0; b < block.cols(); ++b) m(off + a, b) = block(a, b);
            }
            comp[r] = std::move(m);
        }
        hc.onto_truncated = ComplexMap(cm, tsum.complex, std::move(comp));
    }
    // 0 -> C(M,∂M) -> QI -> ⊕ τ_{≥c}(L_i) -> 0
    RelativeComplex rel = relative_cochain_complex(M);
    {
        std::map<int, Matrix> comp;
        for (int r = rel.complex->lo(); r <= rel.complex->hi(); ++r)
            comp[r] = solve(hc.inclusion.at(r), rel.inclusion.at(r));
        hc.rel_into_qi = ComplexMap(rel.complex, hc.qi, std::move(comp));
    }
    {
        std::map<int, Matrix> comp;
        for (int r = csum.complex->lo(); r <= csum.complex->hi(); ++r) {
            Matrix m(csum.complex->dim(r), hc.qi->dim(r));
            for (size_t i = 0; i < above.size(); ++i) {
                Matrix block = solve(above[i].inclusion.at(r), restr[i].at(r) * hc.inclusion.at(r));
                int off = csum.offsets[i].at(r);
                for (int a = 0; a < block.rows(); ++a)
                    for (int b = 0; b < block.cols(); ++b) m(off + a, b) = block(a, b);
            }
            comp[r] = std::move(m);
        }
        hc.onto_cotruncated = ComplexMap(hc.qi, csum.complex, std::move(comp));
    }
    validate_ses(hc.inclusion, hc.onto_truncated);
    validate_ses(hc.rel_into_qi, hc.onto_cotruncated);
    return hc;
}

HIResult hi_groups(const IsolatedSingularitySpace& space, const Perversity& p) {
    HiComplex hc = hi_complex_isolated(space, p);
    HIResult out;
    out.perversity_values = p.values();
    out.cutoff = hc.c;
    for (int r = 0; r <= space.exterior.complex->dim(); ++r) {
        CohomologyResult h = cohomology(hc.qi, r);
        out.betti[r] = h.betti();
        out.representatives[r] = hc.inclusion.at(r) * h.representatives();
    }
    // both defining long exact sequences must be exact
    LongExactSequence les1 = les_of_ses(hc.inclusion, hc.onto_truncated);
    LongExactSequence les2 = les_of_ses(hc.rel_into_qi, hc.onto_cotruncated);
    if (!verify_exactness(les1.maps, les1.labels).all_exact() ||
        !verify_exactness(les2.maps, les2.labels).all_exact())
        throw std::logic_error("HI long exact sequence failed exactness");
    return out;
}

HiClass hi_cup(const IsolatedSingularitySpace& space, const Perversity& p, const HiClass& a,
               const HiClass& b) {
    HiComplex hc = hi_complex_isolated(space, p);
    CohomologyResult ha = cohomology(hc.qi, a.degree);
    CohomologyResult hb = cohomology(hc.qi, b.degree);
    Matrix av = hc.inclusion.at(a.degree) * ha.representatives() * Matrix::column(a.coords);
    Matrix bv = hc.inclusion.at(b.degree) * hb.representatives() * Matrix::column(b.coords);
    Cochain ca{space.exterior.complex, a.degree, av.col(0)};
    Cochain cb{space.exterior.complex, b.degree, bv.col(0)};
    Cochain prod = cup(ca, cb);
    int r = a.degree + b.degree;
    auto in_qi = try_solve(hc.inclusion.at(r), Matrix::column(prod.values));
    if (!in_qi) throw std::invalid_argument("hi_cup: product class is not in QI");
    HiClass out;
    out.degree = r;
    out.coords = cohomology(hc.qi, r).coordinates(in_qi->col(0));
    return out;
}

HiPairingReport hi_pairing(const IsolatedSingularitySpace& space, const Perversity& p,
                           const Perversity& q) {
    if (!(q == p.complement()))
        throw std::invalid_argument("hi_pairing: perversities are not complementary");
    int n = space.exterior.n;
    HIResult hp = hi_groups(space, p);
    HIResult hq = hi_groups(space, q);
    HiPairingReport rep;
    for (int r = 0; r <= n; ++r) {
        const Matrix& areps = hp.representatives[r];
        const Matrix& breps = hq.representatives[n - r];
        PairingVerdict v;
        v.degree = r;
        v.matrix = Matrix(areps.cols(), breps.cols());
        for (int i = 0; i < areps.cols(); ++i) {
            Cochain ca{space.exterior.complex, r, areps.col(i)};
            for (int j = 0; j < breps.cols(); ++j) {
                Cochain cb{space.exterior.complex, n - r, breps.col(j)};
                v.matrix(i, j) = evaluate(cup(ca, cb), space.exterior.fundamental_cycle);
            }
        }
        v.square = areps.cols() == breps.cols();
        v.nondegenerate = v.square && rank(v.matrix) == v.matrix.rows();
        if (!v.nondegenerate) rep.all_nondegenerate = false;
        rep.by_degree.push_back(std::move(v));
    }
    return rep;
}

DepthOneSpace make_depth_one_space(OrientedPseudomanifold exterior, FlatBundleSystem bundle,
                                   RealizationKind realization,
                                   std::map<Vertex, Vertex> identification) {
    int n = exterior.n;
    int b = bundle.base->dim(), m = bundle.fiber->dim();
    if (m != n - 1 - b)
        throw std::invalid_argument("depth-1 space: fiber dimension must be n - 1 - base dim");
    ComplexHandle realized = realized_total_space(bundle, realization);
    SimplicialMap ident(realized, exterior.boundary, identification);
    if (realized->vertices().size() != exterior.boundary->vertices().size())
        throw std::invalid_argument("identification is not a bijection on vertices");
    std::set<Vertex> image;
    for (Vertex v : realized->vertices()) image.insert(ident(v));
    if (image.size() != realized->vertices().size())
        throw std::invalid_argument("identification is not injective on vertices");
    for (int r = 0; r <= std::max(realized->dim(), exterior.boundary->dim()); ++r)
        if (realized->count(r) != exterior.boundary->count(r))
            throw std::invalid_argument(
                "identification mismatch: realized bundle and boundary differ in dimension " +
                std::to_string(r));
    return {std::move(exterior), std::move(bundle), realization, std::move(identification)};
}

HIResult hi_groups_depth1(const DepthOneSpace& space, const Perversity& p) {
    const auto& M = space.exterior;
    int n = M.n;
    int m = space.bundle.fiber->dim();
    int K = m >= 1 ? cutoffs(p, n, m).K : 0;

    Realization real =
        realize_structured_classes(space.bundle, space.realization, Selector::AtOrAbove, K);
    SimplicialMap ident(real.space, M.boundary, space.identification);

    ComplexPtr cm = M.complex->cochain_complex();
    RelativeComplex rel = relative_cochain_complex(M);
    ComplexMap restr = restriction_map(M.complex, M.boundary);
    ComplexPtr bc = M.boundary->cochain_complex();

    // transport of realized cocycles onto the boundary: (ident^{-1})#
    SimplicialMap ident_inv = ident.inverse();

    // Psi_r : H^r(Tot_{≥K}) -> H^{r+1}(M, ∂M)
    std::map<int, Matrix> delta = ses_connecting_all(rel.inclusion, restr);
    std::map<int, Matrix> psi, tot_reps_on_boundary;
    std::map<int, CohomologyResult> htot;
    int tlo = real.total->lo(), thi = real.total->hi();
    for (int r = tlo; r <= thi; ++r) {
        CohomologyResult h = cohomology(real.total, r);
        Matrix phir = real.phi.count(r)
                          ? real.phi.at(r)
                          : Matrix(real.space->cochain_complex()->dim(r), real.total->dim(r));
        Matrix on_boundary = ident_inv.pullback_matrix(r) * phir * h.representatives();
        tot_reps_on_boundary[r] = on_boundary;
        psi[r] = delta.at(r) * cohomology(bc, r).coordinates(on_boundary);
        htot.emplace(r, std::move(h));
    }

    HIResult out;
    out.perversity_values = p.values();
    out.cutoff = K;
    for (int r = 0; r <= n; ++r) {
        CohomologyResult hrel = cohomology(rel.complex, r);
        Matrix psi_in = psi.count(r - 1) ? psi.at(r - 1) : Matrix(hrel.betti(), 0);
        Matrix psi_out = psi.count(r)
                             ? psi.at(r)
                             : Matrix(cohomology(rel.complex, r + 1).betti(),
                                      r >= tlo && r <= thi ? htot.at(r).betti() : 0);
        // HI^r = coker(psi_{r-1}) ⊕ ker(psi_r)
        Subspace im_in = Subspace::unchecked(hrel.betti(), image_basis_matrix(psi_in));
        Subspace coker = complement_in(im_in, Subspace::full(hrel.betti()));
        Matrix ker = kernel_basis_matrix(psi_out);
        out.betti[r] = coker.dim() + ker.cols();

        // representatives in C^r(M): relative cocycles for the cokernel part,
        // extended boundary cocycles with relative correction for the kernel part
        Matrix reps(cm->dim(r), 0);
        if (coker.dim() > 0)
            reps = Matrix::hcat(reps, rel.inclusion.at(r) * hrel.representatives() * coker.basis());
        if (ker.cols() > 0) {
            Matrix z = tot_reps_on_boundary.at(r) * ker;  // cocycles on ∂M
            Matrix w = restr.at(r).transpose() * z;       // extension by zero to M
            // d w vanishes on the boundary and is relatively exact; correct by a
            // relative cochain to get honest cocycles on M
            Matrix dw_rel = solve(rel.inclusion.at(r + 1), cm->d(r) * w);
            Matrix v = solve(rel.complex->d(r), dw_rel);
            Matrix omega = w - rel.inclusion.at(r) * v;
            if (!(cm->d(r) * omega).is_zero())
                throw std::logic_error("depth-1 representative is not a cocycle");
            reps = Matrix::hcat(reps, omega);
        }
        out.representatives[r] = std::move(reps);
    }
    return out;
}

HomologyResult homology(ComplexHandle k, int r) {
    HomologyResult h;
    h.degree = r;
    Matrix bnd_r = k->boundary_matrix(r);          // C_r -> C_{r-1}
    Matrix bnd_r1 = k->boundary_matrix(r + 1);     // C_{r+1} -> C_r
    int n = k->count(r);
    Subspace cycles = Subspace::unchecked(n, kernel_basis_matrix(bnd_r));
    h.bnds = image_basis_matrix(bnd_r1);
    Subspace boundaries = Subspace::unchecked(n, h.bnds);
    h.reps = complement_in(boundaries, cycles).basis();
    return h;
}

Matrix HomologyResult::coordinates(const Matrix& cycles) const {
    Matrix m = solve(Matrix::hcat(reps, bnds), cycles);
    Matrix out(reps.cols(), cycles.cols());
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

DeRhamReport derham_crosscheck(const IsolatedSingularitySpace& space, const Perversity& p) {
    const auto& M = space.exterior;
    int n = M.n;
    int c = cutoffs(p, n, n - 1).c;
    HIResult hi = hi_groups(space, p);

    DeRhamReport rep;
    // homology-level map ⊕_i H_r(t_{<c} L_i) -> H_r(M); ranks of cone homology
    std::vector<int> dimA(n + 2, 0), rank_phi(n + 2, 0), dimHM(n + 2, 0);
    for (int r = 0; r <= n; ++r) {
        HomologyResult hm = homology(M.complex, r);
        dimHM[r] = hm.betti();
        Matrix cols(hm.reps.rows(), 0);
        for (const auto& link : space.links) {
            if (r >= c) continue;  // truncated away
            HomologyResult hl = homology(link, r);
            if (hl.betti() == 0) continue;
            // chain-level inclusion of link cycles into M
            Matrix incl(M.complex->count(r), link->count(r));
            for (int i = 0; i < link->count(r); ++i)
                incl(M.complex->index_of(link->simplices(r)[i]), i) = 1;
            cols = Matrix::hcat(cols, incl * hl.reps);
        }
        dimA[r] = cols.cols();
        if (cols.cols() > 0) rank_phi[r] = rank(hm.coordinates(cols));
    }
    for (const auto& link : space.links)
        if (homology(link, 1).betti() > 0) rep.link_h1_warning = true;
    for (int r = 0; r <= n; ++r) {
        int cone_dim = (dimHM[r] - rank_phi[r]) + (r >= 1 ? dimA[r - 1] - rank_phi[r - 1] : 0);
        int hi_dim = hi.betti.count(r) ? hi.betti.at(r) : 0;
        rep.rows.emplace_back(r, hi_dim, cone_dim);
        if (hi_dim != cone_dim) rep.equal = false;
    }
    return rep;
}

}  // namespace straticoh
