#include "straticoh/hodge.hpp"

#include <stdexcept>

namespace straticoh {

InnerProduct InnerProduct::ones(const GradedComplex& c) {
    InnerProduct ip;
    for (int r = c.lo(); r <= c.hi(); ++r)
        ip.weights[r] = std::vector<Rational>(c.dim(r), Rational(1));
    return ip;
}

const std::vector<Rational>& InnerProduct::at(int r, int expected_dim) const {
    static const std::vector<Rational> empty;
    auto it = weights.find(r);
    if (it == weights.end()) {
        if (expected_dim != 0)
            throw std::invalid_argument("inner product: missing weights in degree " +
                                        std::to_string(r));
        return empty;
    }
    if (static_cast<int>(it->second.size()) != expected_dim)
        throw std::invalid_argument("inner product: weight count mismatch in degree " +
                                    std::to_string(r));
    return it->second;
}

Rational InnerProduct::pair(int r, const std::vector<Rational>& a,
                            const std::vector<Rational>& b) const {
    const auto& w = at(r, static_cast<int>(a.size()));
    if (a.size() != b.size()) throw std::invalid_argument("inner product: length mismatch");
    Rational out(0);
    for (size_t i = 0; i < a.size(); ++i) out += w[i] * a[i] * b[i];
    return out;
}

void InnerProduct::validate(const GradedComplex& c) const {
    for (int r = c.lo(); r <= c.hi(); ++r) {
        const auto& w = at(r, c.dim(r));
        for (const auto& x : w)
            if (sgn(x) <= 0)
                throw std::invalid_argument("inner product: nonpositive weight in degree " +
                                            std::to_string(r));
    }
}

Matrix adjoint(const GradedComplex& c, const InnerProduct& ip, int r) {
    // W_{r-1} d* = d^T W_r
    const auto& wlo = ip.at(r - 1, c.dim(r - 1));
    const auto& whi = ip.at(r, c.dim(r));
    Matrix dt = c.d(r - 1).transpose();  // dim(r-1) x dim(r)
    for (int i = 0; i < dt.rows(); ++i)
        for (int j = 0; j < dt.cols(); ++j)
            if (sgn(dt(i, j)) != 0) dt(i, j) = dt(i, j) * whi[j] / wlo[i];
    return dt;
}

HodgeSplit hodge_decomposition(const GradedComplex& c, const InnerProduct& ip, int r) {
    ip.validate(c);
    int n = c.dim(r);
    Subspace im_dstar = Subspace::unchecked(n, image_basis_matrix(adjoint(c, ip, r + 1)));
    Subspace ker_d = Subspace::unchecked(n, kernel_basis_matrix(c.d(r)));
    Subspace ker_dstar = Subspace::unchecked(n, kernel_basis_matrix(adjoint(c, ip, r)));
    Subspace harmonic = intersect(ker_d, ker_dstar);
    Subspace im_d = Subspace::unchecked(n, image_basis_matrix(c.d(r - 1)));
    return {im_dstar, harmonic, im_d};
}

Truncation truncate_below(ComplexPtr c, const InnerProduct& ip, int k) {
    ip.validate(*c);
    std::map<int, Subspace> s;
    for (int r = c->lo(); r <= c->hi(); ++r) {
        if (r < k)
            s.emplace(r, Subspace::full(c->dim(r)));
        else if (r == k)
            s.emplace(r, Subspace::unchecked(c->dim(r), image_basis_matrix(c->d(r - 1))));
    }
    auto sub = subcomplex_from_subspaces(c, s);
    // projection: identity below k; in degree k, projection onto im d along
    // ker d* (the ip-orthogonal splitting); zero above
    std::map<int, Matrix> proj;
    for (int r = c->lo(); r <= c->hi(); ++r) {
        if (r < k) {
            proj[r] = Matrix::identity(c->dim(r));
        } else if (r == k) {
            Matrix im = sub.inclusion.at(k);
            Matrix kerdst = kernel_basis_matrix(adjoint(*c, ip, k));
            Matrix x = solve(Matrix::hcat(im, kerdst), Matrix::identity(c->dim(k)));
            Matrix p(im.cols(), c->dim(k));
            for (int i = 0; i < p.rows(); ++i)
                for (int j = 0; j < p.cols(); ++j) p(i, j) = x(i, j);
            proj[r] = std::move(p);
        }
    }
    ComplexMap projection(c, sub.complex, std::move(proj));
    return {sub.complex, sub.inclusion, std::move(projection)};
}

Cotruncation cotruncate(ComplexPtr c, const InnerProduct& ip, int k) {
    ip.validate(*c);
    std::map<int, Subspace> s;
    for (int r = c->lo(); r <= c->hi(); ++r) {
        if (r > k)
            s.emplace(r, Subspace::full(c->dim(r)));
        else if (r == k)
            s.emplace(r, Subspace::unchecked(c->dim(r), kernel_basis_matrix(adjoint(*c, ip, k))));
    }
    auto sub = subcomplex_from_subspaces(c, s);
    return {sub.complex, sub.inclusion};
}

ComplexMap metric_comparison_iso(ComplexPtr c, const InnerProduct& g, const InnerProduct& g2,
                                 int k) {
    Cotruncation tg = cotruncate(c, g, k);
    Cotruncation tg2 = cotruncate(c, g2, k);
    std::map<int, Matrix> comp;
    for (int r = c->lo(); r <= c->hi(); ++r) {
        if (r < k) continue;
        if (r > k) {
            comp[r] = Matrix::identity(c->dim(r));
            continue;
        }
        // degree k: ker d*_g = im d*_g ⊕ Harm_g -> im d*_{g'} ⊕ Harm_{g'}
        HodgeSplit hg = hodge_decomposition(*c, g, k);
        HodgeSplit hg2 = hodge_decomposition(*c, g2, k);
        Matrix src_basis = tg.inclusion.at(k);    // basis of ker d*_g
        Matrix tgt_basis = tg2.inclusion.at(k);   // basis of ker d*_{g'}
        CohomologyResult hk = cohomology(c, k);
        Matrix harm2_coords = hk.coordinates(hg2.harmonic.basis());
        Matrix d_im2 = c->d(k) * hg2.im_dstar.basis();
        Matrix out(tgt_basis.cols(), src_basis.cols());
        for (int j = 0; j < src_basis.cols(); ++j) {
            // split w = u + h with u ∈ im d*_g, h ∈ Harm_g
            Matrix split = solve(Matrix::hcat(hg.im_dstar.basis(), hg.harmonic.basis()),
                                 src_basis.select_cols({j}));
            Matrix ucoord(hg.im_dstar.dim(), 1), hcoord(hg.harmonic.dim(), 1);
            for (int i = 0; i < ucoord.rows(); ++i) ucoord(i, 0) = split(i, 0);
            for (int i = 0; i < hcoord.rows(); ++i) hcoord(i, 0) = split(ucoord.rows() + i, 0);
            Matrix u = hg.im_dstar.basis() * ucoord;
            Matrix h = hg.harmonic.basis() * hcoord;
            // image part: u' with d u' = d u, u' ∈ im d*_{g'}
            Matrix u2 = hg2.im_dstar.basis() * solve(d_im2, c->d(k) * u);
            // harmonic part: h' with the same cohomology class
            Matrix h2 = hg2.harmonic.basis() * solve(harm2_coords, hk.coordinates(h));
            Matrix w2 = solve(tgt_basis, u2 + h2);
            for (int i = 0; i < out.rows(); ++i) out(i, j) = w2(i, 0);
        }
        comp[k] = std::move(out);
    }
    ComplexMap kappa(tg.complex, tg2.complex, std::move(comp));
    for (int r = k; r <= c->hi(); ++r)
        if (rank(kappa.at(r)) != tg.complex->dim(r) || tg.complex->dim(r) != tg2.complex->dim(r))
            throw std::logic_error("metric comparison map failed to be an isomorphism");
    return kappa;
}

ComplexMap automorphism_action(const SimplicialMap& f, const InnerProduct& ip, int k) {
    if (!f.is_automorphism())
        throw std::invalid_argument("automorphism_action: map is not an automorphism");
    ComplexPtr c = f.source()->cochain_complex();
    ip.validate(*c);
    // f* must preserve the inner product: (f*)^T W f* = W degreewise
    for (int r = c->lo(); r <= c->hi(); ++r) {
        Matrix p = f.pullback_matrix(r);
        Matrix w = Matrix::diagonal(ip.at(r, c->dim(r)));
        if (!(p.transpose() * w * p == w))
            throw std::invalid_argument(
                "automorphism_action: map does not preserve the inner product in degree " +
                std::to_string(r));
        if (!(adjoint(*c, ip, r) * p == f.pullback_matrix(r - 1) * adjoint(*c, ip, r)))
            throw std::logic_error("automorphism_action: d* ∘ f* ≠ f* ∘ d*");
    }
    Cotruncation tau = cotruncate(c, ip, k);
    std::map<int, Matrix> comp;
    for (int r = std::max(k, c->lo()); r <= c->hi(); ++r)
        comp[r] = solve(tau.inclusion.at(r), f.pullback_matrix(r) * tau.inclusion.at(r));
    return ComplexMap(tau.complex, tau.complex, std::move(comp));
}

CupClosureReport cotruncation_cup_closure_check(ComplexHandle k_complex, const InnerProduct& ip,
                                                int k) {
    ComplexPtr c = k_complex->cochain_complex();
    Cotruncation tau = cotruncate(c, ip, k);
    CupClosureReport rep;
    for (int p = c->lo(); p <= c->hi(); ++p) {
        for (int q = c->lo(); q <= c->hi(); ++q) {
            if (tau.complex->dim(p) == 0 || tau.complex->dim(q) == 0) continue;
            int pq = p + q;
            Subspace target =
                pq > c->hi()
                    ? Subspace::zero(c->dim(pq))
                    : Subspace(c->dim(pq), tau.inclusion.at(pq));
            Matrix bp = tau.inclusion.at(p), bq = tau.inclusion.at(q);
            for (int i = 0; i < bp.cols(); ++i) {
                Cochain a{k_complex, p, bp.col(i)};
                for (int j = 0; j < bq.cols(); ++j) {
                    Cochain b{k_complex, q, bq.col(j)};
                    Cochain ab = cup(a, b);
                    ++rep.pairs_checked;
                    if (!target.contains_vector(ab.values)) {
                        rep.closed = false;
                        rep.failing_degree = pq;
                        return rep;
                    }
                }
            }
        }
    }
    return rep;
}

}  // namespace straticoh
