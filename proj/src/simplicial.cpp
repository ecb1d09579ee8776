#include "straticoh/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

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

int sort_sign(std::vector<Vertex>& v) {
    int sign = 1;
    // insertion sort, counting transpositions
    for (size_t i = 1; i < v.size(); ++i) {
        Vertex x = v[i];
        size_t j = i;
        while (j > 0 && v[j - 1] > x) {
            v[j] = v[j - 1];
            --j;
            sign = -sign;
        }
        v[j] = x;
    }
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] == v[i - 1]) return 0;
    return sign;
}

const std::vector<Simplex> SimplicialComplex::empty_list_;

ComplexHandle SimplicialComplex::build(const std::vector<Simplex>& maximal) {
    auto k = std::make_shared<SimplicialComplex>();
    std::set<Simplex> all;
    for (Simplex s : maximal) {
        int sg = sort_sign(s);
        if (s.size() > 0 && sg == 0)
            throw std::invalid_argument("malformed simplex (repeated vertex): " + simplex_str(s));
        // all nonempty subsets
        size_t n = s.size();
        for (size_t mask = 1; mask < (1u << n); ++mask) {
            Simplex f;
            for (size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) f.push_back(s[i]);
            all.insert(std::move(f));
        }
    }
    std::set<Vertex> verts;
    int top = -1;
    for (const auto& s : all) {
        verts.insert(s.begin(), s.end());
        top = std::max(top, static_cast<int>(s.size()) - 1);
    }
    k->vertices_.assign(verts.begin(), verts.end());
    k->by_dim_.resize(top + 1);
    k->index_.resize(top + 1);
    for (const auto& s : all) k->by_dim_[s.size() - 1].push_back(s);
    for (int r = 0; r <= top; ++r) {
        std::sort(k->by_dim_[r].begin(), k->by_dim_[r].end());
        for (int i = 0; i < static_cast<int>(k->by_dim_[r].size()); ++i)
            k->index_[r][k->by_dim_[r][i]] = i;
    }
    return k;
}

int SimplicialComplex::count(int r) const {
    if (r < 0 || r > dim()) return 0;
    return static_cast<int>(by_dim_[r].size());
}

const std::vector<Simplex>& SimplicialComplex::simplices(int r) const {
    if (r < 0 || r > dim()) return empty_list_;
    return by_dim_[r];
}

bool SimplicialComplex::has(const Simplex& s) const {
    int r = static_cast<int>(s.size()) - 1;
    if (r < 0 || r > dim()) return false;
    return index_[r].count(s) > 0;
}

int SimplicialComplex::index_of(const Simplex& s) const {
    int r = static_cast<int>(s.size()) - 1;
    if (r < 0 || r > dim()) throw std::invalid_argument("simplex not in complex: " + simplex_str(s));
    auto it = index_[r].find(s);
    if (it == index_[r].end())
        throw std::invalid_argument("simplex not in complex: " + simplex_str(s));
    return it->second;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    std::vector<Simplex> out;
    for (int r = 0; r <= dim(); ++r) {
        for (const auto& s : by_dim_[r]) {
            bool is_face = false;
            if (r < dim()) {
                // s is a face of some coface iff adding any vertex keeps it a simplex
                for (Vertex v : vertices_) {
                    if (std::binary_search(s.begin(), s.end(), v)) continue;
                    Simplex t = s;
                    t.push_back(v);
                    std::sort(t.begin(), t.end());
                    if (has(t)) { is_face = true; break; }
                }
            }
            if (!is_face) out.push_back(s);
        }
    }
    return out;
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
    for (int r = 0; r <= dim(); ++r)
        for (const auto& s : by_dim_[r])
            if (!other.has(s)) return false;
    return true;
}

ComplexPtr SimplicialComplex::cochain_complex() const {
    if (cochain_cache_) return cochain_cache_;
    int top = std::max(dim(), 0);
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int r = 0; r <= top; ++r) dims.push_back(count(r));
    for (int r = 0; r <= top; ++r) {
        Matrix d(count(r + 1), count(r));
        for (int t = 0; t < count(r + 1); ++t) {
            const Simplex& tau = by_dim_[r + 1][t];
            for (size_t i = 0; i < tau.size(); ++i) {
                Simplex face;
                face.reserve(tau.size() - 1);
                for (size_t j = 0; j < tau.size(); ++j)
                    if (j != i) face.push_back(tau[j]);
                d(t, index_of(face)) = (i % 2 == 0) ? 1 : -1;
            }
        }
        diffs.push_back(std::move(d));
    }
    cochain_cache_ = GradedComplex::make(0, std::move(dims), std::move(diffs));
    return cochain_cache_;
}

Matrix SimplicialComplex::boundary_matrix(int r) const {
    return cochain_complex()->d(r - 1).transpose();
}

Cochain Cochain::zero(ComplexHandle k, int degree) {
    Cochain c;
    c.degree = degree;
    c.values.assign(k->count(degree), Rational(0));
    c.complex = std::move(k);
    return c;
}

Cochain Cochain::dual(ComplexHandle k, const Simplex& s) {
    Cochain c = zero(k, static_cast<int>(s.size()) - 1);
    c.values[k->index_of(s)] = 1;
    return c;
}

Cochain coboundary(const Cochain& a) {
    Cochain c = Cochain::zero(a.complex, a.degree + 1);
    c.values = a.complex->cochain_complex()->d(a.degree).apply(a.values);
    return c;
}

Cochain cup(const Cochain& a, const Cochain& b) {
    if (a.complex != b.complex)
        throw std::invalid_argument("cup: cochains live on different complexes");
    const auto& k = *a.complex;
    int p = a.degree, q = b.degree;
    Cochain c = Cochain::zero(a.complex, p + q);
    for (int t = 0; t < k.count(p + q); ++t) {
        const Simplex& s = k.simplices(p + q)[t];
        Simplex front(s.begin(), s.begin() + p + 1);
        Simplex back(s.begin() + p, s.end());
        const Rational& av = a.values[k.index_of(front)];
        if (sgn(av) == 0) continue;
        c.values[t] = av * b.values[k.index_of(back)];
    }
    return c;
}

Rational evaluate(const Cochain& a, const std::vector<Rational>& chain) {
    if (chain.size() != a.values.size())
        throw std::invalid_argument("evaluate: degree mismatch");
    Rational out(0);
    for (size_t i = 0; i < chain.size(); ++i)
        if (sgn(a.values[i]) != 0 && sgn(chain[i]) != 0) out += a.values[i] * chain[i];
    return out;
}

SimplicialMap::SimplicialMap(ComplexHandle src, ComplexHandle tgt, std::map<Vertex, Vertex> vmap)
    : src_(std::move(src)), tgt_(std::move(tgt)), v_(std::move(vmap)) {
    for (Vertex v : src_->vertices())
        if (!v_.count(v))
            throw std::invalid_argument("simplicial map: vertex " + std::to_string(v) +
                                        " has no image");
    for (int r = 0; r <= src_->dim(); ++r)
        for (const auto& s : src_->simplices(r)) {
            Simplex img;
            for (Vertex v : s) img.push_back(v_.at(v));
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (!tgt_->has(img))
                throw std::invalid_argument("simplicial map: image of " + simplex_str(s) +
                                            " is not a simplex");
        }
}

SimplicialMap SimplicialMap::identity(ComplexHandle k) {
    std::map<Vertex, Vertex> id;
    for (Vertex v : k->vertices()) id[v] = v;
    return SimplicialMap(k, k, std::move(id));
}

Vertex SimplicialMap::operator()(Vertex v) const { return v_.at(v); }

bool SimplicialMap::is_isomorphism() const {
    std::set<Vertex> image;
    for (Vertex v : src_->vertices()) image.insert(v_.at(v));
    if (image.size() != src_->vertices().size() ||
        src_->vertices().size() != tgt_->vertices().size())
        return false;
    // injective vertex map whose simplex images are simplices: equal counts
    // per dimension force bijectivity on simplices
    for (int r = 0; r <= std::max(src_->dim(), tgt_->dim()); ++r) {
        if (src_->count(r) != tgt_->count(r)) return false;
        std::set<Simplex> imgs;
        for (const auto& s : src_->simplices(r)) {
            auto im = image_simplex(s);
            if (!im || static_cast<int>(im->first.size()) != r + 1) return false;
            imgs.insert(im->first);
        }
        if (static_cast<int>(imgs.size()) != src_->count(r)) return false;
    }
    return true;
}

bool SimplicialMap::is_automorphism() const {
    if (src_ != tgt_ && !(src_->is_subcomplex_of(*tgt_) && tgt_->is_subcomplex_of(*src_)))
        return false;
    return is_isomorphism();
}

SimplicialMap SimplicialMap::inverse() const {
    if (!is_isomorphism()) throw std::invalid_argument("inverse of a non-isomorphism");
    std::map<Vertex, Vertex> inv;
    for (const auto& [a, b] : v_) inv[b] = a;
    return SimplicialMap(tgt_, src_, std::move(inv));
}

std::optional<std::pair<Simplex, int>> SimplicialMap::image_simplex(const Simplex& s) const {
    Simplex img;
    img.reserve(s.size());
    for (Vertex v : s) img.push_back(v_.at(v));
    int sign = sort_sign(img);
    if (sign == 0) return std::nullopt;
    return std::make_pair(std::move(img), sign);
}

Matrix SimplicialMap::pullback_matrix(int r) const {
    Matrix m(src_->count(r), tgt_->count(r));
    for (int i = 0; i < src_->count(r); ++i) {
        auto im = image_simplex(src_->simplices(r)[i]);
        if (!im) continue;
        m(i, tgt_->index_of(im->first)) = im->second;
    }
    return m;
}

Cochain SimplicialMap::pullback(const Cochain& a) const {
    if (a.complex != tgt_)
        throw std::invalid_argument("pullback: cochain does not live on the target");
    Cochain c = Cochain::zero(src_, a.degree);
    c.values = pullback_matrix(a.degree).apply(a.values);
    return c;
}

Matrix SimplicialMap::pushforward_matrix(int r) const { return pullback_matrix(r).transpose(); }

ComplexMap SimplicialMap::pullback_map() const {
    ComplexPtr cs = src_->cochain_complex(), ct = tgt_->cochain_complex();
    std::map<int, Matrix> comp;
    for (int r = 0; r <= std::max(src_->dim(), tgt_->dim()); ++r) comp[r] = pullback_matrix(r);
    return ComplexMap(ct, cs, std::move(comp));
}

SimplicialMap ProductComplex::proj_base() const {
    std::map<Vertex, Vertex> vm;
    for (size_t i = 0; i < pairs.size(); ++i) vm[static_cast<Vertex>(i)] = pairs[i].first;
    return SimplicialMap(complex, base, std::move(vm));
}

SimplicialMap ProductComplex::proj_fiber() const {
    std::map<Vertex, Vertex> vm;
    for (size_t i = 0; i < pairs.size(); ++i) vm[static_cast<Vertex>(i)] = pairs[i].second;
    return SimplicialMap(complex, fiber, std::move(vm));
}

Vertex ProductComplex::vertex_of(Vertex b, Vertex f) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(b, f));
    if (it == pairs.end() || *it != std::make_pair(b, f))
        throw std::invalid_argument("product vertex not found");
    return static_cast<Vertex>(it - pairs.begin());
}

Cochain ProductComplex::cross(const Cochain& a, const Cochain& b) const {
    return cup(proj_base().pullback(a), proj_fiber().pullback(b));
}

ProductComplex ordered_product(ComplexHandle base, ComplexHandle fiber) {
    if (base->vertices().empty() || fiber->vertices().empty())
        throw std::invalid_argument("ordered_product: empty factor");
    ProductComplex out;
    out.base = base;
    out.fiber = fiber;
    for (Vertex b : base->vertices())
        for (Vertex f : fiber->vertices()) out.pairs.emplace_back(b, f);
    std::sort(out.pairs.begin(), out.pairs.end());
    auto label = [&](Vertex b, Vertex f) {
        auto it = std::lower_bound(out.pairs.begin(), out.pairs.end(), std::make_pair(b, f));
        return static_cast<Vertex>(it - out.pairs.begin());
    };
    std::vector<Simplex> maximal;
    for (const auto& sb : base->maximal_simplices()) {
        for (const auto& sf : fiber->maximal_simplices()) {
            int p = static_cast<int>(sb.size()) - 1, q = static_cast<int>(sf.size()) - 1;
            // staircase paths from (0,0) to (p,q)
            std::vector<std::pair<int, int>> path{{0, 0}};
            std::vector<Simplex> acc;
            std::function<void()> rec = [&]() {
                auto [i, j] = path.back();
                if (i == p && j == q) {
                    Simplex s;
                    for (auto [x, y] : path) s.push_back(label(sb[x], sf[y]));
                    acc.push_back(std::move(s));
                    return;
                }
                if (i < p) { path.emplace_back(i + 1, j); rec(); path.pop_back(); }
                if (j < q) { path.emplace_back(i, j + 1); rec(); path.pop_back(); }
            };
            rec();
            maximal.insert(maximal.end(), acc.begin(), acc.end());
        }
    }
    out.complex = SimplicialComplex::build(maximal);
    if (static_cast<int>(out.pairs.size()) != static_cast<int>(out.complex->vertices().size()))
        throw std::logic_error("ordered_product: vertex bookkeeping mismatch");
    return out;
}

Vertex MappingTorus::vertex_of(int layer, Vertex fiber_vertex) const {
    auto key = std::make_pair(layer, fiber_vertex);
    auto it = std::lower_bound(decode.begin(), decode.end(), key);
    if (it == decode.end() || *it != key)
        throw std::invalid_argument("mapping torus vertex not found");
    return static_cast<Vertex>(it - decode.begin());
}

SimplicialMap MappingTorus::fiber_inclusion() const {
    std::map<Vertex, Vertex> vm;
    for (Vertex v : fiber->vertices()) vm[v] = vertex_of(0, v);
    return SimplicialMap(fiber, complex, std::move(vm));
}

MappingTorus mapping_torus(const SimplicialMap& f, int layers) {
    if (layers < 3)
        throw std::invalid_argument("mapping_torus: need at least 3 layers");
    if (f.source() != f.target() || !f.is_automorphism())
        throw std::invalid_argument("mapping_torus: monodromy is not an automorphism");
    ComplexHandle fib = f.source();
    MappingTorus mt;
    mt.fiber = fib;
    mt.layers = layers;
    for (int i = 0; i < layers; ++i)
        for (Vertex v : fib->vertices()) mt.decode.emplace_back(i, v);
    std::sort(mt.decode.begin(), mt.decode.end());
    auto label = [&](int layer, Vertex v) {
        auto key = std::make_pair(layer, v);
        auto it = std::lower_bound(mt.decode.begin(), mt.decode.end(), key);
        return static_cast<Vertex>(it - mt.decode.begin());
    };
    std::vector<Simplex> maximal;
    for (const auto& s : fib->maximal_simplices()) {
        int p = static_cast<int>(s.size()) - 1;
        for (int layer = 0; layer < layers; ++layer) {
            bool glued = layer == layers - 1;
            int top_layer = glued ? 0 : layer + 1;
            for (int cut = 0; cut <= p; ++cut) {
                Simplex t;
                for (int i = 0; i <= cut; ++i) t.push_back(label(layer, s[i]));
                for (int i = cut; i <= p; ++i)
                    t.push_back(label(top_layer, glued ? f(s[i]) : s[i]));
                maximal.push_back(std::move(t));
            }
        }
    }
    mt.complex = SimplicialComplex::build(maximal);
    if (mt.complex->vertices().size() != mt.decode.size())
        throw std::logic_error("mapping_torus: vertex bookkeeping mismatch");
    return mt;
}

OrientedPseudomanifold make_pseudomanifold(
    ComplexHandle k, const std::optional<std::vector<int>>& orientation_override) {
    OrientedPseudomanifold p;
    p.complex = k;
    p.n = k->dim();
    int n = p.n;
    if (n < 0) throw std::invalid_argument("pseudomanifold: empty complex");
    int ntop = k->count(n);

    // cofaces of every (n-1)-simplex: (top index, incidence sign)
    std::vector<std::vector<std::pair<int, int>>> cofaces(k->count(n - 1));
    for (int t = 0; t < ntop; ++t) {
        const Simplex& s = k->simplices(n)[t];
        for (size_t i = 0; i < s.size(); ++i) {
            Simplex face;
            for (size_t j = 0; j < s.size(); ++j)
                if (j != i) face.push_back(s[j]);
            cofaces[k->index_of(face)].emplace_back(t, i % 2 == 0 ? 1 : -1);
        }
    }
    std::vector<Simplex> boundary_faces;
    for (int i = 0; i < k->count(n - 1); ++i) {
        if (cofaces[i].size() == 1)
            boundary_faces.push_back(k->simplices(n - 1)[i]);
        else if (cofaces[i].size() != 2)
            throw std::invalid_argument("non-pseudomanifold incidence at " +
                                        simplex_str(k->simplices(n - 1)[i]) + ": " +
                                        std::to_string(cofaces[i].size()) + " cofaces");
    }
    p.boundary = SimplicialComplex::build(boundary_faces);

    std::vector<int> coeff(ntop, 0);
    if (orientation_override) {
        if (static_cast<int>(orientation_override->size()) != ntop)
            throw std::invalid_argument("orientation override has the wrong length");
        coeff = *orientation_override;
        for (int c : coeff)
            if (c != 1 && c != -1)
                throw std::invalid_argument("orientation override entries must be ±1");
    } else {
        // propagate across interior faces, lowest-index seed per component
        for (int seed = 0; seed < ntop; ++seed) {
            if (coeff[seed] != 0) continue;
            coeff[seed] = 1;
            std::vector<int> stack{seed};
            while (!stack.empty()) {
                int t = stack.back();
                stack.pop_back();
                const Simplex& s = k->simplices(n)[t];
                for (size_t i = 0; i < s.size(); ++i) {
                    Simplex face;
                    for (size_t j = 0; j < s.size(); ++j)
                        if (j != i) face.push_back(s[j]);
                    const auto& cf = cofaces[k->index_of(face)];
                    if (cf.size() != 2) continue;
                    for (const auto& [t2, sign2] : cf) {
                        if (t2 == t) continue;
                        int sign1 = i % 2 == 0 ? 1 : -1;
                        int want = -coeff[t] * sign1 * sign2;
                        if (coeff[t2] == 0) {
                            coeff[t2] = want;
                            stack.push_back(t2);
                        }
                    }
                }
            }
        }
    }
    p.fundamental_cycle.assign(ntop, Rational(0));
    for (int t = 0; t < ntop; ++t) p.fundamental_cycle[t] = coeff[t];

    // ∂z must be supported on the boundary subcomplex
    std::vector<Rational> bz = k->boundary_matrix(n).apply(p.fundamental_cycle);
    for (int i = 0; i < k->count(n - 1); ++i) {
        if (sgn(bz[i]) == 0) continue;
        if (!p.boundary->has(k->simplices(n - 1)[i]))
            throw std::invalid_argument(
                orientation_override
                    ? "orientation override is not a fundamental cycle"
                    : "non-orientable: orientation propagation contradiction at " +
                          simplex_str(k->simplices(n - 1)[i]));
    }
    return p;
}

ComplexMap restriction_map(ComplexHandle k, ComplexHandle sub) {
    if (!sub->is_subcomplex_of(*k))
        throw std::invalid_argument("restriction_map: not a subcomplex");
    std::map<int, Matrix> comp;
    for (int r = 0; r <= std::max(0, sub->dim()); ++r) {
        Matrix m(sub->count(r), k->count(r));
        for (int i = 0; i < sub->count(r); ++i) m(i, k->index_of(sub->simplices(r)[i])) = 1;
        comp[r] = std::move(m);
    }
    return ComplexMap(k->cochain_complex(), sub->cochain_complex(), std::move(comp));
}

RelativeComplex relative_cochain_complex(const OrientedPseudomanifold& p) {
    if (!p.boundary->is_subcomplex_of(*p.complex))
        throw std::invalid_argument("relative complex: boundary is not a subcomplex");
    ComplexPtr abs = p.complex->cochain_complex();
    std::map<int, Subspace> interior;
    for (int r = 0; r <= p.complex->dim(); ++r) {
        std::vector<int> idx;
        for (int i = 0; i < p.complex->count(r); ++i)
            if (!p.boundary->has(p.complex->simplices(r)[i])) idx.push_back(i);
        interior.emplace(r, Subspace(abs->dim(r), Matrix::identity(abs->dim(r)).select_cols(idx)));
    }
    auto sub = subcomplex_from_subspaces(abs, interior);
    return {sub.complex, sub.inclusion};
}

}  // namespace straticoh
