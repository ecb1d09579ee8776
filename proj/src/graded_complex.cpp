#include "straticoh/graded_complex.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

namespace straticoh {

GradedComplex::GradedComplex(int lo, std::vector<int> dims, std::vector<Matrix> diffs)
    : lo_(lo), dims_(std::move(dims)), diff_(std::move(diffs)) {
    if (dims_.empty()) {
        dims_ = {0};
        diff_ = {Matrix(0, 0)};
    }
    if (diff_.size() != dims_.size())
        throw std::invalid_argument("complex: need one differential per degree");
    for (size_t i = 0; i < dims_.size(); ++i) {
        int next = i + 1 < dims_.size() ? dims_[i + 1] : 0;
        if (diff_[i].rows() != next || diff_[i].cols() != dims_[i])
            throw std::invalid_argument("complex: differential shape mismatch at degree " +
                                        std::to_string(lo_ + static_cast<int>(i)));
    }
    for (size_t i = 0; i + 1 < diff_.size(); ++i)
        if (!(diff_[i + 1] * diff_[i]).is_zero())
            throw std::invalid_argument("malformed complex: d∘d ≠ 0 at degree " +
                                        std::to_string(lo_ + static_cast<int>(i)));
}

ComplexPtr GradedComplex::make(int lo, std::vector<int> dims, std::vector<Matrix> diffs) {
    return std::make_shared<GradedComplex>(lo, std::move(dims), std::move(diffs));
}

ComplexPtr GradedComplex::zero() { return make(0, {0}, {Matrix(0, 0)}); }

int GradedComplex::dim(int r) const {
    if (r < lo_ || r > hi()) return 0;
    return dims_[r - lo_];
}

Matrix GradedComplex::d(int r) const {
    if (r < lo_ || r > hi()) return Matrix(dim(r + 1), dim(r));
    return diff_[r - lo_];
}

long GradedComplex::euler_characteristic() const {
    long chi = 0;
    for (int r = lo_; r <= hi(); ++r) chi += (r % 2 == 0 ? 1 : -1) * dim(r);
    return chi;
}

bool GradedComplex::same_as(const GradedComplex& other) const {
    int a = std::min(lo_, other.lo_), b = std::max(hi(), other.hi());
    for (int r = a; r <= b; ++r)
        if (dim(r) != other.dim(r) || !(d(r) == other.d(r))) return false;
    return true;
}

ComplexMap::ComplexMap(ComplexPtr src, ComplexPtr tgt, std::map<int, Matrix> components)
    : src_(std::move(src)), tgt_(std::move(tgt)), f_(std::move(components)) {
    int a = std::min(src_->lo(), tgt_->lo()), b = std::max(src_->hi(), tgt_->hi());
    for (auto& [r, m] : f_)
        if (m.rows() != tgt_->dim(r) || m.cols() != src_->dim(r))
            throw std::invalid_argument("complex map: component shape mismatch at degree " +
                                        std::to_string(r));
    for (int r = a; r <= b; ++r)
        if (!(tgt_->d(r) * at(r) == at(r + 1) * src_->d(r)))
            throw std::invalid_argument(
                "malformed complex map: does not commute with d at degree " + std::to_string(r));
}

ComplexMap ComplexMap::identity(ComplexPtr c) {
    std::map<int, Matrix> comp;
    for (int r = c->lo(); r <= c->hi(); ++r) comp[r] = Matrix::identity(c->dim(r));
    return ComplexMap(c, c, std::move(comp));
}

ComplexMap ComplexMap::zero(ComplexPtr src, ComplexPtr tgt) {
    return ComplexMap(std::move(src), std::move(tgt), {});
}

Matrix ComplexMap::at(int r) const {
    auto it = f_.find(r);
    if (it != f_.end()) return it->second;
    return Matrix(tgt_->dim(r), src_->dim(r));
}

ComplexMap compose(const ComplexMap& g, const ComplexMap& f) {
    if (!g.source()->same_as(*f.target()))
        throw std::invalid_argument("compose: middle complexes differ");
    std::map<int, Matrix> comp;
    int a = std::min(f.source()->lo(), g.target()->lo());
    int b = std::max(f.source()->hi(), g.target()->hi());
    for (int r = a; r <= b; ++r) comp[r] = g.at(r) * f.at(r);
    return ComplexMap(f.source(), g.target(), std::move(comp));
}

CohomologyResult::CohomologyResult(ComplexPtr c, int degree) : c_(std::move(c)), degree_(degree) {
    int n = c_->dim(degree_);
    Subspace ker = Subspace::unchecked(n, kernel_basis_matrix(c_->d(degree_)));
    img_ = image_basis_matrix(c_->d(degree_ - 1));
    Subspace im = Subspace::unchecked(n, img_);
    reps_ = complement_in(im, ker).basis();
}

std::vector<Rational> CohomologyResult::coordinates(const std::vector<Rational>& cocycle) const {
    return coordinates(Matrix::column(cocycle)).col(0);
}

Matrix CohomologyResult::coordinates(const Matrix& cocycle_columns) const {
    if (!(c_->d(degree_) * cocycle_columns).is_zero())
        throw std::invalid_argument("coordinates: input is not a cocycle");
    Matrix m = solve(Matrix::hcat(reps_, img_), cocycle_columns);
    Matrix out(reps_.cols(), cocycle_columns.cols());
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

CohomologyResult cohomology(ComplexPtr c, int r) { return CohomologyResult(std::move(c), r); }

namespace {
int g_threads = 1;
}

void set_parallelism(int threads) {
    if (threads < 1) throw std::invalid_argument("thread count must be at least 1");
    g_threads = threads;
}

int parallelism() { return g_threads; }

std::map<int, int> betti_table(ComplexPtr c) {
    int n = c->hi() - c->lo() + 1;
    std::vector<int> out(n, 0);
    int workers = std::min(g_threads, n);
    if (workers > 1) {
        // contiguous degree chunks, one task each; per-degree results do not
        // depend on scheduling
        std::vector<std::future<void>> tasks;
        for (int w = 0; w < workers; ++w)
            tasks.push_back(std::async(std::launch::async, [&, w] {
                for (int i = w; i < n; i += workers)
                    out[i] = cohomology(c, c->lo() + i).betti();
            }));
        for (auto& t : tasks) t.get();
    } else {
        for (int i = 0; i < n; ++i) out[i] = cohomology(c, c->lo() + i).betti();
    }
    std::map<int, int> b;
    for (int i = 0; i < n; ++i) b[c->lo() + i] = out[i];
    return b;
}

Matrix map_on_cohomology(const ComplexMap& f, int r) {
    CohomologyResult hs(f.source(), r), ht(f.target(), r);
    return ht.coordinates(f.at(r) * hs.representatives());
}

SubcomplexResult subcomplex_from_subspaces(ComplexPtr c, const std::map<int, Subspace>& s) {
    auto basis_at = [&](int r) -> Matrix {
        auto it = s.find(r);
        if (it == s.end()) return Matrix(c->dim(r), 0);
        if (it->second.ambient() != c->dim(r))
            throw std::invalid_argument("subcomplex: ambient mismatch at degree " +
                                        std::to_string(r));
        return it->second.basis();
    };
    int lo = c->lo(), hi = c->hi();
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    std::map<int, Matrix> incl;
    for (int r = lo; r <= hi; ++r) {
        Matrix b = basis_at(r), bn = basis_at(r + 1);
        auto restricted = try_solve(bn, c->d(r) * b);
        if (!restricted)
            throw std::invalid_argument("subcomplex: subspace is not d-stable at degree " +
                                        std::to_string(r));
        dims.push_back(b.cols());
        diffs.push_back(*restricted);
        incl[r] = b;
    }
    ComplexPtr sub = GradedComplex::make(lo, std::move(dims), std::move(diffs));
    return {sub, ComplexMap(sub, c, std::move(incl))};
}

QuotientResult quotient_complex(ComplexPtr c, const std::map<int, Subspace>& s) {
    auto sub_at = [&](int r) -> Subspace {
        auto it = s.find(r);
        if (it == s.end()) return Subspace::zero(c->dim(r));
        return it->second;
    };
    int lo = c->lo(), hi = c->hi();
    std::vector<Matrix> comp(hi - lo + 1, Matrix());
    for (int r = lo; r <= hi; ++r)
        comp[r - lo] = complement_in(sub_at(r), Subspace::full(c->dim(r))).basis();
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    std::map<int, Matrix> proj;
    for (int r = lo; r <= hi; ++r) {
        const Matrix& b = comp[r - lo];
        Matrix bn = r + 1 <= hi ? comp[r + 1 - lo] : Matrix(c->dim(r + 1), 0);
        Matrix sn = sub_at(r + 1).basis();
        // d(b) decomposed over complement ⊕ subspace; the quotient keeps the
        // complement block.
        Matrix x = solve(Matrix::hcat(bn, sn), c->d(r) * b);
        Matrix dq(bn.cols(), b.cols());
        for (int i = 0; i < dq.rows(); ++i)
            for (int j = 0; j < dq.cols(); ++j) dq(i, j) = x(i, j);
        dims.push_back(b.cols());
        diffs.push_back(std::move(dq));
        // projection: coordinates of the identity basis in complement block
        Matrix p = solve(Matrix::hcat(b, sub_at(r).basis()), Matrix::identity(c->dim(r)));
        Matrix pq(b.cols(), c->dim(r));
        for (int i = 0; i < pq.rows(); ++i)
            for (int j = 0; j < pq.cols(); ++j) pq(i, j) = p(i, j);
        proj[r] = std::move(pq);
    }
    ComplexPtr quo = GradedComplex::make(lo, std::move(dims), std::move(diffs));
    return {quo, ComplexMap(c, quo, std::move(proj))};
}

ComplexPtr mapping_cone(const ComplexMap& f) {
    const auto& a = f.source();
    const auto& b = f.target();
    int lo = std::min(a->lo() - 1, b->lo());
    int hi = std::max(a->hi() - 1, b->hi());
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int r = lo; r <= hi; ++r) dims.push_back(a->dim(r + 1) + b->dim(r));
    for (int r = lo; r <= hi; ++r) {
        int ra1 = a->dim(r + 2), rb1 = b->dim(r + 1);
        Matrix d(ra1 + rb1, a->dim(r + 1) + b->dim(r));
        Matrix da = a->d(r + 1), db = b->d(r), fm = f.at(r + 1);
        for (int i = 0; i < ra1; ++i)
            for (int j = 0; j < a->dim(r + 1); ++j) d(i, j) = -da(i, j);
        for (int i = 0; i < rb1; ++i) {
            for (int j = 0; j < a->dim(r + 1); ++j) d(ra1 + i, j) = fm(i, j);
            for (int j = 0; j < b->dim(r); ++j) d(ra1 + i, a->dim(r + 1) + j) = db(i, j);
        }
        diffs.push_back(std::move(d));
    }
    return GradedComplex::make(lo, std::move(dims), std::move(diffs));
}

DirectSum direct_sum(const std::vector<ComplexPtr>& parts) {
    int lo = 0, hi = -1;
    bool first = true;
    for (const auto& p : parts) {
        if (first) { lo = p->lo(); hi = p->hi(); first = false; }
        lo = std::min(lo, p->lo());
        hi = std::max(hi, p->hi());
    }
    if (first) return {GradedComplex::zero(), {}};
    DirectSum out;
    out.offsets.resize(parts.size());
    std::vector<int> dims;
    std::vector<Matrix> diffs;
    for (int r = lo; r <= hi; ++r) {
        int total = 0;
        for (size_t i = 0; i < parts.size(); ++i) {
            out.offsets[i][r] = total;
            total += parts[i]->dim(r);
        }
        dims.push_back(total);
    }
    for (int r = lo; r <= hi; ++r) {
        int rows = 0, cols = dims[r - lo];
        for (const auto& p : parts) rows += p->dim(r + 1);
        Matrix d(rows, cols);
        int ro = 0, co = 0;
        for (const auto& p : parts) {
            Matrix dp = p->d(r);
            for (int i = 0; i < dp.rows(); ++i)
                for (int j = 0; j < dp.cols(); ++j) d(ro + i, co + j) = dp(i, j);
            ro += p->dim(r + 1);
            co += p->dim(r);
        }
        diffs.push_back(std::move(d));
    }
    out.complex = GradedComplex::make(lo, std::move(dims), std::move(diffs));
    return out;
}

void validate_ses(const ComplexMap& incl, const ComplexMap& proj) {
    if (!incl.target()->same_as(*proj.source()))
        throw std::invalid_argument("ses: middle complexes differ");
    const auto& a = incl.source();
    const auto& b = incl.target();
    const auto& c = proj.target();
    int lo = std::min({a->lo(), b->lo(), c->lo()});
    int hi = std::max({a->hi(), b->hi(), c->hi()});
    for (int r = lo; r <= hi; ++r) {
        Matrix i = incl.at(r), p = proj.at(r);
        if (rank(i) != a->dim(r))
            throw std::invalid_argument("ses: inclusion not injective at degree " +
                                        std::to_string(r));
        if (rank(p) != c->dim(r))
            throw std::invalid_argument("ses: projection not surjective at degree " +
                                        std::to_string(r));
        Subspace im = Subspace::unchecked(b->dim(r), image_basis_matrix(i));
        Subspace ker = Subspace::unchecked(b->dim(r), kernel_basis_matrix(p));
        if (!im.equals(ker))
            throw std::invalid_argument("ses: im(incl) ≠ ker(proj) at degree " + std::to_string(r));
    }
}

namespace {

Matrix connecting_unvalidated(const ComplexMap& incl, const ComplexMap& proj, int r) {
    const auto& a = incl.source();
    CohomologyResult hc(proj.target(), r), ha(a, r + 1);
    Matrix reps = hc.representatives();
    Matrix out(ha.betti(), hc.betti());
    for (int j = 0; j < reps.cols(); ++j) {
        Matrix z = reps.select_cols({j});
        Matrix b = solve(proj.at(r), z);       // deterministic section
        Matrix db = incl.target()->d(r) * b;   // lies in im(incl)
        Matrix av = solve(incl.at(r + 1), db);  // cocycle in A^{r+1}
        Matrix coords = ha.coordinates(av);
        for (int i = 0; i < out.rows(); ++i) out(i, j) = coords(i, 0);
    }
    return out;
}

}  // namespace

Matrix ses_connecting(const ComplexMap& incl, const ComplexMap& proj, int r) {
    validate_ses(incl, proj);
    return connecting_unvalidated(incl, proj, r);
}

std::map<int, Matrix> ses_connecting_all(const ComplexMap& incl, const ComplexMap& proj) {
    validate_ses(incl, proj);
    const auto& b = incl.target();
    std::map<int, Matrix> out;
    for (int r = b->lo() - 1; r <= b->hi(); ++r)
        out[r] = connecting_unvalidated(incl, proj, r);
    return out;
}

bool ExactnessReport::all_exact() const {
    for (const auto& p : positions)
        if (!p.exact) return false;
    return true;
}

ExactnessReport verify_exactness(const std::vector<Matrix>& maps,
                                 const std::vector<std::string>& labels) {
    ExactnessReport rep;
    for (size_t i = 0; i + 1 < maps.size(); ++i) {
        if (maps[i + 1].cols() != maps[i].rows())
            throw std::invalid_argument("verify_exactness: maps not composable at node " +
                                        std::to_string(i));
        ExactnessPosition pos;
        pos.label = i < labels.size() ? labels[i] : ("node " + std::to_string(i));
        pos.dim_space = maps[i].rows();
        Subspace im = Subspace::unchecked(maps[i].rows(), image_basis_matrix(maps[i]));
        Subspace ker = Subspace::unchecked(maps[i].rows(), kernel_basis_matrix(maps[i + 1]));
        pos.dim_image_in = im.dim();
        pos.dim_kernel_out = ker.dim();
        pos.exact = im.equals(ker);
        rep.positions.push_back(std::move(pos));
    }
    return rep;
}

LongExactSequence les_of_ses(const ComplexMap& incl, const ComplexMap& proj) {
    validate_ses(incl, proj);
    const auto& a = incl.source();
    const auto& b = incl.target();
    const auto& c = proj.target();
    int lo = std::min({a->lo(), b->lo(), c->lo()});
    int hi = std::max({a->hi(), b->hi(), c->hi()});
    LongExactSequence les;
    // zero map into H^{lo}(A) so every real node is interior
    CohomologyResult ha(a, lo);
    les.maps.push_back(Matrix(ha.betti(), 0));
    les.labels.push_back("0");
    for (int r = lo; r <= hi; ++r) {
        CohomologyResult hb(b, r), hc(c, r), ha_next(a, r + 1);
        les.maps.push_back(hb.coordinates(incl.at(r) * ha.representatives()));
        les.labels.push_back("H^" + std::to_string(r) + "(A)");
        les.maps.push_back(hc.coordinates(proj.at(r) * hb.representatives()));
        les.labels.push_back("H^" + std::to_string(r) + "(B)");
        // zig-zag connecting map on the chosen representatives
        Matrix delta(ha_next.betti(), hc.betti());
        for (int j = 0; j < hc.betti(); ++j) {
            Matrix z = hc.representatives().select_cols({j});
            Matrix bb = solve(proj.at(r), z);
            Matrix av = solve(incl.at(r + 1), b->d(r) * bb);
            Matrix coords = ha_next.coordinates(av);
            for (int i = 0; i < delta.rows(); ++i) delta(i, j) = coords(i, 0);
        }
        les.labels.push_back("H^" + std::to_string(r) + "(C)");
        les.maps.push_back(std::move(delta));
        ha = std::move(ha_next);
    }
    les.maps.push_back(Matrix(0, ha.betti()));
    les.labels.push_back("H^" + std::to_string(hi + 1) + "(A)");
    return les;
}

}  // namespace straticoh
