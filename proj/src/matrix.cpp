#include "straticoh/matrix.hpp"

#include <stdexcept>

namespace straticoh {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("negative matrix dimension");
    a_.assign(static_cast<size_t>(rows) * cols, Rational(0));
}

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    a_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_)
            throw std::invalid_argument("ragged initializer list");
        for (long x : r) a_.emplace_back(x);
    }
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::diagonal(const std::vector<Rational>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::column(const std::vector<Rational>& v) {
    Matrix m(static_cast<int>(v.size()), 1);
    for (int i = 0; i < m.rows(); ++i) m(i, 0) = v[i];
    return m;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vcat: column mismatch");
    Matrix m(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix m(rows_, rhs.cols_);
    Rational t;
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& aik = (*this)(i, k);
            if (sgn(aik) == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) {
                if (sgn(rhs(k, j)) == 0) continue;
                t = aik * rhs(k, j);
                m(i, j) += t;
            }
        }
    return m;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix sum shape mismatch");
    Matrix m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + rhs.a_[i];
    return m;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix difference shape mismatch");
    Matrix m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - rhs.a_[i];
    return m;
}

Matrix Matrix::operator-() const {
    Matrix m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
    return m;
}

Matrix Matrix::operator*(const Rational& c) const {
    Matrix m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * c;
    return m;
}

bool Matrix::operator==(const Matrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

std::vector<Rational> Matrix::col(int j) const {
    std::vector<Rational> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Matrix Matrix::select_cols(const std::vector<int>& idx) const {
    Matrix m(rows_, static_cast<int>(idx.size()));
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < rows_; ++i) m(i, j) = (*this)(i, idx[j]);
    return m;
}

std::vector<Rational> Matrix::apply(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("matrix apply shape mismatch");
    std::vector<Rational> out(rows_, Rational(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

RrefResult rref(const Matrix& m) {
    RrefResult res;
    res.mat = m;
    Matrix& r = res.mat;
    int pr = 0;  // next pivot row
    for (int c = 0; c < r.cols() && pr < r.rows(); ++c) {
        int p = -1;
        for (int i = pr; i < r.rows(); ++i)
            if (sgn(r(i, c)) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != pr)
            for (int j = 0; j < r.cols(); ++j) swap(r(p, j), r(pr, j));
        Rational inv = 1 / r(pr, c);
        for (int j = c; j < r.cols(); ++j) r(pr, j) *= inv;
        for (int i = 0; i < r.rows(); ++i) {
            if (i == pr || sgn(r(i, c)) == 0) continue;
            Rational f = r(i, c);
            for (int j = c; j < r.cols(); ++j) r(i, j) -= f * r(pr, j);
        }
        res.pivots.push_back(c);
        ++pr;
    }
    return res;
}

int rank(const Matrix& m) { return rref(m).rank(); }

Matrix kernel_basis_matrix(const Matrix& m) {
    RrefResult r = rref(m);
    std::vector<int> free_cols;
    size_t pi = 0;
    for (int c = 0; c < m.cols(); ++c) {
        if (pi < r.pivots.size() && r.pivots[pi] == c) { ++pi; continue; }
        free_cols.push_back(c);
    }
    Matrix k(m.cols(), static_cast<int>(free_cols.size()));
    for (int j = 0; j < k.cols(); ++j) {
        int f = free_cols[j];
        k(f, j) = 1;
        for (size_t i = 0; i < r.pivots.size(); ++i)
            k(r.pivots[i], j) = -r.mat(static_cast<int>(i), f);
    }
    return k;
}

Matrix image_basis_matrix(const Matrix& m) {
    return m.select_cols(rref(m).pivots);
}

std::optional<Matrix> try_solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    RrefResult r = rref(Matrix::hcat(a, b));
    for (int c : r.pivots)
        if (c >= a.cols()) return std::nullopt;  // inconsistent
    Matrix x(a.cols(), b.cols());
    for (size_t i = 0; i < r.pivots.size(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            x(r.pivots[i], j) = r.mat(static_cast<int>(i), a.cols() + j);
    return x;
}

Matrix solve(const Matrix& a, const Matrix& b) {
    auto x = try_solve(a, b);
    if (!x) throw std::runtime_error("inconsistent linear system");
    return *x;
}

Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
    auto x = try_solve(a, Matrix::identity(a.rows()));
    if (!x || rank(a) != a.rows()) throw std::runtime_error("matrix not invertible");
    return *x;
}

}  // namespace straticoh
