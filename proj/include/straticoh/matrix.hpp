#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "straticoh/rational.hpp"

namespace straticoh {

// Dense matrix of exact rationals. Dimensions are fixed at construction;
// 0-row and 0-column matrices are legal and behave consistently.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols);
    Matrix(std::initializer_list<std::initializer_list<long>> rows);

    static Matrix identity(int n);
    static Matrix diagonal(const std::vector<Rational>& d);
    static Matrix column(const std::vector<Rational>& v);
    static Matrix hcat(const Matrix& a, const Matrix& b);
    static Matrix vcat(const Matrix& a, const Matrix& b);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator-() const;
    Matrix operator*(const Rational& c) const;
    bool operator==(const Matrix& rhs) const;

    Matrix transpose() const;
    bool is_zero() const;

    std::vector<Rational> col(int j) const;
    Matrix select_cols(const std::vector<int>& idx) const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> a_;
};

struct RrefResult {
    Matrix mat;
    std::vector<int> pivots;  // pivot column per pivot row, ascending
    int rank() const { return static_cast<int>(pivots.size()); }
};

// Reduced row echelon form with the fixed pivot policy: scan columns left to
// right, take the topmost unused row with a nonzero entry. Fully deterministic.
RrefResult rref(const Matrix& m);

int rank(const Matrix& m);

// Basis of {v : m v = 0}, one column per RREF free column (ascending), with the
// free coordinate set to 1 and pivot coordinates filled from the RREF.
Matrix kernel_basis_matrix(const Matrix& m);

// The pivot columns of m itself, in ascending pivot order. Spans the column space.
Matrix image_basis_matrix(const Matrix& m);

// Least-index particular solution of A X = B (free variables set to zero).
// Empty optional when the system is inconsistent.
std::optional<Matrix> try_solve(const Matrix& a, const Matrix& b);
Matrix solve(const Matrix& a, const Matrix& b);  // throws if inconsistent

Matrix inverse(const Matrix& a);  // throws if not square invertible

}  // namespace straticoh
