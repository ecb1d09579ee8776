#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "straticoh/subspace.hpp"

namespace straticoh {

class GradedComplex;
using ComplexPtr = std::shared_ptr<const GradedComplex>;

// Finite cochain complex over Q on a degree window [lo, hi]; degrees outside
// the window are zero. d(r) maps C^r -> C^{r+1}. The constructor enforces
// d∘d = 0.
class GradedComplex {
public:
    GradedComplex(int lo, std::vector<int> dims, std::vector<Matrix> diffs);

    static ComplexPtr make(int lo, std::vector<int> dims, std::vector<Matrix> diffs);
    static ComplexPtr zero();

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    int dim(int r) const;
    Matrix d(int r) const;  // correctly-shaped zero matrix outside the window
    long euler_characteristic() const;

    bool same_as(const GradedComplex& other) const;  // structural equality

private:
    int lo_;
    std::vector<int> dims_;
    std::vector<Matrix> diff_;  // diff_[i]: C^{lo+i} -> C^{lo+i+1}
};

// Degreewise map of complexes commuting with the differentials (checked).
class ComplexMap {
public:
    ComplexMap(ComplexPtr src, ComplexPtr tgt, std::map<int, Matrix> components);

    static ComplexMap identity(ComplexPtr c);
    static ComplexMap zero(ComplexPtr src, ComplexPtr tgt);

    const ComplexPtr& source() const { return src_; }
    const ComplexPtr& target() const { return tgt_; }
    Matrix at(int r) const;

    friend ComplexMap compose(const ComplexMap& g, const ComplexMap& f);  // g∘f

private:
    ComplexMap() = default;
    ComplexPtr src_, tgt_;
    std::map<int, Matrix> f_;
};

// Cohomology of one degree with deterministic representatives: the complement
// of im d^{r-1} inside ker d^r under the pivot policy. coordinates() writes a
// cocycle as class coordinates in the representative basis.
class CohomologyResult {
public:
    CohomologyResult(ComplexPtr c, int degree);

    int degree() const { return degree_; }
    int betti() const { return reps_.cols(); }
    const Matrix& representatives() const { return reps_; }
    const Matrix& coboundaries() const { return img_; }
    std::vector<Rational> coordinates(const std::vector<Rational>& cocycle) const;
    Matrix coordinates(const Matrix& cocycle_columns) const;

private:
    ComplexPtr c_;
    int degree_;
    Matrix reps_;  // dim(r) x betti
    Matrix img_;   // basis of im d^{r-1}
};

CohomologyResult cohomology(ComplexPtr c, int r);
std::map<int, int> betti_table(ComplexPtr c);

// Per-degree work may run on this many threads; results are bit-identical to
// the serial computation. Default 1.
void set_parallelism(int threads);
int parallelism();

// Matrix of H^r(f) in the deterministic representative bases.
Matrix map_on_cohomology(const ComplexMap& f, int r);

struct SubcomplexResult {
    ComplexPtr complex;
    ComplexMap inclusion;
};

// Subcomplex with dims(r) = dim s(r); degrees absent from s are zero.
// Throws naming the offending degree if some s(r) is not d-stable.
SubcomplexResult subcomplex_from_subspaces(ComplexPtr c, const std::map<int, Subspace>& s);

struct QuotientResult {
    ComplexPtr complex;
    ComplexMap projection;
};

// Quotient of c by a d-stable family of subspaces, presented on the
// complement bases chosen by the pivot policy.
QuotientResult quotient_complex(ComplexPtr c, const std::map<int, Subspace>& s);

// Algebraic mapping cone of f: A -> B: cone^r = A^{r+1} ⊕ B^r with
// d(τ,σ) = (−dτ, f τ + dσ); A-part coordinates come first.
ComplexPtr mapping_cone(const ComplexMap& f);

struct DirectSum {
    ComplexPtr complex;
    // offset[part] -> degree -> first coordinate of that part's block
    std::vector<std::map<int, int>> offsets;
};
DirectSum direct_sum(const std::vector<ComplexPtr>& parts);

// Throws (naming degree and failure kind) unless 0 -> A -> B -> C -> 0 is
// exact in every degree.
void validate_ses(const ComplexMap& incl, const ComplexMap& proj);

// Connecting homomorphism H^r(C) -> H^{r+1}(A) by the zig-zag with the
// deterministic pivot-based section of proj.
Matrix ses_connecting(const ComplexMap& incl, const ComplexMap& proj, int r);
// All degrees at once (the SES is validated a single time).
std::map<int, Matrix> ses_connecting_all(const ComplexMap& incl, const ComplexMap& proj);

struct ExactnessPosition {
    std::string label;
    int dim_space = 0;
    int dim_image_in = 0;
    int dim_kernel_out = 0;
    bool exact = false;
};

struct ExactnessReport {
    std::vector<ExactnessPosition> positions;
    bool all_exact() const;
};

// Checks im(maps[i]) = ker(maps[i+1]) at every interior node of a composable
// sequence of matrices.
ExactnessReport verify_exactness(const std::vector<Matrix>& maps,
                                 const std::vector<std::string>& labels = {});

// The long exact cohomology sequence of a validated SES, as a flat composable
// list of matrices (padded with zero maps at both ends so that every real node
// is interior).
struct LongExactSequence {
    std::vector<Matrix> maps;
    std::vector<std::string> labels;
};
LongExactSequence les_of_ses(const ComplexMap& incl, const ComplexMap& proj);

}  // namespace straticoh
