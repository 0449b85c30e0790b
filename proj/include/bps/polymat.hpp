#ifndef BPS_POLYMAT_HPP
#define BPS_POLYMAT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "bps/poly.hpp"

namespace bps {

class PolyMatrix {
  public:
    PolyMatrix(std::size_t l, std::size_t m);  // zero-filled

    static PolyMatrix identity(std::size_t n);
    // l x m matrix with d on the main diagonal, zero elsewhere.
    static PolyMatrix diagonal(const std::vector<Poly>& d, std::size_t l, std::size_t m);
    static PolyMatrix from_rows(const std::vector<std::vector<Poly>>& rows);
    static PolyMatrix block_diag(const PolyMatrix& A, const PolyMatrix& B);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Poly& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Poly& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool is_square() const { return rows_ == cols_; }
    bool is_zero() const;
    bool is_univariate_x() const;

    PolyMatrix transpose() const;
    PolyMatrix submatrix(const std::vector<std::size_t>& row_idx,
                         const std::vector<std::size_t>& col_idx) const;

    friend PolyMatrix operator*(const PolyMatrix& A, const PolyMatrix& B);
    friend PolyMatrix operator+(const PolyMatrix& A, const PolyMatrix& B);
    friend PolyMatrix operator-(const PolyMatrix& A, const PolyMatrix& B);
    PolyMatrix scaled(const Poly& c) const;

    friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

    std::string to_string() const;  // multi-line, for diagnostics

  private:
    std::size_t rows_, cols_;
    std::vector<Poly> entries_;
};

// In-place elementary operations (used by normal-form routines and tests).
void row_swap(PolyMatrix& M, std::size_t i, std::size_t j);
void row_axpy(PolyMatrix& M, std::size_t dst, std::size_t src, const Poly& c);
void row_scale(PolyMatrix& M, std::size_t i, const Rational& c);
void col_swap(PolyMatrix& M, std::size_t i, std::size_t j);
void col_axpy(PolyMatrix& M, std::size_t dst, std::size_t src, const Poly& c);
void col_scale(PolyMatrix& M, std::size_t j, const Rational& c);

Poly determinant(const PolyMatrix& M);

// Adjugate-based inverse; requires det to be a nonzero constant.
PolyMatrix unimodular_inverse(const PolyMatrix& U);

bool is_unimodular(const PolyMatrix& U);

struct MinorProfile {
    unsigned order;
    Poly d;                         // monic gcd of all order-minors; zero if all vanish
    std::vector<Poly> I_generators; // every minor, subsets enumerated lexicographically
    std::vector<Poly> J_generators; // minors divided by d
    bool J_is_unit;
};
MinorProfile minor_profile(const PolyMatrix& M, unsigned order);

unsigned matrix_rank(const PolyMatrix& M);

struct SmithForm {
    unsigned rank;
    std::vector<Poly> invariant_factors;  // f_1 | f_2 | ... | f_rank, monic
};
SmithForm smith_target(const PolyMatrix& M);
// The padded rows x cols diagonal matrix carrying the invariant factors.
PolyMatrix smith_target_matrix(const PolyMatrix& M);

struct UnivariateTransform {
    PolyMatrix left;
    PolyMatrix result;
    PolyMatrix right;
};
// Row echelon form over K[x] via left elementary operations; pivots monic,
// entries above a pivot reduced below its degree; right = identity.
UnivariateTransform hermite_x(const PolyMatrix& B);
// Diagonal form over K[x] with divisibility chain; both transforms returned.
UnivariateTransform smith_x(const PolyMatrix& B);

struct ClearedEvalMatrix {
    PolyMatrix numerator;  // p^s * M(x, -q/p), entries in K[x]
    unsigned exponent_s;
};
ClearedEvalMatrix eval_y_at_fraction(const PolyMatrix& M, const Poly& p, const Poly& q);

// {"rows": l, "cols": m, "entries": [[string,...],...]}, row-major.
PolyMatrix matrix_from_json_text(const std::string& text);
std::string matrix_to_json_text(const PolyMatrix& M, int indent = -1);

}  // namespace bps

#endif
