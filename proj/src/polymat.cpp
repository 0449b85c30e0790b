#include "bps/polymat.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include <json.hpp>

#include "bps/errors.hpp"
#include "bps/groebner.hpp"
#include "bps/unifactor.hpp"

namespace bps {
namespace {

constexpr std::size_t kMaxCells = 1u << 20;

void check_same_shape(const PolyMatrix& A, const PolyMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw Error(Errc::DimensionMismatch, "matrix shapes differ");
}

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, unsigned k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> cur(k);
    for (unsigned i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        // advance the rightmost index that still has room
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

PolyMatrix delete_row_col(const PolyMatrix& M, std::size_t r, std::size_t c) {
    std::vector<std::size_t> ri, ci;
    for (std::size_t i = 0; i < M.rows(); ++i)
        if (i != r) ri.push_back(i);
    for (std::size_t j = 0; j < M.cols(); ++j)
        if (j != c) ci.push_back(j);
    return M.submatrix(ri, ci);
}

Poly det_cofactor(const PolyMatrix& M) {
    std::size_t n = M.rows();
    if (n == 1) return M.at(0, 0);
    if (n == 2) return M.at(0, 0) * M.at(1, 1) - M.at(0, 1) * M.at(1, 0);
    Poly acc = Poly::zero();
    for (std::size_t j = 0; j < n; ++j) {
        if (M.at(0, j).is_zero()) continue;
        Poly sub = det_cofactor(delete_row_col(M, 0, j));
        Poly term = M.at(0, j) * sub;
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

Poly det_bareiss(PolyMatrix A) {
    std::size_t n = A.rows();
    Poly prev = Poly::one();
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A.at(k, k).is_zero()) {
            std::size_t piv = k;
            while (piv < n && A.at(piv, k).is_zero()) ++piv;
            if (piv == n) return Poly::zero();
            row_swap(A, k, piv);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                A.at(i, j) = (A.at(k, k) * A.at(i, j) - A.at(i, k) * A.at(k, j))
                                 .exact_div(prev);
            A.at(i, k) = Poly::zero();
        }
        prev = A.at(k, k);
    }
    Poly d = A.at(n - 1, n - 1);
    return negate ? -d : d;
}

struct DivStep {
    Poly quot, rem;
};
DivStep udivstep(const Poly& a, const Poly& b) {
    DivStep s;
    udivmod(a, b, s.quot, s.rem);
    return s;
}

// Minimal-degree nonzero entry at or below `from` in column c; ties by row.
std::size_t pick_pivot_row(const PolyMatrix& M, std::size_t from, std::size_t c) {
    std::size_t best = M.rows();
    int best_deg = -1;
    for (std::size_t i = from; i < M.rows(); ++i) {
        if (M.at(i, c).is_zero()) continue;
        int d = udeg(M.at(i, c));
        if (best == M.rows() || d < best_deg) best = i, best_deg = d;
    }
    return best;
}

void require_univariate(const PolyMatrix& B, const char* who) {
    if (!B.is_univariate_x())
        throw Error(Errc::NotUnivariate, std::string(who) + ": entries must lie in K[x]");
}

// Rational content of a line of the matrix: gcd of numerators over lcm of
// denominators, 1 for a zero line.
Rational line_content(const PolyMatrix& A, std::size_t k, bool row) {
    mpz_class num = 0, den = 1;
    std::size_t n = row ? A.cols() : A.rows();
    for (std::size_t t = 0; t < n; ++t) {
        const Poly& e = row ? A.at(k, t) : A.at(t, k);
        for (const auto& [mono, c] : e.terms()) {
            mpz_class cn = c.get_num(), cd = c.get_den();
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), cn.get_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), cd.get_mpz_t());
        }
    }
    if (num == 0) return Rational(1);
    Rational c(num, den);
    c.canonicalize();
    return c;
}

// Scaling a line by the inverse of its content is a unimodular move that
// keeps Euclidean chains from compounding rational coefficient growth; the
// constant is folded into the tracked transform.
void normalize_row(PolyMatrix& A, PolyMatrix& P, std::size_t i) {
    Rational c = line_content(A, i, true);
    if (c == 1) return;
    row_scale(A, i, Rational(1) / c);
    row_scale(P, i, Rational(1) / c);
}

void normalize_col(PolyMatrix& A, PolyMatrix& Q, std::size_t j) {
    Rational c = line_content(A, j, false);
    if (c == 1) return;
    col_scale(A, j, Rational(1) / c);
    col_scale(Q, j, Rational(1) / c);
}

// One determinant-1 block on a pair of rows / columns. Pair elimination goes
// through these instead of remainder-by-remainder transvections: mixing the
// untouched part of the matrix once per pair keeps coefficient growth
// polynomial where a Euclidean chain of row operations compounds it.
void row_block(PolyMatrix& M, std::size_t r1, std::size_t r2, const Poly& a11,
               const Poly& a12, const Poly& a21, const Poly& a22) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
        Poly x = M.at(r1, j), y = M.at(r2, j);
        M.at(r1, j) = a11 * x + a12 * y;
        M.at(r2, j) = a21 * x + a22 * y;
    }
}

void col_block(PolyMatrix& M, std::size_t c1, std::size_t c2, const Poly& a11,
               const Poly& a12, const Poly& a21, const Poly& a22) {
    for (std::size_t i = 0; i < M.rows(); ++i) {
        Poly x = M.at(i, c1), y = M.at(i, c2);
        M.at(i, c1) = a11 * x + a12 * y;
        M.at(i, c2) = a21 * x + a22 * y;
    }
}

// Clears A(i, c) against the pivot A(r, c): an exact quotient uses a plain
// transvection, otherwise an extended-gcd block lands the gcd on the pivot.
// Returns true when the pivot row was rewritten.
bool eliminate_row_pair(PolyMatrix& A, PolyMatrix& P, std::size_t r, std::size_t i,
                        std::size_t c) {
    Poly a = A.at(r, c), b = A.at(i, c);
    if (b.is_zero()) return false;
    if (a.is_zero()) {
        row_swap(A, r, i), row_swap(P, r, i);
        return true;
    }
    DivStep d = udivstep(b, a);
    if (d.rem.is_zero()) {
        row_axpy(A, i, r, -d.quot);
        row_axpy(P, i, r, -d.quot);
        normalize_row(A, P, i);
        return false;
    }
    ExtGcd e = ext_gcd_x(a, b);
    row_block(A, r, i, e.alpha, e.beta, -b.exact_div(e.g), a.exact_div(e.g));
    row_block(P, r, i, e.alpha, e.beta, -b.exact_div(e.g), a.exact_div(e.g));
    normalize_row(A, P, r);
    normalize_row(A, P, i);
    return true;
}

bool eliminate_col_pair(PolyMatrix& A, PolyMatrix& Q, std::size_t c, std::size_t j,
                        std::size_t r) {
    Poly a = A.at(r, c), b = A.at(r, j);
    if (b.is_zero()) return false;
    if (a.is_zero()) {
        col_swap(A, c, j), col_swap(Q, c, j);
        return true;
    }
    DivStep d = udivstep(b, a);
    if (d.rem.is_zero()) {
        col_axpy(A, j, c, -d.quot);
        col_axpy(Q, j, c, -d.quot);
        normalize_col(A, Q, j);
        return false;
    }
    ExtGcd e = ext_gcd_x(a, b);
    col_block(A, c, j, e.alpha, e.beta, -b.exact_div(e.g), a.exact_div(e.g));
    col_block(Q, c, j, e.alpha, e.beta, -b.exact_div(e.g), a.exact_div(e.g));
    normalize_col(A, Q, c);
    normalize_col(A, Q, j);
    return true;
}

}  // namespace

PolyMatrix::PolyMatrix(std::size_t l, std::size_t m) : rows_(l), cols_(m) {
    if (l == 0 || m == 0 || l * m > kMaxCells)
        throw Error(Errc::BadInput, "matrix dimensions out of range");
    entries_.assign(l * m, Poly::zero());
}

PolyMatrix PolyMatrix::identity(std::size_t n) {
    PolyMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i) M.at(i, i) = Poly::one();
    return M;
}

PolyMatrix PolyMatrix::diagonal(const std::vector<Poly>& d, std::size_t l, std::size_t m) {
    PolyMatrix M(l, m);
    if (d.size() > std::min(l, m))
        throw Error(Errc::DimensionMismatch, "diagonal longer than matrix");
    for (std::size_t i = 0; i < d.size(); ++i) M.at(i, i) = d[i];
    return M;
}

PolyMatrix PolyMatrix::from_rows(const std::vector<std::vector<Poly>>& rows) {
    if (rows.empty() || rows[0].empty())
        throw Error(Errc::BadInput, "matrix needs at least one row and column");
    PolyMatrix M(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != M.cols())
            throw Error(Errc::BadInput, "ragged rows");
        for (std::size_t j = 0; j < M.cols(); ++j) M.at(i, j) = rows[i][j];
    }
    return M;
}

PolyMatrix PolyMatrix::block_diag(const PolyMatrix& A, const PolyMatrix& B) {
    PolyMatrix M(A.rows() + B.rows(), A.cols() + B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) M.at(i, j) = A.at(i, j);
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j)
            M.at(A.rows() + i, A.cols() + j) = B.at(i, j);
    return M;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Poly& e) { return e.is_zero(); });
}

bool PolyMatrix::is_univariate_x() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Poly& e) { return e.is_univariate_x(); });
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix T(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) T.at(j, i) = at(i, j);
    return T;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& row_idx,
                                 const std::vector<std::size_t>& col_idx) const {
    PolyMatrix S(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t j = 0; j < col_idx.size(); ++j)
            S.at(i, j) = at(row_idx[i], col_idx[j]);
    return S;
}

PolyMatrix operator*(const PolyMatrix& A, const PolyMatrix& B) {
    if (A.cols() != B.rows())
        throw Error(Errc::DimensionMismatch, "inner dimensions differ");
    PolyMatrix C(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t k = 0; k < A.cols(); ++k) {
            if (A.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < B.cols(); ++j) {
                if (B.at(k, j).is_zero()) continue;
                C.at(i, j) += A.at(i, k) * B.at(k, j);
            }
        }
    return C;
}

PolyMatrix operator+(const PolyMatrix& A, const PolyMatrix& B) {
    check_same_shape(A, B);
    PolyMatrix C = A;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C.at(i, j) += B.at(i, j);
    return C;
}

PolyMatrix operator-(const PolyMatrix& A, const PolyMatrix& B) {
    check_same_shape(A, B);
    PolyMatrix C = A;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C.at(i, j) -= B.at(i, j);
    return C;
}

PolyMatrix PolyMatrix::scaled(const Poly& c) const {
    PolyMatrix C = *this;
    for (Poly& e : C.entries_) e = e * c;
    return C;
}

std::string PolyMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << at(i, j).to_string();
        }
        os << "]\n";
    }
    return os.str();
}

void row_swap(PolyMatrix& M, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < M.cols(); ++c) std::swap(M.at(i, c), M.at(j, c));
}
void row_axpy(PolyMatrix& M, std::size_t dst, std::size_t src, const Poly& c) {
    for (std::size_t k = 0; k < M.cols(); ++k) M.at(dst, k) += c * M.at(src, k);
}
void row_scale(PolyMatrix& M, std::size_t i, const Rational& c) {
    for (std::size_t k = 0; k < M.cols(); ++k) M.at(i, k) = M.at(i, k).scaled(c);
}
void col_swap(PolyMatrix& M, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < M.rows(); ++r) std::swap(M.at(r, i), M.at(r, j));
}
void col_axpy(PolyMatrix& M, std::size_t dst, std::size_t src, const Poly& c) {
    for (std::size_t k = 0; k < M.rows(); ++k) M.at(k, dst) += c * M.at(k, src);
}
void col_scale(PolyMatrix& M, std::size_t j, const Rational& c) {
    for (std::size_t k = 0; k < M.rows(); ++k) M.at(k, j) = M.at(k, j).scaled(c);
}

Poly determinant(const PolyMatrix& M) {
    if (!M.is_square()) throw Error(Errc::NotSquare, "determinant needs a square matrix");
    if (M.rows() <= 3) return det_cofactor(M);
    return det_bareiss(M);
}

PolyMatrix unimodular_inverse(const PolyMatrix& U) {
    Poly d = determinant(U);
    if (d.is_zero() || !d.is_constant())
        throw Error(Errc::PreconditionViolated, "inverse requires constant nonzero determinant");
    Rational inv = Rational(1) / d.constant_value();
    std::size_t n = U.rows();
    // over K[x] the echelon form of a unimodular matrix is the identity, so
    // its left transform is the inverse; elimination keeps degrees far below
    // the adjugate's
    if (n > 1 && U.is_univariate_x()) {
        UnivariateTransform ht = hermite_x(U);
        if (ht.result == PolyMatrix::identity(n)) return ht.left;
    }
    PolyMatrix A(n, n);
    if (n == 1) {
        A.at(0, 0) = Poly::constant(inv);
        return A;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly cof = determinant(delete_row_col(U, j, i));
            if ((i + j) % 2) cof = -cof;
            A.at(i, j) = cof.scaled(inv);
        }
    return A;
}

bool is_unimodular(const PolyMatrix& U) {
    if (!U.is_square()) throw Error(Errc::NotSquare, "unimodularity needs a square matrix");
    Poly d = determinant(U);
    return !d.is_zero() && d.is_constant();
}

MinorProfile minor_profile(const PolyMatrix& M, unsigned order) {
    if (order < 1 || order > std::min(M.rows(), M.cols()))
        throw Error(Errc::OrderOutOfRange, "minor order " + std::to_string(order) +
                                               " outside 1.." +
                                               std::to_string(std::min(M.rows(), M.cols())));
    MinorProfile out;
    out.order = order;
    for (const auto& ri : subsets(M.rows(), order))
        for (const auto& ci : subsets(M.cols(), order))
            out.I_generators.push_back(determinant(M.submatrix(ri, ci)));

    Poly d = Poly::zero();
    for (const Poly& g : out.I_generators) {
        if (g.is_zero()) continue;
        d = d.is_zero() ? g.monic() : bivariate_gcd(d, g);
        if (d == Poly::one()) break;
    }
    out.d = d;
    if (d.is_zero()) {
        out.J_generators.assign(out.I_generators.size(), Poly::zero());
        out.J_is_unit = false;
        return out;
    }
    for (const Poly& g : out.I_generators) out.J_generators.push_back(g.exact_div(d));
    out.J_is_unit = is_unit_ideal(IdealPresentation::of(out.J_generators));
    return out;
}

unsigned matrix_rank(const PolyMatrix& M) {
    for (unsigned i = static_cast<unsigned>(std::min(M.rows(), M.cols())); i >= 1; --i) {
        for (const auto& ri : subsets(M.rows(), i))
            for (const auto& ci : subsets(M.cols(), i))
                if (!determinant(M.submatrix(ri, ci)).is_zero()) return i;
    }
    return 0;
}

SmithForm smith_target(const PolyMatrix& M) {
    unsigned r = matrix_rank(M);
    SmithForm out{r, {}};
    Poly prev = Poly::one();
    for (unsigned i = 1; i <= r; ++i) {
        Poly di = minor_profile(M, i).d;
        auto f = di.try_exact_div(prev);
        if (!f)
            throw Error(Errc::InternalDivisibilityViolation,
                        "determinantal divisor chain broke at order " + std::to_string(i));
        if (!out.invariant_factors.empty() && !out.invariant_factors.back().divides(*f))
            throw Error(Errc::InternalDivisibilityViolation,
                        "invariant factors fail divisibility at order " + std::to_string(i));
        out.invariant_factors.push_back(*f);
        prev = di;
    }
    return out;
}

PolyMatrix smith_target_matrix(const PolyMatrix& M) {
    return PolyMatrix::diagonal(smith_target(M).invariant_factors, M.rows(), M.cols());
}

UnivariateTransform hermite_x(const PolyMatrix& B) {
    require_univariate(B, "hermite_x");
    std::size_t l = B.rows(), m = B.cols();
    PolyMatrix H = B, U = PolyMatrix::identity(l);
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < l; ++c) {
        std::size_t piv = pick_pivot_row(H, r, c);
        if (piv == l) continue;
        if (piv != r) {
            row_swap(H, r, piv);
            row_swap(U, r, piv);
        }
        normalize_row(H, U, r);
        // a gcd block zeroes each entry in one shot, so one sweep clears the column
        for (std::size_t i = r + 1; i < l; ++i) eliminate_row_pair(H, U, r, i, c);
        pivots.emplace_back(r, c);
        ++r;
    }
    for (auto [pr, pc] : pivots) {
        Rational lc = H.at(pr, pc).leading_coeff();
        row_scale(H, pr, Rational(1) / lc);
        row_scale(U, pr, Rational(1) / lc);
    }
    for (auto [pr, pc] : pivots)
        for (std::size_t i = 0; i < pr; ++i) {
            Poly q = udivstep(H.at(i, pc), H.at(pr, pc)).quot;
            if (q.is_zero()) continue;
            row_axpy(H, i, pr, -q);
            row_axpy(U, i, pr, -q);
        }
    assert(U * B == H);
    assert(is_unimodular(U));
    return {U, H, PolyMatrix::identity(m)};
}

UnivariateTransform smith_x(const PolyMatrix& B) {
    require_univariate(B, "smith_x");
    std::size_t l = B.rows(), m = B.cols();
    PolyMatrix A = B, P = PolyMatrix::identity(l), Q = PolyMatrix::identity(m);
    std::size_t t = 0;
    while (t < std::min(l, m)) {
        // global minimal-degree nonzero entry in the trailing block
        std::size_t bi = l, bj = m;
        int bd = -1;
        for (std::size_t i = t; i < l; ++i)
            for (std::size_t j = t; j < m; ++j) {
                if (A.at(i, j).is_zero()) continue;
                int d = udeg(A.at(i, j));
                if (bi == l || d < bd) bi = i, bj = j, bd = d;
            }
        if (bi == l) break;
        row_swap(A, t, bi), row_swap(P, t, bi);
        col_swap(A, t, bj), col_swap(Q, t, bj);
        normalize_row(A, P, t);

        while (true) {
            for (std::size_t i = t + 1; i < l; ++i) eliminate_row_pair(A, P, t, i, t);
            // a gcd block on a column pair refills column t below the pivot,
            // but it also shrinks the pivot strictly, so the loop terminates
            bool refilled = false;
            for (std::size_t j = t + 1; j < m; ++j)
                refilled |= eliminate_col_pair(A, Q, t, j, t);
            if (refilled) continue;
            // column and row are clear; force pivot into the trailing block
            bool fixed = false;
            for (std::size_t i = t + 1; i < l && !fixed; ++i)
                for (std::size_t j = t + 1; j < m && !fixed; ++j) {
                    if (A.at(t, t).divides(A.at(i, j))) continue;
                    row_axpy(A, t, i, Poly::one());
                    row_axpy(P, t, i, Poly::one());
                    fixed = true;
                }
            if (!fixed) break;
        }
        Rational lc = A.at(t, t).leading_coeff();
        row_scale(A, t, Rational(1) / lc);
        row_scale(P, t, Rational(1) / lc);
        ++t;
    }
    assert(P * B * Q == A);
    assert(is_unimodular(P) && is_unimodular(Q));
    return {P, A, Q};
}

ClearedEvalMatrix eval_y_at_fraction(const PolyMatrix& M, const Poly& p, const Poly& q) {
    std::vector<ClearedEval> cells;
    cells.reserve(M.rows() * M.cols());
    unsigned s = 0;
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) {
            cells.push_back(eval_y_at_fraction_entry(M.at(i, j), p, q));
            s = std::max(s, cells.back().exponent_s);
        }
    PolyMatrix N(M.rows(), M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) {
            const ClearedEval& ce = cells[i * M.cols() + j];
            N.at(i, j) = ce.numerator * p.pow(s - ce.exponent_s);
        }
    return {N, s};
}

PolyMatrix matrix_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::BadInput, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw Error(Errc::BadInput, "matrix document needs rows, cols, entries");
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
        throw Error(Errc::BadInput, "rows and cols must be positive integers");
    std::size_t l = j["rows"].get<std::size_t>(), m = j["cols"].get<std::size_t>();
    if (l == 0 || m == 0 || l * m > kMaxCells)
        throw Error(Errc::BadInput, "matrix dimensions out of range");
    const auto& rows = j["entries"];
    if (!rows.is_array() || rows.size() != l)
        throw Error(Errc::BadInput, "entries must be an array of " + std::to_string(l) + " rows");
    PolyMatrix M(l, m);
    for (std::size_t i = 0; i < l; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != m)
            throw Error(Errc::BadInput,
                        "row " + std::to_string(i + 1) + " must hold " + std::to_string(m) +
                            " entries");
        for (std::size_t k = 0; k < m; ++k) {
            if (!row[k].is_string())
                throw Error(Errc::BadInput, "entry (row " + std::to_string(i + 1) + ", col " +
                                                std::to_string(k + 1) + ") must be a string");
            try {
                M.at(i, k) = parse_poly(row[k].get<std::string>());
            } catch (const SyntaxError& e) {
                std::string inner = e.what();
                if (const std::string tag = "SyntaxError: "; inner.rfind(tag, 0) == 0)
                    inner = inner.substr(tag.size());
                throw Error(Errc::SyntaxError, "entry (row " + std::to_string(i + 1) +
                                                   ", col " + std::to_string(k + 1) +
                                                   "): " + inner);
            }
        }
    }
    return M;
}

std::string matrix_to_json_text(const PolyMatrix& M, int indent) {
    nlohmann::json j;
    j["rows"] = M.rows();
    j["cols"] = M.cols();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < M.cols(); ++k) row.push_back(M.at(i, k).to_string());
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j.dump(indent);
}

}  // namespace bps
