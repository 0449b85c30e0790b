#include "bps/pencil.hpp"

#include <algorithm>
#include <cassert>

#include "bps/errors.hpp"

namespace bps {

namespace {

void check_pair(const PencilPair& pair) {
    if (!pair.A.is_square() || !pair.B.is_square() || pair.A.rows() != pair.B.rows())
        throw Error(Errc::DimensionMismatch, "pencil pair needs square matrices of one size");
    if (pair.degree_bound < 0)
        throw Error(Errc::PreconditionViolated, "degree bound must be nonnegative");
    for (std::size_t i = 0; i < pair.A.rows(); ++i)
        for (std::size_t j = 0; j < pair.A.cols(); ++j)
            if (pair.A.at(i, j).deg_x() > 0 || pair.B.at(i, j).deg_x() > 0)
                throw Error(Errc::NotUnivariate, "pencil entries must lie in K[y]");
}

// Kernel basis of the homogeneous system rows * c = 0 over the rationals,
// via reduced row echelon form; free columns parameterize the kernel.
std::vector<std::vector<Rational>> kernel_basis(std::vector<std::vector<Rational>> rows,
                                                std::size_t n) {
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        Rational lead = rows[r][c];
        for (std::size_t k = c; k < n; ++k) rows[r][k] /= lead;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t k = c; k < n; ++k) rows[i][k] -= f * rows[r][k];
        }
        pivot_col.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

PolyMatrix solution_to_matrix(const std::vector<Rational>& c, std::size_t n, int bound) {
    PolyMatrix Q(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Poly> coeffs;
            for (int k = 0; k <= bound; ++k)
                coeffs.push_back(
                    Poly::constant(c[(i * n + j) * (bound + 1) + static_cast<std::size_t>(k)]));
            Q.at(i, j) = Poly::from_y_coeffs(coeffs);
        }
    return Q;
}

bool constant_det(const PolyMatrix& Q) {
    Poly d = determinant(Q);
    return !d.is_zero() && d.is_constant();
}

}  // namespace

std::vector<PolyMatrix> similarity_solution_basis(const PencilPair& pair) {
    check_pair(pair);
    std::size_t n = pair.A.rows();
    int bound = pair.degree_bound;
    std::size_t unknowns = n * n * static_cast<std::size_t>(bound + 1);

    int adeg = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            adeg = std::max({adeg, pair.A.at(i, j).deg_y(), pair.B.at(i, j).deg_y()});
    int maxdeg = adeg + bound;

    // coefficient of y^t in entry (i, j) of A*Q - Q*B, one row per (i, j, t)
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (int t = 0; t <= maxdeg; ++t) {
                std::vector<Rational> row(unknowns, Rational(0));
                for (std::size_t m = 0; m < n; ++m)
                    for (int k = 0; k <= bound; ++k) {
                        if (t - k < 0 || t - k > adeg) continue;
                        unsigned yk = static_cast<unsigned>(t - k);
                        Poly ca = pair.A.at(i, m).coeff_of_y(yk);
                        if (!ca.is_zero())
                            row[(m * n + j) * (bound + 1) + static_cast<std::size_t>(k)] +=
                                ca.constant_value();
                        Poly cb = pair.B.at(m, j).coeff_of_y(yk);
                        if (!cb.is_zero())
                            row[(i * n + m) * (bound + 1) + static_cast<std::size_t>(k)] -=
                                cb.constant_value();
                    }
                rows.push_back(std::move(row));
            }

    std::vector<PolyMatrix> basis;
    for (const auto& v : kernel_basis(std::move(rows), unknowns))
        basis.push_back(solution_to_matrix(v, n, bound));
    return basis;
}

SimilarityResult pencil_similarity(const PencilPair& pair) {
    check_pair(pair);
    SimilarityResult res;
    res.bound = pair.degree_bound;

    if (pair.A == pair.B) {
        res.similar = true;
        res.Q = PolyMatrix::identity(pair.A.rows());
        return res;
    }

    std::vector<PolyMatrix> basis = similarity_solution_basis(pair);
    std::size_t r = basis.size();
    if (r == 0) return res;

    auto accept = [&](const PolyMatrix& Q) {
        if (!constant_det(Q)) return false;
        assert(pair.A * Q == Q * pair.B);
        res.similar = true;
        res.Q = Q;
        return true;
    };

    // scale never changes unimodularity, so single elements need one try each
    for (const PolyMatrix& Q : basis)
        if (accept(Q)) return res;

    static const int grid[] = {-2, -1, 0, 1, 2};
    if (r <= 4) {
        // full grid over the whole basis
        std::vector<std::size_t> idx(r, 0);
        while (true) {
            PolyMatrix Q(pair.A.rows(), pair.A.cols());
            bool nonzero = false;
            for (std::size_t t = 0; t < r; ++t) {
                if (grid[idx[t]] == 0) continue;
                nonzero = true;
                Q = Q + basis[t].scaled(Poly::constant(grid[idx[t]]));
            }
            if (nonzero && accept(Q)) return res;
            std::size_t t = 0;
            while (t < r && ++idx[t] == 5) idx[t++] = 0;
            if (t == r) break;
        }
    } else {
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = a + 1; b < r; ++b)
                for (int ca : grid)
                    for (int cb : grid) {
                        if (ca == 0 && cb == 0) continue;
                        PolyMatrix Q = basis[a].scaled(Poly::constant(ca)) +
                                       basis[b].scaled(Poly::constant(cb));
                        if (accept(Q)) return res;
                    }
    }
    return res;
}

CounterexampleReport counterexample_suite(int s, int degree_bound) {
    if (s < 2) throw Error(Errc::PreconditionViolated, "family parameter must be at least 2");
    if (degree_bound < 0)
        throw Error(Errc::PreconditionViolated, "degree bound must be nonnegative");

    CounterexampleReport report;
    report.s = s;

    Poly x = Poly::var_x(), y = Poly::var_y();
    Poly one = Poly::one();
    Poly top = x - one - y + y * y;                                   // -1+x-y+y^2
    Poly corner = one + x - y.pow(static_cast<unsigned>(s) - 2);      // 1+x-y^(s-2)

    report.M = PolyMatrix::from_rows({{top, y}, {Poly::zero(), corner}});
    report.M1 = PolyMatrix::from_rows({{top, one}, {Poly::zero(), corner}});

    DecisionReport dec = decide(report.M);
    report.verdict = dec.verdict;
    report.minors_unit = true;
    for (const auto& ov : dec.orders) report.minors_unit &= ov.unit;

    EquivalenceCertificate cert{
        PolyMatrix::from_rows({{one, Poly::zero()}, {-corner, one}}),
        PolyMatrix::from_rows({{one, Poly::zero()}, {Poly::zero(), top * corner}}),
        PolyMatrix::from_rows({{Poly::zero(), -one}, {one, top}}),
        {}};
    report.certificate_ok = verify_certificate(report.M1, cert);

    PencilPair pair;
    pair.A = PolyMatrix::diagonal({x, x}, 2, 2) - report.M;   // x*I - M
    pair.B = PolyMatrix::diagonal({x, x}, 2, 2) - report.M1;  // x*I - M1
    pair.degree_bound = degree_bound;
    report.similarity = pencil_similarity(pair);
    return report;
}

}  // namespace bps
