#include "bps/snfpipe.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <tuple>
#include <utility>

#include "bps/residue.hpp"
#include "bps/unifactor.hpp"

namespace bps {

namespace {

using nlohmann::json;

std::string error_message(const Error& e) {
    std::string text = e.what();
    std::string prefix = std::string(errc_name(e.code())) + ": ";
    if (text.rfind(prefix, 0) == 0) return text.substr(prefix.size());
    return text;
}

void require_x_poly(const Poly& f, const char* name) {
    if (!f.is_univariate_x())
        throw Error(Errc::PreconditionViolated, std::string(name) + " must lie in K[x]");
}

int matrix_max_degree(const PolyMatrix& A) {
    int d = 0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            d = std::max(d, A.at(i, j).total_degree());
    return d;
}

// gcd of the family with Bezout cofactors, d = sum c_i * v_i, d monic or zero.
// Entries fold in ascending degree order: the gcd usually collapses to 1 on
// the cheap pairs first, which also keeps the cofactors small.
void bezout_chain(const std::vector<Poly>& v, Poly& d, std::vector<Poly>& c) {
    d = Poly::zero();
    c.assign(v.size(), Poly::zero());
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) order.push_back(i);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return udeg(v[a]) < udeg(v[b]); });
    for (std::size_t i : order) {
        if (d.is_zero()) {
            d = v[i].monic();
            c[i] = Poly::constant(Rational(1) / v[i].leading_coeff());
        } else {
            ExtGcd e = ext_gcd_x(d, v[i]);
            for (std::size_t k = 0; k < v.size(); ++k)
                if (k != i) c[k] = c[k] * e.alpha;
            c[i] = e.beta;
            d = e.g;
        }
        if (d == Poly::one()) break;
    }
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "Equivalent";
        case Verdict::NotEquivalent: return "NotEquivalent";
        case Verdict::OutsideClass: return "OutsideClass";
        case Verdict::Incomplete: return "Incomplete";
    }
    return "?";
}

LinearPart LinearPart::of(const Poly& f, const Poly& g) {
    require_x_poly(f, "f");
    require_x_poly(g, "g");
    if (f.is_zero()) throw Error(Errc::PreconditionViolated, "f must be nonzero");
    LinearPart lp;
    lp.f = f;
    lp.g = g;
    lp.h = g.is_zero() ? f.monic() : ugcd(f, g);
    lp.p = f.exact_div(lp.h);
    lp.q = g.is_zero() ? Poly::zero() : g.exact_div(lp.h);
    return lp;
}

Poly LinearPart::linear_factor() const { return Poly::from_y_coeffs({q, p}); }

LinearExtraction extract_linear_y_factor(const PolyMatrix& M, const LinearPart& lp) {
    if (!M.is_square()) throw Error(Errc::NotSquare, "linear factor extraction needs a square matrix");
    if (lp.p.is_zero() || ugcd(lp.p, lp.q) != Poly::one())
        throw Error(Errc::PreconditionViolated, "p, q must be coprime with p nonzero");
    Poly lin = lp.linear_factor();
    Poly det = determinant(M);
    if (!linear_divides(det, lp.p, lp.q))
        throw Error(Errc::NotDivisible, "p*y + q does not divide det(M)");

    std::size_t l = M.rows();
    ClearedEvalMatrix ce = eval_y_at_fraction(M, lp.p, lp.q);
    UnivariateTransform ht = hermite_x(ce.numerator);

    // det(M) carries p*y+q exactly once per vanishing row of the evaluated
    // matrix; the echelon form pushes that row to the bottom.
    PolyMatrix G = ht.left * M;
    for (std::size_t j = 0; j < l; ++j) {
        auto quot = G.at(l - 1, j).try_exact_div(lin);
        if (!quot)
            throw Error(Errc::NotDivisible, "last row is not divisible by the linear factor");
        G.at(l - 1, j) = *quot;
    }

    std::vector<Poly> diag(l, Poly::one());
    diag[l - 1] = lin;
    LinearExtraction out{unimodular_inverse(ht.left), PolyMatrix::diagonal(diag, l, l), G};
    assert(out.V * out.D * out.G == M);
    return out;
}

XFactorStep extract_x_factor(const PolyMatrix& G, const Poly& p) {
    ResidueCtx ctx(p);
    std::vector<Poly> row = left_kernel_row(G, ctx);
    TransvectionList ops = row_to_unit_vector(row, ctx);
    PolyMatrix U = lift_left_factor(ops, ctx, G.rows());
    PolyMatrix G1 = U * G;
    for (std::size_t j = 0; j < G1.cols(); ++j) G1.at(0, j) = G1.at(0, j).exact_div(p);
    return {std::move(U), std::move(G1)};
}

PrimitiveSplit primitive_factorization(const PolyMatrix& M, const Poly& h) {
    if (!M.is_square()) throw Error(Errc::NotSquare, "primitive factorization needs a square matrix");
    require_x_poly(h, "h");
    if (h.is_zero()) throw Error(Errc::PreconditionViolated, "h must be nonzero");
    Poly det = determinant(M);
    if (det.is_zero()) throw Error(Errc::PreconditionViolated, "matrix must have nonzero determinant");
    if (!h.divides(det))
        throw Error(Errc::PreconditionViolated, "h must divide det(M)");

    std::size_t l = M.rows();
    PrimitiveSplit out{PolyMatrix::identity(l), M};
    if (h.is_constant()) return out;

    Factorization fac = factor_univariate(h);
    for (const auto& [prime, mult] : fac.factors)
        for (unsigned k = 0; k < mult; ++k) {
            XFactorStep step = extract_x_factor(out.F, prime);
            std::vector<Poly> diag(l, Poly::one());
            diag[0] = prime;
            out.G = out.G * unimodular_inverse(step.U) * PolyMatrix::diagonal(diag, l, l);
            out.F = step.G1;
        }
    assert(out.G * out.F == M);
    assert(determinant(out.G) == h.monic());
    return out;
}

namespace {

using MeasureTuple = std::tuple<long, long, long>;

MeasureTuple matrix_measure(const PolyMatrix& C) {
    long y = 0, x = 0, t = 0;
    for (std::size_t i = 0; i < C.rows(); ++i)
        for (std::size_t j = 0; j < C.cols(); ++j) {
            const Poly& e = C.at(i, j);
            if (e.is_zero()) continue;
            y += std::max(e.deg_y(), 0);
            x += std::max(e.deg_x(), 0);
            t += static_cast<long>(e.term_count());
        }
    return {y, x, t};
}

struct DescentMove {
    bool rows = true;
    std::size_t dst = 0, src = 0;
    Poly c;
};

// One pivot-and-clear round on a constant entry of the trailing block;
// settles row/column t and grows the identity prefix.
bool shrink_once(PolyMatrix& C, PolyMatrix& P, PolyMatrix& Q, std::size_t& t) {
    std::size_t l = C.rows();
    for (std::size_t i = t; i < l; ++i)
        for (std::size_t j = t; j < l; ++j) {
            const Poly& e = C.at(i, j);
            if (e.is_zero() || !e.is_constant()) continue;
            row_swap(C, t, i), row_swap(P, t, i);
            col_swap(C, t, j), col_swap(Q, t, j);
            Rational inv = Rational(1) / C.at(t, t).constant_value();
            row_scale(C, t, inv), row_scale(P, t, inv);
            for (std::size_t j2 = t + 1; j2 < l; ++j2) {
                if (C.at(t, j2).is_zero()) continue;
                Poly c = -C.at(t, j2);
                col_axpy(C, j2, t, c), col_axpy(Q, j2, t, c);
            }
            for (std::size_t i2 = t + 1; i2 < l; ++i2) {
                if (C.at(i2, t).is_zero()) continue;
                Poly c = -C.at(i2, t);
                row_axpy(C, i2, t, c), row_axpy(P, i2, t, c);
            }
            ++t;
            return true;
        }
    return false;
}

bool best_descent_move(const PolyMatrix& C, std::size_t t, DescentMove& best) {
    std::size_t l = C.rows();
    MeasureTuple before = matrix_measure(C), best_after = before;
    bool found = false;
    for (int side = 0; side < 2; ++side)
        for (std::size_t dst = t; dst < l; ++dst)
            for (std::size_t src = t; src < l; ++src) {
                if (src == dst) continue;
                for (std::size_t k = t; k < l; ++k) {
                    bool rows = side == 0;
                    const Poly& a = rows ? C.at(src, k) : C.at(k, src);
                    const Poly& b = rows ? C.at(dst, k) : C.at(k, dst);
                    if (a.is_zero() || b.is_zero()) continue;
                    int da = a.deg_y(), db = b.deg_y();
                    Poly c;
                    if (db >= 1 && da <= db) {
                        Poly al = a.coeff_of_y(static_cast<unsigned>(da));
                        Poly bl = b.coeff_of_y(static_cast<unsigned>(db));
                        if (!al.divides(bl)) continue;
                        c = -bl.exact_div(al).mul_term(
                            Mono{0, static_cast<unsigned>(db - da)}, Rational(1));
                    } else if (db == 0 && da == 0) {
                        if (udeg(a) > udeg(b)) continue;
                        Poly quot, rem;
                        udivmod(b, a, quot, rem);
                        if (quot.is_zero()) continue;
                        c = -quot;
                    } else {
                        continue;
                    }
                    PolyMatrix scratch = C;
                    if (rows)
                        row_axpy(scratch, dst, src, c);
                    else
                        col_axpy(scratch, dst, src, c);
                    MeasureTuple after = matrix_measure(scratch);
                    if (after < best_after) {
                        best_after = after;
                        best = {rows, dst, src, c};
                        found = true;
                    }
                }
            }
    return found;
}

}  // namespace

UnivariateReduction reduce_univariate_det(const PolyMatrix& G, const PipelineConfig& cfg) {
    if (!G.is_square()) throw Error(Errc::NotSquare, "univariate reduction needs a square matrix");
    Poly det = determinant(G);
    if (det.is_zero() || !det.is_univariate_x())
        throw Error(Errc::PreconditionViolated, "det(G) must be a nonzero element of K[x]");

    std::size_t l = G.rows(), t = 0;
    UnivariateReduction out;
    out.P = PolyMatrix::identity(l);
    out.Q = PolyMatrix::identity(l);
    out.C = G;
    for (;;) {
        while (t < l && shrink_once(out.C, out.P, out.Q, t)) {
        }
        if (out.C.is_univariate_x()) {
            out.complete = true;
            break;
        }
        if (out.steps >= cfg.step_budget) break;
        DescentMove mv;
        if (!best_descent_move(out.C, t, mv)) break;
        if (mv.rows) {
            row_axpy(out.C, mv.dst, mv.src, mv.c);
            row_axpy(out.P, mv.dst, mv.src, mv.c);
        } else {
            col_axpy(out.C, mv.dst, mv.src, mv.c);
            col_axpy(out.Q, mv.dst, mv.src, mv.c);
        }
        ++out.steps;
        if (matrix_max_degree(out.C) > cfg.degree_budget) break;
    }
    assert(out.P * G * out.Q == out.C);
    return out;
}

PinchResult pinch_stage(const PolyMatrix& B, const LinearPart& lp) {
    if (!B.is_square()) throw Error(Errc::NotSquare, "pinch needs a square matrix");
    std::size_t l = B.rows();
    if (l < 2) throw Error(Errc::PreconditionViolated, "pinch needs size at least 2");
    Poly lin = lp.linear_factor();

    std::vector<std::size_t> all_rows(l), left_cols(l - 1);
    for (std::size_t i = 0; i < l; ++i) all_rows[i] = i;
    for (std::size_t j = 0; j + 1 < l; ++j) left_cols[j] = j;
    PolyMatrix B1 = B.submatrix(all_rows, left_cols);
    if (!B1.is_univariate_x())
        throw Error(Errc::PreconditionViolated, "left block must lie in K[x]");

    std::vector<Poly> b(l);
    for (std::size_t i = 0; i < l; ++i) {
        auto quot = B.at(i, l - 1).try_exact_div(lin);
        if (!quot || !quot->is_univariate_x())
            throw Error(Errc::PreconditionViolated,
                        "last column must be (p*y+q) times a K[x] vector");
        b[i] = *quot;
    }

    std::vector<Poly> entries;
    entries.reserve(l * l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) entries.push_back(B.at(i, j));
    if (!is_unit_ideal(IdealPresentation::of(entries)))
        throw Error(Errc::PreconditionViolated, "entries of B must generate the unit ideal");

    UnivariateTransform sx = smith_x(B1);
    for (std::size_t i = 0; i + 1 < l; ++i)
        if (sx.result.at(i, i).is_zero())
            throw Error(Errc::PreconditionViolated, "left block must have full column rank");

    PolyMatrix U = sx.left;
    PolyMatrix V = PolyMatrix::block_diag(sx.right, PolyMatrix::identity(1));
    PolyMatrix W = U * B * V;

    std::vector<Poly> v(l);
    for (std::size_t i = 0; i < l; ++i) {
        Poly acc;
        for (std::size_t k = 0; k < l; ++k) acc += sx.left.at(i, k) * b[k];
        v[i] = acc;
    }

    std::vector<Poly> tail(v.begin() + 1, v.end());
    Poly d;
    std::vector<Poly> cof;
    bezout_chain(tail, d, cof);

    Poly f1 = sx.result.at(0, 0);
    Poly shift = coprime_shift(f1, v[0], d);

    for (std::size_t i = 1; i < l; ++i) {
        Poly c = shift * cof[i - 1];
        if (c.is_zero()) continue;
        row_axpy(W, 0, i, c);
        row_axpy(U, 0, i, c);
    }
    Poly corner = (v[0] + shift * d) * lin;
    assert(W.at(0, 0) == f1 && W.at(0, l - 1) == corner);

    IdealPresentation pair;
    pair.generators = {f1, corner};
    UnitCertificate uc = unit_cofactors(pair);

    PolyMatrix E = PolyMatrix::identity(l);
    E.at(0, 0) = uc.cofactors[0];
    E.at(l - 1, 0) = uc.cofactors[1];
    E.at(0, l - 1) = -corner;
    E.at(l - 1, l - 1) = f1;
    W = W * E;
    V = V * E;
    assert(W.at(0, 0) == Poly::one() && W.at(0, l - 1).is_zero());

    for (std::size_t j = 1; j < l; ++j) {
        if (W.at(0, j).is_zero()) continue;
        Poly c = -W.at(0, j);
        col_axpy(W, j, 0, c);
        col_axpy(V, j, 0, c);
    }
    for (std::size_t i = 1; i < l; ++i) {
        if (W.at(i, 0).is_zero()) continue;
        Poly c = -W.at(i, 0);
        row_axpy(W, i, 0, c);
        row_axpy(U, i, 0, c);
    }

    std::vector<std::size_t> trail(l - 1);
    for (std::size_t i = 0; i + 1 < l; ++i) trail[i] = i + 1;
    PinchResult out{std::move(U), std::move(V), W.submatrix(trail, trail)};
    assert(out.U * B * out.V ==
           PolyMatrix::block_diag(PolyMatrix::identity(1), out.M1));
    return out;
}

DecisionReport decide(const PolyMatrix& M) {
    DecisionReport report;
    report.rank = matrix_rank(M);
    if (report.rank == 0) {
        // the zero matrix is its own normal form
        report.in_class = true;
        report.verdict = Verdict::Equivalent;
        return report;
    }
    bool all_unit = true;
    for (unsigned i = 1; i <= report.rank; ++i) {
        MinorProfile mp = minor_profile(M, i);
        OrderVerdict ov;
        ov.order = i;
        ov.d = mp.d;
        ov.reduced = reduced_basis(IdealPresentation::of(mp.J_generators));
        ov.unit = ov.reduced.elements.size() == 1 && ov.reduced.elements[0] == Poly::one();
        all_unit &= ov.unit;
        report.orders.push_back(std::move(ov));
    }
    report.in_class = report.orders.back().d.deg_y() == 1;
    if (!report.in_class)
        report.verdict = Verdict::OutsideClass;
    else
        report.verdict = all_unit ? Verdict::Equivalent : Verdict::NotEquivalent;
    return report;
}

namespace {

struct BuildOutcome {
    std::optional<EquivalenceCertificate> cert;
    std::optional<EquivalenceCertificate> partial;
    std::string note;
};

void add_step(std::vector<TraceStep>& trace, std::string stage, std::string detail) {
    trace.push_back({std::move(stage), std::move(detail)});
}

BuildOutcome construct(const PolyMatrix& M, const PipelineConfig& cfg) {
    std::size_t l = M.rows();
    std::vector<TraceStep> trace;
    Poly det = determinant(M);

    if (l == 1) {
        EquivalenceCertificate cert{PolyMatrix::identity(1), PolyMatrix::identity(1),
                                    PolyMatrix::identity(1), {}};
        cert.U.at(0, 0) = Poly::constant(Rational(1) / det.leading_coeff());
        cert.S.at(0, 0) = det.monic();
        add_step(cert.trace, "base", "1x1 scaled monic: " + cert.S.at(0, 0).to_string());
        return {std::move(cert), std::nullopt, ""};
    }

    Poly d1 = minor_profile(M, 1).d;
    assert(d1.deg_y() == 0);
    PolyMatrix M0(l, l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) M0.at(i, j) = M.at(i, j).exact_div(d1);
    add_step(trace, "content", "d1 = " + d1.to_string());

    Poly det0 = determinant(M0);
    assert(det0.deg_y() == 1);
    LinearPart lp = LinearPart::of(det0.coeff_of_y(1), det0.coeff_of_y(0));
    add_step(trace, "linear-part",
             "h = " + lp.h.to_string() + "; p = " + lp.p.to_string() +
                 "; q = " + lp.q.to_string());

    PrimitiveSplit split = primitive_factorization(M0, lp.h);
    add_step(trace, "primitive-split", "det(G) = " + lp.h.monic().to_string());

    UnivariateReduction red = reduce_univariate_det(split.G, cfg);
    add_step(trace, "univariate-reduction",
             "steps = " + std::to_string(red.steps) +
                 (red.complete ? "" : " (stalled)"));
    if (!red.complete) {
        EquivalenceCertificate partial{red.P, red.C, red.Q, trace};
        add_step(partial.trace, "partial",
                 "P*G*Q = C for the content factor G; C still bivariate");
        return {std::nullopt, std::move(partial),
                "univariate reduction stalled after " + std::to_string(red.steps) +
                    " steps"};
    }

    UnivariateTransform sx = smith_x(red.C);
    PolyMatrix PL = sx.left * red.P;
    PolyMatrix QR = red.Q * sx.right;
    {
        std::string diag;
        for (std::size_t i = 0; i < l; ++i)
            diag += (i ? ", " : "") + sx.result.at(i, i).to_string();
        add_step(trace, "diagonalize-content", "S_G = diag(" + diag + ")");
    }

    PolyMatrix W_right = unimodular_inverse(QR) * split.F;
    LinearExtraction ext = extract_linear_y_factor(W_right, lp);
    add_step(trace, "linear-extraction",
             "D = diag(1,...,1, " + lp.linear_factor().to_string() + ")");

    PolyMatrix B = sx.result * ext.V * ext.D;
    PinchResult pinch = pinch_stage(B, lp);
    add_step(trace, "pinch", "B reduced to diag(1, M1)");

    BuildOutcome sub = construct(pinch.M1, cfg);
    if (!sub.cert) {
        sub.partial->trace.insert(sub.partial->trace.begin(), trace.begin(), trace.end());
        return {std::nullopt, std::move(sub.partial), std::move(sub.note)};
    }
    add_step(trace, "recurse", "solved size " + std::to_string(l - 1) + " block");
    for (const auto& step : sub.cert->trace) trace.push_back(step);

    PolyMatrix one = PolyMatrix::identity(1);
    EquivalenceCertificate cert{
        PolyMatrix::block_diag(one, sub.cert->U) * pinch.U * PL,
        PolyMatrix(l, l),
        unimodular_inverse(ext.G) * pinch.V * PolyMatrix::block_diag(one, sub.cert->V),
        {}};
    PolyMatrix S1 = sub.cert->S.scaled(d1);
    cert.S = PolyMatrix::block_diag(one, S1);
    cert.S.at(0, 0) = d1;
    if (d1 != Poly::one()) add_step(trace, "rescale", "diagonal scaled by " + d1.to_string());
    cert.trace = std::move(trace);

    assert(cert.U * M * cert.V == cert.S);
    return {std::move(cert), std::nullopt, ""};
}

}  // namespace

TransformResult transform(const PolyMatrix& M, const PipelineConfig& cfg) {
    if (!M.is_square()) throw Error(Errc::NotSquare, "transform needs a square matrix");
    TransformResult res;
    res.report = decide(M);
    if (res.report.verdict != Verdict::Equivalent) {
        res.verdict = res.report.verdict;
        res.note = res.report.verdict == Verdict::OutsideClass
                       ? "determinant is not linear in y"
                       : "some reduced minor ideal is proper";
        return res;
    }
    if (M.is_zero()) {
        EquivalenceCertificate cert{PolyMatrix::identity(M.rows()), M,
                                    PolyMatrix::identity(M.rows()), {}};
        add_step(cert.trace, "base", "zero matrix is its own normal form");
        if (!verify_certificate(M, cert))
            throw Error(Errc::InternalDivisibilityViolation,
                        "constructed certificate failed verification");
        res.verdict = Verdict::Equivalent;
        res.certificate = std::move(cert);
        return res;
    }
    if (res.report.rank < M.rows()) {
        res.verdict = Verdict::Incomplete;
        res.note = "decision: Equivalent; construction needs a nonzero determinant";
        return res;
    }

    BuildOutcome out = construct(M, cfg);
    if (!out.cert) {
        res.verdict = Verdict::Incomplete;
        res.partial = std::move(out.partial);
        res.note = std::move(out.note);
        return res;
    }
    // the budget gates the certificate handed back, not the recursion's
    // intermediates: factors often cancel degree when composed
    int deg = std::max(matrix_max_degree(out.cert->U), matrix_max_degree(out.cert->V));
    if (deg > cfg.degree_budget) {
        res.verdict = Verdict::Incomplete;
        res.partial = std::move(out.cert);
        res.note = "certificate entries exceed the degree budget (" +
                   std::to_string(deg) + " > " + std::to_string(cfg.degree_budget) + ")";
        return res;
    }
    if (!verify_certificate(M, *out.cert))
        throw Error(Errc::InternalDivisibilityViolation,
                    "constructed certificate failed verification");
    res.verdict = Verdict::Equivalent;
    res.certificate = std::move(out.cert);
    return res;
}

bool verify_certificate(const PolyMatrix& M, const EquivalenceCertificate& cert) {
    std::size_t l = M.rows(), m = M.cols();
    if (cert.U.rows() != l || cert.U.cols() != l || cert.V.rows() != m ||
        cert.V.cols() != m || cert.S.rows() != l || cert.S.cols() != m)
        throw Error(Errc::DimensionMismatch, "certificate shapes do not match the matrix");
    if (!is_unimodular(cert.U) || !is_unimodular(cert.V)) return false;
    if (cert.U * M * cert.V != cert.S) return false;

    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j && !cert.S.at(i, j).is_zero()) return false;

    SmithForm target = smith_target(M);
    for (std::size_t i = 0; i < std::min(l, m); ++i) {
        const Poly& e = cert.S.at(i, i);
        if (i < target.rank) {
            if (e.is_zero() || e.monic() != target.invariant_factors[i]) return false;
        } else if (!e.is_zero()) {
            return false;
        }
    }
    return true;
}

namespace {

json matrix_to_json_obj(const PolyMatrix& M) { return json::parse(matrix_to_json_text(M)); }

PolyMatrix matrix_from_json_obj(const json& j, const char* key) {
    try {
        return matrix_from_json_text(j.dump());
    } catch (const Error& e) {
        throw Error(e.code(), std::string("\"") + key + "\": " + error_message(e));
    }
}

}  // namespace

std::string certificate_to_json_text(const EquivalenceCertificate& cert, int indent) {
    json j;
    j["U"] = matrix_to_json_obj(cert.U);
    j["S"] = matrix_to_json_obj(cert.S);
    j["V"] = matrix_to_json_obj(cert.V);
    j["trace"] = json::array();
    for (const auto& step : cert.trace)
        j["trace"].push_back({{"stage", step.stage}, {"detail", step.detail}});
    return j.dump(indent);
}

EquivalenceCertificate certificate_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::BadInput, std::string("invalid certificate JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(Errc::BadInput, "certificate must be a JSON object");
    for (const char* key : {"U", "S", "V"})
        if (!j.contains(key))
            throw Error(Errc::BadInput, std::string("certificate is missing \"") + key + "\"");

    EquivalenceCertificate cert{matrix_from_json_obj(j["U"], "U"),
                                matrix_from_json_obj(j["S"], "S"),
                                matrix_from_json_obj(j["V"], "V"),
                                {}};
    if (j.contains("trace")) {
        if (!j["trace"].is_array()) throw Error(Errc::BadInput, "\"trace\" must be an array");
        for (const auto& step : j["trace"]) {
            if (!step.is_object() || !step.contains("stage") || !step.contains("detail") ||
                !step["stage"].is_string() || !step["detail"].is_string())
                throw Error(Errc::BadInput, "trace steps need string stage and detail");
            cert.trace.push_back({step["stage"], step["detail"]});
        }
    }
    return cert;
}

std::string report_to_json_text(const DecisionReport& report, const PolyMatrix& M,
                                int indent) {
    json j;
    j["verdict"] = verdict_name(report.verdict);
    j["in_class"] = report.in_class;
    j["rank"] = report.rank;
    j["orders"] = json::array();
    for (const auto& ov : report.orders) {
        json o;
        o["order"] = ov.order;
        o["d"] = ov.d.to_string();
        o["unit"] = ov.unit;
        o["reduced_basis"] = json::array();
        for (const Poly& g : ov.reduced.elements) o["reduced_basis"].push_back(g.to_string());
        j["orders"].push_back(std::move(o));
    }
    j["smith_target"] = json::array();
    for (const Poly& f : smith_target(M).invariant_factors)
        j["smith_target"].push_back(f.to_string());
    return j.dump(indent);
}

}  // namespace bps
