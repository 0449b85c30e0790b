#include "bps/residue.hpp"

#include <cassert>

#include "bps/errors.hpp"
#include "bps/unifactor.hpp"

namespace bps {
namespace {

bool is_unit_in_L(const Poly& f) { return !f.is_zero() && f.deg_y() <= 0; }

// Leading y-coefficient as an element of L.
Poly lead_y(const Poly& f) { return f.coeff_of_y(static_cast<unsigned>(f.deg_y())); }

Poly r_mul(const Poly& a, const Poly& b, const ResidueCtx& ctx) {
    return r_reduce(a * b, ctx);
}

// Monic gcd of two canonical L[y] elements.
Poly r_gcd(Poly a, Poly b, const ResidueCtx& ctx) {
    while (!b.is_zero()) {
        Poly q, r;
        r_divmod_y(a, b, ctx, q, r);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return r_mul(a, r_inverse(lead_y(a), ctx), ctx);
}

Poly r_exact_div(const Poly& a, const Poly& b, const ResidueCtx& ctx) {
    Poly q, r;
    r_divmod_y(a, b, ctx, q, r);
    if (!r.is_zero())
        throw Error(Errc::InternalDivisibilityViolation, "inexact division in L[y]");
    return q;
}

}  // namespace

ResidueCtx::ResidueCtx(Poly p) : modulus(std::move(p)) {
    if (!modulus.is_univariate_x() || modulus.is_constant())
        throw Error(Errc::InvalidDivisor, "modulus must be univariate in x of degree >= 1");
    if (modulus.leading_coeff() != 1)
        throw Error(Errc::InvalidDivisor, "modulus must be monic");
    if (!is_irreducible_x(modulus))
        throw Error(Errc::InvalidDivisor, "modulus must be irreducible");
}

Poly r_reduce(const Poly& f, const ResidueCtx& ctx) {
    Poly out;
    int dy = f.deg_y();
    for (int k = 0; k <= dy; ++k) {
        Poly c = f.coeff_of_y(static_cast<unsigned>(k));
        if (c.is_zero()) continue;
        Poly q, r;
        udivmod(c, ctx.modulus, q, r);
        if (!r.is_zero()) out += r * Poly::var_y().pow(static_cast<unsigned>(k));
    }
    return out;
}

Poly r_inverse(const Poly& a, const ResidueCtx& ctx) {
    Poly ar = r_reduce(a, ctx);
    if (ar.is_zero()) throw Error(Errc::ZeroInverse, "element is zero mod the modulus");
    if (ar.deg_y() > 0)
        throw Error(Errc::ZeroInverse, "element is not in the coefficient field");
    ExtGcd e = ext_gcd_x(ar, ctx.modulus);
    // p irreducible and ar nonzero mod p force gcd = 1.
    assert(e.g == Poly::one());
    return r_reduce(e.alpha, ctx);
}

void r_divmod_y(const Poly& f, const Poly& g, const ResidueCtx& ctx, Poly& quot, Poly& rem) {
    if (g.is_zero() || r_reduce(g, ctx).is_zero())
        throw Error(Errc::DivisionByZero, "division by zero in L[y]");
    Poly gr = r_reduce(g, ctx);
    Poly lg_inv = r_inverse(lead_y(gr), ctx);
    int dg = gr.deg_y();
    quot = Poly::zero();
    rem = r_reduce(f, ctx);
    while (!rem.is_zero() && rem.deg_y() >= dg) {
        unsigned k = static_cast<unsigned>(rem.deg_y() - dg);
        Poly c = r_mul(lead_y(rem), lg_inv, ctx);
        Poly shift = c * Poly::var_y().pow(k);
        quot += shift;
        rem = r_reduce(rem - shift * gr, ctx);
    }
}

std::vector<Poly> left_kernel_row(const PolyMatrix& G, const ResidueCtx& ctx) {
    if (!G.is_square()) throw Error(Errc::NotSquare, "kernel extraction needs a square matrix");
    std::size_t l = G.rows();
    PolyMatrix A(l, l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) A.at(i, j) = r_reduce(G.at(i, j), ctx);
    PolyMatrix T = PolyMatrix::identity(l);

    auto reduce_rows = [&](PolyMatrix& M) {
        for (std::size_t i = 0; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j) M.at(i, j) = r_reduce(M.at(i, j), ctx);
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < l && r < l; ++c) {
        while (true) {
            std::size_t piv = l;
            int best = -1;
            for (std::size_t i = r; i < l; ++i) {
                if (A.at(i, c).is_zero()) continue;
                int d = A.at(i, c).deg_y();
                if (piv == l || d < best) piv = i, best = d;
            }
            if (piv == l) break;
            if (piv != r) {
                row_swap(A, r, piv);
                row_swap(T, r, piv);
            }
            bool residue_left = false;
            for (std::size_t i = r + 1; i < l; ++i) {
                if (A.at(i, c).is_zero()) continue;
                Poly q, rem;
                r_divmod_y(A.at(i, c), A.at(r, c), ctx, q, rem);
                row_axpy(A, i, r, -q);
                row_axpy(T, i, r, -q);
                reduce_rows(A);
                reduce_rows(T);
                residue_left |= !A.at(i, c).is_zero();
            }
            if (!residue_left) break;
        }
        if (!A.at(r, c).is_zero()) ++r;
    }
    if (r == l)
        throw Error(Errc::KernelEmpty, "matrix is invertible mod the modulus");

    std::vector<Poly> a(l);
    for (std::size_t j = 0; j < l; ++j) a[j] = T.at(r, j);

    Poly g;
    for (const Poly& e : a)
        if (!e.is_zero()) g = g.is_zero() ? e : r_gcd(g, e, ctx);
    assert(!g.is_zero());
    if (!is_unit_in_L(g) || g != Poly::one())
        for (Poly& e : a)
            if (!e.is_zero()) e = r_exact_div(e, g, ctx);
    for (const Poly& e : a)
        if (!e.is_zero()) {
            Poly u = r_inverse(lead_y(e), ctx);
            if (u != Poly::one())
                for (Poly& x : a) x = r_mul(x, u, ctx);
            break;
        }
    return a;
}

TransvectionList row_to_unit_vector(const std::vector<Poly>& a, const ResidueCtx& ctx) {
    std::size_t l = a.size();
    std::vector<Poly> w(l);
    for (std::size_t j = 0; j < l; ++j) w[j] = r_reduce(a[j], ctx);

    Poly g;
    for (const Poly& e : w)
        if (!e.is_zero()) g = g.is_zero() ? e : r_gcd(g, e, ctx);
    if (g.is_zero() || !is_unit_in_L(g))
        throw Error(Errc::NotPrimitive, "row entries are not coprime in L[y]");

    TransvectionList T;
    auto apply = [&](std::size_t dst, std::size_t src, const Poly& c) {
        Poly cr = r_reduce(c, ctx);
        if (cr.is_zero()) return;
        w[dst] = r_reduce(w[dst] + cr * w[src], ctx);
        T.ops.push_back({dst, src, cr});
    };

    if (l == 1) {
        if (w[0] != Poly::one())
            throw Error(Errc::NotPrimitive, "1-vector cannot be scaled by transvections");
        return T;
    }

    if (w[0].is_zero())
        for (std::size_t j = 1; j < l; ++j)
            if (!w[j].is_zero()) {
                apply(0, j, Poly::one());
                break;
            }

    // Euclid between slot 0 and each other slot until slot 0 holds a unit.
    for (std::size_t j = 1; j < l && !is_unit_in_L(w[0]); ++j) {
        while (!w[j].is_zero()) {
            Poly q, rem;
            r_divmod_y(w[0], w[j], ctx, q, rem);
            apply(0, j, -q);
            if (w[0].is_zero()) {
                apply(0, j, Poly::one());
                apply(j, 0, -Poly::one());
                break;
            }
            if (is_unit_in_L(w[0])) break;
            r_divmod_y(w[j], w[0], ctx, q, rem);
            apply(j, 0, -q);
        }
    }
    assert(is_unit_in_L(w[0]));

    Poly u_inv = r_inverse(w[0], ctx);
    for (std::size_t j = 1; j < l; ++j)
        if (!w[j].is_zero()) apply(j, 0, -r_mul(w[j], u_inv, ctx));

    if (w[0] != Poly::one()) {
        // diag(u^-1, u) on slots (0, 1), written as six transvections.
        Poly u = w[0];
        apply(1, 0, u_inv);
        apply(0, 1, -u);
        apply(1, 0, u_inv);
        apply(0, 1, Poly::one());
        apply(1, 0, -Poly::one());
        apply(0, 1, Poly::one());
    }

    assert(w[0] == Poly::one());
    for (std::size_t j = 1; j < l; ++j) assert(w[j].is_zero());
    return T;
}

PolyMatrix lift_left_factor(const TransvectionList& T, const ResidueCtx& ctx, std::size_t l) {
    PolyMatrix U = PolyMatrix::identity(l);
    for (auto it = T.ops.rbegin(); it != T.ops.rend(); ++it) {
        if (it->dst >= l || it->src >= l || it->dst == it->src)
            throw Error(Errc::BadInput, "transvection indices out of range");
        col_axpy(U, it->dst, it->src, -r_reduce(it->c, ctx));
    }
    assert(determinant(U) == Poly::one());
    return U;
}

}  // namespace bps
