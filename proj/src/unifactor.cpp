#include "bps/unifactor.hpp"

#include <algorithm>
#include <map>

namespace bps {

namespace {

void require_ux(const Poly& a, const char* who) {
    if (!a.is_univariate_x()) throw Error(Errc::NotUnivariate, std::string(who) + ": operand has y terms");
}

// ------------------------------------------------ dense Z/m coefficient work
//
// Ascending coefficient vectors over Z/m, trimmed, entries in [0, m).

using ZV = std::vector<mpz_class>;

void vtrim(ZV& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int vdeg(const ZV& a) { return static_cast<int>(a.size()) - 1; }

mpz_class mreduce(const mpz_class& x, const mpz_class& m) {
    mpz_class r = x % m;
    if (r < 0) r += m;
    return r;
}

ZV vmod(const ZV& a, const mpz_class& m) {
    ZV r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mreduce(a[i], m);
    vtrim(r);
    return r;
}

ZV vadd(const ZV& a, const ZV& b, const mpz_class& m) {
    ZV r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
        r[i] = mreduce(r[i], m);
    }
    vtrim(r);
    return r;
}

ZV vsub(const ZV& a, const ZV& b, const mpz_class& m) {
    ZV r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        mpz_class x = i < a.size() ? a[i] : mpz_class(0);
        if (i < b.size()) x -= b[i];
        r[i] = mreduce(x, m);
    }
    vtrim(r);
    return r;
}

ZV vmul(const ZV& a, const ZV& b, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    ZV r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mreduce(r[i + j] + a[i] * b[j], m);
    vtrim(r);
    return r;
}

ZV vscale(const ZV& a, const mpz_class& c, const mpz_class& m) {
    ZV r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mreduce(a[i] * c, m);
    vtrim(r);
    return r;
}

mpz_class minv(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error(Errc::ZeroInverse, "noninvertible residue");
    return r;
}

// Division with remainder; the divisor's leading coefficient must be
// invertible mod m (always true in our uses: monic divisors or prime m).
void vdivmod(const ZV& a, const ZV& b, const mpz_class& m, ZV& quot, ZV& rem) {
    quot.clear();
    rem = a;
    vtrim(rem);
    mpz_class li = minv(b.back(), m);
    int db = vdeg(b);
    if (vdeg(rem) >= db) quot.assign(rem.size() - b.size() + 1, 0);
    while (vdeg(rem) >= db) {
        int k = vdeg(rem) - db;
        mpz_class c = mreduce(rem.back() * li, m);
        quot[k] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            rem[k + i] = mreduce(rem[k + i] - c * b[i], m);
        vtrim(rem);
    }
    vtrim(quot);
}

ZV vmonic(const ZV& a, const mpz_class& m) {
    if (a.empty()) return a;
    return vscale(a, minv(a.back(), m), m);
}

ZV vgcd(ZV a, ZV b, const mpz_class& m) {
    while (!b.empty()) {
        ZV q, r;
        vdivmod(a, b, m, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return vmonic(a, m);
}

// g = gcd monic, s*a + t*b = g over F_m (m prime).
void vext_gcd(const ZV& a, const ZV& b, const mpz_class& m, ZV& g, ZV& s, ZV& t) {
    ZV r0 = a, r1 = b, s0 = {mpz_class(1)}, s1 = {}, t0 = {}, t1 = {mpz_class(1)};
    while (!r1.empty()) {
        ZV q, r;
        vdivmod(r0, r1, m, q, r);
        r0 = std::move(r1);
        r1 = std::move(r);
        ZV s2 = vsub(s0, vmul(q, s1, m), m);
        s0 = std::move(s1);
        s1 = std::move(s2);
        ZV t2 = vsub(t0, vmul(q, t1, m), m);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    mpz_class li = minv(r0.back(), m);
    g = vscale(r0, li, m);
    s = vscale(s0, li, m);
    t = vscale(t0, li, m);
}

ZV vpowmod(const ZV& base, const mpz_class& e, const ZV& mod, const mpz_class& m) {
    ZV r = {mpz_class(1)};
    ZV b = base;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) {
            ZV q, rr;
            vdivmod(vmul(r, b, m), mod, m, q, rr);
            r = rr;
        }
        k >>= 1;
        if (k > 0) {
            ZV q, rr;
            vdivmod(vmul(b, b, m), mod, m, q, rr);
            b = rr;
        }
    }
    return r;
}

// ------------------------------------------------------- Berlekamp over F_p

// Monic squarefree u over F_p; returns its monic irreducible factors.
std::vector<ZV> berlekamp(const ZV& u, const mpz_class& p) {
    int n = vdeg(u);
    if (n <= 1) return {u};

    // Petr-Berlekamp matrix rows: x^(i*p) mod u.
    ZV xq = vpowmod({mpz_class(0), mpz_class(1)}, p, u, p);
    std::vector<ZV> rows(n);
    rows[0] = {mpz_class(1)};
    for (int i = 1; i < n; ++i) {
        ZV q, r;
        vdivmod(vmul(rows[i - 1], xq, p), u, p, q, r);
        rows[i] = r;
    }

    // Solve v*(Q - I) = 0: columns of A are (row_i - e_i).
    std::vector<std::vector<mpz_class>> A(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            mpz_class q = j <= vdeg(rows[i]) ? rows[i][j] : mpz_class(0);
            if (i == j) q -= 1;
            A[j][i] = mreduce(q, p);  // transpose: solve A * v = 0
        }
    }

    // Gaussian elimination collecting a nullspace basis.
    std::vector<int> pivot_col(n, -1);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        for (int row = rank; row < n; ++row)
            if (A[row][col] != 0) {
                piv = row;
                break;
            }
        if (piv < 0) continue;
        std::swap(A[rank], A[piv]);
        mpz_class inv = minv(A[rank][col], p);
        for (int j = 0; j < n; ++j) A[rank][j] = mreduce(A[rank][j] * inv, p);
        for (int row = 0; row < n; ++row) {
            if (row == rank || A[row][col] == 0) continue;
            mpz_class c = A[row][col];
            for (int j = 0; j < n; ++j) A[row][j] = mreduce(A[row][j] - c * A[rank][j], p);
        }
        pivot_col[rank++] = col;
    }
    std::vector<bool> is_pivot(n, false);
    for (int i = 0; i < rank; ++i) is_pivot[pivot_col[i]] = true;

    std::vector<ZV> basis;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        ZV v(n, 0);
        v[col] = 1;
        for (int i = 0; i < rank; ++i) v[pivot_col[i]] = mreduce(-A[i][col], p);
        vtrim(v);
        basis.push_back(v);
    }

    std::size_t r = basis.size();
    std::vector<ZV> factors = {u};
    if (r <= 1) return factors;

    for (const ZV& v : basis) {
        if (vdeg(v) < 1) continue;
        for (mpz_class c = 0; c < p && factors.size() < r; ++c) {
            ZV shifted = vsub(v, {c}, p);
            for (std::size_t fi = 0; fi < factors.size() && factors.size() < r; ++fi) {
                if (vdeg(factors[fi]) <= 1) continue;
                ZV g = vgcd(factors[fi], shifted, p);
                if (vdeg(g) > 0 && vdeg(g) < vdeg(factors[fi])) {
                    ZV q, rr;
                    vdivmod(factors[fi], g, p, q, rr);
                    factors[fi] = q;
                    factors.push_back(g);
                }
            }
        }
        if (factors.size() == r) break;
    }
    return factors;
}

// ----------------------------------------------------------- Hensel lifting

// One quadratic step: modulus m -> m^2, h monic, f = g*h and s*g + t*h = 1
// both mod m in, both mod m^2 out.
void hensel_step(const ZV& f, ZV& g, ZV& h, ZV& s, ZV& t, const mpz_class& m) {
    mpz_class m2 = m * m;
    ZV e = vsub(vmod(f, m2), vmul(g, h, m2), m2);
    ZV q, r;
    vdivmod(vmul(s, e, m2), h, m2, q, r);
    ZV gstar = vadd(g, vadd(vmul(t, e, m2), vmul(q, g, m2), m2), m2);
    ZV hstar = vadd(h, r, m2);
    ZV b = vsub(vadd(vmul(s, gstar, m2), vmul(t, hstar, m2), m2), {mpz_class(1)}, m2);
    ZV c, d;
    vdivmod(vmul(s, b, m2), hstar, m2, c, d);
    ZV sstar = vsub(s, d, m2);
    ZV tstar = vsub(t, vadd(vmul(t, b, m2), vmul(c, gstar, m2), m2), m2);
    g = gstar;
    h = hstar;
    s = sstar;
    t = tstar;
}

// F satisfies F = lc(F) * prod(gs) mod p with gs monic and pairwise coprime
// mod p; F itself is known mod at least `target`. Appends lifts of the gs
// (mod the reached modulus >= target) to `leaves`.
void hensel_multi(const ZV& F, const std::vector<ZV>& gs, std::size_t lo, std::size_t hi,
                  const mpz_class& p, const mpz_class& target, std::vector<ZV>& leaves) {
    if (hi - lo == 1) {
        leaves.push_back(F);
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    ZV H0 = {mpz_class(1)};
    for (std::size_t i = mid; i < hi; ++i) H0 = vmul(H0, gs[i], p);
    ZV G0 = {mreduce(F.back(), p)};
    for (std::size_t i = lo; i < mid; ++i) G0 = vmul(G0, gs[i], p);

    ZV one, s, t;
    vext_gcd(G0, H0, p, one, s, t);

    ZV G = G0, H = H0;
    mpz_class m = p;
    while (m < target) {
        hensel_step(F, G, H, s, t, m);
        m *= m;
    }
    hensel_multi(G, gs, lo, mid, p, m, leaves);
    hensel_multi(H, gs, mid, hi, p, m, leaves);
}

// --------------------------------------------- integer-level factoring glue

bool is_small_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Primitive integer polynomial (ascending coefficients) from a univariate
// rational Poly; positive leading coefficient.
ZV to_primitive_int(const Poly& f, mpz_class* out_den = nullptr) {
    int n = f.deg_x();
    mpz_class den = 1;
    for (int k = 0; k <= n; ++k) den = lcm(den, ucoeff(f, static_cast<unsigned>(k)).get_den());
    ZV v(static_cast<std::size_t>(n) + 1);
    mpz_class cont = 0;
    for (int k = 0; k <= n; ++k) {
        Rational c = ucoeff(f, static_cast<unsigned>(k)) * Rational(den);
        v[static_cast<std::size_t>(k)] = c.get_num();
        cont = gcd(cont, v[static_cast<std::size_t>(k)]);
    }
    if (cont == 0) cont = 1;
    if (v.back() < 0) cont = -cont;
    for (auto& c : v) c /= cont;
    if (out_den) *out_den = den;
    return v;
}

Poly from_int(const ZV& v) {
    std::vector<Rational> coeffs;
    coeffs.reserve(v.size());
    for (const auto& c : v) coeffs.emplace_back(c);
    return upoly_from_coeffs(coeffs);
}

mpz_class symmetric_rep(const mpz_class& x, const mpz_class& m) {
    return 2 * x > m ? mpz_class(x - m) : x;
}

// Monic irreducible rational factors of a squarefree primitive integer
// polynomial (Zassenhaus: Berlekamp mod a good prime, Hensel lift past the
// factor-coefficient bound, subset recombination).
std::vector<Poly> factor_squarefree_int(const ZV& S0) {
    std::vector<Poly> out;
    ZV S = S0;
    if (vdeg(S) <= 0) return out;
    if (vdeg(S) == 1) {
        out.push_back(from_int(S).monic());
        return out;
    }

    // Prime choice: lc stays a unit and S stays squarefree mod p.
    mpz_class p = 0;
    for (unsigned long cand = 3;; cand += 2) {
        if (!is_small_prime(cand)) continue;
        mpz_class pc(cand);
        if (S.back() % pc == 0) continue;
        ZV sm = vmod(S, pc);
        if (vdeg(sm) != vdeg(S)) continue;
        ZV d(sm.size() - 1);
        for (std::size_t i = 1; i < sm.size(); ++i) d[i - 1] = mreduce(sm[i] * i, pc);
        vtrim(d);
        if (vdeg(vgcd(sm, d, pc)) == 0) {
            p = pc;
            break;
        }
        if (cand > 100000) throw Error(Errc::InternalDivisibilityViolation, "no usable prime found");
    }

    ZV Sm = vmonic(vmod(S, p), p);
    std::vector<ZV> modular = berlekamp(Sm, p);
    if (modular.size() == 1) {
        out.push_back(from_int(S).monic());
        return out;
    }
    std::sort(modular.begin(), modular.end(), [](const ZV& a, const ZV& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });

    // Factor-coefficient bound (Mignotte-style, deliberately generous).
    mpz_class maxc = 0;
    for (const auto& c : S) maxc = std::max(maxc, mpz_class(abs(c)));
    int n = vdeg(S);
    mpz_class bound = mpz_class(n + 1) * maxc * abs(S.back());
    bound <<= static_cast<unsigned>(n + 1);
    mpz_class target = 2 * bound + 1;

    std::vector<ZV> leaves;
    mpz_class mlift = p;
    while (mlift < target) mlift *= mlift;
    hensel_multi(vmod(S, mlift), modular, 0, modular.size(), p, target, leaves);

    // Normalize leaves monic mod the lifted modulus.
    for (auto& g : leaves) g = vscale(g, minv(g.back(), mlift), mlift);

    // Subset recombination with trial division over Q.
    Poly rem_poly = from_int(S);
    std::vector<ZV> pool = leaves;
    std::size_t d = 1;
    while (2 * d <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(d);
        for (std::size_t i = 0; i < d; ++i) idx[i] = i;
        for (;;) {
            mpz_class L(to_primitive_int(rem_poly).back());
            ZV cand = {mreduce(L, mlift)};
            for (std::size_t i : idx) cand = vmul(cand, pool[i], mlift);
            ZV sym(cand.size());
            for (std::size_t i = 0; i < cand.size(); ++i) sym[i] = symmetric_rep(cand[i], mlift);
            Poly h = from_int(to_primitive_int(from_int(sym)));
            if (!h.is_constant() && h.divides(rem_poly)) {
                out.push_back(h.monic());
                rem_poly = rem_poly.exact_div(h);
                std::vector<ZV> next;
                for (std::size_t i = 0, j = 0; i < pool.size(); ++i) {
                    if (j < idx.size() && idx[j] == i)
                        ++j;
                    else
                        next.push_back(pool[i]);
                }
                pool = std::move(next);
                found = true;
                break;
            }
            // next combination
            std::size_t k = d;
            while (k > 0 && idx[k - 1] == pool.size() - d + (k - 1)) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < d; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++d;
    }
    if (rem_poly.deg_x() > 0) out.push_back(rem_poly.monic());
    return out;
}

}  // namespace

// ------------------------------------------------------------- public layer

ExtGcd ext_gcd_x(const Poly& a, const Poly& b) {
    require_ux(a, "ext_gcd_x");
    require_ux(b, "ext_gcd_x");
    if (a.is_zero() && b.is_zero()) throw Error(Errc::BothZero, "ext_gcd_x(0, 0)");

    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(), s1, t0, t1 = Poly::one();
    while (!r1.is_zero()) {
        Poly q, r;
        udivmod(r0, r1, q, r);
        r0 = r1;
        r1 = r;
        Poly s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        Poly t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
        if (!r1.is_zero()) {
            // joint primitive rescaling keeps s*a + t*b = r while stopping
            // the remainder chain's coefficient blowup
            Rational c = 1 / rational_content(r1);
            r1 = r1.scaled(c);
            s1 = s1.scaled(c);
            t1 = t1.scaled(c);
        }
    }
    Rational lead = r0.leading_coeff();
    ExtGcd res;
    res.g = r0.scaled(1 / lead);
    res.alpha = s0.scaled(1 / lead);
    res.beta = t0.scaled(1 / lead);

    // Canonical minimal-degree cofactors: reduce alpha mod b/g.
    if (!b.is_zero()) {
        Poly cof = b.exact_div(res.g);
        if (cof.deg_x() > 0) {
            Poly q, r;
            udivmod(res.alpha, cof, q, r);
            res.alpha = r;
        } else {
            res.alpha = Poly();
        }
        res.beta = (res.g - res.alpha * a).exact_div(b);
    }
    if (res.alpha * a + res.beta * b != res.g)
        throw Error(Errc::InternalDivisibilityViolation, "ext_gcd_x identity failed");
    return res;
}

std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& f) {
    require_ux(f, "squarefree_decomposition");
    if (f.is_zero()) throw Error(Errc::ZeroInput, "squarefree_decomposition(0)");
    std::vector<std::pair<Poly, unsigned>> out;
    Poly fm = f.monic();
    if (fm.deg_x() <= 0) return out;

    // Yun's method.
    Poly fp = fm.derivative_x();
    Poly a = ugcd(fm, fp);
    Poly b = fm.exact_div(a);
    Poly c = fp.exact_div(a);
    Poly d = c - b.derivative_x();
    unsigned i = 1;
    while (b.deg_x() > 0) {
        Poly g = ugcd(b, d);
        if (g.deg_x() > 0) out.emplace_back(g, i);
        b = b.exact_div(g);
        c = d.exact_div(g);
        d = c - b.derivative_x();
        ++i;
    }

    Poly check = Poly::one();
    for (const auto& [part, mult] : out) check *= part.pow(mult);
    if (check != fm)
        throw Error(Errc::InternalDivisibilityViolation, "squarefree decomposition failed round-trip");
    return out;
}

Poly Factorization::expand() const {
    Poly r = Poly::constant(unit);
    for (const auto& [f, m] : factors) r *= f.pow(m);
    return r;
}

Factorization factor_univariate(const Poly& f) {
    require_ux(f, "factor_univariate");
    if (f.is_zero()) throw Error(Errc::ZeroInput, "factor_univariate(0)");

    Factorization out;
    out.unit = f.leading_coeff();
    if (f.deg_x() <= 0) {
        out.unit = f.constant_value();
        return out;
    }

    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        ZV S = to_primitive_int(part);
        for (const Poly& irr : factor_squarefree_int(S)) out.factors.emplace_back(irr, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return Poly::compare(a.first, b.first) < 0; });

    if (out.expand() != f)
        throw Error(Errc::InternalDivisibilityViolation, "factorization failed round-trip");
    return out;
}

bool is_irreducible_x(const Poly& f) {
    require_ux(f, "is_irreducible_x");
    if (f.deg_x() <= 0) return false;
    if (f.deg_x() == 1) return true;
    Factorization fac = factor_univariate(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

Poly coprime_shift(const Poly& f, const Poly& v1, const Poly& v2) {
    require_ux(f, "coprime_shift");
    require_ux(v1, "coprime_shift");
    require_ux(v2, "coprime_shift");
    if (f.is_zero()) throw Error(Errc::PreconditionViolated, "coprime_shift requires f != 0");
    Poly g = ugcd(ugcd(f, v1), v2);
    if (g != Poly::one()) throw Error(Errc::PreconditionViolated, "gcd(f, v1, v2) != 1");

    int limit = f.deg_x() + 1;
    for (int hc = 0; hc <= limit; ++hc) {
        Poly h = Poly::constant(static_cast<long>(hc));
        if (ext_gcd_x(f, v1 + h * v2).g == Poly::one()) return h;
    }
    // Each irreducible factor of f excludes at most one constant, so the
    // search over deg(f)+2 constants cannot fail once the precondition holds.
    throw Error(Errc::InternalDivisibilityViolation, "constant shift search exhausted");
}

Poly coprime_shift_crt(const Poly& f, const Poly& v1, const Poly& v2) {
    require_ux(f, "coprime_shift_crt");
    require_ux(v1, "coprime_shift_crt");
    require_ux(v2, "coprime_shift_crt");
    if (f.is_zero()) throw Error(Errc::PreconditionViolated, "coprime_shift_crt requires f != 0");
    Poly g = ugcd(ugcd(f, v1), v2);
    if (g != Poly::one()) throw Error(Errc::PreconditionViolated, "gcd(f, v1, v2) != 1");

    if (f.deg_x() <= 0) return Poly();

    // Residues delta_i in {0,1} with v1 + delta_i*v2 nonzero mod each
    // irreducible factor p_i, glued by CRT modulo the squarefree kernel.
    Factorization fac = factor_univariate(f);
    std::vector<Poly> mods;
    std::vector<Poly> residues;
    for (const auto& [pi, mult] : fac.factors) {
        Poly q, r1;
        udivmod(v1, pi, q, r1);
        Poly delta = r1.is_zero() ? Poly::one() : Poly();
        mods.push_back(pi);
        residues.push_back(delta);
    }

    Poly big = Poly::one();
    for (const Poly& m : mods) big *= m;
    Poly h;
    for (std::size_t i = 0; i < mods.size(); ++i) {
        if (residues[i].is_zero()) continue;
        Poly others = big.exact_div(mods[i]);
        ExtGcd e = ext_gcd_x(others, mods[i]);  // alpha*others = 1 mod p_i
        h += residues[i] * e.alpha * others;
    }
    if (!h.is_zero()) {
        Poly q, r;
        udivmod(h, big, q, r);
        h = r;
    }
    if (ext_gcd_x(f, v1 + h * v2).g != Poly::one())
        throw Error(Errc::InternalDivisibilityViolation, "CRT shift failed verification");
    return h;
}

}  // namespace bps
