#ifndef BPS_POLY_HPP
#define BPS_POLY_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bps/errors.hpp"

namespace bps {

// Exact rational scalar. mpq_class keeps den > 0 and gcd(|num|, den) = 1
// as long as values are built through canonicalizing entry points.
using Rational = mpq_class;

Rational rational_from(long num, long den = 1);
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& r);

struct Mono {
    unsigned ex = 0;
    unsigned ey = 0;

    friend bool operator==(const Mono& a, const Mono& b) {
        return a.ex == b.ex && a.ey == b.ey;
    }
};

// Global term order: lex with y > x.
struct MonoLexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        if (a.ey != b.ey) return a.ey < b.ey;
        return a.ex < b.ex;
    }
};

inline bool mono_divides(const Mono& a, const Mono& b) {
    return a.ex <= b.ex && a.ey <= b.ey;
}
inline Mono mono_lcm(const Mono& a, const Mono& b) {
    return Mono{std::max(a.ex, b.ex), std::max(a.ey, b.ey)};
}
inline Mono mono_mul(const Mono& a, const Mono& b) { return Mono{a.ex + b.ex, a.ey + b.ey}; }
inline Mono mono_div(const Mono& a, const Mono& b) { return Mono{a.ex - b.ex, a.ey - b.ey}; }

// Sparse bivariate polynomial over Q. The term map never stores a zero
// coefficient, so equality of term maps is equality of polynomials.
class Poly {
  public:
    using TermMap = std::map<Mono, Rational, MonoLexLess>;

    Poly() = default;

    static Poly zero() { return Poly(); }
    static Poly one() { return constant(Rational(1)); }
    static Poly constant(const Rational& c);
    static Poly constant(long c) { return constant(rational_from(c)); }
    static Poly var_x();
    static Poly var_y();
    static Poly term(const Mono& m, const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_univariate_x() const;  // no y anywhere
    bool is_univariate_y() const;  // no x anywhere

    // Degrees; -1 on the zero polynomial.
    int deg_x() const;
    int deg_y() const;
    int total_degree() const;

    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    // Leading data under the global lex order; polynomial must be nonzero.
    const Mono& leading_mono() const;
    const Rational& leading_coeff() const;

    Rational coeff(const Mono& m) const;
    Rational constant_value() const;  // requires is_constant()

    // K[x]-coefficient of y^k, viewing the polynomial in (K[x])[y].
    Poly coeff_of_y(unsigned k) const;
    static Poly from_y_coeffs(const std::vector<Poly>& coeffs);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const Rational& c) const;
    Poly mul_term(const Mono& m, const Rational& c) const;
    Poly pow(unsigned e) const;

    // Exact division in Q[x,y]; throws InexactDivision / DivisionByZero.
    Poly exact_div(const Poly& d) const;
    std::optional<Poly> try_exact_div(const Poly& d) const;
    bool divides(const Poly& other) const;

    Poly derivative_x() const;
    Poly derivative_y() const;

    Rational eval(const Rational& at_x, const Rational& at_y) const;
    Poly eval_x(const Rational& at_x) const;  // still a Poly in y
    Poly eval_y(const Rational& at_y) const;  // still a Poly in x

    // Leading coefficient scaled to 1 under the global order.
    Poly monic() const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Total order used for canonical sorting of generator lists.
    static int compare(const Poly& a, const Poly& b);

    std::string to_string() const;

  private:
    void add_term(const Mono& m, const Rational& c);
    TermMap terms_;
};

// Shared polynomial grammar: integer or a/b literals, variables x and y,
// operators + - * ^ (nonnegative integer exponents), parentheses.
Poly parse_poly(const std::string& text);

struct PseudoDivision {
    unsigned exponent_s = 0;
    Poly quotient_h1;
    Poly remainder_gamma;  // univariate in x
};

// p(x)^s * h = h1 * (p(x) y + q(x)) + gamma(x) with minimal s.
PseudoDivision pseudo_divide_linear(const Poly& h, const Poly& p, const Poly& q);

// Whether (p y + q) divides h, for coprime p, q in K[x], p != 0.
bool linear_divides(const Poly& h, const Poly& p, const Poly& q);

// Monic gcd in Q[x,y] via content/primitive-part split and a subresultant
// remainder sequence in (Q[x])[y].
Poly bivariate_gcd(const Poly& a, const Poly& b);

// h(x, -q/p) * p^s as a polynomial together with the minimal clearing
// exponent s for this entry (i.e. h(x,-q/p) = numerator / p^s in lowest
// p-terms).
struct ClearedEval {
    Poly numerator;
    unsigned exponent_s = 0;
};
ClearedEval eval_y_at_fraction_entry(const Poly& h, const Poly& p, const Poly& q);

// ---- univariate-in-x helpers (operands must satisfy is_univariate_x) ----

int udeg(const Poly& a);  // degree in x, -1 for zero
Rational ucoeff(const Poly& a, unsigned k);
// gcd of coefficient numerators over lcm of denominators; 1 for the zero
// polynomial, so f.scaled(1 / rational_content(f)) is always integral and
// primitive up to sign.
Rational rational_content(const Poly& f);
Poly upoly_from_coeffs(const std::vector<Rational>& coeffs);

// Field-coefficient division: a = q*b + r with deg r < deg b.
void udivmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem);
Poly ugcd(const Poly& a, const Poly& b);  // monic; ugcd(0,0) = 0

}  // namespace bps

#endif
