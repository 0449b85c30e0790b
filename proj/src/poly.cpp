#include "bps/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bps {

Rational rational_from(long num, long den) {
    if (den == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text) {
    mpq_class r;
    if (r.set_str(text, 10) != 0) throw Error(Errc::BadInput, "bad rational literal '" + text + "'");
    if (r.get_den() == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

static Rational rat_pow(const Rational& base, unsigned e) {
    Rational r = 1;
    Rational b = base;
    unsigned k = e;
    while (k) {
        if (k & 1u) r *= b;
        b *= b;
        k >>= 1u;
    }
    return r;
}

Poly Poly::constant(const Rational& c) {
    Poly p;
    p.add_term(Mono{0, 0}, c);
    return p;
}

Poly Poly::var_x() { return term(Mono{1, 0}, Rational(1)); }
Poly Poly::var_y() { return term(Mono{0, 1}, Rational(1)); }

Poly Poly::term(const Mono& m, const Rational& c) {
    Poly p;
    p.add_term(m, c);
    return p;
}

void Poly::add_term(const Mono& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{0, 0});
}

bool Poly::is_univariate_x() const {
    for (const auto& [m, c] : terms_)
        if (m.ey != 0) return false;
    return true;
}

bool Poly::is_univariate_y() const {
    for (const auto& [m, c] : terms_)
        if (m.ex != 0) return false;
    return true;
}

int Poly::deg_x() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.ex));
    return d;
}

int Poly::deg_y() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.rbegin()->first.ey);
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.ex + m.ey));
    return d;
}

const Mono& Poly::leading_mono() const {
    if (terms_.empty()) throw Error(Errc::ZeroInput, "leading term of zero polynomial");
    return terms_.rbegin()->first;
}

const Rational& Poly::leading_coeff() const {
    if (terms_.empty()) throw Error(Errc::ZeroInput, "leading term of zero polynomial");
    return terms_.rbegin()->second;
}

Rational Poly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constant_value() const {
    if (!is_constant()) throw Error(Errc::BadInput, "constant_value of nonconstant polynomial");
    return coeff(Mono{0, 0});
}

Poly Poly::coeff_of_y(unsigned k) const {
    Poly r;
    for (const auto& [m, c] : terms_)
        if (m.ey == k) r.add_term(Mono{m.ex, 0}, c);
    return r;
}

Poly Poly::from_y_coeffs(const std::vector<Poly>& coeffs) {
    Poly r;
    for (unsigned k = 0; k < coeffs.size(); ++k) {
        if (!coeffs[k].is_univariate_x())
            throw Error(Errc::NotUnivariate, "y-coefficient must be univariate in x");
        for (const auto& [m, c] : coeffs[k].terms_) r.add_term(Mono{m.ex, k}, c);
    }
    return r;
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r;
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Poly Poly::mul_term(const Mono& m, const Rational& c) const {
    Poly r;
    if (c == 0) return r;
    for (const auto& [mm, k] : terms_) r.terms_.emplace(mono_mul(mm, m), k * c);
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r = Poly::one();
    Poly b = *this;
    unsigned k = e;
    while (k) {
        if (k & 1u) r *= b;
        if (k >>= 1u) b *= b;
    }
    return r;
}

std::optional<Poly> Poly::try_exact_div(const Poly& d) const {
    if (d.is_zero()) throw Error(Errc::DivisionByZero, "division by zero polynomial");
    Poly rem = *this;
    Poly quot;
    const Mono dm = d.leading_mono();
    const Rational dc = d.leading_coeff();
    while (!rem.is_zero()) {
        const Mono rm = rem.leading_mono();
        if (!mono_divides(dm, rm)) return std::nullopt;
        Mono m = mono_div(rm, dm);
        Rational c = rem.leading_coeff() / dc;
        quot.add_term(m, c);
        rem -= d.mul_term(m, c);
    }
    return quot;
}

Poly Poly::exact_div(const Poly& d) const {
    auto q = try_exact_div(d);
    if (!q) throw Error(Errc::InexactDivision, "'" + d.to_string() + "' does not divide '" + to_string() + "'");
    return *q;
}

bool Poly::divides(const Poly& other) const {
    if (is_zero()) return other.is_zero();
    return other.try_exact_div(*this).has_value();
}

Poly Poly::derivative_x() const {
    Poly r;
    for (const auto& [m, c] : terms_)
        if (m.ex > 0) r.add_term(Mono{m.ex - 1, m.ey}, c * m.ex);
    return r;
}

Poly Poly::derivative_y() const {
    Poly r;
    for (const auto& [m, c] : terms_)
        if (m.ey > 0) r.add_term(Mono{m.ex, m.ey - 1}, c * m.ey);
    return r;
}

Rational Poly::eval(const Rational& at_x, const Rational& at_y) const {
    Rational r = 0;
    for (const auto& [m, c] : terms_) r += c * rat_pow(at_x, m.ex) * rat_pow(at_y, m.ey);
    return r;
}

Poly Poly::eval_x(const Rational& at_x) const {
    Poly r;
    for (const auto& [m, c] : terms_) r.add_term(Mono{0, m.ey}, c * rat_pow(at_x, m.ex));
    return r;
}

Poly Poly::eval_y(const Rational& at_y) const {
    Poly r;
    for (const auto& [m, c] : terms_) r.add_term(Mono{m.ex, 0}, c * rat_pow(at_y, m.ey));
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / leading_coeff());
}

int Poly::compare(const Poly& a, const Poly& b) {
    auto ia = a.terms_.rbegin(), ea = a.terms_.rend();
    auto ib = b.terms_.rbegin(), eb = b.terms_.rend();
    MonoLexLess less;
    for (; ia != ea && ib != eb; ++ia, ++ib) {
        if (!(ia->first == ib->first)) return less(ia->first, ib->first) ? -1 : 1;
        int c = cmp(ia->second, ib->second);
        if (c != 0) return c;
    }
    if (ia != ea) return 1;
    if (ib != eb) return -1;
    return 0;
}

// ---------------------------------------------------------------- formatting

static void append_mono(std::string& out, const Mono& m) {
    bool need_star = false;
    if (m.ex > 0) {
        out += "x";
        if (m.ex > 1) out += "^" + std::to_string(m.ex);
        need_star = true;
    }
    if (m.ey > 0) {
        if (need_star) out += "*";
        out += "y";
        if (m.ey > 1) out += "^" + std::to_string(m.ey);
    }
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Mono& m = it->first;
        Rational c = it->second;
        bool neg = c < 0;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        Rational a = neg ? Rational(-c) : c;
        bool has_vars = m.ex > 0 || m.ey > 0;
        if (!has_vars) {
            out += a.get_str();
        } else {
            if (a != 1) out += a.get_str() + "*";
            append_mono(out, m);
        }
        first = false;
    }
    return out;
}

// ------------------------------------------------------------------- parsing

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : s_(text) {}

    Poly run() {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw bps::SyntaxError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek_is(c)) return false;
        ++pos_;
        return true;
    }

    Poly expr() {
        bool neg = false;
        skip_ws();
        if (accept('-'))
            neg = true;
        else
            accept('+');
        Poly p = term();
        if (neg) p = -p;
        for (;;) {
            if (accept('+'))
                p += term();
            else if (accept('-'))
                p -= term();
            else
                break;
        }
        return p;
    }

    Poly term() {
        Poly p = factor();
        while (accept('*')) p *= factor();
        return p;
    }

    Poly factor() {
        bool neg = false;
        skip_ws();
        if (accept('-'))
            neg = true;
        else
            accept('+');
        Poly p = atom();
        if (accept('^')) {
            unsigned e = exponent();
            p = p.pow(e);
        }
        return neg ? -p : p;
    }

    Poly atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (c == 'x') {
            ++pos_;
            return Poly::var_x();
        }
        if (c == 'y') {
            ++pos_;
            return Poly::var_y();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return literal();
        fail(std::string("unexpected character '") + c + "'");
    }

    // Unsigned integer or a/b rational; signs are handled at expr/factor level.
    Poly literal() {
        mpz_class num = digits();
        if (accept('/')) {
            skip_ws();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected denominator digits");
            mpz_class den = digits();
            if (den == 0) fail("zero denominator");
            Rational r(num, den);
            r.canonicalize();
            return Poly::constant(r);
        }
        return Poly::constant(Rational(num));
    }

    mpz_class digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return mpz_class(s_.substr(start, pos_ - start), 10);
    }

    unsigned exponent() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("exponent must be a nonnegative integer literal");
        mpz_class e = digits();
        if (e > 100000) fail("exponent too large");
        return static_cast<unsigned>(e.get_ui());
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text) { return Parser(text).run(); }

// ---------------------------------------------------- univariate (K[x]) layer

static void require_univariate_x(const Poly& a, const char* who) {
    if (!a.is_univariate_x()) throw Error(Errc::NotUnivariate, std::string(who) + ": operand has y terms");
}

int udeg(const Poly& a) {
    require_univariate_x(a, "udeg");
    return a.deg_x();
}

Rational ucoeff(const Poly& a, unsigned k) { return a.coeff(Mono{k, 0}); }

Rational rational_content(const Poly& f) {
    mpz_class num = 0, den = 1;
    for (const auto& [mono, c] : f.terms()) {
        mpz_class cn = c.get_num(), cd = c.get_den();
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), cn.get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), cd.get_mpz_t());
    }
    if (num == 0) return Rational(1);
    Rational c(num, den);
    c.canonicalize();
    return c;
}

Poly upoly_from_coeffs(const std::vector<Rational>& coeffs) {
    Poly r;
    for (unsigned k = 0; k < coeffs.size(); ++k)
        if (coeffs[k] != 0) r += Poly::term(Mono{k, 0}, coeffs[k]);
    return r;
}

void udivmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
    require_univariate_x(a, "udivmod");
    require_univariate_x(b, "udivmod");
    if (b.is_zero()) throw Error(Errc::DivisionByZero, "udivmod by zero");
    quot = Poly();
    rem = a;
    int db = b.deg_x();
    Rational lb = ucoeff(b, static_cast<unsigned>(db));
    while (!rem.is_zero() && rem.deg_x() >= db) {
        int dr = rem.deg_x();
        Rational c = ucoeff(rem, static_cast<unsigned>(dr)) / lb;
        Mono shift{static_cast<unsigned>(dr - db), 0};
        quot += Poly::term(shift, c);
        rem -= b.mul_term(shift, c);
    }
}

Poly ugcd(const Poly& a, const Poly& b) {
    require_univariate_x(a, "ugcd");
    require_univariate_x(b, "ugcd");
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly q, r;
        udivmod(r0, r1, q, r);
        r0 = r1;
        // primitive rescaling per step: remainders otherwise compound a
        // common rational factor and their bit size explodes
        r1 = r.is_zero() ? r : r.scaled(1 / rational_content(r));
    }
    return r0.monic();
}

// ------------------------------------------------- pseudo-division machinery

PseudoDivision pseudo_divide_linear(const Poly& h, const Poly& p, const Poly& q) {
    if (p.is_zero() || !p.is_univariate_x() || !q.is_univariate_x())
        throw Error(Errc::InvalidDivisor, "divisor requires p != 0 and p, q univariate in x");

    int n = h.deg_y();
    if (n <= 0) {
        // y-free input (or zero) is pure remainder.
        PseudoDivision out;
        out.remainder_gamma = h;
        return out;
    }

    Poly divisor = p * Poly::var_y() + q;
    for (unsigned s = 0; s <= static_cast<unsigned>(n); ++s) {
        Poly f = p.pow(s) * h;
        Poly h1;
        bool ok = true;
        while (ok && f.deg_y() > 0) {
            unsigned k = static_cast<unsigned>(f.deg_y());
            Poly ck = f.coeff_of_y(k);
            auto t = ck.try_exact_div(p);
            if (!t) {
                ok = false;
                break;
            }
            Poly step = t->mul_term(Mono{0, k - 1}, Rational(1));
            h1 += step;
            f -= step * divisor;
        }
        if (!ok) continue;
        PseudoDivision out;
        out.exponent_s = s;
        out.quotient_h1 = h1;
        out.remainder_gamma = f;
        if (p.pow(s) * h != h1 * divisor + f)
            throw Error(Errc::InternalDivisibilityViolation, "pseudo-division identity failed");
        return out;
    }
    // Classical pseudo-division succeeds at s = deg_y(h); unreachable.
    throw Error(Errc::InternalDivisibilityViolation, "pseudo-division did not terminate");
}

bool linear_divides(const Poly& h, const Poly& p, const Poly& q) {
    if (p.is_zero() || !p.is_univariate_x() || !q.is_univariate_x())
        throw Error(Errc::InvalidDivisor, "divisor requires p != 0 and p, q univariate in x");
    if (!ugcd(p, q).is_constant() || ugcd(p, q).is_zero())
        throw Error(Errc::NotCoprime, "gcd(p, q) != 1");
    if (h.is_zero()) return true;
    return pseudo_divide_linear(h, p, q).remainder_gamma.is_zero();
}

// ---------------------------------------------------------------- bivariate gcd

// Content of f with respect to y: monic gcd in K[x] of the y-coefficients.
static Poly content_y(const Poly& f) {
    Poly c;
    if (f.is_zero()) return c;
    for (int k = 0; k <= f.deg_y(); ++k) {
        Poly ck = f.coeff_of_y(static_cast<unsigned>(k));
        if (!ck.is_zero()) c = c.is_zero() ? ck.monic() : ugcd(c, ck);
        if (c.is_constant() && !c.is_zero()) return Poly::one();
    }
    return c;
}

// Pseudo-remainder of a by b in (K[x])[y]: lc_y(b)^(da-db+1) * a mod b.
static Poly prem_y(const Poly& a, const Poly& b) {
    int db = b.deg_y();
    Poly lcb = b.coeff_of_y(static_cast<unsigned>(db));
    Poly r = a;
    while (!r.is_zero() && r.deg_y() >= db) {
        unsigned dr = static_cast<unsigned>(r.deg_y());
        Poly lcr = r.coeff_of_y(dr);
        // lcb * r - lcr * y^(dr-db) * b cancels the leading y-term.
        r = lcb * r - (lcr * b).mul_term(Mono{0, dr - static_cast<unsigned>(db)}, Rational(1));
    }
    return r;
}

Poly bivariate_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw Error(Errc::BothZero, "gcd(0, 0)");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();

    if (a.deg_y() <= 0 && b.deg_y() <= 0) return ugcd(a, b);

    Poly ca = content_y(a), cb = content_y(b);
    Poly gc = ugcd(ca, cb);
    Poly pa = a.exact_div(ca), pb = b.exact_div(cb);

    // Primitive remainder sequence on the primitive parts.
    Poly r0 = pa, r1 = pb;
    if (r0.deg_y() < r1.deg_y()) std::swap(r0, r1);
    while (true) {
        if (r1.is_zero()) break;
        if (r1.deg_y() == 0) {
            // Coprime primitive parts: the gcd is carried entirely by contents.
            return gc.monic();
        }
        Poly r = prem_y(r0, r1);
        if (!r.is_zero()) r = r.exact_div(content_y(r));
        r0 = r1;
        r1 = r;
    }
    return (gc * r0.exact_div(content_y(r0))).monic();
}

ClearedEval eval_y_at_fraction_entry(const Poly& h, const Poly& p, const Poly& q) {
    if (p.is_zero() || !p.is_univariate_x() || !q.is_univariate_x())
        throw Error(Errc::InvalidDivisor, "evaluation requires p != 0 and p, q univariate in x");
    ClearedEval out;
    if (h.is_zero()) return out;
    int n = h.deg_y();
    // p^n * h(x, -q/p) = sum_k c_k * (-q)^k * p^(n-k), a polynomial in x.
    Poly t;
    Poly mq = -q;
    for (int k = 0; k <= n; ++k)
        t += h.coeff_of_y(static_cast<unsigned>(k)) * mq.pow(static_cast<unsigned>(k)) *
             p.pow(static_cast<unsigned>(n - k));
    if (t.is_zero()) return out;
    unsigned v = 0;
    if (!p.is_constant()) {
        while (v < static_cast<unsigned>(n)) {
            auto d = t.try_exact_div(p);
            if (!d) break;
            t = *d;
            ++v;
        }
    } else {
        t = t.scaled(rat_pow(Rational(1) / p.constant_value(), static_cast<unsigned>(n)));
        v = static_cast<unsigned>(n);
    }
    out.numerator = t;
    out.exponent_s = static_cast<unsigned>(n) - v;
    return out;
}

}  // namespace bps
