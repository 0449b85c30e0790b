#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bps/unifactor.hpp"
#include "testutil.hpp"

using namespace bps;

static Poly P(const std::string& s) { return parse_poly(s); }

TEST_CASE("extended gcd over K[x]") {
    ExtGcd e = ext_gcd_x(P("x"), P("x + 1"));
    CHECK(e.g == Poly::one());
    CHECK(e.alpha == P("-1"));
    CHECK(e.beta == Poly::one());

    e = ext_gcd_x(P("x - 1"), Poly::zero());
    CHECK(e.g == P("x - 1"));
    CHECK(e.alpha == Poly::one());
    CHECK(e.beta.is_zero());

    e = ext_gcd_x(P("x^2 - x"), P("x"));
    CHECK(e.g == P("x"));
    CHECK(e.alpha.is_zero());
    CHECK(e.beta == Poly::one());

    CHECK_THROWS_AS(ext_gcd_x(Poly::zero(), Poly::zero()), Error);
    CHECK_THROWS_AS(ext_gcd_x(P("y"), P("x")), Error);
}

TEST_CASE("extended gcd: identity and degree bound on random pairs") {
    for (int i = 0; i < 300; ++i) {
        Poly a = rand_upoly(5), b = rand_upoly(5);
        if (a.is_zero() && b.is_zero()) continue;
        ExtGcd e = ext_gcd_x(a, b);
        CHECK(e.alpha * a + e.beta * b == e.g);
        if (!e.g.is_zero()) CHECK(e.g.leading_coeff() == 1);
        if (!b.is_zero()) CHECK(e.alpha.deg_x() < b.deg_x() - e.g.deg_x());
        CHECK(e.g.divides(a));
        CHECK(e.g.divides(b));
    }
}

TEST_CASE("squarefree decomposition") {
    auto parts = squarefree_decomposition(P("(x - 1) * (x - 1)"));
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].first == P("x - 1"));
    CHECK(parts[0].second == 2);

    parts = squarefree_decomposition(P("x^2 - x"));
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].first == P("x^2 - x"));
    CHECK(parts[0].second == 1);

    parts = squarefree_decomposition(P("x * (x - 1)^2 * (x + 2)^3"));
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == std::pair<Poly, unsigned>(P("x"), 1));
    CHECK(parts[1] == std::pair<Poly, unsigned>(P("x - 1"), 2));
    CHECK(parts[2] == std::pair<Poly, unsigned>(P("x + 2"), 3));

    CHECK(squarefree_decomposition(P("7")).empty());
    CHECK_THROWS_AS(squarefree_decomposition(Poly::zero()), Error);
}

TEST_CASE("factorization: pinned values") {
    Factorization f = factor_univariate(P("x^2 - x"));
    CHECK(f.unit == 1);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == P("x"));
    CHECK(f.factors[1].first == P("x - 1"));

    f = factor_univariate(P("2"));
    CHECK(f.unit == 2);
    CHECK(f.factors.empty());

    f = factor_univariate(P("(x - 1)^2"));
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == std::pair<Poly, unsigned>(P("x - 1"), 2));

    f = factor_univariate(P("2*x^2 - 2"));
    CHECK(f.unit == 2);
    REQUIRE(f.factors.size() == 2);

    f = factor_univariate(P("x^2 + 1"));
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].first == P("x^2 + 1"));

    f = factor_univariate(P("x^4 + x^2 + 1"));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == P("x^2 - x + 1"));
    CHECK(f.factors[1].first == P("x^2 + x + 1"));

    // Splits into conjugate quadratics modulo every prime; recombination has
    // to reject all proper subsets before concluding irreducibility.
    f = factor_univariate(P("x^4 - 10*x^2 + 1"));
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].first == P("x^4 - 10*x^2 + 1"));

    f = factor_univariate(P("1/4*x^2 - 1/4"));
    CHECK(f.unit == rational_from(1, 4));
    REQUIRE(f.factors.size() == 2);

    f = factor_univariate(P("x^6 - 1"));
    CHECK(f.factors.size() == 4);

    CHECK_THROWS_AS(factor_univariate(Poly::zero()), Error);
    CHECK_THROWS_AS(factor_univariate(P("y + x")), Error);
}

TEST_CASE("factorization: recovered multiset matches planted factors") {
    std::vector<Poly> pool = {P("x"),         P("x - 1"),     P("x + 1"),    P("x + 2"),
                              P("x^2 + 1"),   P("x^2 - 2"),   P("2*x - 1"),  P("x^2 + x + 1")};
    for (int iter = 0; iter < 60; ++iter) {
        std::map<std::string, unsigned> planted;
        Poly f = Poly::constant(rand_rat_nonzero());
        for (std::size_t j = 0; j < pool.size(); ++j) {
            if (rand_int(0, 2) != 0) continue;
            unsigned m = static_cast<unsigned>(rand_int(1, 2));
            f *= pool[j].pow(m);
            planted[pool[j].monic().to_string()] += m;
        }
        Factorization fac = factor_univariate(f);
        CHECK(fac.expand() == f);
        std::map<std::string, unsigned> got;
        for (const auto& [irr, m] : fac.factors) got[irr.to_string()] += m;
        CHECK(got == planted);
    }
}

TEST_CASE("irreducibility test") {
    CHECK(is_irreducible_x(P("x^2 + 1")));
    CHECK(is_irreducible_x(P("x")));
    CHECK(is_irreducible_x(P("3*x - 5")));
    CHECK_FALSE(is_irreducible_x(P("x^2 - 1")));
    CHECK_FALSE(is_irreducible_x(P("x^2 - 2*x + 1")));
    CHECK_FALSE(is_irreducible_x(P("5")));
}

TEST_CASE("coprime shift: pinned searches") {
    CHECK(coprime_shift(P("x^2 - x"), P("x"), P("x - 1")) == Poly::one());
    CHECK(coprime_shift(Poly::one(), P("x^3"), P("x + 1")).is_zero());
    CHECK(coprime_shift(P("x"), Poly::zero(), Poly::one()) == Poly::one());
    CHECK_THROWS_AS(coprime_shift(P("x"), P("x"), P("x^2")), Error);
    CHECK_THROWS_AS(coprime_shift(Poly::zero(), P("x"), P("x + 1")), Error);
}

TEST_CASE("coprime shift: search and CRT paths both verify") {
    int done = 0;
    while (done < 200) {
        Poly f = rand_upoly_nonzero(4);
        Poly v1 = rand_upoly(3);
        Poly v2 = rand_upoly(3);
        if (v1.is_zero() && v2.is_zero()) continue;
        if (ugcd(ugcd(f, v1), v2) != Poly::one()) continue;
        ++done;

        Poly h = coprime_shift(f, v1, v2);
        CHECK(h.is_constant());
        CHECK(ugcd(f, v1 + h * v2) == Poly::one());
        if (!h.is_zero()) CHECK(h.constant_value() <= f.deg_x() + 1);

        Poly hc = coprime_shift_crt(f, v1, v2);
        CHECK(ugcd(f, v1 + hc * v2) == Poly::one());
    }
}
