#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bps/errors.hpp"
#include "bps/pencil.hpp"
#include "fixtures.hpp"
#include "testutil.hpp"

using namespace bps;

namespace {

Poly rand_ypoly(int max_deg) {
    std::vector<Poly> c;
    for (int k = 0; k <= max_deg; ++k) c.push_back(Poly::constant(rand_rat()));
    return Poly::from_y_coeffs(c);
}

PolyMatrix rand_ymatrix(std::size_t n, int max_deg) {
    PolyMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M.at(i, j) = rand_ypoly(max_deg);
    return M;
}

}  // namespace

TEST_CASE("input validation") {
    PencilPair pair;
    pair.A = PolyMatrix::identity(2);
    pair.B = PolyMatrix::identity(3);
    CHECK_THROWS_AS(pencil_similarity(pair), Error);

    pair.B = PolyMatrix::identity(2);
    pair.degree_bound = -1;
    CHECK_THROWS_AS(pencil_similarity(pair), Error);

    pair.degree_bound = 2;
    pair.A.at(0, 1) = parse_poly("x");  // x is the pencil variable, not a coefficient
    CHECK_THROWS_AS(pencil_similarity(pair), Error);

    CHECK_THROWS_AS(counterexample_suite(1, 2), Error);
    CHECK_THROWS_AS(counterexample_suite(3, -1), Error);
}

TEST_CASE("identical pencils are similar via the identity") {
    PencilPair pair;
    pair.A = rand_ymatrix(3, 2);
    pair.B = pair.A;
    pair.degree_bound = 0;
    SimilarityResult res = pencil_similarity(pair);
    CHECK(res.similar);
    REQUIRE(res.Q.has_value());
    CHECK(*res.Q == PolyMatrix::identity(3));
}

TEST_CASE("planted conjugation is recovered at a sufficient bound") {
    Poly y = Poly::var_y(), one = Poly::one(), zero = Poly::zero();
    PolyMatrix B = PolyMatrix::from_rows({{one + y, y}, {y * y, one - y}});
    PolyMatrix T = PolyMatrix::from_rows({{one, y}, {zero, one}});
    PolyMatrix Tinv = PolyMatrix::from_rows({{one, -y}, {zero, one}});

    PencilPair pair{T * B * Tinv, B, 1};
    SimilarityResult res = pencil_similarity(pair);
    CHECK(res.similar);
    REQUIRE(res.Q.has_value());
    CHECK(pair.A * *res.Q == *res.Q * pair.B);
    Poly det = determinant(*res.Q);
    CHECK(det.is_constant());
    CHECK(!det.is_zero());

    // the conjugator has a degree-1 entry, so a constant ansatz cannot find it
    pair.degree_bound = 0;
    CHECK_FALSE(pencil_similarity(pair).similar);
}

TEST_CASE("solution basis solves the intertwining equation") {
    for (int round = 0; round < 10; ++round) {
        PencilPair pair;
        pair.A = rand_ymatrix(2, 2);
        pair.B = rand_ymatrix(2, 2);
        pair.degree_bound = 2;
        for (const PolyMatrix& Q : similarity_solution_basis(pair)) {
            CHECK(pair.A * Q == Q * pair.B);
            CHECK_FALSE(Q.is_zero());
        }
    }
}

TEST_CASE("solution basis of the counterexample pencils satisfies the forced relations") {
    // A*Q = Q*B for this family collapses to q21 = 0 together with
    // q11 - y*q22 = (-2 - y + y^2 + y^(s-2)) * q12, which is what makes a
    // constant-determinant solution impossible at any ansatz degree.
    Poly y = Poly::var_y();
    for (int s : {2, 3, 4}) {
        Poly rel = parse_poly("-2 - y + y^2") + y.pow(static_cast<unsigned>(s) - 2);
        CounterexampleReport rep = counterexample_suite(s, 6);
        PencilPair pair;
        Poly x = Poly::var_x();
        pair.A = PolyMatrix::diagonal({x, x}, 2, 2) - rep.M;
        pair.B = PolyMatrix::diagonal({x, x}, 2, 2) - rep.M1;
        pair.degree_bound = 6;
        std::vector<PolyMatrix> basis = similarity_solution_basis(pair);
        CHECK(!basis.empty());
        for (const PolyMatrix& Q : basis) {
            CHECK(Q.at(1, 0).is_zero());
            CHECK(Q.at(0, 0) - y * Q.at(1, 1) == rel * Q.at(0, 1));
        }
    }
}

TEST_CASE("counterexample suite: unit minors, outside class, certified target, no similarity") {
    for (int s : {2, 3, 4}) {
        CAPTURE(s);
        CounterexampleReport rep = counterexample_suite(s, 6);
        CHECK(rep.s == s);
        CHECK(rep.minors_unit);
        CHECK(rep.verdict == Verdict::OutsideClass);
        CHECK(rep.certificate_ok);
        CHECK_FALSE(rep.similarity.similar);
        CHECK(rep.similarity.bound == 6);

        // the suite builds the same pair the fixtures pin
        CHECK(rep.M == family_matrix(s));
        CHECK(rep.M1 == family_companion(s));
    }
}

TEST_CASE("no similarity at any bound up to six") {
    CounterexampleReport rep = counterexample_suite(4, 0);
    PencilPair pair;
    Poly x = Poly::var_x();
    pair.A = PolyMatrix::diagonal({x, x}, 2, 2) - rep.M;
    pair.B = PolyMatrix::diagonal({x, x}, 2, 2) - rep.M1;
    for (int bound = 0; bound <= 6; ++bound) {
        CAPTURE(bound);
        pair.degree_bound = bound;
        SimilarityResult res = pencil_similarity(pair);
        CHECK_FALSE(res.similar);
        CHECK(res.bound == bound);
    }
}
