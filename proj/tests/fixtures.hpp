#ifndef BPS_TESTS_FIXTURES_HPP
#define BPS_TESTS_FIXTURES_HPP

#include <vector>

#include "bps/poly.hpp"
#include "bps/polymat.hpp"

// The worked 2x2 example that the CLI demo walks, plus the pieces of its
// published reduction, and the counterexample family whose determinant has
// y-degree >= 2.

inline bps::PolyMatrix mat2(const char* a, const char* b, const char* c, const char* d) {
    using bps::parse_poly;
    return bps::PolyMatrix::from_rows(
        {{parse_poly(a), parse_poly(b)}, {parse_poly(c), parse_poly(d)}});
}

inline bps::PolyMatrix demo_matrix() {
    return mat2("x^2*y^2 - x^2*y - x*y^2 + 2*x + y - 1",
                "x^3*y^2 - x^3*y - x^2*y^2 - x^2*y + x^2 + 2*x*y - 1",
                "x*y^2 - x*y - y^2 + y + 1", "x^2*y^2 - x^2*y - x*y^2 + y");
}

// demo_matrix = demo_G * demo_F, det(demo_G) = x - 1.
inline bps::PolyMatrix demo_G() { return mat2("1", "0", "1", "x - 1"); }

inline bps::PolyMatrix demo_F() {
    bps::PolyMatrix M = demo_matrix();
    bps::PolyMatrix F(2, 2);
    F.at(0, 0) = M.at(0, 0);
    F.at(0, 1) = M.at(0, 1);
    F.at(1, 0) = bps::parse_poly("-(x*y^2 - x*y - y^2 + 2)");
    F.at(1, 1) = -bps::parse_poly("x*y - y - 1") * bps::parse_poly("x*y - x - 1");
    return F;
}

// Clearing denominators of demo_F at y = -q/p with p = x, q = -(x+1).
inline bps::PolyMatrix demo_F2() {
    return mat2("2*x^3 - x^2", "0", "-2*x^2 + x + 1", "0");
}

inline bps::PolyMatrix demo_P2() {
    return mat2("2*x - 1", "2*x^2 - x + 1", "2*x^2 - x - 1", "2*x^3 - x^2");
}

inline bps::PolyMatrix demo_P3() {
    return mat2("-4*x^2 + 4*x + 1", "-4*x^2 - 1", "2*x^3 - 3*x^2 + 1", "2*x^3 - x^2");
}

// The pinch-stage input: column one univariate, column two a (x*y - x - 1) multiple.
inline bps::PolyMatrix demo_B() {
    bps::PolyMatrix B(2, 2);
    B.at(0, 0) = bps::parse_poly("2*x^3 - x^2");
    B.at(0, 1) = -bps::parse_poly("2*x^2 - x + 1") * bps::parse_poly("x*y - x - 1");
    B.at(1, 0) = bps::parse_poly("-2*x^3 + 3*x^2 - 1");
    B.at(1, 1) = bps::parse_poly("2*x^2 - 3*x + 1") * bps::parse_poly("x*y - x - 1");
    return B;
}

// Published certificate for demo_matrix: demo_U * M * demo_V = demo_S.
inline bps::PolyMatrix demo_U() {
    return mat2("4*x + 2", "-4*x^2 - 1", "-2*x^2 + 1", "2*x^3 - x^2");
}

inline bps::PolyMatrix demo_V() {
    bps::PolyMatrix V(2, 2);
    V.at(0, 0) = bps::parse_poly("-x^2*y + 2*x^2 + x*y - 1");
    V.at(0, 1) = -bps::parse_poly("x - 1") * bps::parse_poly("2*x*y - 4*x - y - 2") *
                 bps::parse_poly("x*y - x - 1");
    V.at(1, 0) = bps::parse_poly("x*y - 2*x - y + 1");
    V.at(1, 1) = bps::parse_poly(
        "2*x^2*y^2 - 6*x^2*y + 4*x^2 - 3*x*y^2 + 5*x*y + y^2 + y - 3");
    return V;
}

inline bps::PolyMatrix demo_S() {
    bps::PolyMatrix S(2, 2);
    S.at(0, 0) = bps::Poly::one();
    S.at(1, 1) = bps::parse_poly("x - 1") * bps::parse_poly("x*y - x - 1");
    return S;
}

// Counterexample family, s >= 2: determinant has y-degree s, every reduced
// minor ideal is unit, yet no equivalence to the diagonal target exists.
inline bps::Poly family_corner(int s) {
    using bps::Poly;
    Poly ys2 = Poly::var_y().pow(static_cast<unsigned>(s - 2));
    return Poly::one() + Poly::var_x() - ys2;
}

inline bps::PolyMatrix family_matrix(int s) {
    bps::PolyMatrix M(2, 2);
    M.at(0, 0) = bps::parse_poly("-1 + x - y + y^2");
    M.at(0, 1) = bps::Poly::var_y();
    M.at(1, 1) = family_corner(s);
    return M;
}

// Companion with the (1,2) entry replaced by 1; this one IS reducible, with
// the published transform pair below.
inline bps::PolyMatrix family_companion(int s) {
    bps::PolyMatrix M = family_matrix(s);
    M.at(0, 1) = bps::Poly::one();
    return M;
}

inline bps::PolyMatrix family_companion_U(int s) {
    bps::PolyMatrix U = bps::PolyMatrix::identity(2);
    U.at(1, 0) = -family_corner(s);
    return U;
}

inline bps::PolyMatrix family_companion_V(int) {
    return mat2("0", "-1", "1", "-1 + x - y + y^2");
}

#endif
