#ifndef BPS_UNIFACTOR_HPP
#define BPS_UNIFACTOR_HPP

#include <utility>
#include <vector>

#include "bps/poly.hpp"

namespace bps {

struct ExtGcd {
    Poly g;      // monic gcd
    Poly alpha;  // alpha*a + beta*b = g, deg(alpha) < deg(b) - deg(g) when b != 0
    Poly beta;
};

ExtGcd ext_gcd_x(const Poly& a, const Poly& b);

struct Factorization {
    Rational unit;
    std::vector<std::pair<Poly, unsigned>> factors;  // (monic irreducible, multiplicity)

    Poly expand() const;
};

// Squarefree part decomposition (multiplicity-indexed, Yun's method);
// input must be univariate in x and nonzero.
std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& f);

// Irreducible factorization over Q; round-trip asserted before returning.
Factorization factor_univariate(const Poly& f);

bool is_irreducible_x(const Poly& f);

// Least constant h in 0, 1, ..., deg(f)+1 with gcd(f, v1 + h*v2) = 1.
Poly coprime_shift(const Poly& f, const Poly& v1, const Poly& v2);

// Alternative construction via irreducible factorization and CRT with
// residues in {0,1}; kept for cross-checking coprime_shift in tests.
Poly coprime_shift_crt(const Poly& f, const Poly& v1, const Poly& v2);

}  // namespace bps

#endif
