#ifndef BPS_RESIDUE_HPP
#define BPS_RESIDUE_HPP

#include <cstddef>
#include <vector>

#include "bps/poly.hpp"
#include "bps/polymat.hpp"

namespace bps {

// Arithmetic over L[y], L = K[x]/<p> with p monic irreducible. Elements of
// L[y] are carried as bivariate Polys in canonical form: every K[x]
// coefficient reduced to x-degree < deg(p).

struct ResidueCtx {
    Poly modulus;  // monic, irreducible, univariate in x, degree >= 1
    explicit ResidueCtx(Poly p);
};

// Canonical representative: each y-coefficient reduced mod the modulus.
Poly r_reduce(const Poly& f, const ResidueCtx& ctx);

// Inverse of a nonzero element of L.
Poly r_inverse(const Poly& a, const ResidueCtx& ctx);

// Division with remainder in L[y].
void r_divmod_y(const Poly& f, const Poly& g, const ResidueCtx& ctx, Poly& quot, Poly& rem);

// One transvection on a row vector: entry dst += c * entry src.
struct Transvection {
    std::size_t dst, src;
    Poly c;  // canonical L[y] representative
};
struct TransvectionList {
    std::vector<Transvection> ops;
};

// Primitive left-kernel row of G mod p: a != 0, a * (G mod p) = 0, entries
// coprime in L[y], first nonzero entry with leading y-coefficient 1.
std::vector<Poly> left_kernel_row(const PolyMatrix& G, const ResidueCtx& ctx);

// Transvections carrying a primitive row to (1, 0, ..., 0); any needed unit
// correction is expanded into transvections so every op has determinant 1.
TransvectionList row_to_unit_vector(const std::vector<Poly>& a, const ResidueCtx& ctx);

// Lift of the inverse transvection product to K[x,y]: U with det(U) = 1
// whose first row is congruent mod p to the row the list was built for.
PolyMatrix lift_left_factor(const TransvectionList& T, const ResidueCtx& ctx, std::size_t l);

}  // namespace bps

#endif
