#ifndef BPS_GROEBNER_HPP
#define BPS_GROEBNER_HPP

#include <vector>

#include "bps/poly.hpp"

namespace bps {

struct IdealPresentation {
    std::vector<Poly> generators;

    // Canonical form: zero generators dropped (kept only if all are zero),
    // remainder sorted by the polynomial total order.
    static IdealPresentation of(std::vector<Poly> gens);
};

struct GroebnerBasis {
    // Auto-reduced, monic, sorted by leading monomial; unique per ideal, so
    // equality of GroebnerBasis values decides ideal equality.
    std::vector<Poly> elements;

    friend bool operator==(const GroebnerBasis&, const GroebnerBasis&) = default;
};

struct UnitCertificate {
    std::vector<Poly> cofactors;  // aligned with the presentation's generators
};

// Full normal form of f modulo a (not necessarily Groebner) family.
Poly normal_form(const Poly& f, const std::vector<Poly>& family);

GroebnerBasis reduced_basis(const IdealPresentation& I);
bool is_unit_ideal(const IdealPresentation& I);
UnitCertificate unit_cofactors(const IdealPresentation& I);
bool ideal_equal(const IdealPresentation& A, const IdealPresentation& B);

}  // namespace bps

#endif
