#ifndef BPS_PENCIL_HPP
#define BPS_PENCIL_HPP

#include <optional>
#include <vector>

#include "bps/polymat.hpp"
#include "bps/snfpipe.hpp"

namespace bps {

// A pair of square matrices over K[y], compared through the pencils x*I - A
// and x*I - B: the pencils are equivalent over K[x,y] exactly when A and B
// are similar over K[y].
struct PencilPair {
    PolyMatrix A{1, 1};
    PolyMatrix B{1, 1};
    int degree_bound = 0;
};

struct SimilarityResult {
    bool similar = false;
    int bound = 0;
    std::optional<PolyMatrix> Q;  // unimodular with A*Q = Q*B when similar
};

// Basis of the K-linear space of Q over K[y] with entry degrees <= bound
// solving A*Q = Q*B. Exposed so the equation system itself can be tested
// against worked examples.
std::vector<PolyMatrix> similarity_solution_basis(const PencilPair& pair);

// Bounded-degree similarity search: ansatz entries of degree <= degree_bound,
// exact nullspace of the linear system over K, then a scan of the solution
// space for a point with constant nonzero determinant. The scan tries single
// basis elements and grid combinations with coefficients in {-2,...,2}; a
// NotSimilarUpTo verdict is relative to the bound and to that search.
SimilarityResult pencil_similarity(const PencilPair& pair);

// The two-parameter counterexample family: M with all reduced minors unit yet
// outside the decidable class, its companion M1 with a hand-checked
// certificate, and the similarity obstruction between the two pencils.
struct CounterexampleReport {
    int s = 2;
    PolyMatrix M{1, 1};
    PolyMatrix M1{1, 1};
    bool minors_unit = false;
    Verdict verdict = Verdict::Incomplete;  // decide(M)
    bool certificate_ok = false;            // printed U, V against diag(1, det)
    SimilarityResult similarity;
};

CounterexampleReport counterexample_suite(int s, int degree_bound);

}  // namespace bps

#endif
