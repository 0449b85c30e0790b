#ifndef BPS_SNFPIPE_HPP
#define BPS_SNFPIPE_HPP

#include <optional>
#include <string>
#include <vector>

#include "bps/groebner.hpp"
#include "bps/polymat.hpp"

namespace bps {

// det = h*(p*y + q) with h = gcd(f, g) monic and gcd(p, q) = 1.
struct LinearPart {
    Poly f, g, h, p, q;

    static LinearPart of(const Poly& f, const Poly& g);
    Poly linear_factor() const;  // p*y + q
};

struct TraceStep {
    std::string stage;
    std::string detail;
};

struct EquivalenceCertificate {
    PolyMatrix U{1, 1}, S{1, 1}, V{1, 1};
    std::vector<TraceStep> trace;
};

enum class Verdict { Equivalent, NotEquivalent, OutsideClass, Incomplete };
const char* verdict_name(Verdict v);

struct OrderVerdict {
    unsigned order = 0;
    Poly d;                 // determinantal divisor of this order
    GroebnerBasis reduced;  // reduced basis of the order's J ideal
    bool unit = false;
};

struct DecisionReport {
    bool in_class = false;
    unsigned rank = 0;
    std::vector<OrderVerdict> orders;  // orders 1..rank
    Verdict verdict = Verdict::OutsideClass;
};

struct PipelineConfig {
    unsigned step_budget = 200;  // descent steps per univariate reduction
    int degree_budget = 64;      // max total degree of any certificate entry
};

struct TransformResult {
    Verdict verdict = Verdict::Incomplete;
    std::optional<EquivalenceCertificate> certificate;  // set iff Equivalent
    std::optional<EquivalenceCertificate> partial;      // best effort on Incomplete
    DecisionReport report;
    std::string note;
};

// M = V * diag(1,...,1, p*y+q) * G with V invertible over K[x].
struct LinearExtraction {
    PolyMatrix V{1, 1}, D{1, 1}, G{1, 1};
};
LinearExtraction extract_linear_y_factor(const PolyMatrix& M, const LinearPart& lp);

// U*G = diag(p, 1,...,1) * G1 with det(U) = 1.
struct XFactorStep {
    PolyMatrix U{1, 1}, G1{1, 1};
};
XFactorStep extract_x_factor(const PolyMatrix& G, const Poly& p);

// M = G*F with det(G) = h.
struct PrimitiveSplit {
    PolyMatrix G{1, 1}, F{1, 1};
};
PrimitiveSplit primitive_factorization(const PolyMatrix& M, const Poly& h);

// P*G*Q = C; complete means every entry of C lies in K[x].
struct UnivariateReduction {
    bool complete = false;
    PolyMatrix P{1, 1}, C{1, 1}, Q{1, 1};
    unsigned steps = 0;
};
UnivariateReduction reduce_univariate_det(const PolyMatrix& G,
                                          const PipelineConfig& cfg = {});

// U*B*V = diag(1, M1) for B = (B1 | (p*y+q)*b), B1 univariate.
struct PinchResult {
    PolyMatrix U{1, 1}, V{1, 1}, M1{1, 1};
};
PinchResult pinch_stage(const PolyMatrix& B, const LinearPart& lp);

TransformResult transform(const PolyMatrix& M, const PipelineConfig& cfg = {});
DecisionReport decide(const PolyMatrix& M);
bool verify_certificate(const PolyMatrix& M, const EquivalenceCertificate& cert);

std::string certificate_to_json_text(const EquivalenceCertificate& cert, int indent = -1);
EquivalenceCertificate certificate_from_json_text(const std::string& text);
std::string report_to_json_text(const DecisionReport& report, const PolyMatrix& M,
                                int indent = -1);

}  // namespace bps

#endif
