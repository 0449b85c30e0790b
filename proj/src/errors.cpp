#include "bps/errors.hpp"

namespace bps {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::InexactDivision: return "InexactDivision";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::InvalidDivisor: return "InvalidDivisor";
        case Errc::NotCoprime: return "NotCoprime";
        case Errc::BothZero: return "BothZero";
        case Errc::NotUnivariate: return "NotUnivariate";
        case Errc::ZeroInput: return "ZeroInput";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::NotUnitIdeal: return "NotUnitIdeal";
        case Errc::NotSquare: return "NotSquare";
        case Errc::OrderOutOfRange: return "OrderOutOfRange";
        case Errc::InternalDivisibilityViolation: return "InternalDivisibilityViolation";
        case Errc::ZeroInverse: return "ZeroInverse";
        case Errc::KernelEmpty: return "KernelEmpty";
        case Errc::NotPrimitive: return "NotPrimitive";
        case Errc::NotDivisible: return "NotDivisible";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::BadInput: return "BadInput";
    }
    return "UnknownError";
}

}  // namespace bps
