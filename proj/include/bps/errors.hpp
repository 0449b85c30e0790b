#ifndef BPS_ERRORS_HPP
#define BPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bps {

enum class Errc {
    SyntaxError,
    InexactDivision,
    DivisionByZero,
    InvalidDivisor,
    NotCoprime,
    BothZero,
    NotUnivariate,
    ZeroInput,
    PreconditionViolated,
    NotUnitIdeal,
    NotSquare,
    OrderOutOfRange,
    InternalDivisibilityViolation,
    ZeroInverse,
    KernelEmpty,
    NotPrimitive,
    NotDivisible,
    DimensionMismatch,
    BadInput,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

// Parse failures carry the byte offset into the input text.
class SyntaxError : public Error {
  public:
    SyntaxError(const std::string& what, std::size_t position)
        : Error(Errc::SyntaxError, what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

}  // namespace bps

#endif
