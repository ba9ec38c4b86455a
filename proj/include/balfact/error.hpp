#ifndef BALFACT_ERROR_HPP
#define BALFACT_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace balfact {

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
   public:
    DivisionByZero() : Error("division by zero") {}
};

class ContextMismatch : public Error {
   public:
    ContextMismatch() : Error("operands belong to different rings") {}
};

class NotPrimePower : public Error {
   public:
    explicit NotPrimePower(const std::string& what) : Error(what + " is not a prime power") {}
};

class ParseError : public Error {
   public:
    using Error::Error;
};

class ZeroPolynomial : public Error {
   public:
    ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};

class NotInvertible : public Error {
   public:
    NotInvertible() : Error("element is not invertible") {}
};

class PreconditionViolated : public Error {
   public:
    using Error::Error;
};

class ZeroTailFactor : public Error {
   public:
    ZeroTailFactor() : Error("tail factors must be nonzero") {}
};

class ZeroInput : public Error {
   public:
    ZeroInput() : Error("zero has no certificate on this path") {}
};

class IllConditioned : public Error {
   public:
    using Error::Error;
};

/// A floating-point result failed its residual check.
class NumericResidual : public Error {
   public:
    using Error::Error;
};

/// No non-power balanced decomposition of the residue exists in the residue field.
class ResidueFieldObstruction : public Error {
   public:
    using Error::Error;
};

/// Case II of the local construction needs a residue field with more than two elements.
class TwoElementResidueField : public Error {
   public:
    using Error::Error;
};

/// Raised when an exhaustive computation would exceed its work budget.
class BudgetExceeded : public Error {
   public:
    BudgetExceeded(double estimate, std::uint64_t budget)
        : Error("work estimate " + std::to_string(estimate) + " exceeds budget " + std::to_string(budget)),
          estimate_(estimate),
          budget_(budget) {}

    double estimate() const noexcept { return estimate_; }
    std::uint64_t budget() const noexcept { return budget_; }

   private:
    double estimate_;
    std::uint64_t budget_;
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 28;

}  // namespace balfact

#endif
