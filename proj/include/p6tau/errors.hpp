#pragma once

#include <stdexcept>
#include <string>

namespace p6tau {

// Base of every error raised by the library. exit_code() is the CLI contract:
// 2 bad input, 3 resonance, 4 internal mismatch.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 2; }
};

#define P6TAU_DECLARE_ERROR(Name, Base)   \
  class Name : public Base {              \
   public:                                \
    using Base::Base;                     \
  };

P6TAU_DECLARE_ERROR(InvalidInput, Error)
P6TAU_DECLARE_ERROR(OffsetMismatch, Error)
P6TAU_DECLARE_ERROR(SigmaMismatch, Error)
P6TAU_DECLARE_ERROR(TruncationExhausted, Error)
P6TAU_DECLARE_ERROR(BranchCut, Error)
P6TAU_DECLARE_ERROR(NonFinite, Error)
P6TAU_DECLARE_ERROR(SeedZero, Error)
P6TAU_DECLARE_ERROR(NonRepresentable, Error)
P6TAU_DECLARE_ERROR(ZeroPolynomial, Error)
P6TAU_DECLARE_ERROR(DegenerateTopCoefficient, Error)
P6TAU_DECLARE_ERROR(InvariantViolated, Error)
P6TAU_DECLARE_ERROR(PoleAtQ, Error)
P6TAU_DECLARE_ERROR(PoleAtT, Error)
P6TAU_DECLARE_ERROR(DegenerateTheta, Error)
P6TAU_DECLARE_ERROR(DenominatorZero, Error)
P6TAU_DECLARE_ERROR(NotIntegrable, Error)
P6TAU_DECLARE_ERROR(StepUnderflow, Error)
P6TAU_DECLARE_ERROR(MovablePole, Error)

#undef P6TAU_DECLARE_ERROR

class Resonance : public Error {
 public:
  Resonance(int m2, int n2, const std::string& what)
      : Error(what), m2_(m2), n2_(n2) {}
  int m2() const noexcept { return m2_; }
  int n2() const noexcept { return n2_; }
  int exit_code() const noexcept override { return 3; }

 private:
  int m2_;
  int n2_;
};

class InternalMismatch : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

class InconsistentAnsatz : public InternalMismatch {
 public:
  using InternalMismatch::InternalMismatch;
};

}  // namespace p6tau
