#pragma once

#include <stdexcept>
#include <string>

namespace dgap {

enum class ErrorKind {
  InvalidParameter,
  IndexOutOfRange,
  SingularMatrix,
  InvalidQ,
  Divergent,
  PoleInLowerParameter,
  DegenerateWeight,
  TooLarge,
  PoleHit,
  ResidueViolation,
  UnsupportedFamily,
  EpsilonSingular,
  DegenerateParameterization,
  DPSingular,
  RootNotFound,
  DegenerateKappa,
};

const char* kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int step = -1)
      : std::runtime_error(what), kind_(kind), step_(step) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Lattice index at which a stepping routine failed, or -1.
  int step() const noexcept { return step_; }

 private:
  ErrorKind kind_;
  int step_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what, int step = -1);

}  // namespace dgap
