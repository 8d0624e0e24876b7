#pragma once

#include "dgap/linalg.hpp"
#include "dgap/precision.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dgap {

enum class FamilyId {
  Hahn,
  Meixner,
  Krawtchouk,
  Charlier,
  QHahn,
  LittleQJacobi,
  QMeixner,
  QuantumQKrawtchouk,
  QKrawtchouk,
  AffineQKrawtchouk,
  LittleQLaguerre,
  AlternativeQCharlier,
  QCharlier,
  AlSalamCarlitzII,
};

enum class LatticeKind {
  Linear,                // pi_x = x
  QGeometricDecreasing,  // pi_x = q^x
  QGeometricIncreasing,  // pi_x = q^-x
};

// Whether D_s is Prob{max < pi_s} (increasing lattice) or Prob{min > pi_s}.
enum class Ordering { IncreasingPi, DecreasingPi };

struct LatticeSpec {
  LatticeKind kind = LatticeKind::Linear;
  Real q{1};
  std::optional<int> N;  // largest index; nullopt for an infinite lattice

  Real point(int x) const;
  // sigma(z1) - sigma(z2) = eta (z1 - z2)
  Real eta() const;
  Real sigma(const Real& z) const;
};

using ParamMap = std::map<std::string, Real>;

struct FamilySpec {
  FamilyId id{};
  std::string name;
  ParamMap params;
  LatticeSpec lattice;
  Poly d1, d2;
  bool supportsLinearRecurrence = false;
  Ordering ordering = Ordering::IncreasingPi;
  // lim |w(x+1)/w(x)|, used to bound truncated tails.
  Real weight_ratio_limit{0};

  const Real& param(const std::string& key) const;
  Real pi(int x) const { return lattice.point(x); }
  Real eta() const { return lattice.eta(); }
  bool finite() const { return lattice.N.has_value(); }
  int N() const { return lattice.N.value_or(-1); }
};

struct FamilyInfo {
  std::string name;
  std::vector<std::string> params;
  std::string lattice;
  bool supportsLinearRecurrence;
};

const std::vector<FamilyInfo>& family_catalog();

FamilySpec make_family(const std::string& name, const ParamMap& params);

Real weight(const FamilySpec& f, int x);
// w(0..count-1), built incrementally.
std::vector<Real> weight_table(const FamilySpec& f, int count);

bool check_ratio_identity(const FamilySpec& f, int x_max, const Real& tol);

// Largest index kept when summing over the lattice: N for finite lattices, otherwise the
// first x beyond which sum |w(x)| (1+|pi_x|)^(2k) < tail_tol.
int truncation_point(const FamilySpec& f, int k, const Real& tail_tol);

}  // namespace dgap
