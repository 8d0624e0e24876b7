#pragma once

#include "dgap/precision.hpp"

#include <optional>
#include <vector>

namespace dgap {

// (a)_n = a(a+1)...(a+n-1)
Real pochhammer(const Real& a, int n);

// (a;q)_n = prod_{j<n} (1 - a q^j)
Real q_pochhammer(const Real& a, const Real& q, int n);

// (a;q)_inf, truncated once the remaining factors cannot move the product by more
// than tol (relative).  If error_bound is given it receives that relative bound.
Real q_pochhammer_inf(const Real& a, const Real& q, const Real& tol, Real* error_bound = nullptr);

struct HypSeriesSpec {
  std::vector<Real> upper;
  std::vector<Real> lower;
  Real argument;
  std::optional<Real> q;  // present: basic series r phi s
};

// Terminating sums are exact; convergent ones stop once |term| < tol*|sum| three times running.
Real hyp_sum(const HypSeriesSpec& spec, const Real& tol);
Real hyp_sum(const HypSeriesSpec& spec);

// Shorthands used for initial conditions.
Real hyp1f1(const Real& a, const Real& b, const Real& z);
Real hyp2f1(const Real& a, const Real& b, const Real& c, const Real& z);
Real qhyp2phi0(const Real& a, const Real& b, const Real& z, const Real& q);

}  // namespace dgap
