#pragma once

#include "dgap/family.hpp"
#include "dgap/linalg.hpp"

#include <string>
#include <vector>

namespace dgap {

// d1(z) = l1 z + m1, d2(z) = l2 z + m2
struct LinearCoeffs {
  Real l1, m1, l2, m2;
};
LinearCoeffs linear_coeffs(const FamilySpec& f);

struct LaxState {
  int s = 0;
  int k = 0;
  Real p, q, r;              // A_s = [[p, q], [r, -p]]
  Real c11, c12, c21, c22;   // C_s
  Real kappa1, kappa2;       // Lambda = diag(kappa1, kappa2)
  Real h;                    // m_s^{11}(pi_s)
  Real Dprev, Dcur;          // D_s, D_{s+1}

  Mat2 A() const { return {p, q, r, -p}; }
  Mat2 C() const { return {c11, c12, c21, c22}; }
  Mat2 Lambda() const { return Mat2::diag(kappa1, kappa2); }
  // M_s(zeta) = Lambda zeta + C_s
  Mat2 M(const Real& zeta) const { return Lambda() * zeta + C(); }
};

LaxState init_state(const FamilySpec& f, int k);
LaxState init_state(const FamilySpec& f, int k, const Real& tail_tol);

Real epsilon(const LaxState& st, const FamilySpec& f);
// det(pi_{s+1} Lambda + C_s + eta^-1 A_s Lambda)
Real epsilon_det(const LaxState& st, const FamilySpec& f);

Real u_value(const LaxState& st);

// D_{s+2}
Real fredholm_step(const LaxState& st, const FamilySpec& f);

// Moves to s+1 given the new matrices: shifts D, updates h.
LaxState advance_with(const LaxState& st, const FamilySpec& f, const Mat2& A_next, const Mat2& C_next);

// Closed-form update of (A_s, C_s) followed by advance_with and drift control.
LaxState step_general(const LaxState& st, const FamilySpec& f);

// Same step obtained by solving the compatibility condition in matrix form.
LaxState compat_solve_step(const LaxState& st, const FamilySpec& f);

// max over zeta of |(I + A_s/(sigma zeta - pi_s)) M_s - M_{s+1} (I + A_{s+1}/(zeta - pi_{s+1}))|,
// relative to the size of the terms.
Real compatibility_residual(const LaxState& st, const LaxState& next, const FamilySpec& f,
                            const std::vector<Real>& zetas);

// |p^2 + q r| / |A|^2
Real nilpotency_defect(const LaxState& st);

struct GapRow {
  int s = 0;
  Real pi;       // lattice point pi_s
  Real x_coord;  // plotting abscissa
  Real D;        // D_s
  Real mass;     // D_{s+1} - D_s
  Real density;  // mass rescaled to the lattice spacing
};

struct GapTable {
  std::string family;
  ParamMap params;
  int k = 0;
  unsigned precision = 0;
  std::string method;
  std::vector<GapRow> rows;
};

// Builds rows s = k..s_max from D_k..D_{s_max+1}; checks monotonicity to within tol.
GapTable make_gap_table(const FamilySpec& f, int k, int s_max, const std::vector<Real>& D,
                        const std::string& method);

// Plot abscissa and density scaling for the family.
Real plot_coordinate(const FamilySpec& f, int s);
Real density_from_mass(const FamilySpec& f, int s, const Real& mass);

// Largest useful s_max (N+1 on a finite lattice).
int max_index(const FamilySpec& f, int s_max);

// D is nondecreasing and bounded by 1, so once 1 - D_s <= tau^1.5 every later value is 1
// to that accuracy. The recurrences stop there: past this point the forward steps only
// amplify rounding.
bool gap_saturated(const Real& D);

// D_k..D_{s_max+1} from the general recurrence.
std::vector<Real> general_D(const FamilySpec& f, int k, int s_max);

GapTable run(const FamilySpec& f, int k, int s_max);

}  // namespace dgap
