#pragma once

#include "dgap/family.hpp"
#include "dgap/lax.hpp"
#include "dgap/linalg.hpp"

#include <optional>
#include <vector>

namespace dgap {

// ---- discrete Painleve variables on the linear lattice ----

// d1(z) = z, d2(z) = xi z + tau for Charlier, Meixner and Krawtchouk.
struct DPParams {
  Real xi, tau;
};
DPParams dp_params(const FamilySpec& f);

struct DPState {
  int s = 0;
  int k = 0;
  Real f, g;        // Painleve coordinates
  Real e;           // the (1,2) scale of C_s divided by its (1,1) entry
  Real h;           // m_s^{11}(pi_s)
  Real Dprev, Dcur; // D_s, D_{s+1}
};

// A_s = (k+b)[[-1, -ab], [1/(ab), 1]], C_s = [[b, b e], [(tau - xi b)/e, tau - xi b]]
// with a, b recovered from (f, g).
DPState dp_from_lax(const LaxState& st, const FamilySpec& f);
LaxState lax_from_dp(const DPState& st, const FamilySpec& f);

// xi != 0 (Meixner, Krawtchouk)
DPState dpv_step(const DPState& st, const FamilySpec& f);
// xi = 0 (Charlier with parameter a)
DPState dpiv_step(const DPState& st, const Real& a);

struct SakaiParams {
  std::vector<Real> a;  // a0, a1, ...
  Real lambda;          // weighted sum, identically 1
};
SakaiParams dpv_sakai(const DPState& st, const FamilySpec& f);
SakaiParams dpiv_sakai(const DPState& st);

// Closed-form starting values for Charlier, Meixner and Krawtchouk.
DPState family_recurrence_init(const FamilySpec& f, int k);

// ---- q-Charlier scalar recurrence ----

struct QCharlierState {
  int s = 0;
  int k = 0;
  Real p, q, r;
  Real alpha, beta, gamma;  // C_s entries; the (2,2) entry stays a q^-k
  Real h;
  Real Dprev, Dcur;
};

QCharlierState qcharlier_init(const FamilySpec& f, int k);
QCharlierState qcharlier_step(const QCharlierState& st, const FamilySpec& f);
LaxState lax_from_qcharlier(const QCharlierState& st, const FamilySpec& f);

// ---- q-PVI ----

struct QPVIConstants {
  Real eta;
  Real kappa1, kappa2;  // kappa2 is q^-k mu2 in the degenerate case
  Real theta_sum, theta_prod;
  Real a3, a4;          // a4 unused when degenerate
  Real b3, b4;          // 1/(eta kappa1), 1/kappa2
  bool degenerate = false;
  Mat2 Lambda;          // leading coefficient of A(x, t)
};

struct JSVars {
  Real y, z, w;
};

struct QPVIData {
  int s = 0;
  Real t;
  Mat2 A0, A1, A2;  // A(x,t) = A0 + A1 x + A2 x^2
  Mat2 As, Cs;
  std::optional<Mat2> B0;  // -eta t I - A_{s-1}
  QPVIConstants c;
  // theta1 + theta2 and theta1 theta2 taken from this A0 alone
  Real theta_sum, theta_prod;
  Real y, z1, z2, z, w;

  Mat2 eval(const Real& x) const { return A0 + A1 * x + A2 * (x * x); }
  JSVars vars() const { return {y, z, w}; }
};

// Requires a q-lattice family with d1 linear and nonzero constant terms.
QPVIData qp6_build(const LaxState& st, const FamilySpec& f, const Mat2* prevA = nullptr);

// Worst relative violation of det A(x,t) = kappa1 kappa2 (x-t)^2 (x-a3)(x-a4) over xs.
Real qp6_det_residual(const QPVIData& d, const std::vector<Real>& xs);

// A(x, eta t) B(x, t) = B(eta x, t) A(x, t), cleared of denominators.
Real qp6_compat_residual(const QPVIData& d_t, const QPVIData& d_qt, const std::vector<Real>& xs);
bool qp6_compat_check(const QPVIData& d_t, const QPVIData& d_qt, const std::vector<Real>& xs);

struct JSResiduals {
  Real js1, js2, js3;  // relative
  Real z_product;      // z1 z2 vs (y-t)^2 (y-a3)(y-a4)
  Real theta;          // drift of theta_sum, theta_prod between the two times
  Real worst() const;
};
// d_qt is the state one step earlier (time eta t).
JSResiduals js_residuals(const QPVIData& d_t, const QPVIData& d_qt);
bool js_extract_and_check(const QPVIData& d_t, const QPVIData& d_qt);

// (y, z, w) at t from the values at eta t.
JSVars js_forward(const JSVars& bar, const Real& t, const QPVIConstants& c);
// (A_s, C_s) from (y, z, w) at t.
std::pair<Mat2, Mat2> js_reconstruct(const JSVars& v, const Real& t, const QPVIConstants& c);

}  // namespace dgap
