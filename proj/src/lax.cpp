#include "dgap/lax.hpp"
#include "dgap/errors.hpp"
#include "dgap/oracle.hpp"

#include <algorithm>

namespace dgap {

namespace {

Real coeff(const Poly& p, int i) { return static_cast<int>(p.coeffs.size()) > i ? p.coeffs[i] : Real(0); }

Real default_tail_tol() { return tolerance() * tolerance() / 65536; }

void check_index(const FamilySpec& f, int s) {
  if (f.finite() && s > f.N()) fail(ErrorKind::IndexOutOfRange, "lattice index beyond N", s);
}

}  // namespace

LinearCoeffs linear_coeffs(const FamilySpec& f) {
  if (!f.supportsLinearRecurrence)
    fail(ErrorKind::UnsupportedFamily, f.name + " has no first-order Lax recurrence; use the oracle route");
  return {coeff(f.d1, 1), coeff(f.d1, 0), coeff(f.d2, 1), coeff(f.d2, 0)};
}

LaxState init_state(const FamilySpec& f, int k) { return init_state(f, k, default_tail_tol()); }

LaxState init_state(const FamilySpec& f, int k, const Real& tail_tol) {
  linear_coeffs(f);
  if (k < 1) fail(ErrorKind::InvalidParameter, "k must be at least 1");
  check_index(f, k);
  LinearM M = compute_Mk_linear(f, k);
  Mat2 A = compute_Ak(f, k);

  LaxState st;
  st.s = k;
  st.k = k;
  st.p = A.a11;
  st.q = A.a12;
  st.r = A.a21;
  st.c11 = M.C.a11;
  st.c12 = M.C.a12;
  st.c21 = M.C.a21;
  st.c22 = M.C.a22;
  st.kappa1 = M.Lambda.a11;
  st.kappa2 = M.Lambda.a22;

  const Real pk = f.pi(k);
  std::vector<Real> pts(k);
  for (int j = 0; j < k; ++j) pts[j] = f.pi(j);
  st.h = Real(1);
  for (int j = 0; j < k; ++j) st.h *= pk - pts[j];

  // D_k = prod_{i<j} (pi_i - pi_j)^2 prod w / Z
  int x_cut = truncation_point(f, k, tail_tol);
  Real Z = hankel_normalization(f, k, x_cut);
  std::vector<Real> w = weight_table(f, k + 1);
  Real Dk(1);
  for (int i = 0; i < k; ++i) {
    Dk *= w[i];
    for (int j = i + 1; j < k; ++j) Dk *= (pts[i] - pts[j]) * (pts[i] - pts[j]);
  }
  Dk /= Z;
  st.Dprev = Dk;
  st.Dcur = w[k] / st.q * Dk * st.h * st.h;
  return st;
}

Real epsilon(const LaxState& st, const FamilySpec& f) {
  const Real pn = f.pi(st.s + 1);
  const Real eta = f.eta();
  return f.d1(pn) * f.d2(pn) + st.kappa1 * (st.p * st.c22 - st.r * st.c12) / eta -
         st.kappa2 * (st.p * st.c11 + st.q * st.c21) / eta;
}

Real epsilon_det(const LaxState& st, const FamilySpec& f) {
  const Real pn = f.pi(st.s + 1);
  Mat2 E = st.Lambda() * pn + st.C() + st.A() * st.Lambda() / f.eta();
  return E.det();
}

Real u_value(const LaxState& st) {
  const Real t = st.p / st.q;
  return -st.kappa2 * st.c21 + t * (st.kappa1 * st.c22 - st.kappa2 * st.c11) + t * t * st.kappa1 * st.c12;
}

Real fredholm_step(const LaxState& st, const FamilySpec& f) {
  if (f.finite() && st.s + 2 > f.N()) return Real(1);
  const Real pn = f.pi(st.s + 1);
  const Real w = weight(f, st.s);
  if (st.Dprev == 0) fail(ErrorKind::EpsilonSingular, "D_s vanished; cannot form the ratio", st.s);
  return st.Dcur * (st.Dcur / st.Dprev + w * u_value(st) * st.h * st.h / (f.eta() * f.d1(pn) * f.d2(pn)));
}

LaxState advance_with(const LaxState& st, const FamilySpec& f, const Mat2& A_next, const Mat2& C_next) {
  const Real pn = f.pi(st.s + 1);
  LaxState nx = st;
  nx.s = st.s + 1;
  nx.Dprev = st.Dcur;
  nx.Dcur = fredholm_step(st, f);
  // h_{s+1} = (mu22 + (p/q) mu12) / d2(pi_{s+1}) * h_s with mu = M_s(pi_{s+1})
  Mat2 mu = st.M(pn);
  nx.h = (mu.a22 + st.p / st.q * mu.a12) / f.d2(pn) * st.h;
  nx.p = A_next.a11;
  nx.q = A_next.a12;
  nx.r = A_next.a21;
  nx.c11 = C_next.a11;
  nx.c12 = C_next.a12;
  nx.c21 = C_next.a21;
  nx.c22 = C_next.a22;
  return nx;
}

Real nilpotency_defect(const LaxState& st) {
  Real n = st.A().norm();
  if (n == 0) return Real(0);
  return abs(st.p * st.p + st.q * st.r) / (n * n);
}

namespace {

void control_drift(LaxState& st) {
  Real n = st.A().norm();
  Real defect = abs(st.p * st.p + st.q * st.r);
  Real tau = tolerance();
  if (defect > tau * n * n && defect < sqrt(tau) * n * n && -st.q * st.r > 0) {
    Real mag = sqrt(-st.q * st.r);
    st.p = st.p < 0 ? Real(-mag) : mag;
  }
}

void check_epsilon(const LaxState& st, const FamilySpec& f, const Real& eps) {
  const Real pn = f.pi(st.s + 1);
  Real scale = abs(f.d1(pn) * f.d2(pn)) + abs(st.kappa1 * st.p * st.c22) + abs(st.kappa1 * st.r * st.c12) +
               abs(st.kappa2 * st.p * st.c11) + abs(st.kappa2 * st.q * st.c21);
  if (abs(eps) <= tolerance() * scale)
    fail(ErrorKind::EpsilonSingular,
         "epsilon_s vanished at s=" + std::to_string(st.s) + "; retry at doubled precision", st.s);
}

}  // namespace

LaxState step_general(const LaxState& st, const FamilySpec& f) {
  const Real eta = f.eta();
  const Real pn = f.pi(st.s + 1);
  const Real eps = epsilon(st, f);
  check_epsilon(st, f, eps);
  const Real &p = st.p, &q = st.q, &r = st.r, &k1 = st.kappa1, &k2 = st.kappa2;
  if (p == 0 || q == 0 || r == 0)
    fail(ErrorKind::EpsilonSingular, "A_s has a vanishing entry at s=" + std::to_string(st.s), st.s);
  Real X = p * st.c12 + q * st.c22 + k2 * pn * q;
  Real Y = r * st.c11 - p * st.c21 + k1 * pn * r;
  Real pn1 = -X * Y / (eta * p * eps);
  Real qn1 = X * X / (eta * q * eps);
  Real rn1 = Y * Y / (eta * r * eps);
  Mat2 An{pn1, qn1, rn1, -pn1};
  Mat2 Cn{st.c11 + k1 * p / eta - k1 * pn1, st.c12 + k2 * q / eta - k1 * qn1, st.c21 + k1 * r / eta - k2 * rn1,
          st.c22 - k2 * p / eta + k2 * pn1};
  LaxState nx = advance_with(st, f, An, Cn);
  control_drift(nx);
  return nx;
}

LaxState compat_solve_step(const LaxState& st, const FamilySpec& f) {
  const Real eta = f.eta();
  const Real pn = f.pi(st.s + 1);
  Mat2 A = st.A(), L = st.Lambda();
  Mat2 Ms = st.M(pn);
  Mat2 E = Ms + A * L / eta;
  // det E equals epsilon_s; the closed form avoids cancellation in the 2x2 determinant
  const Real eps = epsilon(st, f);
  check_epsilon(st, f, eps);
  if (st.p == 0) fail(ErrorKind::EpsilonSingular, "A_s has a vanishing entry at s=" + std::to_string(st.s), st.s);
  // A_s = u v^T, so A_{s+1} = (E^{-1} u)(v^T M_s) / eta keeps rank one
  const Real u1 = st.p, u2 = st.r, v1(1), v2 = st.q / st.p;
  const Real w1 = (E.a22 * u1 - E.a12 * u2) / eps, w2 = (-E.a21 * u1 + E.a11 * u2) / eps;
  const Real z1 = (v1 * Ms.a11 + v2 * Ms.a21) / eta, z2 = (v1 * Ms.a12 + v2 * Ms.a22) / eta;
  Mat2 An{w1 * z1, w1 * z2, w2 * z1, w2 * z2};
  Mat2 Cn = st.C() + A * L / eta - L * An;
  LaxState nx = advance_with(st, f, An, Cn);
  control_drift(nx);
  return nx;
}

Real compatibility_residual(const LaxState& st, const LaxState& next, const FamilySpec& f,
                            const std::vector<Real>& zetas) {
  const Real ps = f.pi(st.s), pn = f.pi(st.s + 1);
  Real worst(0);
  for (const auto& z : zetas) {
    Mat2 lhs = (Mat2::identity() + st.A() / (f.lattice.sigma(z) - ps)) * st.M(z);
    Mat2 rhs = next.M(z) * (Mat2::identity() + next.A() / (z - pn));
    Real scale = std::max({lhs.norm(), rhs.norm(), st.M(z).norm(), Real(1)});
    worst = std::max(worst, (lhs - rhs).norm() / scale);
  }
  return worst;
}

Real plot_coordinate(const FamilySpec& f, int s) {
  const Real& q = f.lattice.q;
  switch (f.id) {
    case FamilyId::QKrawtchouk: {
      const int N = f.N();
      return N * (pow(q, -s) - 1) / (pow(q, -N) - 1);
    }
    case FamilyId::AlternativeQCharlier: return pow(q, -s);
    default: break;
  }
  switch (f.lattice.kind) {
    case LatticeKind::Linear: return Real(s);
    case LatticeKind::QGeometricIncreasing: return pow(q, -s);
    case LatticeKind::QGeometricDecreasing: return pow(q, s);
  }
  return Real(s);
}

Real density_from_mass(const FamilySpec& f, int s, const Real& mass) {
  const Real& q = f.lattice.q;
  switch (f.id) {
    case FamilyId::QKrawtchouk: {
      const int N = f.N();
      return (pow(q, -N) - 1) * pow(q, s) * mass / (1 - q) / N;
    }
    case FamilyId::AlternativeQCharlier: return pow(q, s) * mass / (1 - q);
    default: break;
  }
  switch (f.lattice.kind) {
    case LatticeKind::Linear: return mass;
    case LatticeKind::QGeometricIncreasing: return pow(q, s) * mass / (1 - q);
    case LatticeKind::QGeometricDecreasing: return pow(q, -s) * mass / (1 - q);
  }
  return mass;
}

int max_index(const FamilySpec& f, int s_max) { return f.finite() ? std::min(s_max, f.N() + 1) : s_max; }

GapTable make_gap_table(const FamilySpec& f, int k, int s_max, const std::vector<Real>& D,
                        const std::string& method) {
  if (s_max < k) fail(ErrorKind::InvalidParameter, "s_max < k leaves no data");
  if (static_cast<int>(D.size()) < s_max - k + 2)
    fail(ErrorKind::IndexOutOfRange, "not enough determinant values for the table");
  GapTable t;
  t.family = f.name;
  t.params = f.params;
  t.k = k;
  t.precision = precision_bits();
  t.method = method;
  const Real tau = tolerance();
  for (int s = k; s <= s_max; ++s) {
    GapRow row;
    row.s = s;
    row.pi = f.pi(s);
    row.x_coord = plot_coordinate(f, s);
    row.D = D[s - k];
    row.mass = D[s - k + 1] - D[s - k];
    row.density = density_from_mass(f, s, row.mass);
    if (row.mass < -tau * std::max(Real(1), abs(row.D)))
      fail(ErrorKind::EpsilonSingular, "gap probability decreased between s and s+1", s);
    if (row.D > 1 + tau || row.D < -tau) fail(ErrorKind::EpsilonSingular, "gap probability left [0,1]", s);
    t.rows.push_back(std::move(row));
  }
  return t;
}

bool gap_saturated(const Real& D) { return abs(1 - D) <= tolerance() * sqrt(tolerance()); }

std::vector<Real> general_D(const FamilySpec& f, int k, int s_max) {
  const int last = s_max + 1;
  LaxState st = init_state(f, k);
  std::vector<Real> D{st.Dprev, st.Dcur};  // D[i] = D_{k+i}
  for (int t = k + 2; t <= last; ++t) {
    if ((f.finite() && t > f.N() + 1) || gap_saturated(D.back())) {
      D.push_back(Real(1));
      continue;
    }
    while (st.s < t - 2) st = step_general(st, f);
    D.push_back(fredholm_step(st, f));
  }
  return D;
}

GapTable run(const FamilySpec& f, int k, int s_max) {
  s_max = max_index(f, s_max);
  return make_gap_table(f, k, s_max, general_D(f, k, s_max), "general");
}

}  // namespace dgap
