#include "dgap/painleve.hpp"
#include "dgap/errors.hpp"
#include "dgap/special.hpp"

#include <algorithm>

namespace dgap {

namespace {

Real coeff(const Poly& p, int i) { return static_cast<int>(p.coeffs.size()) > i ? p.coeffs[i] : Real(0); }

Real factorial(int n) {
  Real r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Real binomial(int n, int k) {
  Real r(1);
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

const Real& guard(const Real& x, const char* what, int s, ErrorKind kind = ErrorKind::DPSingular) {
  if (abs(x) <= tolerance()) fail(kind, std::string(what) + " vanished at s=" + std::to_string(s), s);
  return x;
}

Real rel(const Real& a, const Real& b) {
  Real m = std::max({abs(a), abs(b), Real(1e-300)});
  return abs(a - b) / m;
}

}  // namespace

// ---- discrete Painleve ----

DPParams dp_params(const FamilySpec& f) {
  if (f.id != FamilyId::Charlier && f.id != FamilyId::Meixner && f.id != FamilyId::Krawtchouk)
    fail(ErrorKind::UnsupportedFamily, f.name + " has no discrete Painleve parameterization");
  return {coeff(f.d2, 1), coeff(f.d2, 0)};
}

DPState dp_from_lax(const LaxState& st, const FamilySpec& f) {
  DPParams dp = dp_params(f);
  const int s = st.s, k = st.k;
  const Real b = st.c11;
  guard(b, "b_s (C_s^11)", s, ErrorKind::DegenerateParameterization);
  const Real e = st.c12 / b;
  guard(e, "C_s^12", s, ErrorKind::DegenerateParameterization);
  guard(st.p, "p_s", s, ErrorKind::DegenerateParameterization);
  const Real alpha = st.q / (st.p * e);
  DPState d;
  d.s = s;
  d.k = k;
  d.e = e;
  d.h = st.h;
  d.Dprev = st.Dprev;
  d.Dcur = st.Dcur;
  if (dp.xi != 0) {
    guard(1 - alpha, "1 - a_s", s, ErrorKind::DegenerateParameterization);
    d.f = -k - b + s / (1 - alpha);
    d.g = -alpha;
  } else {
    guard(alpha, "a_s", s, ErrorKind::DegenerateParameterization);
    d.f = 1 / alpha;
    d.g = dp.tau * alpha + b + s + 1;
  }
  return d;
}

namespace {

// (a_s, b_s) from the Painleve coordinates.
std::pair<Real, Real> ab_from_fg(const DPState& st, const DPParams& dp) {
  const int s = st.s, k = st.k;
  if (dp.xi != 0) {
    guard(1 + st.g, "1 + g_s", s);
    return {-st.g, -k - st.f + s / (1 + st.g)};
  }
  guard(st.f, "f_s", s);
  Real alpha = 1 / st.f;
  return {alpha, st.g - dp.tau * alpha - s - 1};
}

}  // namespace

LaxState lax_from_dp(const DPState& st, const FamilySpec& f) {
  DPParams dp = dp_params(f);
  auto [alpha, b] = ab_from_fg(st, dp);
  const Real ae = alpha * st.e;
  guard(ae, "a_s e_s", st.s);
  LaxState L;
  L.s = st.s;
  L.k = st.k;
  const Real kb = st.k + b;
  L.p = -kb;
  L.q = -kb * ae;
  L.r = kb / ae;
  L.c11 = b;
  L.c12 = b * st.e;
  L.c22 = dp.tau - dp.xi * b;
  L.c21 = L.c22 / st.e;
  L.kappa1 = Real(1);
  L.kappa2 = dp.xi;
  L.h = st.h;
  L.Dprev = st.Dprev;
  L.Dcur = st.Dcur;
  return L;
}

DPState dpv_step(const DPState& st, const FamilySpec& f) {
  DPParams dp = dp_params(f);
  if (dp.xi == 0) fail(ErrorKind::UnsupportedFamily, "dPV stepping needs a linear d2");
  const int s = st.s, k = st.k;
  const Real& xi = dp.xi;
  const Real tx = dp.tau / xi;
  const Real &fs = st.f, &gs = st.g;

  const Real D_next = fredholm_step(lax_from_dp(st, f), f);
  auto [alpha, b] = ab_from_fg(st, dp);

  const Real one_xg = guard(1 + xi * gs, "1 + xi g_s", s);
  guard(1 + gs, "1 + g_s", s);
  guard(gs, "g_s", s);
  Real fn = -fs - (k + tx) + s / (1 + gs) + (tx + s + 1) / one_xg;
  Real den = xi * fn * (fn + k + tx);
  guard(den, "f_{s+1}(f_{s+1} + k + tau/xi)", s);
  Real gn = (fn - 1 - s) * (fn - 1 - s + k) / den / gs;
  guard(gn, "g_{s+1}", s);
  Real den3 = one_xg * fn + k - s - 1;
  guard(den3, "(1 + xi g_s) f_{s+1} + k - s - 1", s);
  Real ratio = -(xi * gs / gn) * ((1 + gn) * fn + (k + tx) * gn - s - 1) / den3;

  const Real d2n = xi * (s + 1) + dp.tau;
  guard(d2n, "d2(pi_{s+1})", s);
  guard(alpha, "a_s", s);
  DPState nx;
  nx.s = s + 1;
  nx.k = k;
  nx.f = fn;
  nx.g = gn;
  nx.e = st.e * ratio;
  nx.h = (d2n - xi * b + b / alpha) / d2n * st.h;
  nx.Dprev = st.Dcur;
  nx.Dcur = D_next;
  return nx;
}

DPState dpiv_step(const DPState& st, const Real& a) {
  const int s = st.s, k = st.k;
  const Real &fs = st.f, &gs = st.g, &e = st.e, &h = st.h;
  guard(e, "e_s", s);
  guard(st.Dprev, "D_s", s);
  // Charlier form of the Fredholm recurrence
  Real pref = pow(a, s - 1) / factorial(s + 1);
  Real D_next = st.Dcur * (st.Dcur / st.Dprev + pref * fs * fs / e * (gs - s - 1) * h * h);

  Real g1 = gs - s - 1, g2 = gs + k - s - 1;
  guard(fs, "f_s", s);
  guard(g1, "g_s - s - 1", s);
  guard(g2, "g_s + k - s - 1", s);
  DPState nx;
  nx.s = s + 1;
  nx.k = k;
  nx.e = a * e / (fs * g2);
  nx.f = a * gs / (fs * g1 * g2);
  guard(nx.f, "f_{s+1}", s);
  guard(1 - nx.f, "1 - f_{s+1}", s);
  nx.g = a / nx.f - (s + 1) / (1 - nx.f) - gs - k + 2 * s + 3;
  nx.h = fs * g1 * h / a;
  nx.Dprev = st.Dcur;
  nx.Dcur = D_next;
  return nx;
}

SakaiParams dpv_sakai(const DPState& st, const FamilySpec& f) {
  DPParams dp = dp_params(f);
  const Real tx = dp.tau / dp.xi;
  const int s = st.s, k = st.k;
  SakaiParams sp;
  sp.a = {tx + s + 1, Real(s), Real(-s), -(k + tx), Real(k)};
  sp.lambda = sp.a[1] + 2 * sp.a[2] + sp.a[3] + sp.a[4] + sp.a[0];
  return sp;
}

SakaiParams dpiv_sakai(const DPState& st) {
  const int s = st.s, k = st.k;
  SakaiParams sp;
  sp.a = {Real(-s - 2), Real(1), Real(k), Real(s + 2 - k)};
  sp.lambda = sp.a[0] + sp.a[1] + sp.a[2] + sp.a[3];
  return sp;
}

DPState family_recurrence_init(const FamilySpec& f, int k) {
  if (k < 1) fail(ErrorKind::InvalidParameter, "k must be at least 1");
  DPState d;
  d.s = k;
  d.k = k;
  d.h = factorial(k);
  switch (f.id) {
    case FamilyId::Charlier: {
      const Real& a = f.param("a");
      auto Phi = [&](int u, int w) { return hyp1f1(Real(u), Real(w), -a); };
      d.Dprev = exp(-a * k);
      d.Dcur = d.Dprev * Phi(-k, 1);
      d.e = pow(a, k) * factorial(k - 1) / Phi(1 - k, 1);
      d.f = -a * Phi(1 - k, 2) / Phi(1 - k, 1);
      d.g = k + 1 - (k + 1) * Phi(1 - k, 1) * Phi(-k, 2) / (Phi(-k, 1) * Phi(1 - k, 2));
      return d;
    }
    case FamilyId::Meixner: {
      const Real& be = f.param("beta");
      const Real& c = f.param("c");
      const Real z = 1 / c;
      Real F0 = hyp2f1(Real(1 - k), Real(1 - k), 1 + be, z);
      d.Dprev = pow(1 - c, k * (be + k - 1));
      d.Dcur = pochhammer(be, k) / factorial(k) * pow(c, k) * d.Dprev * hyp2f1(Real(-k), Real(-k), be, z);
      d.e = be * c * factorial(k - 1) * factorial(k - 1) / F0;
      d.f = Real(0);
      d.g = k / (be * c) * F0 / hyp2f1(Real(-k), Real(1 - k), be, z);
      return d;
    }
    case FamilyId::Krawtchouk: {
      const Real& p = f.param("p");
      const int N = f.N();
      if (k > N) fail(ErrorKind::IndexOutOfRange, "k exceeds N");
      const Real z = 1 - 1 / p;
      Real F0 = hyp2f1(Real(1 - k), Real(1 - k), Real(1 - N), z);
      d.Dprev = pow(1 - p, k * (N + 1 - k));
      d.Dcur = binomial(N, k) * pow(p, k) * pow(1 - p, k * (N - k)) * hyp2f1(Real(-k), Real(-k), Real(-N), z);
      d.e = N * p * pow(1 - p, N - 1) * factorial(k - 1) * factorial(k - 1) / F0;
      d.f = Real(0);
      d.g = k * (1 - p) / (N * p) * F0 / hyp2f1(Real(-k), Real(1 - k), Real(-N), z);
      return d;
    }
    default: break;
  }
  fail(ErrorKind::UnsupportedFamily, f.name + " has no closed-form Painleve initial data");
}

// ---- q-Charlier ----

namespace {

void require_qcharlier(const FamilySpec& f) {
  if (f.id != FamilyId::QCharlier) fail(ErrorKind::UnsupportedFamily, "q-Charlier recurrence applied to " + f.name);
}

}  // namespace

QCharlierState qcharlier_init(const FamilySpec& f, int k) {
  require_qcharlier(f);
  if (k < 1) fail(ErrorKind::InvalidParameter, "k must be at least 1");
  const Real& a = f.param("a");
  const Real& q = f.param("q");
  auto G = [&](const Real& u, const Real& v, const Real& z) { return qhyp2phi0(u, v, z, q); };
  auto C2 = [](int n) { return n * (n - 1) / 2; };
  Real pr(1);
  for (int n = 0; n < k; ++n) pr *= pow(q, C2(n + 1)) / q_pochhammer(-q / a, q, n);
  const Real I = q_pochhammer_inf(-a, q, tolerance() * tolerance());
  const Real qk = pow(q, k), qmk = pow(q, -k);
  const Real qqk = q_pochhammer(q, q, k), qqk1 = q_pochhammer(q, q, k - 1);
  const Real G0 = G(qmk, qmk, -pow(q, 2 * k) / a);
  const Real G1 = G(qmk, q * qmk, -pow(q, 2 * k - 1) / a);

  QCharlierState st;
  st.s = k;
  st.k = k;
  st.Dprev = pow(I, -k) * pow(a, -C2(k)) * pr;
  st.Dcur = pow(I, -k) * pow(a, k - C2(k)) / qqk * pow(q, -C2(k)) * G0 * pr;
  st.p = (1 - qmk) * G1 / G0;
  st.q = qqk * qqk * pow(q, -k * (k + 1)) / G0;
  st.r = pow(q, k * k) * (1 - qmk) / (qqk * qqk1) * G1 * G1 / G0;
  st.alpha = -1 - qk * st.p;
  st.beta = -qk * st.q;
  st.gamma = pow(q, k * k - 1) / (qqk1 * qqk1) * G(q * qmk, q * qmk, -pow(q, 2 * k - 2) / a);
  st.h = pow(q, -k * k) * qqk;
  return st;
}

QCharlierState qcharlier_step(const QCharlierState& st, const FamilySpec& f) {
  require_qcharlier(f);
  const Real& a = f.param("a");
  const Real& q = f.param("q");
  const int s = st.s, k = st.k;
  const Real qk = pow(q, k), delta = a * pow(q, -k);
  const Real &p = st.p, &qq = st.q, &r = st.r;

  Real us = qk * p / (qq * qq) * (p * st.beta + delta * qq);
  Real pref = pow(a, s - 1) / q_pochhammer(q, q, s + 1) * pow(q, (s + 1) * s / 2);
  if (st.Dprev == 0) fail(ErrorKind::EpsilonSingular, "D_s vanished at s=" + std::to_string(s), s);
  Real D_next = st.Dcur * (st.Dcur / st.Dprev + pref * us * st.h * st.h);

  Real eps = a * (pow(q, -s - 1) - 1) + qk / q * (delta * p - r * st.beta);
  Real scale = abs(a * (pow(q, -s - 1) - 1)) + abs(qk / q * delta * p) + abs(qk / q * r * st.beta);
  if (abs(eps) <= tolerance() * scale)
    fail(ErrorKind::EpsilonSingular, "epsilon_s vanished at s=" + std::to_string(s) + "; retry at doubled precision", s);
  Real X = p * st.beta + delta * qq;
  Real Y = r * st.alpha - p * st.gamma + pow(q, k - s - 1) * r;

  QCharlierState nx;
  nx.s = s + 1;
  nx.k = k;
  nx.p = -X * Y / (q * p * eps);
  nx.q = X * X / (q * qq * eps);
  nx.r = Y * Y / (q * r * eps);
  nx.alpha = st.alpha + qk / q * p - qk * nx.p;
  nx.beta = st.beta - qk * nx.q;
  nx.gamma = st.gamma + qk / q * r;
  nx.h = X / (a * qq) * st.h;
  nx.Dprev = st.Dcur;
  nx.Dcur = D_next;
  return nx;
}

LaxState lax_from_qcharlier(const QCharlierState& st, const FamilySpec& f) {
  require_qcharlier(f);
  const Real& a = f.param("a");
  const Real& q = f.param("q");
  LaxState L;
  L.s = st.s;
  L.k = st.k;
  L.p = st.p;
  L.q = st.q;
  L.r = st.r;
  L.c11 = st.alpha;
  L.c12 = st.beta;
  L.c21 = st.gamma;
  L.c22 = a * pow(q, -st.k);
  L.kappa1 = pow(q, st.k);
  L.kappa2 = Real(0);
  L.h = st.h;
  L.Dprev = st.Dprev;
  L.Dcur = st.Dcur;
  return L;
}

// ---- q-PVI ----

QPVIData qp6_build(const LaxState& st, const FamilySpec& f, const Mat2* prevA) {
  if (f.lattice.kind == LatticeKind::Linear || !f.supportsLinearRecurrence)
    fail(ErrorKind::UnsupportedFamily, f.name + " is not a q-lattice family with a linear M_s");
  const Real l1 = coeff(f.d1, 1), m1 = coeff(f.d1, 0);
  const Real l2 = coeff(f.d2, 1), m2 = coeff(f.d2, 0);
  if (l1 == 0 || m1 == 0 || m2 == 0)
    fail(ErrorKind::UnsupportedFamily, f.name + ": d1, d2 need nonzero constant terms for the q-PVI reduction");

  QPVIData d;
  d.s = st.s;
  d.t = f.pi(st.s);
  const Real& t = d.t;
  const Mat2 L = st.Lambda(), A = st.A(), C = st.C();
  d.As = A;
  d.Cs = C;
  d.A0 = C * (A - Mat2::identity() * t);
  d.A1 = C + L * A - L * t;
  d.A2 = L;

  QPVIConstants& c = d.c;
  c.eta = f.eta();
  c.degenerate = (l2 == 0);
  c.kappa1 = st.kappa1;
  c.kappa2 = c.degenerate ? m2 / pow(c.eta, st.k) : st.kappa2;
  c.a3 = -m1 / l1;
  c.a4 = c.degenerate ? Real(0) : -m2 / l2;
  c.b3 = 1 / (c.eta * c.kappa1);
  c.b4 = 1 / c.kappa2;
  c.Lambda = L;
  d.theta_sum = d.A0.trace() / t;
  d.theta_prod = d.A0.det() / (t * t);
  c.theta_sum = d.theta_sum;
  c.theta_prod = d.theta_prod;
  if (prevA) d.B0 = Mat2::identity() * (-c.eta * t) - *prevA;

  // A_12(x, t) is linear in x; its root is y.
  if (abs(d.A1.a12) <= tolerance() * std::max(d.A1.norm(), d.A0.norm()))
    fail(ErrorKind::RootNotFound, "A_12(x,t) has no finite root at s=" + std::to_string(st.s), st.s);
  d.y = -d.A0.a12 / d.A1.a12;
  d.w = d.A1.a12 / c.kappa2;
  Mat2 Ay = d.eval(d.y);
  d.z1 = Ay.a11 / c.kappa1;
  d.z2 = Ay.a22 / c.kappa2;
  Real den = c.eta * c.kappa1 * (d.y - c.a3);
  if (!c.degenerate) den *= d.y - c.a4;
  d.z = d.z2 / den;
  return d;
}

Real qp6_det_residual(const QPVIData& d, const std::vector<Real>& xs) {
  Real worst(0);
  for (const auto& x : xs) {
    Real lhs = d.eval(x).det();
    Real rhs = d.c.kappa1 * d.c.kappa2 * (x - d.t) * (x - d.t) * (x - d.c.a3);
    if (!d.c.degenerate) rhs *= x - d.c.a4;
    Mat2 Ax = d.eval(x);
    Real scale = std::max({abs(Ax.a11 * Ax.a22), abs(Ax.a12 * Ax.a21), abs(rhs), Real(1e-300)});
    worst = std::max(worst, abs(lhs - rhs) / scale);
  }
  return worst;
}

Real qp6_compat_residual(const QPVIData& d_t, const QPVIData& d_qt, const std::vector<Real>& xs) {
  const Real& eta = d_t.c.eta;
  const Real& t = d_t.t;
  // B0(t) uses A_{s-1}, which belongs to the earlier state.
  const Mat2 B0 = d_t.B0 ? *d_t.B0 : Mat2::identity() * (-eta * t) - d_qt.As;
  auto Bnum = [&](const Real& x) { return (Mat2::identity() * x + B0) * x; };
  Real worst(0);
  for (const auto& x : xs) {
    const Real wl = eta * eta * (x - t) * (x - t), wr = (x - eta * t) * (x - eta * t);
    Mat2 lhs = d_qt.eval(x) * Bnum(x) * wl;
    Mat2 rhs = Bnum(eta * x) * d_t.eval(x) * wr;
    // both sides vanish at x = t, so measure against the size of the factors
    Real scale = d_qt.eval(x).norm() * Bnum(x).norm() * abs(wl) + Bnum(eta * x).norm() * d_t.eval(x).norm() * abs(wr);
    if (scale == 0) continue;
    worst = std::max(worst, (lhs - rhs).norm() / scale);
  }
  return worst;
}

bool qp6_compat_check(const QPVIData& d_t, const QPVIData& d_qt, const std::vector<Real>& xs) {
  return qp6_compat_residual(d_t, d_qt, xs) < 1024 * tolerance();
}

Real JSResiduals::worst() const { return std::max({js1, js2, js3, z_product, theta}); }

JSResiduals js_residuals(const QPVIData& d_t, const QPVIData& d_qt) {
  const QPVIConstants& c = d_t.c;
  const Real& t = d_t.t;
  const Real &y = d_t.y, &z = d_t.z, &w = d_t.w;
  const Real &yb = d_qt.y, &zb = d_qt.z, &wb = d_qt.w;
  const Real S = c.theta_sum / c.theta_prod, P = 1 / c.theta_prod;
  const Real num = zb * zb - t * zb * S + t * t * P;
  JSResiduals r;
  if (!c.degenerate) {
    r.js1 = rel(y * yb / (c.a3 * c.a4), num / ((zb - c.b3) * (zb - c.b4)));
    r.js2 = rel(z * zb / (c.b3 * c.b4), (y - t) * (y - t) / ((y - c.a3) * (y - c.a4)));
    r.js3 = rel(wb / w, (c.b4 / c.b3) * (zb - c.b3) / (zb - c.b4));
    r.z_product = rel(d_t.z1 * d_t.z2, (y - t) * (y - t) * (y - c.a3) * (y - c.a4));
  } else {
    r.js1 = rel(y * yb / (c.kappa2 * c.a3), num / (zb - c.b3));
    r.js2 = rel(z * zb / c.b3, (y - t) * (y - t) / (c.kappa2 * (y - c.a3)));
    r.js3 = rel(wb / w, (c.b3 - zb) / c.b3);
    r.z_product = rel(d_t.z1 * d_t.z2, (y - t) * (y - t) * (y - c.a3));
  }
  r.theta = std::max(rel(d_t.theta_sum, d_qt.theta_sum), rel(d_t.theta_prod, d_qt.theta_prod));
  return r;
}

bool js_extract_and_check(const QPVIData& d_t, const QPVIData& d_qt) {
  if (!d_t.c.degenerate && d_t.c.kappa1 == d_t.c.kappa2)
    fail(ErrorKind::DegenerateKappa, "kappa1 = kappa2; the q-PVI coordinates are not defined");
  return js_residuals(d_t, d_qt).worst() < 1024 * tolerance();
}

JSVars js_forward(const JSVars& bar, const Real& t, const QPVIConstants& c) {
  const Real S = c.theta_sum / c.theta_prod, P = 1 / c.theta_prod;
  const Real& zb = bar.z;
  const Real num = zb * zb - t * zb * S + t * t * P;
  auto chk = [&](const Real& x, const char* what) {
    if (abs(x) <= tolerance()) fail(ErrorKind::DPSingular, std::string(what) + " vanished in the q-PVI step");
    return x;
  };
  JSVars v;
  chk(bar.y, "y(qt)");
  if (!c.degenerate) {
    v.y = c.a3 * c.a4 * num / chk((zb - c.b3) * (zb - c.b4), "(z - b3)(z - b4)") / bar.y;
    v.z = c.b3 * c.b4 * (v.y - t) * (v.y - t) / chk((v.y - c.a3) * (v.y - c.a4), "(y - a3)(y - a4)") / chk(zb, "z");
    v.w = bar.w * (c.b3 / c.b4) * (zb - c.b4) / (zb - c.b3);
  } else {
    v.y = c.kappa2 * c.a3 * num / chk(zb - c.b3, "z - b3") / bar.y;
    v.z = c.b3 * (v.y - t) * (v.y - t) / (c.kappa2 * chk(v.y - c.a3, "y - a3")) / chk(zb, "z");
    v.w = bar.w * c.b3 / (c.b3 - zb);
  }
  return v;
}

std::pair<Mat2, Mat2> js_reconstruct(const JSVars& v, const Real& t, const QPVIConstants& c) {
  const Real &y = v.y, &z = v.z, &w = v.w;
  const Real &k1 = c.kappa1, &k2 = c.kappa2, &a3 = c.a3, &a4 = c.a4;
  Mat2 A0, A1;
  if (abs(y) <= tolerance() || abs(w) <= tolerance() || abs(z) <= tolerance())
    fail(ErrorKind::DPSingular, "q-PVI coordinates hit zero");
  const Real z1 = (y - t) * (y - t) / (c.eta * k1 * z);
  if (!c.degenerate) {
    if (k1 == k2) fail(ErrorKind::DegenerateKappa, "kappa1 = kappa2; cannot split A_1");
    const Real z2 = c.eta * k1 * (y - a3) * (y - a4) * z;
    const Real S = (c.theta_sum * t - k1 * z1 - k2 * z2) / y;
    const Real R = 2 * t + a3 + a4 - 2 * y;
    const Real al = (S - k2 * R) / (k1 - k2);
    const Real be = (-S + k1 * R) / (k1 - k2);
    const Real ga = z1 + z2 + (y + al) * (y + be) + (al + be) * y - t * t - 2 * (a3 + a4) * t - a3 * a4;
    const Real de = (a3 * a4 * t * t - (al * y + z1) * (be * y + z2)) / y;
    A1 = {k1 * (-y - al), k2 * w, k1 * ga / w, k2 * (-y - be)};
    A0 = {k1 * (y * al + z1), -k2 * w * y, k1 * de / w, k2 * (y * be + z2)};
  } else {
    const Real z2 = c.eta * k1 * (y - a3) * z;
    const Real al = ((c.theta_sum * t - k1 * z1 - k2 * z2) / y + k2) / k1;
    const Real ga = z2 - (y + al) - y + 2 * t + a3;
    const Real de = (-a3 * t * t + (al * y + z1) * (y - z2)) / y;
    A1 = {k1 * (-y - al), k2 * w, k1 * ga / w, k2};
    A0 = {k1 * (y * al + z1), -k2 * w * y, k1 * de / w, k2 * (z2 - y)};
  }
  // A(x) = (Lambda x + C)((x - t) I + A_s) with A_s^2 = 0 gives
  // (A1 + 2t Lambda) A_s = A0 + t A1 + t^2 Lambda.
  const Mat2& L = c.Lambda;
  Mat2 As = mat2_inv(A1 + L * (2 * t), Real(0)) * (A0 + A1 * t + L * (t * t));
  Mat2 Cs = A1 - L * As + L * t;
  return {As, Cs};
}

}  // namespace dgap
