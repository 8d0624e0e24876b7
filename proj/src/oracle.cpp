#include "dgap/oracle.hpp"
#include "dgap/errors.hpp"
#include "dgap/special.hpp"

#include <algorithm>

namespace dgap {

namespace {

Real default_tail_tol() { return tolerance() * tolerance() / 65536; }

Real lead(const Poly& p, int i) { return static_cast<int>(p.coeffs.size()) > i ? p.coeffs[i] : Real(0); }

Real pole_gap_tol(const Real& pi) { return tolerance() * (1 + abs(pi)); }

// rho_m = 1/w(m) * prod_{j<k, j!=m} (pi_m - pi_j)^-2
std::vector<Real> rho_values(const FamilySpec& f, int k) {
  std::vector<Real> rho(k);
  for (int m = 0; m < k; ++m) {
    Real prod(1);
    for (int j = 0; j < k; ++j)
      if (j != m) prod *= f.pi(m) - f.pi(j);
    rho[m] = 1 / (weight(f, m) * prod * prod);
  }
  return rho;
}

}  // namespace

OrthoBasis build_ortho_basis(const FamilySpec& f, int k_max) { return build_ortho_basis(f, k_max, default_tail_tol()); }

OrthoBasis build_ortho_basis(const FamilySpec& f, int k_max, const Real& tail_tol) {
  if (k_max < 0 || (f.finite() && k_max > f.N()))
    fail(ErrorKind::IndexOutOfRange, f.name + ": basis degree exceeds the lattice size");
  OrthoBasis b;
  b.family = f;
  b.k_max = k_max;
  b.truncation = truncation_point(f, k_max, tail_tol);
  const int n_pts = b.truncation + 1;
  b.weights = weight_table(f, n_pts);
  b.points.reserve(n_pts);
  for (int x = 0; x < n_pts; ++x) b.points.push_back(f.pi(x));

  auto inner = [&](const std::vector<Real>& u, const std::vector<Real>& v) {
    Real acc(0);
    for (int x = 0; x < n_pts; ++x) acc += b.weights[x] * u[x] * v[x];
    return acc;
  };
  auto abs_inner = [&](const std::vector<Real>& u) {
    Real acc(0);
    for (int x = 0; x < n_pts; ++x) acc += abs(b.weights[x]) * u[x] * u[x];
    return acc;
  };

  b.polys.push_back(Poly({Real(1)}));
  b.values.push_back(std::vector<Real>(n_pts, Real(1)));
  b.norms.push_back(inner(b.values[0], b.values[0]));

  for (int n = 1; n <= k_max; ++n) {
    // Krylov direction zeta * P_{n-1}, then two Gram-Schmidt sweeps.
    std::vector<Real> c(n + 1, Real(0));
    for (int i = 0; i < n; ++i) c[i + 1] = b.polys[n - 1].coeffs[i];
    std::vector<Real> v(n_pts);
    for (int x = 0; x < n_pts; ++x) v[x] = b.points[x] * b.values[n - 1][x];
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (int j = 0; j < n; ++j) {
        Real coef = inner(v, b.values[j]) / b.norms[j];
        for (int x = 0; x < n_pts; ++x) v[x] -= coef * b.values[j][x];
        for (int i = 0; i <= j; ++i) c[i] -= coef * b.polys[j].coeffs[i];
      }
    }
    Real nrm = inner(v, v);
    if (abs(nrm) <= tolerance() * abs_inner(v))
      fail(ErrorKind::DegenerateWeight, f.name + ": norm of P_" + std::to_string(n) + " vanished");
    b.polys.push_back(Poly(std::move(c)));
    b.values.push_back(std::move(v));
    b.norms.push_back(nrm);
  }
  return b;
}

Real cd_kernel(const OrthoBasis& b, int k, int x, int y) {
  if (k < 1 || k > b.k_max) fail(ErrorKind::IndexOutOfRange, "kernel rank outside the basis");
  if (x < 0 || y < 0 || x > b.truncation || y > b.truncation)
    fail(ErrorKind::IndexOutOfRange, "kernel argument outside the truncated lattice");
  const Real& wx = b.weights[x];
  const Real& wy = b.weights[y];
  const Poly& Pk = b.polys[k];
  const Poly& Pk1 = b.polys[k - 1];
  const Real& nk1 = b.norms[k - 1];
  if (x == y) {
    const Real& px = b.points[x];
    return wx / nk1 * (Pk.derivative(px) * Pk1(px) - Pk1.derivative(px) * Pk(px));
  }
  Real split = sqrt(abs(wx * wy));
  if (wx < 0) split = -split;
  Real num = b.values[k][x] * b.values[k - 1][y] - b.values[k - 1][x] * b.values[k][y];
  return split / nk1 * num / (b.points[x] - b.points[y]);
}

Real gap_probability_gram(const OrthoBasis& b, int k, int s) {
  if (k > b.k_max + 1) fail(ErrorKind::IndexOutOfRange, "k exceeds the basis size");
  if (s < k) return Real(0);
  const FamilySpec& f = b.family;
  if (f.finite() && s >= f.N() + 1) return Real(1);
  const int upto = std::min(s, b.truncation + 1);
  std::vector<std::vector<Real>> G(k, std::vector<Real>(k, Real(0)));
  for (int x = 0; x < upto; ++x)
    for (int m = 0; m < k; ++m)
      for (int n = 0; n <= m; ++n) G[m][n] += b.weights[x] * b.values[m][x] * b.values[n][x];
  Real scale(1);
  for (int m = 0; m < k; ++m) {
    for (int n = 0; n < m; ++n) G[n][m] = G[m][n];
    scale *= b.norms[m];
  }
  return determinant(G) / scale;
}

std::vector<Real> gap_probability_gram_table(const OrthoBasis& b, int k, int s_max) {
  std::vector<Real> out;
  if (s_max < k) return out;
  const FamilySpec& f = b.family;
  std::vector<std::vector<Real>> G(k, std::vector<Real>(k, Real(0)));
  Real scale(1);
  for (int m = 0; m < k; ++m) scale *= b.norms[m];
  int x = 0;
  for (int s = k; s <= s_max; ++s) {
    if (f.finite() && s >= f.N() + 1) {
      out.push_back(Real(1));
      continue;
    }
    const int upto = std::min(s, b.truncation + 1);
    for (; x < upto; ++x)
      for (int m = 0; m < k; ++m)
        for (int n = 0; n <= m; ++n) G[m][n] += b.weights[x] * b.values[m][x] * b.values[n][x];
    auto full = G;
    for (int m = 0; m < k; ++m)
      for (int n = 0; n < m; ++n) full[n][m] = full[m][n];
    out.push_back(determinant(full) / scale);
  }
  return out;
}

Real hankel_normalization(const FamilySpec& f, int k, int x_cut) {
  std::vector<Real> w = weight_table(f, x_cut + 1);
  std::vector<Real> mom(2 * k, Real(0));
  for (int x = 0; x <= x_cut; ++x) {
    Real pw = w[x];
    Real pi = f.pi(x);
    for (int j = 0; j < 2 * k - 1; ++j) {
      mom[j] += pw;
      pw *= pi;
    }
  }
  std::vector<std::vector<Real>> H(k, std::vector<Real>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) H[i][j] = mom[i + j];
  return determinant(H);
}

Real gap_probability_enumeration(const FamilySpec& f, int k, int s, int x_cut) {
  if (s < k) return Real(0);
  if (f.finite()) s = std::min(s, f.N() + 1);
  // binom(s, k) guard
  double count = 1;
  for (int i = 0; i < k; ++i) count = count * (s - i) / (i + 1);
  if (count > 1e6) fail(ErrorKind::TooLarge, "too many subsets to enumerate");

  std::vector<Real> w = weight_table(f, s);
  std::vector<Real> pts(s);
  for (int x = 0; x < s; ++x) pts[x] = f.pi(x);

  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  Real total(0);
  while (true) {
    Real term(1);
    for (int i = 0; i < k; ++i) {
      term *= w[idx[i]];
      for (int j = i + 1; j < k; ++j) {
        Real d = pts[idx[i]] - pts[idx[j]];
        term *= d * d;
      }
    }
    total += term;
    int i = k - 1;
    while (i >= 0 && idx[i] == s - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return total / hankel_normalization(f, k, x_cut);
}

Mat2 jump_matrix(const Real& w) { return {Real(0), w, Real(0), Real(0)}; }

Mat2 compute_mk(const FamilySpec& f, int k, const Real& zeta) {
  std::vector<Real> rho = rho_values(f, k);
  Real P(1), S(0);
  for (int m = 0; m < k; ++m) {
    Real pi = f.pi(m);
    Real d = zeta - pi;
    if (abs(d) < pole_gap_tol(pi)) fail(ErrorKind::PoleHit, "m_k evaluated at a lattice pole");
    P *= d;
    S += rho[m] / d;
  }
  return {P, Real(0), P * S, 1 / P};
}

Mat2 compute_mk_derivative(const FamilySpec& f, int k, const Real& zeta) {
  std::vector<Real> rho = rho_values(f, k);
  Real P(1), S(0), dS(0), L(0);
  for (int m = 0; m < k; ++m) {
    Real pi = f.pi(m);
    Real d = zeta - pi;
    if (abs(d) < pole_gap_tol(pi)) fail(ErrorKind::PoleHit, "m_k evaluated at a lattice pole");
    P *= d;
    S += rho[m] / d;
    dS -= rho[m] / (d * d);
    L += 1 / d;
  }
  Real dP = P * L;
  return {dP, Real(0), dP * S + P * dS, -dP / (P * P)};
}

Mat2 compute_Ak(const FamilySpec& f, int k) {
  if (f.finite() && k > f.N()) fail(ErrorKind::IndexOutOfRange, "k exceeds the lattice size");
  std::vector<Real> rho = rho_values(f, k);
  const Real pk = f.pi(k);
  Real prod(1);
  for (int j = 0; j < k; ++j) prod *= pk - f.pi(j);
  Real rho_k = 1 / (weight(f, k) * prod * prod);
  Real denom = rho_k, S1(0);
  for (int m = 0; m < k; ++m) {
    Real d = pk - f.pi(m);
    denom += rho[m] / (d * d);
    S1 += rho[m] / d;
  }
  Real q = 1 / denom;
  Real p = -q * S1;
  Real r = -q * S1 * S1;
  return {p, q, r, -p};
}

LinearM compute_Mk_linear(const FamilySpec& f, int k) {
  if (!f.supportsLinearRecurrence)
    fail(ErrorKind::UnsupportedFamily, f.name + ": d1, d2 are not both of degree <= 1");
  const Real l1 = lead(f.d1, 1), m1 = lead(f.d1, 0);
  const Real l2 = lead(f.d2, 1), m2 = lead(f.d2, 0);
  const Real eta = f.eta();
  const Real ek = pow(eta, k);
  Mat2 A = compute_Ak(f, k);
  std::vector<Real> rho = rho_values(f, k);
  Real rho_sum(0);
  for (const auto& r : rho) rho_sum += r;
  const Real pi0 = f.pi(0), pik = f.pi(k);
  LinearM M;
  M.Lambda = Mat2::diag(ek * l1, l2 / ek);
  M.C.a11 = ek * m1 + ek * l1 * (pi0 - pik - A.a11);
  M.C.a12 = -ek * l1 * A.a12;
  M.C.a21 = -l2 / ek * A.a21 + (ek / eta * l1 - l2 / ek) * rho_sum;
  M.C.a22 = m2 / ek + l2 / ek * (A.a11 + pik - pi0);
  return M;
}

Mat2 compute_Mk_direct(const FamilySpec& f, int k, const Real& zeta) {
  Mat2 mk = compute_mk(f, k, zeta);
  Mat2 A = compute_Ak(f, k);
  Mat2 mk1 = (Mat2::identity() + A / (zeta - f.pi(k))) * mk;
  Mat2 ms = compute_mk(f, k, f.lattice.sigma(zeta));
  Mat2 D = Mat2::diag(f.d1(zeta), f.d2(zeta));
  return ms * D * mat2_inv(mk1, Real(0));
}

Mat2 DrhpSolution::eval(const Real& zeta) const {
  Mat2 m = compute_mk(family, k, zeta);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    Real d = zeta - family.pi(k + static_cast<int>(i));
    if (abs(d) < pole_gap_tol(family.pi(k + static_cast<int>(i))))
      fail(ErrorKind::PoleHit, "m_s evaluated at a lattice pole");
    m = (Mat2::identity() + steps[i] / d) * m;
  }
  return m;
}

Mat2 DrhpSolution::derivative(const Real& zeta) const {
  Mat2 m = compute_mk(family, k, zeta);
  Mat2 dm = compute_mk_derivative(family, k, zeta);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    Real d = zeta - family.pi(k + static_cast<int>(i));
    Mat2 F = Mat2::identity() + steps[i] / d;
    Mat2 dF = steps[i] / (-(d * d));
    dm = dF * m + F * dm;
    m = F * m;
  }
  return dm;
}

DrhpSolution drhp_initial(const FamilySpec& f, int k) {
  DrhpSolution sol;
  sol.family = f;
  sol.k = k;
  sol.s = k;
  return sol;
}

Real residue_violation(const DrhpSolution& sol, const Mat2& A) {
  const Real pi = sol.family.pi(sol.s);
  Mat2 W = jump_matrix(weight(sol.family, sol.s));
  Mat2 m = sol.eval(pi);
  Mat2 dm = sol.derivative(pi);
  Mat2 c1 = A * m * W;
  Mat2 c2 = m * W + A * dm * W - A * m;
  Real scale = std::max({(m * W).norm(), (A * m).norm(), (A * dm * W).norm(), Real(1e-300)});
  return std::max(c1.norm(), c2.norm()) / scale;
}

DrhpSolution drhp_lax_advance(const DrhpSolution& sol, const Mat2& A) {
  Real nil = (A * A).norm();
  if (nil > tolerance() * std::max(A.norm() * A.norm(), Real(1e-300)))
    fail(ErrorKind::ResidueViolation, "advancing matrix is not nilpotent", sol.s);
  Real v = residue_violation(sol, A);
  if (v > 16 * tolerance())
    fail(ErrorKind::ResidueViolation, "residue condition fails at pi_" + std::to_string(sol.s), sol.s);
  DrhpSolution next = sol;
  next.steps.push_back(A);
  next.s = sol.s + 1;
  return next;
}

Mat2 residue_matrix(const DrhpSolution& sol) {
  const Real pi = sol.family.pi(sol.s);
  const Real w = weight(sol.family, sol.s);
  Mat2 m = sol.eval(pi);
  Mat2 dm = sol.derivative(pi);
  const Real &v1 = m.a11, &v2 = m.a21, &dv1 = dm.a11, &dv2 = dm.a21;
  Real q = w * v1 / (m.det() / v1 - w * (dv2 - v2 * dv1 / v1));
  Real p = -q * v2 / v1;
  Real r = -p * p / q;
  return {p, q, r, -p};
}

Real charlier_monic(const Real& a, int k, const Real& zeta) {
  Real s = hyp_sum(HypSeriesSpec{{Real(-k), -zeta}, {}, -1 / a, std::nullopt});
  return pow(-a, k) * s;
}

bool charlier_difference_check(const Real& a, int k, const std::vector<Real>& zeta_samples) {
  return charlier_difference_check(a, k, zeta_samples, [&](const Real& z) { return charlier_monic(a, k, z); });
}

bool charlier_difference_check(const Real& a, int k, const std::vector<Real>& zeta_samples,
                               const std::function<Real(const Real&)>& poly) {
  for (const auto& z : zeta_samples) {
    Real p0 = poly(z), pp = poly(z + 1), pm = poly(z - 1);
    Real lhs = -k * p0;
    Real rhs = a * pp - (z + a) * p0 + z * pm;
    Real scale = abs(a * pp) + abs((z + a) * p0) + abs(z * pm) + abs(lhs);
    if (abs(lhs - rhs) > 64 * tolerance() * std::max(scale, Real(1))) return false;
  }
  return true;
}

}  // namespace dgap
