#pragma once

#include "dgap/family.hpp"
#include "dgap/linalg.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace dgap {

struct OrthoBasis {
  FamilySpec family;
  int k_max = 0;
  std::vector<Poly> polys;  // monic P_0..P_kmax
  std::vector<Real> norms;  // (P_n, P_n)_w over the truncated lattice
  int truncation = 0;       // last lattice index included

  std::vector<Real> points;                // pi_0..pi_trunc
  std::vector<Real> weights;               // w(0)..w(trunc)
  std::vector<std::vector<Real>> values;   // values[n][x] = P_n(pi_x)
};

OrthoBasis build_ortho_basis(const FamilySpec& f, int k_max, const Real& tail_tol);
OrthoBasis build_ortho_basis(const FamilySpec& f, int k_max);

// Christoffel-Darboux kernel with the symmetric sqrt(w) splitting.
Real cd_kernel(const OrthoBasis& b, int k, int x, int y);

// det(1 - K restricted to {pi_s, pi_{s+1}, ...}) via the k x k Gram matrix over {pi_0..pi_{s-1}}.
Real gap_probability_gram(const OrthoBasis& b, int k, int s);
// Same for s = k..s_max, accumulated incrementally; entry i is D_{k+i}.
std::vector<Real> gap_probability_gram_table(const OrthoBasis& b, int k, int s_max);

// Hankel moment determinant det[sum_x pi_x^(i+j) w(x)]_{i,j<k} over x <= x_cut.
Real hankel_normalization(const FamilySpec& f, int k, int x_cut);

Real gap_probability_enumeration(const FamilySpec& f, int k, int s, int x_cut);

// w(x) jump matrix [[0, w],[0, 0]]
Mat2 jump_matrix(const Real& w);

Mat2 compute_mk(const FamilySpec& f, int k, const Real& zeta);
Mat2 compute_mk_derivative(const FamilySpec& f, int k, const Real& zeta);
Mat2 compute_Ak(const FamilySpec& f, int k);

struct LinearM {
  Mat2 Lambda;
  Mat2 C;
};
LinearM compute_Mk_linear(const FamilySpec& f, int k);
// M_k(zeta) = m_k(sigma zeta) D(zeta) m_{k+1}(zeta)^-1 without the linear ansatz.
Mat2 compute_Mk_direct(const FamilySpec& f, int k, const Real& zeta);

// m_s(zeta) = (I + A_{s-1}/(zeta - pi_{s-1})) ... (I + A_k/(zeta - pi_k)) m_k(zeta)
struct DrhpSolution {
  FamilySpec family;
  int k = 0;
  int s = 0;
  std::vector<Mat2> steps;  // A_k..A_{s-1}

  Mat2 eval(const Real& zeta) const;
  Mat2 derivative(const Real& zeta) const;
};

DrhpSolution drhp_initial(const FamilySpec& f, int k);
// Residue conditions at pi_s are verified before returning m_{s+1}.
DrhpSolution drhp_lax_advance(const DrhpSolution& sol, const Mat2& A);
// The unique A satisfying the residue conditions at pi_s.
Mat2 residue_matrix(const DrhpSolution& sol);
// Worst violation of the two residue conditions at pi_s for a candidate A.
Real residue_violation(const DrhpSolution& sol, const Mat2& A);

// Charlier difference equation -k P(z) = a P(z+1) - (z+a) P(z) + z P(z-1).
Real charlier_monic(const Real& a, int k, const Real& zeta);
bool charlier_difference_check(const Real& a, int k, const std::vector<Real>& zeta_samples);
bool charlier_difference_check(const Real& a, int k, const std::vector<Real>& zeta_samples,
                               const std::function<Real(const Real&)>& poly);

}  // namespace dgap
