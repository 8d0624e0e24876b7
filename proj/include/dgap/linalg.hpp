#pragma once

#include "dgap/precision.hpp"

#include <vector>

namespace dgap {

struct Mat2 {
  Real a11{0}, a12{0}, a21{0}, a22{0};

  static Mat2 identity() { return {Real(1), Real(0), Real(0), Real(1)}; }
  static Mat2 diag(const Real& d1, const Real& d2) { return {d1, Real(0), Real(0), d2}; }

  Real det() const { return a11 * a22 - a12 * a21; }
  Real trace() const { return a11 + a22; }
  // Max-abs entry norm.
  Real norm() const;
};

Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(const Real& c, const Mat2& a);
Mat2 operator*(const Mat2& a, const Real& c);
Mat2 operator/(const Mat2& a, const Real& c);

Mat2 mat2_mul(const Mat2& a, const Mat2& b);
// Throws SingularMatrix when |det| <= singular_tol (defaults to tau * |a|^2).
Mat2 mat2_inv(const Mat2& a);
Mat2 mat2_inv(const Mat2& a, const Real& singular_tol);

// Ascending coefficients.
struct Poly {
  std::vector<Real> coeffs;

  Poly() = default;
  explicit Poly(std::vector<Real> c) : coeffs(std::move(c)) {}

  // Degree after stripping trailing coefficients with |c| <= tol; -1 for the zero polynomial.
  int degree(const Real& tol = Real(0)) const;
  Real operator()(const Real& z) const;
  Real derivative(const Real& z) const;
};

Real poly_eval(const Poly& p, const Real& z);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Real& c);
Poly poly_add(const Poly& a, const Poly& b);

// Determinant of a dense square matrix by Gaussian elimination with partial pivoting.
Real determinant(std::vector<std::vector<Real>> m);

}  // namespace dgap
