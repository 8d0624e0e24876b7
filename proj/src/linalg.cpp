#include "dgap/linalg.hpp"
#include "dgap/errors.hpp"

#include <algorithm>
#include <utility>

namespace dgap {

Real Mat2::norm() const { return std::max({abs(a11), abs(a12), abs(a21), abs(a22)}); }

Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

Mat2 operator*(const Real& c, const Mat2& a) { return {c * a.a11, c * a.a12, c * a.a21, c * a.a22}; }
Mat2 operator*(const Mat2& a, const Real& c) { return c * a; }
Mat2 operator/(const Mat2& a, const Real& c) { return {a.a11 / c, a.a12 / c, a.a21 / c, a.a22 / c}; }

Mat2 mat2_mul(const Mat2& a, const Mat2& b) { return a * b; }

Mat2 mat2_inv(const Mat2& a) {
  Real n = a.norm();
  return mat2_inv(a, tolerance() * n * n);
}

Mat2 mat2_inv(const Mat2& a, const Real& singular_tol) {
  Real d = a.det();
  if (abs(d) <= singular_tol) fail(ErrorKind::SingularMatrix, "2x2 matrix is singular");
  return {a.a22 / d, -a.a12 / d, -a.a21 / d, a.a11 / d};
}

int Poly::degree(const Real& tol) const {
  int d = static_cast<int>(coeffs.size()) - 1;
  while (d >= 0 && abs(coeffs[d]) <= tol) --d;
  return d;
}

Real Poly::operator()(const Real& z) const {
  Real acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Real Poly::derivative(const Real& z) const {
  Real acc(0);
  for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * z + Real(static_cast<long>(i)) * coeffs[i];
  return acc;
}

Real poly_eval(const Poly& p, const Real& z) { return p(z); }

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return Poly{};
  std::vector<Real> c(a.coeffs.size() + b.coeffs.size() - 1, Real(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return Poly(std::move(c));
}

Poly poly_scale(const Poly& a, const Real& c) {
  Poly r = a;
  for (auto& x : r.coeffs) x *= c;
  return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
  std::vector<Real> c(std::max(a.coeffs.size(), b.coeffs.size()), Real(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] += b.coeffs[i];
  return Poly(std::move(c));
}

Real determinant(std::vector<std::vector<Real>> m) {
  const std::size_t n = m.size();
  Real det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(m[r][col]) > abs(m[piv][col])) piv = r;
    if (m[piv][col] == 0) return Real(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      Real f = m[r][col] / m[col][col];
      if (f == 0) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

}  // namespace dgap
