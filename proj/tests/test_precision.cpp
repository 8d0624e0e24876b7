#include "dgap/linalg.hpp"
#include "support.hpp"

#include <random>

using namespace dgap;
using namespace dgap::test;

TEST_CASE("default working precision and tolerance") {
  CHECK(precision_bits() == 256);
  CHECK(tolerance() == ldexp(Real(1), -128));
  CHECK(decimal_digits() == 77);
}

TEST_CASE("precision scope restores the previous setting") {
  {
    PrecisionScope scope(512);
    CHECK(precision_bits() == 512);
    CHECK(tolerance() == ldexp(Real(1), -256));
    Real third = Real(1) / 3;
    CHECK(abs(third * 3 - 1) < ldexp(Real(1), -500));
  }
  CHECK(precision_bits() == 256);
  CHECK_FAILS_WITH(set_precision(8), ErrorKind::InvalidParameter);
}

TEST_CASE("parsing accepts fractions and rejects junk") {
  CHECK_REL(parse_real("1/1.7"), Real(10) / 17, tolerance() * tolerance());
  CHECK(parse_real("0.25") == Real(1) / 4);
  CHECK_FAILS_WITH(parse_real("abc"), ErrorKind::InvalidParameter);
}

TEST_CASE("decimal output round-trips at the stated digits") {
  Real x = sqrt(Real(2));
  std::string text = to_string(x);
  CHECK(to_string(parse_real(text)) == text);
}

TEST_CASE("mat2_mul examples") {
  Mat2 I = Mat2::identity();
  Mat2 II = mat2_mul(I, I);
  CHECK(II.a11 == 1);
  CHECK(II.a12 == 0);
  CHECK(II.a21 == 0);
  CHECK(II.a22 == 1);
  Mat2 P = mat2_mul({Real(1), Real(2), Real(3), Real(4)}, {Real(0), Real(1), Real(1), Real(0)});
  CHECK(P.a11 == 2);
  CHECK(P.a12 == 1);
  CHECK(P.a21 == 4);
  CHECK(P.a22 == 3);
  Mat2 N{Real(1), Real(1), Real(-1), Real(-1)};
  CHECK((N * N).norm() == 0);
}

TEST_CASE("mat2_inv examples") {
  Mat2 I = mat2_inv(Mat2::identity());
  CHECK((I - Mat2::identity()).norm() == 0);
  Mat2 D = mat2_inv(Mat2::diag(Real(2), Real(1) / 2));
  CHECK(D.a11 == Real(1) / 2);
  CHECK(D.a22 == 2);
  Mat2 S = mat2_inv({Real(0), Real(1), Real(1), Real(0)});
  CHECK(S.a12 == 1);
  CHECK(S.a21 == 1);
  CHECK(S.a11 == 0);
  CHECK_FAILS_WITH(mat2_inv({Real(1), Real(2), Real(2), Real(4)}), ErrorKind::SingularMatrix);
}

TEST_CASE("poly_eval examples") {
  CHECK(poly_eval(Poly({Real(0), Real(1)}), Real(3)) == 3);
  CHECK(poly_eval(Poly({Real(7)}), Real(-11)) == 7);
  CHECK(poly_eval(Poly({Real(-1), Real(1)}), Real(1)) == 0);
  Poly p({Real(1), Real(2), Real(3)});
  CHECK(p.derivative(Real(2)) == 14);
  CHECK(Poly({Real(1), Real(2), Real(0)}).degree() == 1);
  CHECK(Poly().degree() == -1);
}

TEST_CASE("determinant of a dense matrix") {
  std::vector<std::vector<Real>> m = {{Real(2), Real(1), Real(0)}, {Real(1), Real(3), Real(1)}, {Real(0), Real(1), Real(4)}};
  CHECK(determinant(m) == 18);
}

TEST_CASE("property: det(AB) = det(A) det(B) and nilpotent squares vanish") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-5, 5);
  for (int i = 0; i < 200; ++i) {
    Mat2 A{Real(U(rng)), Real(U(rng)), Real(U(rng)), Real(U(rng))};
    Mat2 B{Real(U(rng)), Real(U(rng)), Real(U(rng)), Real(U(rng))};
    Real lhs = (A * B).det(), rhs = A.det() * B.det();
    CHECK(abs(lhs - rhs) <= tolerance() * (1 + abs(rhs)) * 100);
    Real p(U(rng)), q(U(rng));
    if (q == 0) continue;
    Mat2 N{p, q, -p * p / q, -p};
    CHECK((N * N).norm() <= tolerance() * N.norm() * N.norm());
  }
}
