#include "dgap/lax.hpp"
#include "dgap/oracle.hpp"
#include "dgap/special.hpp"
#include "support.hpp"

#include <random>

using namespace dgap;
using namespace dgap::test;

namespace {

const Real& fine() {
  static const Real t = tolerance() * 16;
  return t;
}

std::vector<Real> zetas() { return {R("0.37"), R("-1.9"), R("4.6"), R("11.3"), R("2.05")}; }

}  // namespace

TEST_CASE("initial state") {
  FamilySpec c = fam("charlier", {{"a", "1"}});
  for (int k = 1; k <= 5; ++k) CHECK_REL(init_state(c, k).h, tgamma(Real(k + 1)), fine());
  LaxState st = init_state(c, 1);
  CHECK(st.s == 1);
  CHECK_REL(st.Dprev, exp(Real(-1)), fine());
  CHECK_REL(st.Dcur, 2 * exp(Real(-1)), fine());

  const Real q("0.7");
  FamilySpec qc = fam("q_charlier", {{"a", "2"}, {"q", "0.7"}});
  for (int k = 1; k <= 4; ++k) CHECK_REL(init_state(qc, k).h, pow(q, -k * k) * q_pochhammer(q, q, k), fine());

  CHECK_FAILS_WITH(init_state(fam("hahn", {{"alpha", "0.5"}, {"beta", "1.5"}, {"N", "12"}}), 2), ErrorKind::UnsupportedFamily);
}

TEST_CASE("epsilon agrees with its determinant form") {
  for (const FamilySpec& f : {fam("charlier", {{"a", "1"}}), fam("meixner", {{"beta", "1.5"}, {"c", "0.3"}}),
                              fam("little_q_jacobi", {{"a", "0.5"}, {"b", "1.5"}, {"q", "0.9"}}),
                              fam("q_krawtchouk", {{"p", "0.7"}, {"N", "20"}, {"q", "0.9"}})}) {
    INFO(f.name);
    LaxState st = init_state(f, f.id == FamilyId::Charlier ? 1 : 2);
    for (int i = 0; i < 6; ++i) {
      Real e = epsilon(st, f);
      CHECK(abs(e - epsilon_det(st, f)) <= fine() * (1 + abs(e)) * 1000);
      st = step_general(st, f);
    }
    // with A_s removed only d1 d2 remains
    LaxState bare = init_state(f, 2);
    bare.p = bare.q = bare.r = 0;
    Real pi1 = f.pi(bare.s + 1);
    LinearCoeffs lc = linear_coeffs(f);
    bare.c11 = lc.m1;
    bare.c12 = bare.c21 = 0;
    bare.c22 = lc.m2;
    bare.kappa1 = lc.l1;
    bare.kappa2 = lc.l2;
    CHECK_REL(epsilon(bare, f), f.d1(pi1) * f.d2(pi1), fine());
  }
}

TEST_CASE("one general step matches the residue conditions") {
  FamilySpec c = fam("charlier", {{"a", "2"}});
  const int k = 2;
  LaxState st = init_state(c, k);
  DrhpSolution sol = drhp_initial(c, k);
  CHECK((st.A() - residue_matrix(sol)).norm() <= fine() * st.A().norm());
  for (int i = 0; i < 5; ++i) {
    sol = drhp_lax_advance(sol, st.A());
    st = step_general(st, c);
    CHECK((st.A() - residue_matrix(sol)).norm() <= R("1e-60") * st.A().norm());
  }
}

TEST_CASE("step invariants on the linear lattice") {
  for (const FamilySpec& f : {fam("charlier", {{"a", "20"}}), fam("meixner", {{"beta", "0.5"}, {"c", "0.9"}}),
                              fam("krawtchouk", {{"p", "0.4"}, {"N", "20"}})}) {
    INFO(f.name);
    const int k = 3;
    LinearCoeffs lc = linear_coeffs(f);
    LaxState st = init_state(f, k);
    for (int i = 0; i < 12; ++i) {
      LaxState next = step_general(st, f);
      CHECK(nilpotency_defect(next) < fine());
      CHECK_ABS(next.c11 + next.p + k, fine() * (1 + abs(next.c11)));
      CHECK_ABS(next.c22 - lc.l2 * next.p - (lc.l2 * k + lc.m2), fine() * (1 + abs(next.c22)) * 10);
      for (const auto& z : zetas()) CHECK_REL(next.M(z).det(), f.d1(z) * f.d2(z), fine() * 100);
      CHECK(compatibility_residual(st, next, f, zetas()) < fine());
      st = next;
    }
  }
}

TEST_CASE("matrix compatibility solve agrees with the closed-form step") {
  FamilySpec f = fam("alternative_q_charlier", {{"a", "3"}, {"q", "0.8"}});
  LaxState a = init_state(f, 3), b = a;
  for (int i = 0; i < 8; ++i) {
    a = step_general(a, f);
    b = compat_solve_step(b, f);
    CHECK((a.A() - b.A()).norm() <= R("1e-60") * a.A().norm());
    CHECK_REL(a.Dcur, b.Dcur, R("1e-60"));
  }
}

TEST_CASE("Fredholm step") {
  FamilySpec c = fam("charlier", {{"a", "1"}});
  LaxState st = init_state(c, 1);
  CHECK_REL(fredholm_step(st, c), R("2.5") * exp(Real(-1)), fine());

  FamilySpec m = fam("meixner", {{"beta", "0.5"}, {"c", "0.9"}});
  OrthoBasis b = build_ortho_basis(m, 3);
  auto gram = gap_probability_gram_table(b, 4, 31);
  auto D = general_D(m, 4, 30);
  REQUIRE(D.size() == gram.size());
  for (size_t i = 0; i < D.size(); ++i) CHECK_REL(D[i], gram[i], fine() * 10);
}

TEST_CASE("finite lattice ends at one") {
  FamilySpec kr = fam("krawtchouk", {{"p", "0.4"}, {"N", "12"}});
  auto D = general_D(kr, 3, 13);
  CHECK(D.back() == 1);
  OrthoBasis b = build_ortho_basis(kr, 2);
  auto gram = gap_probability_gram_table(b, 3, 14);
  for (size_t i = 0; i < D.size(); ++i) CHECK_REL(D[i], gram[i], R("1e-60"));
  GapTable t = run(kr, 3, 40);
  CHECK(t.rows.back().s == 13);
  CHECK(t.rows.back().D + t.rows.back().mass == 1);
}

TEST_CASE("run") {
  FamilySpec c = fam("charlier", {{"a", "20"}});
  GapTable t = run(c, 6, 80);
  REQUIRE(t.rows.size() == 75);
  Real sum(0), peak(-1);
  int at = -1;
  for (const auto& r : t.rows) {
    CHECK(r.density >= 0);
    sum += r.density;
    if (r.density > peak) {
      peak = r.density;
      at = r.s;
    }
  }
  CHECK(sum <= 1 + tolerance());
  CHECK(sum > R("0.999"));
  // peak location from the oracle table
  OrthoBasis b = build_ortho_basis(c, 5);
  auto gram = gap_probability_gram_table(b, 6, 81);
  int oracle_at = -1;
  Real best(-1);
  for (size_t i = 0; i + 1 < gram.size(); ++i)
    if (gram[i + 1] - gram[i] > best) best = gram[i + 1] - gram[i], oracle_at = 6 + static_cast<int>(i);
  CHECK(at == oracle_at);
  CHECK(at > 20);
  CHECK(at < 50);

  GapTable one = run(c, 6, 6);
  REQUIRE(one.rows.size() == 1);
  CHECK_REL(one.rows[0].D, exp(Real(-120)), fine());
  CHECK_FAILS_WITH(run(c, 6, 5), ErrorKind::InvalidParameter);
}

TEST_CASE("property: general recurrence matches the oracle for random parameters") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0, 1);
  const Real bound = pow(Real(10), -static_cast<int>(precision_bits() / 8));
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<FamilySpec> fs = {
        make_family("charlier", {{"a", Real(0.3 + 8 * U(rng))}}),
        make_family("meixner", {{"beta", Real(0.2 + 4 * U(rng))}, {"c", Real(0.05 + 0.8 * U(rng))}}),
        make_family("krawtchouk", {{"p", Real(0.1 + 0.8 * U(rng))}, {"N", Real(30)}}),
        make_family("q_charlier", {{"a", Real(0.3 + 3 * U(rng))}, {"q", Real(0.4 + 0.5 * U(rng))}}),
        make_family("little_q_jacobi", {{"a", Real(0.2 + 0.8 * U(rng))}, {"b", Real(0.2 + 0.8 * U(rng))}, {"q", Real(0.4 + 0.5 * U(rng))}}),
        make_family("little_q_laguerre", {{"a", Real(0.2 + 0.8 * U(rng))}, {"q", Real(0.4 + 0.5 * U(rng))}}),
        make_family("alternative_q_charlier", {{"a", Real(0.5 + 4 * U(rng))}, {"q", Real(0.5 + 0.4 * U(rng))}}),
        // the forward recurrence on {q^-x} with long N loses digits quickly for small q; see below
        make_family("q_krawtchouk", {{"p", Real(0.2 + 2 * U(rng))}, {"N", Real(30)}, {"q", Real(0.9 + 0.08 * U(rng))}}),
    };
    for (const auto& f : fs) {
      for (int k = 1; k <= 4; ++k) {
        INFO(f.name << " k=" << k);
        auto D = general_D(f, k, 25);
        OrthoBasis b = build_ortho_basis(f, k - 1);
        auto gram = gap_probability_gram_table(b, k, 26);
        for (size_t i = 0; i < D.size(); ++i) CHECK(rel_diff(D[i], gram[i]) < bound);
      }
    }
  }
}

TEST_CASE("q-Krawtchouk at small q: digits lost per step are recovered by precision") {
  // The map (A_s, C_s) -> (A_{s+1}, C_{s+1}) amplifies relative perturbations by roughly
  // 1e4 per step here, independently of the arithmetic used to evaluate it.
  auto worst_at = [](unsigned bits) {
    PrecisionScope scope(bits);
    FamilySpec f = make_family("q_krawtchouk", {{"p", Real("1.3")}, {"N", Real(30)}, {"q", Real("0.65")}});
    auto D = general_D(f, 1, 20);
    OrthoBasis b = build_ortho_basis(f, 0);
    auto gram = gap_probability_gram_table(b, 1, 21);
    Real w(0);
    for (size_t i = 0; i < D.size(); ++i) w = std::max<Real>(w, rel_diff(D[i], gram[i]));
    return static_cast<double>(w);
  };
  double lo = worst_at(256), hi = worst_at(768);
  CHECK(lo > 1e-20);
  CHECK(hi < 1e-60);
}
