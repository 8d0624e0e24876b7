#include "dgap/family.hpp"
#include "dgap/special.hpp"
#include "support.hpp"

#include <set>

using namespace dgap;
using namespace dgap::test;

namespace {

// One valid parameter set per family.
std::vector<FamilySpec> samples() {
  return {
      fam("hahn", {{"alpha", "0.5"}, {"beta", "1.5"}, {"N", "12"}}),
      fam("meixner", {{"beta", "0.5"}, {"c", "0.9"}}),
      fam("krawtchouk", {{"p", "0.4"}, {"N", "20"}}),
      fam("charlier", {{"a", "2"}}),
      fam("q_hahn", {{"alpha", "0.5"}, {"beta", "0.7"}, {"N", "10"}, {"q", "0.8"}}),
      fam("little_q_jacobi", {{"a", "0.5"}, {"b", "1.5"}, {"q", "0.9"}}),
      fam("q_meixner", {{"b", "0.5"}, {"c", "2"}, {"q", "0.7"}}),
      fam("quantum_q_krawtchouk", {{"p", "8"}, {"N", "8"}, {"q", "0.8"}}),
      fam("q_krawtchouk", {{"p", "0.7"}, {"N", "20"}, {"q", "0.9"}}),
      fam("affine_q_krawtchouk", {{"p", "0.5"}, {"N", "10"}, {"q", "0.8"}}),
      fam("little_q_laguerre", {{"a", "0.5"}, {"q", "0.9"}}),
      fam("alternative_q_charlier", {{"a", "3"}, {"q", "0.8"}}),
      fam("q_charlier", {{"a", "2"}, {"q", "0.7"}}),
      fam("al_salam_carlitz_ii", {{"a", "0.5"}, {"q", "0.7"}}),
  };
}

}  // namespace

TEST_CASE("catalog lists fourteen families, eight with linear recurrences") {
  const auto& cat = family_catalog();
  CHECK(cat.size() == 14);
  std::set<std::string> linear;
  for (const auto& e : cat)
    if (e.supportsLinearRecurrence) linear.insert(e.name);
  CHECK(linear == std::set<std::string>{"meixner", "krawtchouk", "charlier", "little_q_jacobi", "q_krawtchouk",
                                        "little_q_laguerre", "alternative_q_charlier", "q_charlier"});
}

TEST_CASE("make_family examples") {
  FamilySpec c = fam("charlier", {{"a", "20"}});
  CHECK(c.lattice.kind == LatticeKind::Linear);
  CHECK(c.d1.coeffs.size() == 2);
  CHECK(c.d1(Real(5)) == 5);
  CHECK(c.d1(Real(0)) == 0);
  CHECK(c.d2.degree() == 0);
  CHECK(c.d2(Real(3)) == 20);
  CHECK(c.eta() == 1);
  CHECK(!c.finite());

  FamilySpec h = fam("hahn", {{"alpha", "0.5"}, {"beta", "1.5"}, {"N", "12"}});
  CHECK(!h.supportsLinearRecurrence);
  CHECK(h.d1.degree() == 2);
  CHECK(h.d2.degree() == 2);

  CHECK_FAILS_WITH(fam("meixner", {{"beta", "0"}, {"c", "0.5"}}), ErrorKind::InvalidParameter);
  CHECK_FAILS_WITH(fam("meixner", {{"beta", "1"}, {"c", "1"}}), ErrorKind::InvalidParameter);
  CHECK_FAILS_WITH(fam("krawtchouk", {{"p", "0.5"}, {"N", "3.5"}}), ErrorKind::InvalidParameter);
  CHECK_FAILS_WITH(fam("charlier", {{"a", "1"}, {"b", "2"}}), ErrorKind::InvalidParameter);
  CHECK_FAILS_WITH(fam("charlier", {}), ErrorKind::InvalidParameter);
  CHECK_FAILS_WITH(fam("q_charlier", {{"a", "1"}, {"q", "1.2"}}), ErrorKind::InvalidParameter);
  CHECK_FAILS_WITH(fam("nonesuch", {}), ErrorKind::InvalidParameter);
}

TEST_CASE("lattice orientation and ordering") {
  FamilySpec j = fam("little_q_jacobi", {{"a", "0.5"}, {"b", "1.5"}, {"q", "0.9"}});
  CHECK_REL(j.pi(2), R("0.81"), tolerance() * tolerance());
  CHECK(j.eta() == 1 / R("0.9"));
  CHECK(j.ordering == Ordering::DecreasingPi);
  FamilySpec k = fam("q_krawtchouk", {{"p", "0.7"}, {"N", "20"}, {"q", "0.9"}});
  CHECK_REL(k.pi(2), 1 / R("0.81"), tolerance() * tolerance());
  CHECK(k.ordering == Ordering::IncreasingPi);
  CHECK(k.N() == 20);
}

TEST_CASE("weight examples") {
  FamilySpec c = fam("charlier", {{"a", "2"}});
  CHECK(weight(c, 0) == 1);
  CHECK(weight(c, 2) == 2);
  FamilySpec qc = fam("q_charlier", {{"a", "2"}, {"q", "0.7"}});
  CHECK_REL(weight(qc, 1), R("2") / (1 - R("0.7")), tolerance() * tolerance());
  FamilySpec kr = fam("krawtchouk", {{"p", "0.4"}, {"N", "20"}});
  CHECK_FAILS_WITH(weight(kr, 21), ErrorKind::IndexOutOfRange);
  CHECK_FAILS_WITH(weight(c, -1), ErrorKind::IndexOutOfRange);
  // binomial weights sum to one
  Real sum(0);
  for (int x = 0; x <= 20; ++x) sum += weight(kr, x);
  CHECK_REL(sum, Real(1), tolerance() * tolerance() * 100);
}

TEST_CASE("weight_table agrees with direct evaluation") {
  for (const auto& f : samples()) {
    INFO(f.name);
    int n = f.finite() ? f.N() + 1 : 40;
    auto w = weight_table(f, n);
    REQUIRE(w.size() == static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) CHECK_REL(w[x], weight(f, x), tolerance() * tolerance() * 1e6);
  }
}

TEST_CASE("ratio identity holds for every family and fails when d2 is corrupted") {
  for (const auto& f : samples()) {
    INFO(f.name);
    CHECK(check_ratio_identity(f, 40, tolerance()));
    FamilySpec bad = f;
    bad.d2 = poly_scale(bad.d2, Real(2));
    CHECK(!check_ratio_identity(bad, 40, tolerance()));
  }
  // Charlier: w(x-1)/w(x) = x/a
  FamilySpec c = fam("charlier", {{"a", "3"}});
  for (int x = 1; x < 10; ++x) CHECK_REL(weight(c, x - 1) / weight(c, x), Real(x) / 3, tolerance() * tolerance());
}

TEST_CASE("truncation point bounds the weighted tail") {
  FamilySpec c = fam("charlier", {{"a", "2"}});
  const Real tail_tol = R("1e-60");
  for (int k : {1, 3, 6}) {
    int cut = truncation_point(c, k, tail_tol);
    Real tail(0);
    for (int x = cut + 1; x < cut + 400; ++x) tail += weight(c, x) * pow(Real(1 + x), 2 * k);
    CHECK(tail < tail_tol);
  }
  FamilySpec kr = fam("krawtchouk", {{"p", "0.4"}, {"N", "20"}});
  CHECK(truncation_point(kr, 3, tail_tol) == 20);
}
