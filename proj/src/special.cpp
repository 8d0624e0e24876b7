#include "dgap/special.hpp"
#include "dgap/errors.hpp"

#include <cmath>
#include <limits>

namespace dgap {

namespace {

constexpr int kMaxTerms = 200000;
constexpr long kNoTermination = std::numeric_limits<long>::max();

// Smallest n >= 0 with a == -n (classical) or a == q^-n (basic); kNoTermination otherwise.
long termination_index(const Real& a, const std::optional<Real>& q, const Real& tol) {
  if (!q) {
    Real n = -a;
    Real r = round(n);
    if (r >= 0 && abs(n - r) <= tol * (1 + abs(r))) return r.convert_to<long>();
    return kNoTermination;
  }
  if (a <= 0) return kNoTermination;
  Real n = -log(a) / log(*q);
  Real r = round(n);
  if (r < 0 || r > 1e6) return kNoTermination;
  if (abs(a - pow(*q, -r)) <= tol * abs(a)) return r.convert_to<long>();
  return kNoTermination;
}

}  // namespace

Real pochhammer(const Real& a, int n) {
  Real r(1);
  for (int j = 0; j < n; ++j) r *= a + j;
  return r;
}

Real q_pochhammer(const Real& a, const Real& q, int n) {
  Real r(1);
  Real aq = a;
  for (int j = 0; j < n; ++j) {
    r *= 1 - aq;
    aq *= q;
  }
  return r;
}

Real q_pochhammer_inf(const Real& a, const Real& q, const Real& tol, Real* error_bound) {
  if (!(q > 0 && q < 1)) fail(ErrorKind::InvalidQ, "infinite q-product needs 0 < q < 1");
  Real r(1);
  Real aq = a;
  for (int l = 0; l < kMaxTerms; ++l) {
    // Tail factors satisfy |log prod| <= |a q^l| / ((1-q)(1-|a q^l|)).
    Real mag = abs(aq);
    if (mag < Real(1) / 2) {
      Real bound = mag / ((1 - q) * (1 - mag));
      if (bound < tol) {
        if (error_bound) *error_bound = bound;
        return r;
      }
    }
    r *= 1 - aq;
    aq *= q;
  }
  fail(ErrorKind::Divergent, "infinite q-product did not reach tolerance");
}

Real hyp_sum(const HypSeriesSpec& spec) { return hyp_sum(spec, tolerance() * tolerance()); }

Real hyp_sum(const HypSeriesSpec& spec, const Real& tol) {
  const auto& q = spec.q;
  if (q && !(*q > 0 && *q < 1)) fail(ErrorKind::InvalidQ, "basic series needs 0 < q < 1");
  const Real match_tol = tolerance();

  long n_stop = kNoTermination;
  for (const auto& a : spec.upper) n_stop = std::min(n_stop, termination_index(a, q, match_tol));
  for (const auto& b : spec.lower) {
    long m = termination_index(b, q, match_tol);
    if (m != kNoTermination && m < n_stop)
      fail(ErrorKind::PoleInLowerParameter, "lower parameter hits a pole before the series terminates");
  }

  const int r = static_cast<int>(spec.upper.size());
  const int s = static_cast<int>(spec.lower.size());
  const Real& z = spec.argument;

  if (n_stop == kNoTermination) {
    bool converges;
    if (!q)
      converges = r < s + 1 || (r == s + 1 && abs(z) < 1);
    else
      converges = r < s + 1 || (r == s + 1 && abs(z) < 1);
    if (!converges) fail(ErrorKind::Divergent, "series neither terminates nor converges");
  }

  Real sum(1);
  Real term(1);
  Real qn(1);  // q^n
  int small_run = 0;
  for (long n = 0; n < n_stop; ++n) {
    if (n >= kMaxTerms) fail(ErrorKind::Divergent, "series did not converge within the term budget");
    Real ratio = z;
    if (!q) {
      for (const auto& a : spec.upper) ratio *= a + n;
      for (const auto& b : spec.lower) ratio /= b + n;
      ratio /= Real(n + 1);
    } else {
      for (const auto& a : spec.upper) ratio *= 1 - a * qn;
      for (const auto& b : spec.lower) ratio /= 1 - b * qn;
      ratio /= 1 - qn * *q;
      // extra factor [(-1)^n q^(n choose 2)]^(1+s-r) contributes (-q^n)^(1+s-r) per step
      int e = 1 + s - r;
      Real f = -qn;
      if (e >= 0)
        for (int i = 0; i < e; ++i) ratio *= f;
      else
        for (int i = 0; i < -e; ++i) ratio /= f;
      qn *= *q;
    }
    term *= ratio;
    sum += term;
    if (n_stop == kNoTermination) {
      if (abs(term) < tol * abs(sum)) {
        if (++small_run == 3) break;
      } else {
        small_run = 0;
      }
    }
  }
  return sum;
}

Real hyp1f1(const Real& a, const Real& b, const Real& z) {
  return hyp_sum(HypSeriesSpec{{a}, {b}, z, std::nullopt});
}

Real hyp2f1(const Real& a, const Real& b, const Real& c, const Real& z) {
  return hyp_sum(HypSeriesSpec{{a, b}, {c}, z, std::nullopt});
}

Real qhyp2phi0(const Real& a, const Real& b, const Real& z, const Real& q) {
  return hyp_sum(HypSeriesSpec{{a, b}, {}, z, q});
}

}  // namespace dgap
