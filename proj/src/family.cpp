#include "dgap/family.hpp"
#include "dgap/errors.hpp"
#include "dgap/special.hpp"

#include <algorithm>
#include <functional>

namespace dgap {

Real LatticeSpec::point(int x) const {
  switch (kind) {
    case LatticeKind::Linear: return Real(x);
    case LatticeKind::QGeometricDecreasing: return pow(q, x);
    case LatticeKind::QGeometricIncreasing: return pow(q, -x);
  }
  return Real(0);
}

Real LatticeSpec::eta() const {
  switch (kind) {
    case LatticeKind::Linear: return Real(1);
    case LatticeKind::QGeometricDecreasing: return 1 / q;
    case LatticeKind::QGeometricIncreasing: return q;
  }
  return Real(1);
}

Real LatticeSpec::sigma(const Real& z) const {
  if (kind == LatticeKind::Linear) return z - 1;
  return eta() * z;
}

const Real& FamilySpec::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) fail(ErrorKind::InvalidParameter, name + ": missing parameter '" + key + "'");
  return it->second;
}

namespace {

struct Entry {
  FamilyId id;
  const char* name;
  std::vector<std::string> keys;
  LatticeKind lattice;
  bool finite;
  bool linear;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {FamilyId::Hahn, "hahn", {"alpha", "beta", "N"}, LatticeKind::Linear, true, false},
      {FamilyId::Meixner, "meixner", {"beta", "c"}, LatticeKind::Linear, false, true},
      {FamilyId::Krawtchouk, "krawtchouk", {"p", "N"}, LatticeKind::Linear, true, true},
      {FamilyId::Charlier, "charlier", {"a"}, LatticeKind::Linear, false, true},
      {FamilyId::QHahn, "q_hahn", {"alpha", "beta", "N", "q"}, LatticeKind::QGeometricIncreasing, true, false},
      {FamilyId::LittleQJacobi, "little_q_jacobi", {"a", "b", "q"}, LatticeKind::QGeometricDecreasing, false, true},
      {FamilyId::QMeixner, "q_meixner", {"b", "c", "q"}, LatticeKind::QGeometricIncreasing, false, false},
      {FamilyId::QuantumQKrawtchouk, "quantum_q_krawtchouk", {"p", "N", "q"}, LatticeKind::QGeometricIncreasing, true, false},
      {FamilyId::QKrawtchouk, "q_krawtchouk", {"p", "N", "q"}, LatticeKind::QGeometricIncreasing, true, true},
      {FamilyId::AffineQKrawtchouk, "affine_q_krawtchouk", {"p", "N", "q"}, LatticeKind::QGeometricIncreasing, true, false},
      {FamilyId::LittleQLaguerre, "little_q_laguerre", {"a", "q"}, LatticeKind::QGeometricDecreasing, false, true},
      {FamilyId::AlternativeQCharlier, "alternative_q_charlier", {"a", "q"}, LatticeKind::QGeometricDecreasing, false, true},
      {FamilyId::QCharlier, "q_charlier", {"a", "q"}, LatticeKind::QGeometricIncreasing, false, true},
      {FamilyId::AlSalamCarlitzII, "al_salam_carlitz_ii", {"a", "q"}, LatticeKind::QGeometricIncreasing, false, false},
  };
  return table;
}

const char* lattice_label(LatticeKind kind, bool finite) {
  switch (kind) {
    case LatticeKind::Linear: return finite ? "{0..N}" : "{0,1,2,...}";
    case LatticeKind::QGeometricDecreasing: return "{q^x : x >= 0}";
    case LatticeKind::QGeometricIncreasing: return finite ? "{q^-x : 0 <= x <= N}" : "{q^-x : x >= 0}";
  }
  return "";
}

void require(bool ok, const std::string& family, const std::string& what) {
  if (!ok) fail(ErrorKind::InvalidParameter, family + ": " + what);
}

int as_count(const Real& v, const std::string& family) {
  Real r = round(v);
  require(r >= 0 && abs(v - r) == 0, family, "N must be a nonnegative integer");
  return r.convert_to<int>();
}

Poly lin(const Real& c0, const Real& c1) { return Poly({c0, c1}); }
Poly quad_from_roots(const Real& lead, const Real& r1, const Real& r2) {
  return Poly({lead * r1 * r2, -lead * (r1 + r2), lead});
}

// Is v = q^-j for some integer j >= 1 (within tau)?
bool is_inverse_q_power(const Real& v, const Real& q) {
  if (v <= 0) return false;
  Real j = round(-log(v) / log(q));
  if (j < 1) return false;
  return abs(v - pow(q, -j)) <= tolerance() * abs(v);
}

}  // namespace

const std::vector<FamilyInfo>& family_catalog() {
  static const std::vector<FamilyInfo> info = [] {
    std::vector<FamilyInfo> out;
    for (const auto& e : entries()) out.push_back({e.name, e.keys, lattice_label(e.lattice, e.finite), e.linear});
    return out;
  }();
  return info;
}

FamilySpec make_family(const std::string& name, const ParamMap& params) {
  auto it = std::find_if(entries().begin(), entries().end(), [&](const Entry& e) { return name == e.name; });
  if (it == entries().end()) fail(ErrorKind::InvalidParameter, "unknown family '" + name + "'");
  const Entry& e = *it;

  FamilySpec f;
  f.id = e.id;
  f.name = e.name;
  for (const auto& key : e.keys) {
    auto p = params.find(key);
    require(p != params.end(), name, "missing parameter '" + key + "'");
    f.params[key] = p->second;
  }
  for (const auto& [key, value] : params) {
    (void)value;
    require(std::find(e.keys.begin(), e.keys.end(), key) != e.keys.end(), name, "unknown parameter '" + key + "'");
  }
  f.supportsLinearRecurrence = e.linear;
  f.lattice.kind = e.lattice;
  f.ordering = e.lattice == LatticeKind::QGeometricDecreasing ? Ordering::DecreasingPi : Ordering::IncreasingPi;

  Real q(1);
  if (e.lattice != LatticeKind::Linear) {
    q = f.param("q");
    require(q > 0 && q < 1, name, "need 0 < q < 1");
    f.lattice.q = q;
  }
  int N = -1;
  if (e.finite) {
    N = as_count(f.param("N"), name);
    f.lattice.N = N;
  }
  auto P = [&](const char* key) -> const Real& { return f.param(key); };

  switch (e.id) {
    case FamilyId::Hahn: {
      const Real &al = P("alpha"), &be = P("beta");
      require((al > -1 && be > -1) || (al < -N && be < -N), name, "need alpha,beta > -1 or alpha,beta < -N");
      f.d1 = quad_from_roots(Real(1), Real(0), be + N + 1);
      f.d2 = quad_from_roots(Real(1), Real(N + 1), -al);
      break;
    }
    case FamilyId::Meixner: {
      const Real &be = P("beta"), &c = P("c");
      require(be > 0, name, "need beta > 0");
      require(c > 0 && c < 1, name, "need 0 < c < 1");
      f.d1 = lin(Real(0), Real(1));
      f.d2 = lin(c * (be - 1), c);
      f.weight_ratio_limit = c;
      break;
    }
    case FamilyId::Krawtchouk: {
      const Real& p = P("p");
      require(p > 0 && p < 1, name, "need 0 < p < 1");
      f.d1 = lin(Real(0), Real(1));
      Real xi = p / (p - 1);
      f.d2 = lin(-xi * (N + 1), xi);
      break;
    }
    case FamilyId::Charlier: {
      const Real& a = P("a");
      require(a > 0, name, "need a > 0");
      f.d1 = lin(Real(0), Real(1));
      f.d2 = Poly({a});
      break;
    }
    case FamilyId::QHahn: {
      const Real &al = P("alpha"), &be = P("beta");
      bool low = al > 0 && be > 0 && al < 1 / q && be < 1 / q;
      bool high = al > pow(q, -N) && be > pow(q, -N);
      require(low || high, name, "need 0 < alpha,beta < 1/q or alpha,beta > q^-N");
      f.d1 = quad_from_roots(al * be, Real(1), pow(q, -N - 1) / be);
      f.d2 = quad_from_roots(Real(1), al, pow(q, -N - 1));
      break;
    }
    case FamilyId::LittleQJacobi: {
      const Real &a = P("a"), &b = P("b");
      require(a > 0 && a < 1 / q, name, "need 0 < a < 1/q");
      // Outside b < 1/q the weight changes sign but the moment problem stays regular
      // unless (bq;q)_x vanishes.
      require(!is_inverse_q_power(b, q), name, "b must not be a power q^-j, j >= 1");
      f.d1 = lin(Real(-1), Real(1));
      f.d2 = lin(-a, a * b);
      f.weight_ratio_limit = a * q;
      break;
    }
    case FamilyId::QMeixner: {
      const Real &b = P("b"), &c = P("c");
      require(b > 0 && b < 1 / q, name, "need 0 < b < 1/q");
      require(c > 0, name, "need c > 0");
      f.d1 = quad_from_roots(Real(1), Real(1), -b * c);
      f.d2 = lin(-c * b, c);
      break;
    }
    case FamilyId::QuantumQKrawtchouk: {
      const Real& p = P("p");
      require(p > pow(q, -N), name, "need p > q^-N");
      f.d1 = poly_mul(lin(Real(-1), Real(1)), lin(Real(-1), p * pow(q, N + 1)));
      f.d2 = lin(Real(1), -pow(q, N + 1));
      break;
    }
    case FamilyId::QKrawtchouk: {
      const Real& p = P("p");
      require(p > 0, name, "need p > 0");
      f.d1 = lin(-p, p);
      f.d2 = lin(pow(q, -N), -q);
      break;
    }
    case FamilyId::AffineQKrawtchouk: {
      const Real& p = P("p");
      require(p > 0 && p < 1 / q, name, "need 0 < p < 1/q");
      // sign flipped relative to the usual listing so that the ratio identity holds for this weight
      f.d1 = lin(p, -p);
      f.d2 = poly_mul(lin(-p, Real(1)), lin(Real(-1), pow(q, N + 1)));
      break;
    }
    case FamilyId::LittleQLaguerre: {
      const Real& a = P("a");
      require(a > 0 && a < 1 / q, name, "need 0 < a < 1/q");
      f.d1 = lin(Real(-1), Real(1));
      f.d2 = Poly({-a});
      f.weight_ratio_limit = a * q;
      break;
    }
    case FamilyId::AlternativeQCharlier: {
      const Real& a = P("a");
      require(a > 0, name, "need a > 0");
      f.d1 = lin(Real(-1), Real(1));
      f.d2 = lin(Real(0), -a / q);
      break;
    }
    case FamilyId::QCharlier: {
      const Real& a = P("a");
      require(a > 0, name, "need a > 0");
      f.d1 = lin(Real(-1), Real(1));
      f.d2 = Poly({a});
      break;
    }
    case FamilyId::AlSalamCarlitzII: {
      const Real& a = P("a");
      require(a > 0, name, "need a > 0");
      f.d1 = quad_from_roots(Real(1), Real(1), a);
      f.d2 = Poly({a});
      break;
    }
  }
  return f;
}

Real weight(const FamilySpec& f, int x) {
  if (x < 0 || (f.finite() && x > f.N()))
    fail(ErrorKind::IndexOutOfRange, f.name + ": weight index " + std::to_string(x) + " outside the lattice");
  const Real q = f.lattice.q;
  const int N = f.N();
  auto P = [&](const char* key) -> const Real& { return f.param(key); };
  switch (f.id) {
    case FamilyId::Hahn:
      return pochhammer(P("alpha") + 1, x) / pochhammer(Real(1), x) * pochhammer(P("beta") + 1, N - x) /
             pochhammer(Real(1), N - x);
    case FamilyId::Meixner:
      return pochhammer(P("beta"), x) / pochhammer(Real(1), x) * pow(P("c"), x);
    case FamilyId::Krawtchouk:
      return pochhammer(Real(N - x + 1), x) / pochhammer(Real(1), x) * pow(P("p"), x) * pow(1 - P("p"), N - x);
    case FamilyId::Charlier:
      return pow(P("a"), x) / pochhammer(Real(1), x);
    case FamilyId::QHahn: {
      const Real &al = P("alpha"), &be = P("beta");
      return q_pochhammer(al * q, q, x) * q_pochhammer(pow(q, -N), q, x) /
             (q_pochhammer(q, q, x) * q_pochhammer(pow(q, -N) / be, q, x)) * pow(al * be * q, -x);
    }
    case FamilyId::LittleQJacobi:
      return q_pochhammer(P("b") * q, q, x) / q_pochhammer(q, q, x) * pow(P("a") * q, x);
    case FamilyId::QMeixner: {
      const Real &b = P("b"), &c = P("c");
      return q_pochhammer(b * q, q, x) / (q_pochhammer(q, q, x) * q_pochhammer(-b * c * q, q, x)) * pow(c, x) *
             pow(q, x * (x - 1) / 2);
    }
    case FamilyId::QuantumQKrawtchouk:
      return q_pochhammer(P("p") * q, q, N - x) / (q_pochhammer(q, q, x) * q_pochhammer(q, q, N - x)) *
             ((N - x) % 2 ? Real(-1) : Real(1)) * pow(q, x * (x - 1) / 2);
    case FamilyId::QKrawtchouk:
      return q_pochhammer(pow(q, -N), q, x) / q_pochhammer(q, q, x) * pow(-P("p"), -x);
    case FamilyId::AffineQKrawtchouk: {
      const Real& p = P("p");
      return q_pochhammer(p * q, q, x) * q_pochhammer(q, q, N) / (q_pochhammer(q, q, x) * q_pochhammer(q, q, N - x)) *
             pow(p * q, -x);
    }
    case FamilyId::LittleQLaguerre:
      return pow(P("a") * q, x) / q_pochhammer(q, q, x);
    case FamilyId::AlternativeQCharlier:
      return pow(P("a"), x) / q_pochhammer(q, q, x) * pow(q, x * (x + 1) / 2);
    case FamilyId::QCharlier:
      return pow(P("a"), x) / q_pochhammer(q, q, x) * pow(q, x * (x - 1) / 2);
    case FamilyId::AlSalamCarlitzII: {
      const Real& a = P("a");
      return pow(q, x * x) * pow(a, x) / (q_pochhammer(q, q, x) * q_pochhammer(a * q, q, x));
    }
  }
  return Real(0);
}

std::vector<Real> weight_table(const FamilySpec& f, int count) {
  std::vector<Real> w;
  if (count <= 0) return w;
  w.reserve(count);
  // Families with long (possibly truncated) tails use a multiplicative update; the rest
  // are short enough to evaluate directly.
  std::function<Real(int)> factor;
  const Real q = f.lattice.q;
  switch (f.id) {
    case FamilyId::Meixner: {
      Real be = f.param("beta"), c = f.param("c");
      factor = [be, c](int x) { return (be + x - 1) * c / x; };
      break;
    }
    case FamilyId::Charlier: {
      Real a = f.param("a");
      factor = [a](int x) { return a / x; };
      break;
    }
    case FamilyId::LittleQJacobi: {
      Real aq = f.param("a") * q, b = f.param("b");
      factor = [aq, b, q](int x) {
        Real qx = pow(q, x);
        return (1 - b * qx) / (1 - qx) * aq;
      };
      break;
    }
    case FamilyId::QMeixner: {
      Real b = f.param("b"), c = f.param("c");
      factor = [b, c, q](int x) {
        Real qx = pow(q, x);
        return (1 - b * qx) / ((1 - qx) * (1 + b * c * qx)) * c * qx / q;
      };
      break;
    }
    case FamilyId::LittleQLaguerre: {
      Real aq = f.param("a") * q;
      factor = [aq, q](int x) { return aq / (1 - pow(q, x)); };
      break;
    }
    case FamilyId::AlternativeQCharlier: {
      Real a = f.param("a");
      factor = [a, q](int x) {
        Real qx = pow(q, x);
        return a * qx / (1 - qx);
      };
      break;
    }
    case FamilyId::QCharlier: {
      Real a = f.param("a");
      factor = [a, q](int x) {
        Real qx = pow(q, x);
        return a * qx / (q * (1 - qx));
      };
      break;
    }
    case FamilyId::AlSalamCarlitzII: {
      Real a = f.param("a");
      factor = [a, q](int x) {
        Real qx = pow(q, x);
        return qx * qx / q * a / ((1 - qx) * (1 - a * qx));
      };
      break;
    }
    default:
      for (int x = 0; x < count; ++x) w.push_back(weight(f, x));
      return w;
  }
  w.push_back(weight(f, 0));
  for (int x = 1; x < count; ++x) w.push_back(w.back() * factor(x));
  return w;
}

bool check_ratio_identity(const FamilySpec& f, int x_max, const Real& tol) {
  if (f.finite()) x_max = std::min(x_max, f.N());
  std::vector<Real> w = weight_table(f, x_max + 1);
  const Real eta = f.eta();
  for (int x = 1; x <= x_max; ++x) {
    Real pi = f.pi(x);
    Real lhs = w[x - 1] * f.d2(pi);
    Real rhs = eta * f.d1(pi) * w[x];
    if (!near_rel(lhs, rhs, tol)) return false;
  }
  return true;
}

int truncation_point(const FamilySpec& f, int k, const Real& tail_tol) {
  if (f.finite()) return f.N();
  constexpr int kMaxIndex = 1000000;
  Real growth = f.lattice.kind == LatticeKind::QGeometricIncreasing ? 1 / f.lattice.q : Real(1);
  Real limit = f.weight_ratio_limit * pow(growth, 2 * k);
  Real prev = abs(weight(f, 0)) * pow(1 + abs(f.pi(0)), 2 * k);
  std::vector<Real> block;
  int have = 0;
  for (int x = 1; x < kMaxIndex; ++x) {
    if (x >= have) {
      int next = std::max(64, 2 * have);
      block = weight_table(f, next);
      have = next;
    }
    Real term = abs(block[x]) * pow(1 + abs(f.pi(x)), 2 * k);
    if (prev > 0 && x > k + 1) {
      Real r = std::max(term / prev, limit);
      if (term / prev < 1 && r < 1 && term * r / (1 - r) < tail_tol) return x;
    }
    if (term == 0 && x > k + 1) return x;
    prev = term;
  }
  fail(ErrorKind::DegenerateWeight, f.name + ": weight tail does not decay fast enough to truncate");
}

}  // namespace dgap
