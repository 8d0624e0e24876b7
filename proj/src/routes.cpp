#include "dgap/routes.hpp"
#include "dgap/errors.hpp"
#include "dgap/oracle.hpp"
#include "dgap/painleve.hpp"

namespace dgap {

const char* method_name(Method m) {
  switch (m) {
    case Method::Oracle: return "oracle";
    case Method::General: return "general";
    case Method::Painleve: return "painleve";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "oracle") return Method::Oracle;
  if (name == "general") return Method::General;
  if (name == "painleve") return Method::Painleve;
  fail(ErrorKind::InvalidParameter, "unknown method '" + name + "'");
}

std::vector<Real> oracle_D(const FamilySpec& f, int k, int s_max) {
  if (k < 1) fail(ErrorKind::InvalidParameter, "k must be at least 1");
  if (f.finite() && k > f.N()) fail(ErrorKind::IndexOutOfRange, "k exceeds N");
  OrthoBasis b = build_ortho_basis(f, k - 1);
  return gap_probability_gram_table(b, k, s_max + 1);
}

namespace {

bool recoverable(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::DPSingular:
    case ErrorKind::DegenerateParameterization:
    case ErrorKind::DegenerateKappa:
    case ErrorKind::RootNotFound:
      return true;
    default:
      return false;
  }
}

bool beyond(const FamilySpec& f, int t) { return f.finite() && t > f.N() + 1; }

bool done_at(const FamilySpec& f, int t, const std::vector<Real>& D) { return beyond(f, t) || gap_saturated(D.back()); }

// Charlier / Meixner / Krawtchouk in (f, g) coordinates.
std::vector<Real> dp_route(const FamilySpec& f, int k, int s_max) {
  const int last = s_max + 1;
  DPState st = family_recurrence_init(f, k);
  std::vector<Real> D{st.Dprev, st.Dcur};
  const bool charlier = f.id == FamilyId::Charlier;
  std::optional<LaxState> matrix;  // set while the scalar coordinates are unusable
  auto scalar_step = [&](const DPState& d) { return charlier ? dpiv_step(d, f.param("a")) : dpv_step(d, f); };
  int s = k;
  for (int t = k + 2; t <= last; ++t) {
    if (done_at(f, t, D)) {
      D.push_back(Real(1));
      continue;
    }
    while (s < t - 1) {
      if (!matrix) {
        try {
          st = scalar_step(st);
          ++s;
          continue;
        } catch (const Error& e) {
          if (!recoverable(e)) throw;
          matrix = lax_from_dp(st, f);
        }
      }
      *matrix = step_general(*matrix, f);
      ++s;
      try {
        st = dp_from_lax(*matrix, f);
        matrix.reset();
      } catch (const Error& e) {
        if (!recoverable(e)) throw;
      }
    }
    D.push_back(matrix ? matrix->Dcur : st.Dcur);
  }
  return D;
}

std::vector<Real> qcharlier_route(const FamilySpec& f, int k, int s_max) {
  const int last = s_max + 1;
  QCharlierState st = qcharlier_init(f, k);
  std::vector<Real> D{st.Dprev, st.Dcur};
  for (int t = k + 2; t <= last; ++t) {
    if (gap_saturated(D.back())) {
      D.push_back(Real(1));
      continue;
    }
    while (st.s < t - 1) st = qcharlier_step(st, f);
    D.push_back(st.Dcur);
  }
  return D;
}

// Jimbo-Sakai coordinates (y, z, w) stepped forward, matrices rebuilt each step.
std::vector<Real> js_route(const FamilySpec& f, int k, int s_max) {
  const int last = s_max + 1;
  LaxState st = init_state(f, k);
  std::vector<Real> D{st.Dprev, st.Dcur};
  std::optional<QPVIData> cur;  // q-PVI data at st.s when available
  for (int t = k + 2; t <= last; ++t) {
    if (done_at(f, t, D)) {
      D.push_back(Real(1));
      continue;
    }
    while (st.s < t - 1) {
      bool done = false;
      if (cur) {
        try {
          const Real tn = f.pi(st.s + 1);
          JSVars v = js_forward(cur->vars(), tn, cur->c);
          auto [A, C] = js_reconstruct(v, tn, cur->c);
          QPVIConstants c = cur->c;
          st = advance_with(st, f, A, C);
          cur->s = st.s;
          cur->t = tn;
          cur->y = v.y;
          cur->z = v.z;
          cur->w = v.w;
          cur->c = c;
          done = true;
        } catch (const Error& e) {
          if (!recoverable(e)) throw;
          cur.reset();
        }
      }
      if (!done) {
        // At s = k the root of A_12 is at infinity; the matrix step bridges it.
        st = compat_solve_step(st, f);
        try {
          cur = qp6_build(st, f);
        } catch (const Error& e) {
          if (!recoverable(e)) throw;
          cur.reset();
        }
      }
    }
    D.push_back(st.Dcur);
  }
  return D;
}

std::vector<Real> compat_route(const FamilySpec& f, int k, int s_max) {
  const int last = s_max + 1;
  LaxState st = init_state(f, k);
  std::vector<Real> D{st.Dprev, st.Dcur};
  for (int t = k + 2; t <= last; ++t) {
    if (done_at(f, t, D)) {
      D.push_back(Real(1));
      continue;
    }
    while (st.s < t - 1) st = compat_solve_step(st, f);
    D.push_back(st.Dcur);
  }
  return D;
}

std::vector<Real> trim(std::vector<Real> D, int k, int s_max) {
  D.resize(std::max(0, s_max + 2 - k));
  return D;
}

}  // namespace

std::string painleve_route_name(const FamilySpec& f) {
  switch (f.id) {
    case FamilyId::Charlier: return "dPIV";
    case FamilyId::Meixner:
    case FamilyId::Krawtchouk: return "dPV";
    case FamilyId::QCharlier: return "q-Charlier scalar recurrence";
    case FamilyId::LittleQJacobi:
    case FamilyId::QKrawtchouk: return "q-PVI";
    case FamilyId::LittleQLaguerre: return "degenerate q-PVI";
    case FamilyId::AlternativeQCharlier: return "matrix compatibility solve";
    default: return "none";
  }
}

std::vector<Real> painleve_D(const FamilySpec& f, int k, int s_max) {
  if (k < 1) fail(ErrorKind::InvalidParameter, "k must be at least 1");
  switch (f.id) {
    case FamilyId::Charlier:
    case FamilyId::Meixner:
    case FamilyId::Krawtchouk: return trim(dp_route(f, k, s_max), k, s_max);
    case FamilyId::QCharlier: return trim(qcharlier_route(f, k, s_max), k, s_max);
    case FamilyId::LittleQJacobi:
    case FamilyId::QKrawtchouk:
    case FamilyId::LittleQLaguerre: return trim(js_route(f, k, s_max), k, s_max);
    case FamilyId::AlternativeQCharlier: return trim(compat_route(f, k, s_max), k, s_max);
    default: break;
  }
  fail(ErrorKind::UnsupportedFamily, f.name + " has no recurrence route; use the oracle");
}

std::vector<Real> route_D(const FamilySpec& f, int k, int s_max, Method m) {
  switch (m) {
    case Method::Oracle: return oracle_D(f, k, s_max);
    case Method::General: return trim(general_D(f, k, s_max), k, s_max);
    case Method::Painleve: return painleve_D(f, k, s_max);
  }
  return {};
}

GapTable compute_table(const FamilySpec& f, int k, int s_max, Method m) {
  s_max = max_index(f, s_max);
  if (s_max < k) fail(ErrorKind::InvalidParameter, "s_max < k leaves no data");
  return make_gap_table(f, k, s_max, route_D(f, k, s_max, m), method_name(m));
}

}  // namespace dgap
