#pragma once

#include "dgap/errors.hpp"
#include "dgap/family.hpp"
#include "dgap/precision.hpp"

#include <doctest.h>

#include <string>

namespace dgap::test {

inline Real R(const char* text) { return parse_real(text); }

inline FamilySpec fam(const std::string& name, std::initializer_list<std::pair<const std::string, const char*>> ps) {
  ParamMap pm;
  for (const auto& [k, v] : ps) pm[k] = parse_real(v);
  return make_family(name, pm);
}

// Relative agreement |a-b| <= tol * max(|a|,|b|).
inline bool close(const Real& a, const Real& b, const Real& tol) { return rel_diff(a, b) <= tol; }

inline std::string show(const Real& a, const Real& b) { return to_string(a, 25) + " vs " + to_string(b, 25); }

}  // namespace dgap::test

#define CHECK_REL(a, b, tol)                                  \
  do {                                                        \
    const ::dgap::Real _a = (a), _b = (b);                    \
    INFO(::dgap::test::show(_a, _b));                         \
    CHECK(::dgap::test::close(_a, _b, (tol)));                \
  } while (0)

#define CHECK_ABS(a, tol)                        \
  do {                                           \
    const ::dgap::Real _a = (a);                 \
    INFO(::dgap::to_string(_a, 25));             \
    CHECK(abs(_a) <= (tol));             \
  } while (0)

#define CHECK_FAILS_WITH(expr, expected)                          \
  do {                                                        \
    bool _thrown = false;                                     \
    try {                                                     \
      (void)(expr);                                           \
    } catch (const ::dgap::Error& _e) {                       \
      _thrown = true;                                         \
      CHECK(_e.kind() == (expected));                             \
    }                                                         \
    CHECK(_thrown);                                           \
  } while (0)
