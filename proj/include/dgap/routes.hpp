#pragma once

#include "dgap/family.hpp"
#include "dgap/lax.hpp"

#include <string>
#include <vector>

namespace dgap {

enum class Method { Oracle, General, Painleve };

const char* method_name(Method m);
Method parse_method(const std::string& name);

// D_k..D_{s_max+1}; entries past N+1 on a finite lattice are exactly 1.
std::vector<Real> oracle_D(const FamilySpec& f, int k, int s_max);
// Scalar Painleve / q-PVI recurrences, falling back to the matrix step where a
// parameterization breaks down.
std::vector<Real> painleve_D(const FamilySpec& f, int k, int s_max);

std::vector<Real> route_D(const FamilySpec& f, int k, int s_max, Method m);
GapTable compute_table(const FamilySpec& f, int k, int s_max, Method m);

// Short description of the scalar route used for a family.
std::string painleve_route_name(const FamilySpec& f);

}  // namespace dgap
