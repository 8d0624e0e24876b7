#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace dgap {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 256;

// Working precision applies to every Real created afterwards.
void set_precision(unsigned bits);
unsigned precision_bits();

class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

// tau = 2^(-bits/2)
Real tolerance();
Real tolerance(unsigned bits);

// Significant decimal digits carried by the working precision (bits / 3.32).
int decimal_digits();
int decimal_digits(unsigned bits);

std::string to_string(const Real& x, int digits = 0);
Real parse_real(const std::string& text);

Real rel_diff(const Real& a, const Real& b);
bool near_abs(const Real& x, const Real& tol);
bool near_rel(const Real& a, const Real& b, const Real& tol);

}  // namespace dgap
