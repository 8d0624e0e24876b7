#include "dgap/precision.hpp"
#include "dgap/errors.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace dgap {

namespace {

unsigned g_bits = 0;

unsigned digits10_for(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

struct DefaultPrecision {
  DefaultPrecision() { set_precision(kDefaultPrecisionBits); }
};
const DefaultPrecision g_init;

}  // namespace

void set_precision(unsigned bits) {
  if (bits < 16) fail(ErrorKind::InvalidParameter, "precision must be at least 16 bits");
  g_bits = bits;
  Real::default_precision(digits10_for(bits));
}

unsigned precision_bits() { return g_bits; }

PrecisionScope::PrecisionScope(unsigned bits) : saved_(g_bits) { set_precision(bits); }
PrecisionScope::~PrecisionScope() { set_precision(saved_); }

Real tolerance() { return tolerance(g_bits); }

Real tolerance(unsigned bits) {
  return boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits / 2));
}

int decimal_digits() { return decimal_digits(g_bits); }

int decimal_digits(unsigned bits) { return static_cast<int>(bits / 3.32); }

std::string to_string(const Real& x, int digits) {
  if (digits <= 0) digits = decimal_digits();
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

Real parse_real(const std::string& text) {
  try {
    // Accept simple fractions such as 1/1.7.
    auto slash = text.find('/');
    if (slash != std::string::npos)
      return Real(text.substr(0, slash)) / Real(text.substr(slash + 1));
    return Real(text);
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidParameter, "not a number: '" + text + "'");
  }
}

Real rel_diff(const Real& a, const Real& b) {
  Real scale = std::max(abs(a), abs(b));
  if (scale == 0) return Real(0);
  return abs(a - b) / scale;
}

bool near_abs(const Real& x, const Real& tol) { return abs(x) <= tol; }

bool near_rel(const Real& a, const Real& b, const Real& tol) { return rel_diff(a, b) <= tol; }

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::InvalidQ: return "InvalidQ";
    case ErrorKind::Divergent: return "Divergent";
    case ErrorKind::PoleInLowerParameter: return "PoleInLowerParameter";
    case ErrorKind::DegenerateWeight: return "DegenerateWeight";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::ResidueViolation: return "ResidueViolation";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::EpsilonSingular: return "EpsilonSingular";
    case ErrorKind::DegenerateParameterization: return "DegenerateParameterization";
    case ErrorKind::DPSingular: return "DPSingular";
    case ErrorKind::RootNotFound: return "RootNotFound";
    case ErrorKind::DegenerateKappa: return "DegenerateKappa";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& what, int step) { throw Error(kind, what, step); }

}  // namespace dgap
