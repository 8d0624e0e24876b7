#pragma once

#include "dgap/family.hpp"
#include "dgap/lax.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dgap {

struct RunConfig {
  std::string family;
  std::map<std::string, std::string> params;  // parsed once the precision is set
  int k = 0;
  int s_max = -1;
  std::string method = "general";  // oracle | general | painleve | all
  unsigned precision = kDefaultPrecisionBits;
  std::string tol = "1e-15";
  std::string output;  // empty: stdout
  std::string format = "csv";
};

// Reads a JSON object whose keys mirror the long flag names (family, params, k, smax,
// method, precision, tol, out, format).
RunConfig load_config_file(const std::string& path);

// Validates the configuration and builds the family at the configured precision.
FamilySpec family_from_config(const RunConfig& cfg);

// Exit codes.
enum ExitCode { kExitOk = 0, kExitInvalid = 1, kExitNumerical = 2, kExitUnsupported = 3 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// CSV with header s,x_coord,D,density,method. Densities are recomputed from the
// printed D values so that a reader obtains them again exactly.
std::string format_csv(const std::vector<GapTable>& tables, const FamilySpec& f, int digits);
std::string format_json(const std::vector<GapTable>& tables, const FamilySpec& f, int digits);
std::string plot_script(const std::vector<GapTable>& tables, const std::string& csv_path);

struct CsvRow {
  int s = 0;
  std::string x_coord, D, density, method;
};
std::vector<CsvRow> parse_csv(const std::string& text);

}  // namespace dgap
