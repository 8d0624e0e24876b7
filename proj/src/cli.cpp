#include "dgap/cli.hpp"
#include "dgap/errors.hpp"
#include "dgap/oracle.hpp"
#include "dgap/painleve.hpp"
#include "dgap/routes.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace dgap {

using json = nlohmann::json;

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidParameter, "cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidParameter, std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::InvalidParameter, "config file must hold a JSON object");
  auto as_text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  RunConfig cfg;
  try {
    if (j.contains("family")) cfg.family = j["family"].get<std::string>();
    if (j.contains("params")) {
      for (auto& [key, v] : j["params"].items()) cfg.params[key] = as_text(v);
    }
    if (j.contains("k")) cfg.k = j["k"].get<int>();
    if (j.contains("smax")) cfg.s_max = j["smax"].get<int>();
    if (j.contains("method")) cfg.method = j["method"].get<std::string>();
    if (j.contains("precision")) cfg.precision = j["precision"].get<unsigned>();
    if (j.contains("tol")) cfg.tol = as_text(j["tol"]);
    if (j.contains("out")) cfg.output = j["out"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidParameter, std::string("bad config value: ") + e.what());
  }
  return cfg;
}

FamilySpec family_from_config(const RunConfig& cfg) {
  if (cfg.family.empty()) fail(ErrorKind::InvalidParameter, "no family given");
  if (cfg.k < 1) fail(ErrorKind::InvalidParameter, "k must be at least 1");
  if (cfg.s_max < cfg.k) fail(ErrorKind::InvalidParameter, "smax < k leaves no data");
  if (cfg.method != "oracle" && cfg.method != "general" && cfg.method != "painleve" && cfg.method != "all")
    fail(ErrorKind::InvalidParameter, "method must be oracle, general, painleve or all");
  if (cfg.format != "csv" && cfg.format != "json") fail(ErrorKind::InvalidParameter, "format must be csv or json");
  set_precision(cfg.precision);
  ParamMap pm;
  for (const auto& [key, text] : cfg.params) pm[key] = parse_real(text);
  FamilySpec f = make_family(cfg.family, pm);
  if (f.finite() && cfg.k > f.N()) fail(ErrorKind::InvalidParameter, "k exceeds N");
  return f;
}

// ---- serialization ----

namespace {

struct SerialRow {
  int s;
  std::string x, D, density;
};

std::vector<SerialRow> serial_rows(const GapTable& t, const FamilySpec& f, int digits) {
  std::vector<SerialRow> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const GapRow& r = t.rows[i];
    std::string Dtext = to_string(r.D, digits);
    std::string Dnext = to_string(r.D + r.mass, digits);
    Real mass = parse_real(Dnext) - parse_real(Dtext);
    out.push_back({r.s, to_string(r.x_coord, digits), Dtext, to_string(density_from_mass(f, r.s, mass), digits)});
  }
  return out;
}

}  // namespace

std::string format_csv(const std::vector<GapTable>& tables, const FamilySpec& f, int digits) {
  std::ostringstream os;
  os << "s,x_coord,D,density,method\n";
  for (const auto& t : tables)
    for (const auto& r : serial_rows(t, f, digits))
      os << r.s << ',' << r.x << ',' << r.D << ',' << r.density << ',' << t.method << '\n';
  return os.str();
}

std::string format_json(const std::vector<GapTable>& tables, const FamilySpec& f, int digits) {
  json j;
  j["family"] = f.name;
  json params = json::object();
  for (const auto& [key, v] : f.params) params[key] = to_string(v, digits);
  j["params"] = params;
  if (!tables.empty()) {
    j["k"] = tables.front().k;
    j["precision"] = tables.front().precision;
  }
  json methods = json::object();
  for (const auto& t : tables) {
    json rows = json::array();
    for (const auto& r : serial_rows(t, f, digits))
      rows.push_back({{"s", r.s}, {"x_coord", r.x}, {"D", r.D}, {"density", r.density}});
    methods[t.method] = rows;
  }
  j["methods"] = methods;
  return j.dump(2) + "\n";
}

std::string plot_script(const std::vector<GapTable>& tables, const std::string& csv_path) {
  std::ostringstream os;
  std::string stem = csv_path;
  if (auto dot = stem.rfind('.'); dot != std::string::npos && stem.find('/', dot) == std::string::npos)
    stem = stem.substr(0, dot);
  os << "# gnuplot script; run: gnuplot " << stem << ".gp\n";
  os << "set datafile separator ','\n";
  os << "set terminal pngcairo size 900,600\n";
  os << "set output '" << stem << ".png'\n";
  if (!tables.empty()) os << "set title '" << tables.front().family << ", k=" << tables.front().k << "'\n";
  os << "set xlabel 'x'\nset ylabel 'density'\nset key top right\n";
  os << "plot ";
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i) os << ", \\\n     ";
    os << "'" << csv_path << "' skip 1 using 2:(strcol(5) eq '" << tables[i].method
       << "' ? $4 : NaN) with linespoints title '" << tables[i].method << "'";
  }
  os << "\n";
  return os.str();
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::vector<CsvRow> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      if (line != "s,x_coord,D,density,method") fail(ErrorKind::InvalidParameter, "unexpected CSV header");
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) fail(ErrorKind::InvalidParameter, "malformed CSV row: " + line);
    rows.push_back({std::stoi(cells[0]), cells[1], cells[2], cells[3], cells[4]});
  }
  return rows;
}

// ---- commands ----

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::InvalidQ:
    case ErrorKind::IndexOutOfRange:
      return kExitInvalid;
    case ErrorKind::UnsupportedFamily:
      return kExitUnsupported;
    default:
      return kExitNumerical;
  }
}

void report_error(std::ostream& err, const RunConfig& cfg, const Error& e) {
  err << "error: family=" << (cfg.family.empty() ? "-" : cfg.family) << " kind=" << kind_name(e.kind());
  if (e.step() >= 0) err << " step=" << e.step();
  err << " reason=" << e.what() << "\n";
}

std::vector<Method> methods_for(const RunConfig& cfg) {
  if (cfg.method == "all") return {Method::Oracle, Method::General, Method::Painleve};
  return {parse_method(cfg.method)};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidParameter, "cannot write '" + path + "'");
  out << text;
}

int cmd_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  FamilySpec f = family_from_config(cfg);
  const Real tol = parse_real(cfg.tol);
  std::vector<GapTable> tables;
  for (Method m : methods_for(cfg)) tables.push_back(compute_table(f, cfg.k, cfg.s_max, m));

  int rc = kExitOk;
  if (tables.size() > 1) {
    for (std::size_t i = 1; i < tables.size(); ++i) {
      Real worst(0);
      int at = -1;
      for (std::size_t j = 0; j < tables[0].rows.size(); ++j) {
        Real d = rel_diff(tables[i].rows[j].D, tables[0].rows[j].D);
        if (d > worst) worst = d, at = tables[0].rows[j].s;
      }
      err << tables[i].method << " vs " << tables[0].method << ": max relative difference " << to_string(worst, 3);
      if (worst > tol) {
        err << " at s=" << at << " exceeds tol " << cfg.tol;
        rc = kExitNumerical;
      }
      err << "\n";
    }
  }

  const int digits = decimal_digits();
  const std::string body = cfg.format == "csv" ? format_csv(tables, f, digits) : format_json(tables, f, digits);
  if (cfg.output.empty()) {
    out << body;
  } else {
    write_text(cfg.output, body);
    if (cfg.format == "csv") {
      std::string stem = cfg.output;
      if (auto dot = stem.rfind('.'); dot != std::string::npos && stem.find('/', dot) == std::string::npos)
        stem = stem.substr(0, dot);
      write_text(stem + ".gp", plot_script(tables, cfg.output));
    }
  }
  return rc;
}

// One invariant in the verify report.
struct Check {
  std::string name;
  Real threshold;
  Real worst{0};
  int first_fail = -1;
  bool ran = false;

  void record(const Real& v, int s) {
    ran = true;
    if (v > worst) worst = v;
    if (v > threshold && first_fail < 0) first_fail = s;
  }
};

Real det_identity_defect(const LaxState& st, const FamilySpec& f, const Real& z) {
  Mat2 M = st.M(z);
  Real rhs = f.d1(z) * f.d2(z);
  Real scale = abs(M.a11 * M.a22) + abs(M.a12 * M.a21) + abs(rhs);
  if (scale == 0) return Real(0);
  return abs(M.det() - rhs) / scale;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  FamilySpec f = family_from_config(cfg);
  const Real tol = parse_real(cfg.tol);
  const Real slack = 1024 * tolerance();
  const int s_max = max_index(f, cfg.s_max);
  const int k = cfg.k;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  auto rnd = [&]() { return Real(U(rng)) + Real("0.123456789"); };

  std::vector<Check> checks;
  auto add = [&](const std::string& name, const Real& thr) -> Check& {
    checks.push_back({name, thr});
    return checks.back();
  };

  out << "family " << f.name << ", k=" << k << ", smax=" << s_max << ", precision=" << precision_bits()
      << " bits\n";

  if (!f.supportsLinearRecurrence) {
    out << "oracle-only family; recurrence checks skipped\n";
    checks.reserve(4);
    Check& ratio = add("weight ratio identity", slack);
    ratio.record(check_ratio_identity(f, std::min(s_max, 40), slack) ? Real(0) : Real(1), 0);
    Check& en = add("enumeration vs Gram determinant", slack);
    OrthoBasis b = build_ortho_basis(f, std::min(k, 3) - 1);
    const int ke = std::min(k, 3);
    int x_cut = b.truncation;
    for (int s = ke; s <= std::min(s_max, 10); ++s) {
      try {
        en.record(rel_diff(gap_probability_enumeration(f, ke, s, x_cut), gap_probability_gram(b, ke, s)), s);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::TooLarge) throw;
      }
    }
    Check& mono = add("gap probability monotone in [0,1]", tol);
    GapTable t = compute_table(f, k, s_max, Method::Oracle);
    for (const auto& r : t.rows) mono.record(std::max({-r.mass, r.D - 1, -r.D, Real(0)}), r.s);
  } else {
    checks.reserve(16);
    Check& agree_g = add("general vs oracle D_s", tol);
    Check& agree_p = add("painleve vs general D_s", tol);
    Check& nil = add("nilpotency |p^2+qr|/|A|^2", slack);
    Check& detc = add("det(Lambda z + C_s) = d1 d2", slack);
    Check& epsc = add("epsilon_s formula vs determinant", slack);
    Check& comp = add("compatibility residual", slack);
    Check& mono = add("monotone D, nonnegative density", tol);
    Check& resid = add("residue conditions (first steps)", slack);
    Check* trace = nullptr;
    Check* sakai = nullptr;
    Check* roundtrip = nullptr;
    Check* qp6 = nullptr;
    Check* qp6det = nullptr;
    Check* js = nullptr;
    Check* diff = nullptr;
    if (f.lattice.kind == LatticeKind::Linear) trace = &add("trace identities of C_s", slack);
    bool dp_family = f.id == FamilyId::Charlier || f.id == FamilyId::Meixner || f.id == FamilyId::Krawtchouk;
    if (dp_family) {
      sakai = &add("Sakai parameter sum = 1", slack);
      roundtrip = &add("Painleve coordinate round trip", slack);
    }
    bool qpvi = f.id == FamilyId::LittleQJacobi || f.id == FamilyId::QKrawtchouk ||
                f.id == FamilyId::LittleQLaguerre || f.id == FamilyId::QCharlier;
    if (qpvi) {
      qp6 = &add("q-PVI compatibility A(x,qt)B(x,t) = B(qx,t)A(x,t)", slack);
      qp6det = &add("q-PVI det A(x,t) factorization", slack);
      js = &add("Jimbo-Sakai equations", slack);
    }
    if (f.id == FamilyId::Charlier) diff = &add("Charlier difference equation", Real(0.5));

    auto O = route_D(f, k, s_max, Method::Oracle);
    std::vector<Real> G, P;
    try {
      G = route_D(f, k, s_max, Method::General);
    } catch (const Error& e) {
      agree_g.record(Real(1), e.step());
    }
    try {
      P = route_D(f, k, s_max, Method::Painleve);
    } catch (const Error& e) {
      agree_p.record(Real(1), e.step());
    }
    for (std::size_t i = 0; i < O.size(); ++i) {
      const int s = k + static_cast<int>(i);
      if (i < G.size()) agree_g.record(rel_diff(G[i], O[i]), s);
      if (i < P.size() && i < G.size()) agree_p.record(rel_diff(P[i], G[i]), s);
      if (i + 1 < O.size()) {
        Real mass = O[i + 1] - O[i];
        mono.record(std::max({-mass, O[i] - 1, Real(0)}), s);
      }
    }

    // Step-by-step invariants of the general engine.
    const int last_state = f.finite() ? std::min(s_max, f.N() - 1) : s_max;
    LaxState st = init_state(f, k);
    std::optional<QPVIData> prev_q;
    DrhpSolution drhp = drhp_initial(f, k);
    const Real xi = f.lattice.kind == LatticeKind::Linear ? linear_coeffs(f).l2 : Real(0);
    const Real tau_d2 = f.lattice.kind == LatticeKind::Linear ? linear_coeffs(f).m2 : Real(0);
    for (int s = k; s <= last_state; ++s) {
      nil.record(nilpotency_defect(st), s);
      for (int i = 0; i < 3; ++i) detc.record(det_identity_defect(st, f, rnd()), s);
      if (trace) {
        Real t1 = abs(st.c11 + st.p + k) / (abs(st.c11) + abs(st.p) + k);
        Real t2 = abs(st.c22 - xi * st.p - xi * k - tau_d2) /
                  (abs(st.c22) + abs(xi * st.p) + abs(xi * k) + abs(tau_d2) + 1);
        trace->record(std::max(t1, t2), s);
      }
      if (sakai) {
        try {
          DPState d = dp_from_lax(st, f);
          SakaiParams sp = f.id == FamilyId::Charlier ? dpiv_sakai(d) : dpv_sakai(d, f);
          sakai->record(abs(sp.lambda - 1), s);
          LaxState back = lax_from_dp(d, f);
          Real rt = std::max((back.A() - st.A()).norm() / std::max(st.A().norm(), Real(1)),
                             (back.C() - st.C()).norm() / std::max(st.C().norm(), Real(1)));
          roundtrip->record(rt, s);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::DegenerateParameterization && e.kind() != ErrorKind::DPSingular) throw;
        }
      }
      if (qpvi && s > k) {
        try {
          QPVIData d = qp6_build(st, f, prev_q ? &prev_q->As : nullptr);
          std::vector<Real> xs;
          for (int i = 0; i < 5; ++i) xs.push_back(rnd());
          xs.push_back(d.t);
          qp6det->record(qp6_det_residual(d, xs), s);
          if (prev_q) {
            qp6->record(qp6_compat_residual(d, *prev_q, xs), s);
            js->record(js_residuals(d, *prev_q).worst(), s);
          }
          prev_q = d;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::RootNotFound) throw;
          prev_q.reset();
        }
      }
      if (s - k < 5) {
        resid.record(residue_violation(drhp, st.A()), s);
        drhp.steps.push_back(st.A());
        drhp.s = s + 1;
      }
      if (s == last_state) break;
      Real e1 = epsilon(st, f), e2 = epsilon_det(st, f);
      epsc.record(abs(e1 - e2) / std::max({abs(e1), abs(e2), abs(f.d1(f.pi(s + 1)) * f.d2(f.pi(s + 1)))}), s);
      LaxState nx;
      try {
        nx = step_general(st, f);
      } catch (const Error& e) {
        comp.record(Real(1), s);
        break;
      }
      std::vector<Real> zs;
      for (int i = 0; i < 5; ++i) zs.push_back(rnd());
      comp.record(compatibility_residual(st, nx, f, zs), s);
      st = nx;
    }
    if (diff) {
      std::vector<Real> zs;
      for (int i = 0; i < 20; ++i) zs.push_back(Real(U(rng)) * 10);
      diff->record(charlier_difference_check(f.param("a"), k, zs) ? Real(0) : Real(1), k);
    }
  }

  bool all_pass = true;
  int first_s = -1;
  std::string first_name;
  for (const auto& c : checks) {
    if (!c.ran) continue;
    bool pass = c.first_fail < 0;
    all_pass = all_pass && pass;
    out << (pass ? "PASS " : "FAIL ") << c.name << "  worst=" << to_string(c.worst, 3)
        << "  threshold=" << to_string(c.threshold, 3);
    if (!pass) out << "  first failure at s=" << c.first_fail;
    out << "\n";
    if (!pass && (first_s < 0 || c.first_fail < first_s)) first_s = c.first_fail, first_name = c.name;
  }
  if (!all_pass) out << "first degraded invariant: " << first_name << " at s=" << first_s << "\n";
  return all_pass ? kExitOk : kExitNumerical;
}

int cmd_list(bool as_json, std::ostream& out) {
  const auto& cat = family_catalog();
  if (as_json) {
    json arr = json::array();
    for (const auto& fi : cat)
      arr.push_back({{"name", fi.name}, {"params", fi.params}, {"lattice", fi.lattice},
                     {"supportsLinearRecurrence", fi.supportsLinearRecurrence}});
    out << arr.dump(2) << "\n";
    return kExitOk;
  }
  for (const auto& fi : cat) {
    std::string params;
    for (const auto& p : fi.params) params += (params.empty() ? "" : ",") + p;
    out << fi.name << "  params=" << params << "  lattice=" << fi.lattice
        << "  recurrence=" << (fi.supportsLinearRecurrence ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gap probabilities of discrete orthogonal polynomial ensembles"};
  app.require_subcommand(1);

  RunConfig flags;
  std::vector<std::string> param_flags;
  std::string config_path;
  bool list_json = false;

  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file with the same keys as the flags");
    sub->add_option("--family", flags.family, "family name (see list-families)");
    sub->add_option("--param", param_flags, "key=value, repeatable");
    sub->add_option("--k", flags.k, "number of particles");
    sub->add_option("--smax", flags.s_max, "last s in the table");
    sub->add_option("--method", flags.method, "oracle | general | painleve | all");
    sub->add_option("--precision", flags.precision, "working precision in bits");
    sub->add_option("--tol", flags.tol, "agreement tolerance between routes");
    sub->add_option("--out", flags.output, "output file (default stdout)");
    sub->add_option("--format", flags.format, "csv | json");
  };
  CLI::App* compute = app.add_subcommand("compute", "tabulate D_s and its density");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant checks");
  CLI::App* list = app.add_subcommand("list-families", "show the supported families");
  add_run_options(compute);
  add_run_options(verify);
  list->add_flag("--json", list_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  if (list->parsed()) return cmd_list(list_json, out);

  CLI::App* sub = compute->parsed() ? compute : verify;
  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config_file(config_path);
    auto given = [&](const char* name) { return sub->count(name) > 0; };
    if (given("--family")) cfg.family = flags.family;
    if (given("--k")) cfg.k = flags.k;
    if (given("--smax")) cfg.s_max = flags.s_max;
    if (given("--method")) cfg.method = flags.method;
    if (given("--precision")) cfg.precision = flags.precision;
    if (given("--tol")) cfg.tol = flags.tol;
    if (given("--out")) cfg.output = flags.output;
    if (given("--format")) cfg.format = flags.format;
    for (const auto& kv : param_flags) {
      auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) fail(ErrorKind::InvalidParameter, "--param expects key=value, got '" + kv + "'");
      cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (cfg.s_max < 0) cfg.s_max = cfg.k + 20;
    return compute->parsed() ? cmd_compute(cfg, out, err) : cmd_verify(cfg, out, err);
  } catch (const Error& e) {
    report_error(err, cfg, e);
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: family=" << (cfg.family.empty() ? "-" : cfg.family) << " reason=" << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace dgap
