// maxtail command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxtail/maxtail.h"

namespace {

struct Failure {
  mxt_status status;
  std::string message;
};

void check(mxt_status s) {
  if (s != MXT_OK) throw Failure{s, mxt_last_error()};
}

int exit_code(mxt_status s) {
  switch (s) {
    case MXT_OK: return 0;
    case MXT_ERR_CONFIG: return 1;
    case MXT_ERR_PARAMETER:
    case MXT_ERR_UNSUPPORTED:
    case MXT_ERR_INVALID_ARGUMENT:
    case MXT_ERR_INSUFFICIENT_TAIL:
    case MXT_ERR_NON_STRICT_GENERATOR: return 2;
    default: return 3;
  }
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using ConfigPtr = std::unique_ptr<mxt_config, Deleter<mxt_config, mxt_config_destroy>>;
using CopulaPtr = std::unique_ptr<mxt_copula, Deleter<mxt_copula, mxt_copula_destroy>>;
using PathPtr = std::unique_ptr<mxt_path, Deleter<mxt_path, mxt_path_destroy>>;
using ReportPtr = std::unique_ptr<mxt_index_report,
                                  Deleter<mxt_index_report, mxt_index_report_destroy>>;

std::string take(char* s) {
  std::string out(s);
  mxt_string_free(s);
  return out;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_num(double x) { return std::isfinite(x) ? fmt(x) : "null"; }

std::string json_str(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{MXT_ERR_CONFIG, "cannot read config file `" + path + "`"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{MXT_ERR_INVALID_ARGUMENT, "cannot write `" + path + "`"};
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

struct Options {
  std::vector<std::string> config_files;
  std::vector<std::string> inline_specs;
  std::map<std::string, std::string> overrides;
  std::string out;
  std::string path_out;
  std::string format;
};

class Run {
 public:
  explicit Run(const Options& opts) : opts_(opts) {
    for (const auto& f : opts.config_files) {
      mxt_config* c = nullptr;
      check(mxt_config_parse(read_file(f).c_str(), &c));
      configs_.emplace_back(c);
    }
    for (const auto& s : opts.inline_specs) {
      mxt_config* c = nullptr;
      check(mxt_config_parse_inline(s.c_str(), &c));
      configs_.emplace_back(c);
    }
    if (configs_.empty()) {
      mxt_config* c = nullptr;
      check(mxt_config_create(&c));
      configs_.emplace_back(c);
    }
    for (auto& c : configs_) {
      for (const auto& [k, v] : opts.overrides) check(mxt_config_set(c.get(), k.c_str(), v.c_str()));
    }
  }

  std::size_t n_specs() const { return configs_.size(); }

  CopulaPtr copula(std::size_t i = 0) const {
    mxt_copula* c = nullptr;
    check(mxt_copula_from_config(configs_.at(i).get(), &c));
    return CopulaPtr(c);
  }

  double num(const char* key, double fallback) const {
    double v = 0;
    check(mxt_config_get_double(configs_[0].get(), key, fallback, &v));
    return v;
  }

  double required(const char* key) const {
    if (mxt_config_get(configs_[0].get(), key) == nullptr) {
      throw Failure{MXT_ERR_CONFIG, std::string("missing key `") + key + "`"};
    }
    return num(key, 0.0);
  }

  std::int64_t integer(const char* key, std::int64_t fallback) const {
    std::int64_t v = 0;
    check(mxt_config_get_int(configs_[0].get(), key, fallback, &v));
    return v;
  }

  std::uint64_t count(const char* key, std::int64_t fallback) const {
    const auto v = integer(key, fallback);
    if (v < 0) throw Failure{MXT_ERR_PARAMETER, std::string("`") + key + "` must be >= 0"};
    return static_cast<std::uint64_t>(v);
  }

  std::string text(const char* key, const std::string& fallback) const {
    const char* v = mxt_config_get(configs_[0].get(), key);
    return v ? v : fallback;
  }

  bool json(bool json_default) const {
    if (opts_.format.empty()) return json_default;
    return opts_.format == "json";
  }

  std::vector<double> grid() const {
    const double hi = num("umax_exp", -1.0);
    const double lo = num("umin_exp", -6.0);
    const auto per = count("per_decade", 1);
    if (per == 0 || per > 1000) throw Failure{MXT_ERR_PARAMETER, "`per_decade` must be in [1, 1000]"};
    std::size_t n = 0;
    check(mxt_u_grid(hi, lo, static_cast<unsigned>(per), nullptr, 0, &n));
    std::vector<double> g(n);
    check(mxt_u_grid(hi, lo, static_cast<unsigned>(per), g.data(), g.size(), &n));
    return g;
  }

  unsigned threads() const {
    const auto t = count("threads", 1);
    if (t == 0 || t > 1024) throw Failure{MXT_ERR_PARAMETER, "`threads` must be in [1, 1024]"};
    return static_cast<unsigned>(t);
  }

  mxt_solver_opts solver() const {
    mxt_solver_opts o = mxt_solver_opts_default();
    o.scan_n = count("scan_n", static_cast<std::int64_t>(o.scan_n));
    o.xtol = num("xtol", o.xtol);
    o.tie_tol = num("tie_tol", o.tie_tol);
    o.threads = threads();
    return o;
  }

  const Options& opts() const { return opts_; }

 private:
  const Options& opts_;
  std::vector<ConfigPtr> configs_;
};

std::string cmd_eval(const Run& run) {
  const auto c = run.copula();
  const double u = run.required("u");
  const double v = run.required("v");
  double cdf = 0, surv = 0;
  check(mxt_eval_cdf(c.get(), u, v, &cdf));
  mxt_copula* s = nullptr;
  check(mxt_copula_survival(c.get(), &s));
  CopulaPtr survival(s);
  check(mxt_eval_cdf(survival.get(), u, v, &surv));
  double tau = 0;
  const bool has_tau = mxt_kendall_tau(c.get(), MXT_TAU_CLOSED_FORM, 0, 0, &tau) == MXT_OK;
  if (run.json(true)) {
    return "{\"copula\":" + json_str(mxt_copula_describe(c.get())) + ",\"u\":" + json_num(u) +
           ",\"v\":" + json_num(v) + ",\"cdf\":" + json_num(cdf) +
           ",\"survival_cdf\":" + json_num(surv) +
           ",\"tau\":" + (has_tau ? json_num(tau) : "null") + "}";
  }
  return "u,v,cdf,survival_cdf,tau\n" + fmt(u) + "," + fmt(v) + "," + fmt(cdf) + "," +
         fmt(surv) + "," + (has_tau ? fmt(tau) : "") + "\n";
}

std::string cmd_axioms(const Run& run) {
  const auto c = run.copula();
  mxt_axiom_report rep{};
  check(mxt_check_axioms(c.get(), run.count("grid_n", 100), run.num("tol", 1e-10), &rep));
  if (run.json(true)) {
    char* s = nullptr;
    check(mxt_axiom_report_to_json(&rep, &s));
    return take(s);
  }
  auto b = [](int x) { return x ? "true" : "false"; };
  return std::string("grid_n,grounded_ok,max_grounded_deviation,marginals_ok,"
                     "max_marginal_deviation,two_increasing_ok,min_rectangle_mass\n") +
         std::to_string(rep.grid_n) + "," + b(rep.grounded_ok) + "," +
         fmt(rep.max_grounded_deviation) + "," + b(rep.marginals_ok) + "," +
         fmt(rep.max_marginal_deviation) + "," + b(rep.two_increasing_ok) + "," +
         fmt(rep.min_rectangle_mass) + "\n";
}

PathPtr solve(const Run& run, const mxt_copula* c, const std::vector<double>& grid) {
  const auto opts = run.solver();
  mxt_path* p = nullptr;
  check(mxt_solve_path(c, grid.data(), grid.size(), &opts, &p));
  return PathPtr(p);
}

std::string cmd_path(const Run& run) {
  const auto c = run.copula();
  const auto p = solve(run, c.get(), run.grid());
  char* s = nullptr;
  check(run.json(false) ? mxt_path_to_json(p.get(), &s) : mxt_path_to_csv(p.get(), &s));
  return take(s);
}

std::string cmd_indices(const Run& run) {
  const auto c = run.copula();
  const auto grid = run.grid();
  mxt_index_report* r = nullptr;
  check(mxt_classical_indices(c.get(), grid.data(), grid.size(), &r));
  ReportPtr classical(r);

  const auto p = solve(run, c.get(), grid);
  ReportPtr star;
  std::string star_error;
  const mxt_status st = mxt_star_indices(p.get(), &r);
  if (st == MXT_OK) {
    star.reset(r);
  } else if (st == MXT_ERR_NO_ADMISSIBLE_PATH) {
    star_error = mxt_last_error();
  } else {
    check(st);
  }

  int has_closed = 0;
  double closed = 0;
  check(mxt_closed_form_kappa_star(c.get(), &has_closed, &closed));

  if (run.json(true)) {
    auto to_json = [](const mxt_index_report* rep) {
      char* s = nullptr;
      check(mxt_index_report_to_json(rep, &s));
      return take(s);
    };
    std::string out = "{\"copula\":" + json_str(mxt_copula_describe(c.get())) +
                      ",\"classical\":" + to_json(classical.get()) + ",\"maximal\":" +
                      (star ? to_json(star.get()) : "null");
    if (!star) out += ",\"maximal_error\":" + json_str(star_error);
    out += std::string(",\"kappa_star_closed_form\":") + (has_closed ? json_num(closed) : "null");
    return out + "}";
  }
  std::string out = "path_kind,kappa,lambda,lambda_degenerate,chi,residual,kappa_closed_form\n";
  auto row = [&](const mxt_index_report* rep, const std::string& closed_cell) {
    mxt_index_summary s{};
    check(mxt_index_report_summary(rep, &s));
    out += std::string(s.path_kind == MXT_PATH_DIAGONAL ? "diagonal" : "maximal") + "," +
           fmt(s.kappa) + "," + fmt(s.lambda) + "," + (s.lambda_degenerate ? "true" : "false") +
           "," + fmt(s.chi) + "," + fmt(s.residual) + "," + closed_cell + "\n";
  };
  row(classical.get(), "");
  if (star) row(star.get(), has_closed ? fmt(closed) : "");
  return out;
}

std::string cmd_compare(const Run& run) {
  if (run.n_specs() != 2) {
    throw Failure{MXT_ERR_CONFIG, "compare needs exactly two copula specs, got " +
                                      std::to_string(run.n_specs())};
  }
  const auto c1 = run.copula(0);
  const auto c2 = run.copula(1);
  const auto grid = run.grid();
  const auto opts = run.solver();
  mxt_comparison rep{};
  check(mxt_compare(c1.get(), c2.get(), grid.data(), grid.size(), &opts, &rep));
  if (run.json(true)) {
    char* s = nullptr;
    check(mxt_comparison_to_json(&rep, &s));
    return take(s);
  }
  return "lambda_pair,chi_pair,verdict,kappa_1,kappa_2,tolerance\n" +
         (rep.has_lambda_pair ? fmt(rep.lambda_pair) : "") + "," +
         (rep.has_chi_pair ? fmt(rep.chi_pair) : "") + "," + mxt_verdict_name(rep.verdict) +
         "," + fmt(rep.kappa_1) + "," + fmt(rep.kappa_2) + "," + fmt(rep.tolerance) + "\n";
}

mxt_coupling coupling(const Run& run) {
  const auto c = run.text("coupling", "survival");
  if (c == "survival") return MXT_COUPLING_SURVIVAL;
  if (c == "distribution") return MXT_COUPLING_DISTRIBUTION;
  throw Failure{MXT_ERR_CONFIG, "`coupling` must be survival or distribution"};
}

std::string cmd_risk(const Run& run) {
  const auto c = run.copula();
  const mxt_pareto m{run.num("mu", 0.0), run.num("sigma", 1.0), run.num("tail_index", 4.0)};
  mxt_risk_report rep{};
  check(mxt_risk_measures(c.get(), &m, run.num("q", 0.99), run.count("n", 2'000'000),
                          run.count("seed", 42), coupling(run), run.threads(), &rep));
  char* s = nullptr;
  check(run.json(true) ? mxt_risk_report_to_json(&rep, &s) : mxt_risk_report_to_csv(&rep, &s));
  return take(s);
}

std::string cmd_table1(const Run& run) {
  char* s = nullptr;
  check(mxt_table1(run.count("seed", 42), run.count("n", 2'000'000), run.threads(),
                   run.json(false) ? MXT_FORMAT_JSON : MXT_FORMAT_CSV, &s));
  return take(s);
}

std::string default_path_out(const std::string& out) {
  const auto dot = out.rfind('.');
  const auto slash = out.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out + "_path.csv";
  }
  return out.substr(0, dot) + "_path" + out.substr(dot);
}

void cmd_contour(const Run& run) {
  if (run.opts().out.empty() || run.opts().out == "-") {
    throw Failure{MXT_ERR_CONFIG, "contour needs --out for the grid CSV"};
  }
  const auto c = run.copula();
  const auto opts = run.solver();
  char* grid = nullptr;
  check(mxt_contour_grid_csv(c.get(), run.count("resolution", 201), &grid));
  char* path = nullptr;
  check(mxt_contour_path_csv(c.get(), run.count("path_points", 50), &opts, &path));
  write_output(run.opts().out, take(grid));
  const std::string path_out =
      run.opts().path_out.empty() ? default_path_out(run.opts().out) : run.opts().path_out;
  write_output(path_out, take(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maxtail: paths of maximal tail dependence, tail indices and risk measures"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Options opts;
  app.add_option("--config", opts.config_files, "copula config file (repeatable)")
      ->check(CLI::ExistingFile);
  app.add_option("--spec", opts.inline_specs, "inline copula config, `key=value;...` (repeatable)");
  app.add_option("--out,-o", opts.out, "output file (default stdout)");
  app.add_option("--path-out", opts.path_out, "contour: path CSV (default <out>_path.csv)");
  app.add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  const Flag flags[] = {
      {"--family", "family", "copula family"},
      {"--generator", "generator", "archimedean generator"},
      {"--survival", "survival", "use the survival copula (true/false)"},
      {"--a", "a", "Marshall-Olkin a"},
      {"--b", "b", "Marshall-Olkin b"},
      {"--alpha", "alpha", "FGM alpha"},
      {"--gamma0", "gamma0", "generalized Clayton gamma0"},
      {"--gamma1", "gamma1", "generalized Clayton gamma1"},
      {"--theta", "theta", "Clayton theta"},
      {"--q", "q", "risk level"},
      {"--n", "n", "Monte Carlo sample size"},
      {"--seed", "seed", "RNG seed"},
      {"--umin-exp", "umin_exp", "smallest grid exponent"},
      {"--umax-exp", "umax_exp", "largest grid exponent"},
      {"--per-decade", "per_decade", "grid points per decade"},
      {"--scan-n", "scan_n", "solver scan points"},
      {"--xtol", "xtol", "solver x tolerance"},
      {"--tie-tol", "tie_tol", "co-maximizer tolerance in log C"},
      {"--threads", "threads", "worker threads"},
      {"--mu", "mu", "Pareto-II location"},
      {"--sigma", "sigma", "Pareto-II scale"},
      {"--tail-index", "tail_index", "Pareto-II tail index"},
      {"--u", "u", "eval: first coordinate"},
      {"--v", "v", "eval: second coordinate"},
      {"--grid-n", "grid_n", "axioms: lattice size"},
      {"--tol", "tol", "axioms: tolerance"},
      {"--resolution", "resolution", "contour: lattice resolution"},
      {"--path-points", "path_points", "contour: number of path levels"},
      {"--coupling", "coupling", "risk: survival or distribution"},
  };
  std::map<std::string, std::string> flag_values;
  for (const auto& f : flags) app.add_option(f.name, flag_values[f.key], f.help);

  const char* commands[][2] = {
      {"eval", "evaluate C(u,v), its survival copula and Kendall's tau"},
      {"axioms", "check copula axioms on a lattice"},
      {"path", "solve the path of maximal dependence"},
      {"indices", "classical and maximal-path tail indices"},
      {"compare", "order two copulas by tail dependence"},
      {"risk", "VaR, CTE and MTVar of X + Y"},
      {"table1", "Marshall-Olkin Pareto-II risk table"},
      {"contour", "contour lattice and maximal path CSVs"},
  };
  for (const auto& c : commands) app.add_subcommand(c[0], c[1]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  for (const auto& f : flags) {
    if (app.count(f.name) > 0) opts.overrides[f.key] = flag_values[f.key];
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const Run run(opts);
    if (command == "contour") {
      cmd_contour(run);
      return 0;
    }
    std::string out;
    if (command == "eval") out = cmd_eval(run);
    else if (command == "axioms") out = cmd_axioms(run);
    else if (command == "path") out = cmd_path(run);
    else if (command == "indices") out = cmd_indices(run);
    else if (command == "compare") out = cmd_compare(run);
    else if (command == "risk") out = cmd_risk(run);
    else if (command == "table1") out = cmd_table1(run);
    write_output(opts.out, out);
  } catch (const Failure& f) {
    std::cerr << "maxtail: " << mxt_status_name(f.status) << ": " << f.message << "\n";
    return exit_code(f.status);
  }
  return 0;
}
