#include "maxtail/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "maxtail/error.hpp"

namespace maxtail::io {

namespace {

const char* bool_text(bool b) { return b ? "true" : "false"; }

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void write_index_fields(JsonWriter& w, const TailIndexReport& rep) {
  w.key("path_kind").value(to_string(rep.path_kind));
  w.key("kappa").value(rep.kappa);
  w.key("lambda").value(rep.lambda);
  w.key("lambda_raw").value(rep.lambda_raw);
  w.key("lambda_degenerate").value(rep.lambda_degenerate);
  w.key("chi").value(rep.chi);
  w.key("local_slopes").value(rep.local_slopes);
  w.key("residual").value(rep.extrapolation_residual);
  w.key("u_grid").value(rep.u_grid);
  w.key("probabilities").value(rep.probabilities);
}

void write_risk_fields(JsonWriter& w, const RiskReport& rep) {
  w.key("q").value(rep.q);
  w.key("VaR").value(rep.var_q);
  w.key("CTE").value(rep.cte_q);
  w.key("MTVar").value(rep.mtvar_q);
  w.key("stderr_cte").value(rep.stderr_cte);
  w.key("n").value(static_cast<std::uint64_t>(rep.n));
  w.key("exceedances").value(static_cast<std::uint64_t>(rep.exceedances));
  w.key("seed").value(rep.seed);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------------------

void JsonWriter::separate() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) out_ += ',';
    first_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  separate();
  out_ += '"' + escape(k) + "\":";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  if (!std::isfinite(x)) return null();
  separate();
  out_ += format_double(x);
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t x) {
  separate();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t x) {
  separate();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(bool b) {
  separate();
  out_ += bool_text(b);
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
  separate();
  out_ += '"' + escape(s) + '"';
  return *this;
}

JsonWriter& JsonWriter::null() {
  separate();
  out_ += "null";
  return *this;
}

JsonWriter& JsonWriter::raw(const std::string& json) {
  separate();
  out_ += json;
  return *this;
}

JsonWriter& JsonWriter::value(const std::vector<double>& xs) {
  begin_array();
  for (double x : xs) value(x);
  return end_array();
}

JsonWriter& JsonWriter::value(const std::optional<double>& x) {
  return x ? value(*x) : null();
}

// ---------------------------------------------------------------------------

std::string path_to_csv(const PathSolution& path) {
  std::size_t k = 1;
  for (const auto& p : path.points) k = std::max(k, p.maximizers.size());
  std::string out = "u";
  for (std::size_t i = 1; i <= k; ++i) out += ",x_star_" + std::to_string(i);
  out += ",pi_star,boundary_attained,all_paths_maximal\n";
  for (const auto& p : path.points) {
    out += format_double(p.u);
    for (std::size_t i = 0; i < k; ++i) {
      out += ',';
      if (i < p.maximizers.size()) out += format_double(p.maximizers[i]);
    }
    out += ',' + format_double(p.pi_star);
    out += std::string(",") + bool_text(p.boundary_attained);
    out += std::string(",") + bool_text(p.all_paths_maximal) + "\n";
  }
  return out;
}

std::string path_to_json(const PathSolution& path) {
  JsonWriter w;
  w.begin_object();
  w.key("solver_opts").begin_object();
  w.key("scan_n").value(static_cast<std::uint64_t>(path.solver_opts.scan_n));
  w.key("xtol").value(path.solver_opts.xtol);
  w.key("tie_tol").value(path.solver_opts.tie_tol);
  w.end_object();
  w.key("points").begin_array();
  for (const auto& p : path.points) {
    w.begin_object();
    w.key("u").value(p.u);
    w.key("maximizers").value(p.maximizers);
    w.key("pi_star").value(p.pi_star);
    w.key("boundary_attained").value(p.boundary_attained);
    w.key("all_paths_maximal").value(p.all_paths_maximal);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string index_report_to_json(const TailIndexReport& rep) {
  JsonWriter w;
  w.begin_object();
  write_index_fields(w, rep);
  w.end_object();
  return w.str();
}

std::string index_report_to_csv(const TailIndexReport& rep) {
  return std::string("path_kind,kappa,lambda,chi,residual\n") +
         to_string(rep.path_kind) + "," + format_double(rep.kappa) + "," +
         format_double(rep.lambda) + "," + format_double(rep.chi) + "," +
         format_double(rep.extrapolation_residual) + "\n";
}

std::string comparison_to_json(const ComparisonReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.key("lambda_pair").value(rep.lambda_pair);
  w.key("chi_pair").value(rep.chi_pair);
  w.key("verdict").value(to_string(rep.verdict));
  w.key("kappa_1").value(rep.kappa_1);
  w.key("kappa_2").value(rep.kappa_2);
  w.key("tolerance").value(rep.tolerance);
  w.end_object();
  return w.str();
}

std::string risk_report_to_json(const RiskReport& rep) {
  JsonWriter w;
  w.begin_object();
  write_risk_fields(w, rep);
  w.end_object();
  return w.str();
}

std::string risk_report_to_csv(const RiskReport& rep) {
  return "q,VaR,CTE,MTVar,stderr_cte,n,exceedances,seed\n" +
         format_double(rep.q) + "," + format_double(rep.var_q) + "," +
         format_double(rep.cte_q) + "," + format_double(rep.mtvar_q) + "," +
         format_double(rep.stderr_cte) + "," + std::to_string(rep.n) + "," +
         std::to_string(rep.exceedances) + "," + std::to_string(rep.seed) +
         "\n";
}

std::string table1_to_csv(const std::vector<Table1Row>& rows) {
  std::string out = "q,b,tau,kappa_L,kappa_L_star,VaR,CTE,MTVar\n";
  for (const auto& r : rows) {
    out += format_double(r.q) + "," + format_double(r.b) + "," +
           format_double(r.tau) + "," + format_double(r.kappa_l) + "," +
           format_double(r.kappa_l_star) + "," + format_double(r.risk.var_q) +
           "," + format_double(r.risk.cte_q) + "," +
           format_double(r.risk.mtvar_q) + "\n";
  }
  return out;
}

std::string table1_to_json(const std::vector<Table1Row>& rows) {
  JsonWriter w;
  w.begin_object();
  w.key("rows").begin_array();
  for (const auto& r : rows) {
    w.begin_object();
    w.key("b").value(r.b);
    w.key("tau").value(r.tau);
    w.key("kappa_L").value(r.kappa_l);
    w.key("kappa_L_star").value(r.kappa_l_star);
    write_risk_fields(w, r.risk);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string axiom_report_to_json(const AxiomReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.key("grid_n").value(static_cast<std::uint64_t>(rep.grid_n));
  w.key("grounded_ok").value(rep.grounded_ok);
  w.key("max_grounded_deviation").value(rep.max_grounded_deviation);
  w.key("marginals_ok").value(rep.marginals_ok);
  w.key("max_marginal_deviation").value(rep.max_marginal_deviation);
  w.key("two_increasing_ok").value(rep.two_increasing_ok);
  w.key("min_rectangle_mass").value(rep.min_rectangle_mass);
  w.key("worst_rectangle")
      .value(std::vector<double>(rep.worst_rectangle.begin(),
                                 rep.worst_rectangle.end()));
  w.end_object();
  return w.str();
}

std::string contour_grid_csv(const CopulaSpec& spec, std::size_t resolution) {
  if (resolution < 2) {
    fail(ErrorCode::InvalidArgument, "contour resolution must be >= 2");
  }
  std::string out = "u,v,C\n";
  const double step = 1.0 / static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double u = i + 1 == resolution ? 1.0 : i * step;
    for (std::size_t j = 0; j < resolution; ++j) {
      const double v = j + 1 == resolution ? 1.0 : j * step;
      out += format_double(u) + "," + format_double(v) + "," +
             format_double(spec.cdf(u, v)) + "\n";
    }
  }
  return out;
}

std::string contour_path_csv(const CopulaSpec& spec, std::size_t levels,
                             const SolverOptions& opts) {
  if (levels < 1) fail(ErrorCode::InvalidArgument, "need >= 1 path level");
  std::vector<double> grid;
  for (std::size_t i = levels; i >= 1; --i) {
    grid.push_back(static_cast<double>(i) / static_cast<double>(levels + 1));
  }
  const PathSolution sol = solve_path(spec, grid, opts);
  std::string out = "u,path,x,y,pi_star\n";
  for (const auto& p : sol.points) {
    for (std::size_t k = 0; k < p.maximizers.size(); ++k) {
      const double x = p.maximizers[k];
      out += format_double(p.u) + "," + std::to_string(k + 1) + "," +
             format_double(x) + "," + format_double(p.u * p.u / x) + "," +
             format_double(p.pi_star) + "\n";
    }
  }
  return out;
}

}  // namespace maxtail::io
