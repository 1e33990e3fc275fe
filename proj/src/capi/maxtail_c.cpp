#include "maxtail/maxtail.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "maxtail/config.hpp"
#include "maxtail/copula.hpp"
#include "maxtail/error.hpp"
#include "maxtail/indices.hpp"
#include "maxtail/maxpath.hpp"
#include "maxtail/risk.hpp"
#include "maxtail/serialize.hpp"

struct mxt_config {
  maxtail::Config cfg;
};

struct mxt_copula {
  maxtail::CopulaSpec spec;
  std::string description;
};

struct mxt_path {
  maxtail::PathSolution sol;
};

struct mxt_index_report {
  maxtail::TailIndexReport rep;
};

namespace {

thread_local std::string g_last_error;

mxt_status status_for(maxtail::ErrorCode code) {
  using maxtail::ErrorCode;
  switch (code) {
    case ErrorCode::ConfigParse: return MXT_ERR_CONFIG;
    case ErrorCode::InvalidParameter: return MXT_ERR_PARAMETER;
    case ErrorCode::InvalidArgument: return MXT_ERR_INVALID_ARGUMENT;
    case ErrorCode::Unsupported: return MXT_ERR_UNSUPPORTED;
    case ErrorCode::Domain:
    case ErrorCode::Overflow:
    case ErrorCode::BracketFailure:
    case ErrorCode::Degenerate: return MXT_ERR_NUMERIC;
    case ErrorCode::NoAdmissiblePath: return MXT_ERR_NO_ADMISSIBLE_PATH;
    case ErrorCode::NonStrictGenerator: return MXT_ERR_NON_STRICT_GENERATOR;
    case ErrorCode::InsufficientTail: return MXT_ERR_INSUFFICIENT_TAIL;
  }
  return MXT_ERR_INTERNAL;
}

template <class F>
mxt_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return MXT_OK;
  } catch (const maxtail::Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MXT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MXT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return MXT_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) {
    maxtail::fail(maxtail::ErrorCode::InvalidArgument,
                  std::string("null pointer: ") + what);
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

maxtail::SolverOptions to_opts(const mxt_solver_opts* o) {
  maxtail::SolverOptions opts;
  if (o != nullptr) {
    opts.scan_n = o->scan_n;
    opts.xtol = o->xtol;
    opts.tie_tol = o->tie_tol;
    opts.threads = o->threads;
  }
  return opts;
}

mxt_copula* wrap(maxtail::CopulaSpec spec) {
  auto* c = new mxt_copula{std::move(spec), {}};
  c->description = c->spec.describe();
  return c;
}

maxtail::ParetoII to_pareto(const mxt_pareto* m) {
  need(m, "pareto");
  return maxtail::ParetoII(m->mu, m->sigma, m->alpha);
}

maxtail::ComparisonReport from_c(const mxt_comparison& c) {
  maxtail::ComparisonReport rep;
  if (c.has_lambda_pair) rep.lambda_pair = c.lambda_pair;
  if (c.has_chi_pair) rep.chi_pair = c.chi_pair;
  rep.verdict = static_cast<maxtail::Verdict>(c.verdict);
  rep.kappa_1 = c.kappa_1;
  rep.kappa_2 = c.kappa_2;
  rep.tolerance = c.tolerance;
  return rep;
}

mxt_risk_report to_c(const maxtail::RiskReport& r) {
  return {r.q, r.var_q, r.cte_q, r.mtvar_q, r.stderr_cte, r.n, r.exceedances,
          r.seed};
}

maxtail::RiskReport from_c(const mxt_risk_report& r) {
  maxtail::RiskReport out;
  out.q = r.q;
  out.var_q = r.var_q;
  out.cte_q = r.cte_q;
  out.mtvar_q = r.mtvar_q;
  out.stderr_cte = r.stderr_cte;
  out.n = r.n;
  out.exceedances = r.exceedances;
  out.seed = r.seed;
  return out;
}

}  // namespace

extern "C" {

const char* mxt_version(void) { return "0.1.0"; }

const char* mxt_last_error(void) { return g_last_error.c_str(); }

const char* mxt_status_name(mxt_status status) {
  switch (status) {
    case MXT_OK: return "ok";
    case MXT_ERR_CONFIG: return "config_error";
    case MXT_ERR_PARAMETER: return "parameter_error";
    case MXT_ERR_NUMERIC: return "numeric_error";
    case MXT_ERR_UNSUPPORTED: return "unsupported";
    case MXT_ERR_NO_ADMISSIBLE_PATH: return "no_admissible_path";
    case MXT_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case MXT_ERR_INSUFFICIENT_TAIL: return "insufficient_tail";
    case MXT_ERR_NON_STRICT_GENERATOR: return "non_strict_generator";
    case MXT_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

void mxt_string_free(char* s) { std::free(s); }

// ---- configuration --------------------------------------------------------

mxt_status mxt_config_create(mxt_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new mxt_config{};
  });
}

mxt_status mxt_config_parse(const char* text, mxt_config** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new mxt_config{maxtail::Config::parse(text)};
  });
}

mxt_status mxt_config_parse_inline(const char* text, mxt_config** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new mxt_config{maxtail::Config::parse_inline(text)};
  });
}

void mxt_config_destroy(mxt_config* cfg) { delete cfg; }

mxt_status mxt_config_set(mxt_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "config");
    need(key, "key");
    need(value, "value");
    cfg->cfg.set(key, value);
  });
}

const char* mxt_config_get(const mxt_config* cfg, const char* key) {
  if (cfg == nullptr || key == nullptr) return nullptr;
  const auto& values = cfg->cfg.values();
  const auto it = values.find(key);
  return it == values.end() ? nullptr : it->second.c_str();
}

mxt_status mxt_config_get_double(const mxt_config* cfg, const char* key,
                                 double fallback, double* out) {
  return guarded([&] {
    need(cfg, "config");
    need(key, "key");
    need(out, "out");
    *out = cfg->cfg.get_double(key, fallback);
  });
}

mxt_status mxt_config_get_int(const mxt_config* cfg, const char* key,
                              int64_t fallback, int64_t* out) {
  return guarded([&] {
    need(cfg, "config");
    need(key, "key");
    need(out, "out");
    *out = cfg->cfg.get_int(key, fallback);
  });
}

// ---- copulas --------------------------------------------------------------

mxt_status mxt_copula_from_config(const mxt_config* cfg, mxt_copula** out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "out");
    *out = wrap(maxtail::copula_from_config(cfg->cfg));
  });
}

mxt_status mxt_copula_survival(const mxt_copula* c, mxt_copula** out) {
  return guarded([&] {
    need(c, "copula");
    need(out, "out");
    *out = wrap(maxtail::survival_copula(c->spec));
  });
}

void mxt_copula_destroy(mxt_copula* c) { delete c; }

const char* mxt_copula_describe(const mxt_copula* c) {
  return c == nullptr ? "" : c->description.c_str();
}

mxt_status mxt_eval_cdf(const mxt_copula* c, double u, double v, double* out) {
  return guarded([&] {
    need(c, "copula");
    need(out, "out");
    *out = maxtail::eval_cdf(c->spec, maxtail::UnitInterval(u),
                             maxtail::UnitInterval(v));
  });
}

mxt_status mxt_check_axioms(const mxt_copula* c, size_t grid_n, double tol,
                            mxt_axiom_report* out) {
  return guarded([&] {
    need(c, "copula");
    need(out, "out");
    const auto r = maxtail::check_axioms(c->spec, grid_n, tol);
    out->grid_n = r.grid_n;
    out->grounded_ok = r.grounded_ok;
    out->max_grounded_deviation = r.max_grounded_deviation;
    out->marginals_ok = r.marginals_ok;
    out->max_marginal_deviation = r.max_marginal_deviation;
    out->two_increasing_ok = r.two_increasing_ok;
    out->min_rectangle_mass = r.min_rectangle_mass;
    std::copy(r.worst_rectangle.begin(), r.worst_rectangle.end(),
              out->worst_rectangle);
  });
}

mxt_status mxt_axiom_report_to_json(const mxt_axiom_report* rep, char** out) {
  return guarded([&] {
    need(rep, "report");
    need(out, "out");
    maxtail::AxiomReport r;
    r.grid_n = rep->grid_n;
    r.grounded_ok = rep->grounded_ok != 0;
    r.max_grounded_deviation = rep->max_grounded_deviation;
    r.marginals_ok = rep->marginals_ok != 0;
    r.max_marginal_deviation = rep->max_marginal_deviation;
    r.two_increasing_ok = rep->two_increasing_ok != 0;
    r.min_rectangle_mass = rep->min_rectangle_mass;
    std::copy(rep->worst_rectangle, rep->worst_rectangle + 4,
              r.worst_rectangle.begin());
    *out = dup_string(maxtail::io::axiom_report_to_json(r));
  });
}

mxt_status mxt_kendall_tau(const mxt_copula* c, mxt_tau_method method, size_t n,
                           uint64_t seed, double* out) {
  return guarded([&] {
    need(c, "copula");
    need(out, "out");
    *out = maxtail::kendall_tau(c->spec,
                                method == MXT_TAU_CLOSED_FORM
                                    ? maxtail::TauMethod::ClosedForm
                                    : maxtail::TauMethod::MonteCarlo,
                                n, seed);
  });
}

// ---- paths ----------------------------------------------------------------

mxt_solver_opts mxt_solver_opts_default(void) {
  const maxtail::SolverOptions d;
  return {d.scan_n, d.xtol, d.tie_tol, d.threads};
}

mxt_status mxt_u_grid(double max_exp, double min_exp, unsigned per_decade,
                      double* out, size_t capacity, size_t* count) {
  return guarded([&] {
    need(count, "count");
    const auto g = maxtail::make_u_grid(max_exp, min_exp, per_decade);
    *count = g.size();
    if (out != nullptr) {
      std::copy_n(g.begin(), std::min(capacity, g.size()), out);
    }
  });
}

mxt_status mxt_pi_phi(const mxt_copula* c, double u, double x, double* out) {
  return guarded([&] {
    need(c, "copula");
    need(out, "out");
    *out = maxtail::pi_phi(c->spec, maxtail::UnitInterval(u), x);
  });
}

mxt_status mxt_solve_path(const mxt_copula* c, const double* u_grid, size_t n,
                          const mxt_solver_opts* opts, mxt_path** out) {
  return guarded([&] {
    need(c, "copula");
    need(u_grid, "u_grid");
    need(out, "out");
    *out = new mxt_path{
        maxtail::solve_path(c->spec, {u_grid, n}, to_opts(opts))};
  });
}

void mxt_path_destroy(mxt_path* p) { delete p; }

size_t mxt_path_size(const mxt_path* p) {
  return p == nullptr ? 0 : p->sol.points.size();
}

mxt_status mxt_path_point(const mxt_path* p, size_t i, double* u,
                          double* pi_star, size_t* n_maximizers,
                          int* boundary_attained, int* all_paths_maximal) {
  return guarded([&] {
    need(p, "path");
    if (i >= p->sol.points.size()) {
      maxtail::fail(maxtail::ErrorCode::InvalidArgument, "level out of range");
    }
    const auto& pt = p->sol.points[i];
    if (u) *u = pt.u;
    if (pi_star) *pi_star = pt.pi_star;
    if (n_maximizers) *n_maximizers = pt.maximizers.size();
    if (boundary_attained) *boundary_attained = pt.boundary_attained;
    if (all_paths_maximal) *all_paths_maximal = pt.all_paths_maximal;
  });
}

mxt_status mxt_path_maximizer(const mxt_path* p, size_t i, size_t k,
                              double* x) {
  return guarded([&] {
    need(p, "path");
    need(x, "x");
    if (i >= p->sol.points.size() || k >= p->sol.points[i].maximizers.size()) {
      maxtail::fail(maxtail::ErrorCode::InvalidArgument,
                    "maximizer index out of range");
    }
    *x = p->sol.points[i].maximizers[k];
  });
}

mxt_status mxt_path_to_csv(const mxt_path* p, char** out) {
  return guarded([&] {
    need(p, "path");
    need(out, "out");
    *out = dup_string(maxtail::io::path_to_csv(p->sol));
  });
}

mxt_status mxt_path_to_json(const mxt_path* p, char** out) {
  return guarded([&] {
    need(p, "path");
    need(out, "out");
    *out = dup_string(maxtail::io::path_to_json(p->sol));
  });
}

mxt_status mxt_closed_form_path(const mxt_copula* c, double u, double* out,
                                size_t capacity, size_t* count) {
  return guarded([&] {
    need(c, "copula");
    need(count, "count");
    const auto xs = maxtail::closed_form_path(c->spec, maxtail::UnitInterval(u));
    *count = xs ? xs->size() : 0;
    if (xs && out != nullptr) {
      std::copy_n(xs->begin(), std::min(capacity, xs->size()), out);
    }
  });
}

mxt_status mxt_zeta(double gamma0, double gamma1, double u, double x,
                    double* out) {
  return guarded([&] {
    need(out, "out");
    *out = maxtail::zeta(gamma0, gamma1, maxtail::UnitInterval(u), x);
  });
}

mxt_status mxt_zeta_root(double gamma0, double gamma1, double u, double xtol,
                         double* out) {
  return guarded([&] {
    need(out, "out");
    *out = maxtail::zeta_root(gamma0, gamma1, maxtail::UnitInterval(u), xtol);
  });
}

mxt_status mxt_archimedean_diagonal_check(const mxt_copula* c, double u,
                                          size_t grid_n, int* increasing,
                                          int* diagonal_is_maximal) {
  return guarded([&] {
    need(c, "copula");
    if (c->spec.generator() == nullptr) {
      maxtail::fail(maxtail::ErrorCode::Unsupported,
                    "copula is not archimedean");
    }
    const auto r = maxtail::archimedean_diagonal_check(
        *c->spec.generator(), maxtail::UnitInterval(u), grid_n);
    if (increasing) *increasing = r.increasing;
    if (diagonal_is_maximal) *diagonal_is_maximal = r.diagonal_is_maximal;
  });
}

// ---- indices --------------------------------------------------------------

mxt_status mxt_classical_indices(const mxt_copula* c, const double* u_grid,
                                 size_t n, mxt_index_report** out) {
  return guarded([&] {
    need(c, "copula");
    need(u_grid, "u_grid");
    need(out, "out");
    *out = new mxt_index_report{
        maxtail::classical_indices(c->spec, {u_grid, n})};
  });
}

mxt_status mxt_star_indices(const mxt_path* p, mxt_index_report** out) {
  return guarded([&] {
    need(p, "path");
    need(out, "out");
    *out = new mxt_index_report{maxtail::star_indices(p->sol)};
  });
}

void mxt_index_report_destroy(mxt_index_report* r) { delete r; }

mxt_status mxt_index_report_summary(const mxt_index_report* r,
                                    mxt_index_summary* out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    const auto& rep = r->rep;
    out->path_kind = rep.path_kind == maxtail::PathKind::Diagonal
                         ? MXT_PATH_DIAGONAL
                         : MXT_PATH_MAXIMAL;
    out->kappa = rep.kappa;
    out->lambda = rep.lambda;
    out->lambda_raw = rep.lambda_raw;
    out->lambda_degenerate = rep.lambda_degenerate;
    out->chi = rep.chi;
    out->residual = rep.extrapolation_residual;
    out->n_slopes = rep.local_slopes.size();
  });
}

mxt_status mxt_index_report_slopes(const mxt_index_report* r, double* out,
                                   size_t capacity, size_t* count) {
  return guarded([&] {
    need(r, "report");
    need(count, "count");
    const auto& s = r->rep.local_slopes;
    *count = s.size();
    if (out != nullptr) std::copy_n(s.begin(), std::min(capacity, s.size()), out);
  });
}

mxt_status mxt_index_report_to_json(const mxt_index_report* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = dup_string(maxtail::io::index_report_to_json(r->rep));
  });
}

mxt_status mxt_index_report_to_csv(const mxt_index_report* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = dup_string(maxtail::io::index_report_to_csv(r->rep));
  });
}

mxt_status mxt_closed_form_kappa_star(const mxt_copula* c, int* available,
                                      double* out) {
  return guarded([&] {
    need(c, "copula");
    need(available, "available");
    const auto k = maxtail::closed_form_kappa_star(c->spec);
    *available = k.has_value();
    if (k && out != nullptr) *out = *k;
  });
}

const char* mxt_verdict_name(mxt_verdict v) {
  return maxtail::to_string(static_cast<maxtail::Verdict>(v));
}

mxt_status mxt_compare(const mxt_copula* c1, const mxt_copula* c2,
                       const double* u_grid, size_t n,
                       const mxt_solver_opts* opts, mxt_comparison* out) {
  return guarded([&] {
    need(c1, "copula 1");
    need(c2, "copula 2");
    need(u_grid, "u_grid");
    need(out, "out");
    const auto r =
        maxtail::compare(c1->spec, c2->spec, {u_grid, n}, to_opts(opts));
    out->has_lambda_pair = r.lambda_pair.has_value();
    out->lambda_pair = r.lambda_pair.value_or(0.0);
    out->has_chi_pair = r.chi_pair.has_value();
    out->chi_pair = r.chi_pair.value_or(0.0);
    out->verdict = static_cast<mxt_verdict>(r.verdict);
    out->kappa_1 = r.kappa_1;
    out->kappa_2 = r.kappa_2;
    out->tolerance = r.tolerance;
  });
}

mxt_status mxt_comparison_to_json(const mxt_comparison* rep, char** out) {
  return guarded([&] {
    need(rep, "report");
    need(out, "out");
    *out = dup_string(maxtail::io::comparison_to_json(from_c(*rep)));
  });
}

// ---- risk -----------------------------------------------------------------

mxt_status mxt_pareto_quantile(const mxt_pareto* m, double p, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = maxtail::pareto_quantile(to_pareto(m), p);
  });
}

mxt_status mxt_sample_pairs(const mxt_copula* c, uint64_t seed, size_t n,
                            unsigned threads, double* u_out, double* v_out) {
  return guarded([&] {
    need(c, "copula");
    need(u_out, "u_out");
    need(v_out, "v_out");
    const auto s = maxtail::sample_pairs(c->spec, seed, n, threads);
    std::copy(s.u.begin(), s.u.end(), u_out);
    std::copy(s.v.begin(), s.v.end(), v_out);
  });
}

mxt_status mxt_risk_measures(const mxt_copula* c, const mxt_pareto* m, double q,
                             uint64_t n, uint64_t seed, mxt_coupling coupling,
                             unsigned threads, mxt_risk_report* out) {
  return guarded([&] {
    need(c, "copula");
    need(out, "out");
    maxtail::RiskOptions opts;
    opts.coupling = coupling == MXT_COUPLING_SURVIVAL
                        ? maxtail::MarginalCoupling::Survival
                        : maxtail::MarginalCoupling::Distribution;
    opts.threads = threads;
    *out = to_c(
        maxtail::risk_measures(c->spec, to_pareto(m), q, n, seed, opts));
  });
}

mxt_status mxt_risk_report_to_json(const mxt_risk_report* rep, char** out) {
  return guarded([&] {
    need(rep, "report");
    need(out, "out");
    *out = dup_string(maxtail::io::risk_report_to_json(from_c(*rep)));
  });
}

mxt_status mxt_risk_report_to_csv(const mxt_risk_report* rep, char** out) {
  return guarded([&] {
    need(rep, "report");
    need(out, "out");
    *out = dup_string(maxtail::io::risk_report_to_csv(from_c(*rep)));
  });
}

mxt_status mxt_table1(uint64_t seed, uint64_t n, unsigned threads,
                      mxt_format format, char** out) {
  return guarded([&] {
    need(out, "out");
    const auto rows = maxtail::table1(seed, n, threads);
    *out = dup_string(format == MXT_FORMAT_JSON ? maxtail::io::table1_to_json(rows)
                                                : maxtail::io::table1_to_csv(rows));
  });
}

// ---- plotting -------------------------------------------------------------

mxt_status mxt_contour_grid_csv(const mxt_copula* c, size_t resolution,
                                char** out) {
  return guarded([&] {
    need(c, "copula");
    need(out, "out");
    *out = dup_string(maxtail::io::contour_grid_csv(c->spec, resolution));
  });
}

mxt_status mxt_contour_path_csv(const mxt_copula* c, size_t levels,
                                const mxt_solver_opts* opts, char** out) {
  return guarded([&] {
    need(c, "copula");
    need(out, "out");
    *out = dup_string(
        maxtail::io::contour_path_csv(c->spec, levels, to_opts(opts)));
  });
}

}  // extern "C"
