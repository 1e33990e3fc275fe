#include "maxtail/maxpath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "maxtail/error.hpp"
#include "maxtail/numeric.hpp"
#include "maxtail/parallel.hpp"

namespace maxtail {

namespace {

constexpr double kLogMax = 709.782712893383973;  // log(DBL_MAX)

void require_open_level(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    fail(ErrorCode::InvalidArgument, "level u must lie in (0, 1)");
  }
}

// log C(x, u^2/x) parameterised by t = log x.
struct LevelObjective {
  const CopulaSpec& spec;
  double u;
  double log_u;

  double at_lower() const { return spec.log_cdf(u * u, 1.0); }
  double at_upper() const { return spec.log_cdf(1.0, u * u); }

  double operator()(double t) const {
    const double x = std::min(1.0, std::exp(t));
    const double v = std::min(1.0, std::exp(2.0 * log_u - t));
    return spec.log_cdf(x, v);
  }
};

// d/dt log C(e^t, u^2 e^-t) in closed form, where the family allows it.
// Sign changes bracket the maxima exactly, kinks included.
std::optional<double> log_path_slope(const CopulaSpec& spec, double log_u,
                                     double t) {
  if (spec.is_survival()) return std::nullopt;
  const double x = std::exp(t);
  const double s = 2.0 * log_u - t;  // log y
  const double y = std::exp(s);
  const auto p = spec.params();
  switch (spec.family()) {
    case Family::Independence:
      return 0.0;
    case Family::FrechetUpper:
      return t < s ? 1.0 : (t > s ? -1.0 : 0.0);
    case Family::MarshallOlkin:
    case Family::MixtureMO: {
      // log C_{a,b} = min(2L - a t, b t + 2(1-b) L)
      auto branch = [&](double a, double b, double& slope) {
        const double first = 2.0 * log_u - a * t;
        const double second = b * t + 2.0 * (1.0 - b) * log_u;
        slope = first < second ? -a : (second < first ? b : 0.0);
        return std::min(first, second);
      };
      double s1 = 0.0;
      const double l1 = branch(p[0], p[1], s1);
      if (spec.family() == Family::MarshallOlkin) return s1;
      double s2 = 0.0;
      const double l2 = branch(p[1], p[0], s2);
      const double w = 1.0 / (1.0 + std::exp(l2 - l1));  // weight of C_{a,b}
      return w * s1 + (1.0 - w) * s2;
    }
    case Family::FGM: {
      const double alpha = p[0];
      return alpha * (y - x) / (1.0 + alpha * (1.0 - x) * (1.0 - y));
    }
    case Family::GeneralizedClayton: {
      const double g0 = p[0], g1 = p[1], gt = g0 + g1;
      // S = x^(-1/gt) + y^(-1/g0) - 1, log C = (g1/gt) t - g0 log S.
      const double la = -t / gt, lb = -s / g0;
      const double m = std::max(la, lb);
      const double ea = std::exp(la - m), eb = std::exp(lb - m);
      const double ds = -ea / gt + eb / g0;
      const double sum = ea + eb - std::exp(-m);
      return g1 / gt - g0 * ds / sum;
    }
    case Family::Archimedean: {
      const Generator* g = spec.generator();
      const double c = spec.cdf(x, y);
      if (!(c > 0.0)) return std::nullopt;
      const double num = x * g->dpsi(x) - y * g->dpsi(y);
      const double den = c * g->dpsi(c);
      if (!std::isfinite(num) || !std::isfinite(den) || den == 0.0) {
        return std::nullopt;
      }
      return num / den;
    }
  }
  return std::nullopt;
}

// Bisection on the slope sign inside [lo, hi]; nullopt unless the slope is
// positive at lo and negative at hi.
std::optional<double> slope_root(const CopulaSpec& spec, double log_u,
                                 double lo, double hi, double xtol) {
  const auto s_lo = log_path_slope(spec, log_u, lo);
  const auto s_hi = log_path_slope(spec, log_u, hi);
  if (!s_lo || !s_hi || !(*s_lo > 0.0) || !(*s_hi < 0.0)) return std::nullopt;
  for (int i = 0; i < 200 && hi - lo > xtol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const auto sm = log_path_slope(spec, log_u, mid);
    if (!sm || !std::isfinite(*sm)) return std::nullopt;
    if (*sm == 0.0) return mid;
    (*sm > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct Candidate {
  double t;
  double value;
  bool endpoint;
};

void validate_gc(double gamma0, double gamma1) {
  if (!(gamma0 > 0.0) || !(gamma1 >= 0.0) || !std::isfinite(gamma0) ||
      !std::isfinite(gamma1)) {
    fail(ErrorCode::InvalidParameter, "need gamma0 > 0 and gamma1 >= 0");
  }
}

// Both zeta terms in log form: {log first, log second}.
std::pair<double, double> zeta_log_terms(double g0, double g1, double log_u,
                                         double log_x) {
  const double g1t = g0 + g1;
  const double frac = g1 / g1t;
  const double inner = -log_x / g1t;  // log x^(-1/g1t)
  const double first = -log_x / g0 + inner + std::log1p(-frac * std::exp(-inner));
  const double second = std::log1p(-frac) - 2.0 * log_u / g0;
  return {first, second};
}

}  // namespace

bool PathSolution::any_boundary() const noexcept {
  return std::any_of(points.begin(), points.end(),
                     [](const PathPoint& p) { return p.boundary_attained; });
}

bool PathSolution::all_boundary() const noexcept {
  return !points.empty() &&
         std::all_of(points.begin(), points.end(),
                     [](const PathPoint& p) { return p.boundary_attained; });
}

std::vector<double> make_u_grid(double max_exp, double min_exp,
                                unsigned per_decade) {
  if (!(max_exp < 0.0) || !(min_exp <= max_exp) || per_decade == 0 ||
      !std::isfinite(min_exp)) {
    fail(ErrorCode::InvalidArgument,
         "u grid needs min_exp <= max_exp < 0 and per_decade >= 1");
  }
  const auto steps = static_cast<std::size_t>(
      std::llround(std::floor((max_exp - min_exp) * per_decade + 1e-9)));
  std::vector<double> grid;
  grid.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    grid.push_back(
        std::pow(10.0, max_exp - static_cast<double>(k) / per_decade));
  }
  return grid;
}

double pi_phi(const CopulaSpec& spec, UnitInterval u, double x) {
  const double uu = u.value() * u.value();
  if (!(x >= uu && x <= 1.0)) {
    fail(ErrorCode::Domain, "pi_phi: x must lie in [u^2, 1]");
  }
  if (x == 0.0) return 0.0;
  return spec.cdf(x, std::min(1.0, uu / x));
}

PathPoint pointwise_max(const CopulaSpec& spec, UnitInterval level,
                        const SolverOptions& opts) {
  const double u = level.value();
  require_open_level(u);
  if (opts.scan_n < 3) fail(ErrorCode::InvalidArgument, "scan_n must be >= 3");

  const LevelObjective f{spec, u, std::log(u)};
  const std::size_t n = opts.scan_n;
  const double t_lo = 2.0 * f.log_u;
  const double t_hi = 0.0;
  std::vector<double> t(n), val(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = t_lo + (t_hi - t_lo) * static_cast<double>(i) /
                      static_cast<double>(n - 1);
  }
  t.front() = t_lo;
  t.back() = t_hi;
  val.front() = f.at_lower();
  val.back() = f.at_upper();
  for (std::size_t i = 1; i + 1 < n; ++i) val[i] = f(t[i]);

  PathPoint out;
  out.u = u;

  const auto [mn, mx] = std::minmax_element(val.begin(), val.end());
  if (*mx - *mn <= opts.tie_tol) {
    out.all_paths_maximal = true;
    out.maximizers = {u};
    out.pi_star = spec.cdf(u, u);
    return out;
  }

  std::vector<Candidate> cands;
  if (val[0] >= val[1]) cands.push_back({t_lo, val[0], true});
  if (val[n - 1] >= val[n - 2]) cands.push_back({t_hi, val[n - 1], true});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool peak = (val[i] > val[i - 1] && val[i] >= val[i + 1]) ||
                      (val[i] >= val[i - 1] && val[i] > val[i + 1]);
    if (!peak) continue;
    auto ext = numeric::golden_section_max(f, t[i - 1], t[i + 1], opts.xtol);
    // Golden section only resolves smooth maxima to ~sqrt(eps); the slope
    // root pins them down when it agrees in value.
    if (const auto r = slope_root(spec, f.log_u, t[i - 1], t[i + 1], opts.xtol)) {
      const double fr = f(*r);
      const double slack = 64.0 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::abs(ext.value));
      if (fr >= ext.value - slack) {
        ext.x = *r;
        ext.value = std::max(fr, ext.value);
      }
    }
    // The scan value itself is a lower bound on what the bracket holds.
    if (ext.value >= val[i]) {
      cands.push_back({ext.x, ext.value, false});
    } else {
      cands.push_back({t[i], val[i], false});
    }
  }

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : cands) best = std::max(best, c.value);

  std::vector<Candidate> ties;
  for (const auto& c : cands) {
    if (best - c.value <= opts.tie_tol) ties.push_back(c);
  }
  std::sort(ties.begin(), ties.end(),
            [](const Candidate& a, const Candidate& b) { return a.t < b.t; });
  std::vector<Candidate> merged;
  for (const auto& c : ties) {
    if (!merged.empty() && std::abs(c.t - merged.back().t) <= 1e-6) {
      auto& m = merged.back();
      if (c.endpoint || (!m.endpoint && c.value > m.value)) m = c;
      continue;
    }
    merged.push_back(c);
  }

  out.boundary_attained =
      std::all_of(merged.begin(), merged.end(),
                  [](const Candidate& c) { return c.endpoint; });
  double best_in_set = -std::numeric_limits<double>::infinity();
  for (const auto& c : merged) {
    double x;
    if (c.endpoint) {
      x = c.t == t_lo ? u * u : 1.0;
    } else {
      x = std::clamp(std::exp(c.t), u * u, 1.0);
    }
    out.maximizers.push_back(x);
    best_in_set = std::max(best_in_set, c.value);
  }
  out.pi_star = std::exp(best_in_set);
  return out;
}

PathSolution solve_path(const CopulaSpec& spec, std::span<const double> u_grid,
                        const SolverOptions& opts) {
  if (u_grid.empty()) fail(ErrorCode::InvalidArgument, "empty u grid");
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    require_open_level(u_grid[i]);
    if (i > 0 && !(u_grid[i] < u_grid[i - 1])) {
      fail(ErrorCode::InvalidArgument, "u grid must be strictly decreasing");
    }
  }
  PathSolution sol;
  sol.u_grid.assign(u_grid.begin(), u_grid.end());
  sol.solver_opts = opts;
  sol.points.resize(u_grid.size());
  detail::parallel_for(u_grid.size(), opts.threads, [&](std::size_t i) {
    sol.points[i] = pointwise_max(spec, UnitInterval(u_grid[i]), opts);
  });
  return sol;
}

// ---------------------------------------------------------------------------
// Generalised Clayton stationarity machinery

double zeta_log_gap(double gamma0, double gamma1, double u, double x) {
  const auto [first, second] =
      zeta_log_terms(gamma0, gamma1, std::log(u), std::log(x));
  return first - second;
}

double zeta(double gamma0, double gamma1, UnitInterval level, double x) {
  validate_gc(gamma0, gamma1);
  const double u = level.value();
  require_open_level(u);
  if (!(x >= u * u && x <= 1.0)) {
    fail(ErrorCode::Domain, "zeta: x must lie in [u^2, 1]");
  }
  const auto [first, second] =
      zeta_log_terms(gamma0, gamma1, std::log(u), std::log(x));
  if (first > kLogMax || second > kLogMax) {
    fail(ErrorCode::Overflow,
         "zeta: u^(-2/gamma0) exceeds the double range; use zeta_log_gap");
  }
  if (first >= second) return std::exp(first) * -std::expm1(second - first);
  return -std::exp(second) * -std::expm1(first - second);
}

double zeta_root(double gamma0, double gamma1, UnitInterval level,
                 double xtol) {
  validate_gc(gamma0, gamma1);
  const double u = level.value();
  require_open_level(u);
  const double log_u = std::log(u);
  auto gap = [&](double log_x) {
    const auto [first, second] = zeta_log_terms(gamma0, gamma1, log_u, log_x);
    return first - second;
  };
  double lo = 2.0 * log_u;
  double hi = 0.0;
  const double g_lo = gap(lo);
  const double g_hi = gap(hi);
  if (!(g_lo > 0.0) || !(g_hi < 0.0)) {
    fail(ErrorCode::BracketFailure,
         "zeta_root: expected zeta(u^2) > 0 > zeta(1), got log gaps " +
             std::to_string(g_lo) + ", " + std::to_string(g_hi));
  }
  // Bisection on log x; stop on absolute width in x.
  for (int it = 0; it < 4000; ++it) {
    if (std::exp(hi) - std::exp(lo) <= xtol) break;
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double g = gap(mid);
    if (g == 0.0) return std::exp(mid);
    if (g > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(lo + 0.5 * (hi - lo));
}

std::optional<double> zeta_root_fixed_point(double gamma0, double gamma1,
                                            UnitInterval level, double xtol,
                                            int max_iter) {
  validate_gc(gamma0, gamma1);
  const double u = level.value();
  require_open_level(u);
  const double g1t = gamma0 + gamma1;
  const double frac = gamma1 / g1t;
  const double power = g1t * gamma0 / (g1t + gamma0);
  const double base = 2.0 * std::log(u) / gamma0;
  const double log_norm = std::log1p(-frac);
  double t = power * base;  // r(x) = 1 start
  for (int it = 0; it < max_iter; ++it) {
    const double log_r =
        std::log1p(-frac * std::exp(t / g1t)) - log_norm;
    const double next = power * (base + log_r);
    if (!std::isfinite(next)) return std::nullopt;
    const double step = std::abs(std::exp(next) - std::exp(t));
    t = next;
    if (step <= xtol) return std::exp(t);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

DiagonalCheck archimedean_diagonal_check(const Generator& generator,
                                         UnitInterval level,
                                         std::size_t grid_n) {
  const double u = level.value();
  require_open_level(u);
  if (grid_n < 2) fail(ErrorCode::InvalidArgument, "grid_n must be >= 2");

  const double near_zero = generator.psi(1e-10);
  const double reference = generator.psi(0.1);
  const bool strict =
      std::isinf(near_zero) ||
      (std::isfinite(near_zero) && near_zero > 0.0 && near_zero >= 5.0 * reference);
  if (!strict) {
    fail(ErrorCode::NonStrictGenerator,
         generator.name() + ": psi(1e-10) = " + std::to_string(near_zero) +
             " does not diverge; generator is not strict");
  }

  const auto xs = numeric::log_spaced(u * u, 1.0, grid_n);
  DiagonalCheck out;
  out.increasing = true;
  double prev = xs[0] * generator.dpsi(xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double cur = xs[i] * generator.dpsi(xs[i]);
    const double slack = 1e-12 * std::max(std::abs(prev), std::abs(cur));
    if (!(cur >= prev - slack)) {
      out.increasing = false;
      break;
    }
    prev = cur;
  }
  out.diagonal_is_maximal = out.increasing;
  return out;
}

std::optional<std::vector<double>> closed_form_path(const CopulaSpec& spec,
                                                    UnitInterval level) {
  const double u = level.value();
  require_open_level(u);
  if (spec.is_survival()) return std::nullopt;
  switch (spec.family()) {
    case Family::FrechetUpper:
      return std::vector<double>{u};
    case Family::MarshallOlkin:
    case Family::MixtureMO: {
      const double a = spec.param(0);
      const double b = spec.param(1);
      if (a <= 0.0 || b <= 0.0) return std::nullopt;  // reduces to independence
      const double x1 = std::pow(u, 2.0 * b / (a + b));
      if (spec.family() == Family::MarshallOlkin || a == b) {
        return std::vector<double>{x1};
      }
      const double x2 = std::pow(u, 2.0 * a / (a + b));
      return std::vector<double>{std::min(x1, x2), std::max(x1, x2)};
    }
    case Family::FGM:
      if (spec.param(0) > 0.0) return std::vector<double>{u};
      return std::nullopt;
    case Family::Archimedean:
      try {
        if (archimedean_diagonal_check(*spec.generator(), level).increasing) {
          return std::vector<double>{u};
        }
      } catch (const Error&) {
      }
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace maxtail
