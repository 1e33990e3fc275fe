#include "maxtail/copula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "maxtail/error.hpp"
#include "maxtail/numeric.hpp"

namespace maxtail {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string fmt_num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidParameter, what);
}

bool in_closed(double x, double lo, double hi) { return x >= lo && x <= hi; }

// log(e^p + e^q - 1) for p, q >= 0.
double log_sum_exp_minus_one(double p, double q) {
  const double m = std::max(p, q);
  if (m == std::numeric_limits<double>::infinity()) return m;
  return m + std::log(std::exp(p - m) + std::exp(q - m) - std::exp(-m));
}

double mo_log_cdf(double lu, double lv, double a, double b) {
  return std::min((1.0 - a) * lu + lv, lu + (1.0 - b) * lv);
}

double mo_cdf(double u, double v, double a, double b) {
  return std::min(std::pow(u, 1.0 - a) * v, u * std::pow(v, 1.0 - b));
}

void validate_generator(const Generator& g) {
  const double at_one = g.psi(1.0);
  if (!(std::abs(at_one) <= 1e-12)) {
    fail(ErrorCode::InvalidParameter,
         g.name() + ": psi(1) = " + fmt_num(at_one) + ", expected 0");
  }
  std::vector<double> grid;
  for (int i = 1; i < 64; ++i) grid.push_back(i / 64.0);
  for (double t : {1e-6, 1e-4, 1e-3, 1e-2, 0.999}) grid.push_back(t);
  for (double t : grid) {
    const double p = g.psi(t);
    const double d1 = g.dpsi(t);
    const double d2 = g.d2psi(t);
    if (!std::isfinite(p) || !(d1 < 0.0) || !(d2 > 0.0)) {
      fail(ErrorCode::InvalidParameter,
           g.name() + ": generator shape violated at t = " + fmt_num(t) +
               " (need psi finite, psi' < 0, psi'' > 0)");
    }
  }
}

}  // namespace

UnitInterval::UnitInterval(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    fail(ErrorCode::InvalidArgument,
         "value " + fmt_num(value) + " outside [0, 1]");
  }
}

const char* to_string(Family family) noexcept {
  switch (family) {
    case Family::Independence: return "independence";
    case Family::FrechetUpper: return "frechet_upper";
    case Family::MarshallOlkin: return "marshall_olkin";
    case Family::MixtureMO: return "mixture_mo";
    case Family::FGM: return "fgm";
    case Family::GeneralizedClayton: return "generalized_clayton";
    case Family::Archimedean: return "archimedean";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Clayton generator

ClaytonGenerator::ClaytonGenerator(double theta) : theta_(theta) {
  require(std::isfinite(theta) && theta > 0.0,
          "clayton: theta must be > 0, got " + fmt_num(theta));
}

double ClaytonGenerator::psi(double t) const {
  return std::expm1(-theta_ * std::log(t)) / theta_;
}

double ClaytonGenerator::dpsi(double t) const {
  return -std::pow(t, -theta_ - 1.0);
}

double ClaytonGenerator::d2psi(double t) const {
  return (theta_ + 1.0) * std::pow(t, -theta_ - 2.0);
}

double ClaytonGenerator::inverse(double s) const {
  return std::exp(-std::log1p(theta_ * s) / theta_);
}

std::string ClaytonGenerator::name() const {
  return "clayton(theta=" + fmt_num(theta_) + ")";
}

// ---------------------------------------------------------------------------
// CopulaSpec

CopulaSpec::CopulaSpec(Family family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {}

CopulaSpec CopulaSpec::independence() { return {Family::Independence, {}}; }

CopulaSpec CopulaSpec::frechet_upper() { return {Family::FrechetUpper, {}}; }

CopulaSpec CopulaSpec::marshall_olkin(double a, double b) {
  require(in_closed(a, 0.0, 1.0) && in_closed(b, 0.0, 1.0),
          "marshall_olkin: a, b must lie in [0, 1]");
  return {Family::MarshallOlkin, {a, b}};
}

CopulaSpec CopulaSpec::mixture_mo(double a, double b) {
  require(in_closed(a, 0.0, 1.0) && in_closed(b, 0.0, 1.0),
          "mixture_mo: a, b must lie in [0, 1]");
  return {Family::MixtureMO, {a, b}};
}

CopulaSpec CopulaSpec::fgm(double alpha) {
  require(in_closed(alpha, -1.0, 1.0), "fgm: alpha must lie in [-1, 1]");
  return {Family::FGM, {alpha}};
}

CopulaSpec CopulaSpec::generalized_clayton(double gamma0, double gamma1) {
  require(std::isfinite(gamma0) && gamma0 > 0.0,
          "generalized_clayton: gamma0 must be > 0");
  require(std::isfinite(gamma1) && gamma1 >= 0.0,
          "generalized_clayton: gamma1 must be >= 0");
  return {Family::GeneralizedClayton, {gamma0, gamma1}};
}

CopulaSpec CopulaSpec::archimedean(std::shared_ptr<const Generator> generator) {
  require(generator != nullptr, "archimedean: null generator");
  validate_generator(*generator);
  CopulaSpec spec{Family::Archimedean, {}};
  spec.generator_ = std::move(generator);
  return spec;
}

CopulaSpec CopulaSpec::clayton(double theta) {
  return archimedean(std::make_shared<ClaytonGenerator>(theta));
}

CopulaSpec CopulaSpec::unchecked(Family family, std::vector<double> params) {
  return {family, std::move(params)};
}

Family CopulaSpec::family() const noexcept {
  return base_ ? base_->family() : family_;
}

double CopulaSpec::cdf(double u, double v) const {
  if (base_) {
    return u + v - 1.0 + base_->cdf(1.0 - u, 1.0 - v);
  }
  if (u <= 0.0 || v <= 0.0) return 0.0;
  switch (family_) {
    case Family::Independence:
      return u * v;
    case Family::FrechetUpper:
      return std::min(u, v);
    case Family::MarshallOlkin:
      return mo_cdf(u, v, params_[0], params_[1]);
    case Family::MixtureMO:
      return 0.5 * (mo_cdf(u, v, params_[0], params_[1]) +
                    mo_cdf(u, v, params_[1], params_[0]));
    case Family::FGM:
      return u * v * (1.0 + params_[0] * (1.0 - u) * (1.0 - v));
    case Family::GeneralizedClayton:
      return std::exp(log_cdf(u, v));
    case Family::Archimedean: {
      const double su = generator_->psi(u);
      const double sv = generator_->psi(v);
      if (!std::isfinite(su) || !std::isfinite(sv)) {
        fail(ErrorCode::Domain, generator_->name() + ": psi overflow at (" +
                                    fmt_num(u) + ", " + fmt_num(v) + ")");
      }
      const double c = generator_->inverse(su + sv);
      if (!std::isfinite(c)) {
        fail(ErrorCode::Domain, generator_->name() + ": psi inverse overflow");
      }
      return c;
    }
  }
  return 0.0;
}

double CopulaSpec::log_cdf(double u, double v) const {
  if (base_ || u <= 0.0 || v <= 0.0) {
    const double c = cdf(u, v);
    return c > 0.0 ? std::log(c) : kNegInf;
  }
  const double lu = std::log(u);
  const double lv = std::log(v);
  switch (family_) {
    case Family::Independence:
      return lu + lv;
    case Family::FrechetUpper:
      return std::min(lu, lv);
    case Family::MarshallOlkin:
      return mo_log_cdf(lu, lv, params_[0], params_[1]);
    case Family::MixtureMO:
      return numeric::log_add_exp(mo_log_cdf(lu, lv, params_[0], params_[1]),
                                  mo_log_cdf(lu, lv, params_[1], params_[0])) -
             std::log(2.0);
    case Family::FGM:
      return lu + lv + std::log1p(params_[0] * (1.0 - u) * (1.0 - v));
    case Family::GeneralizedClayton: {
      const double g0 = params_[0];
      const double g1t = params_[0] + params_[1];
      return (params_[1] / g1t) * lu -
             g0 * log_sum_exp_minus_one(-lu / g1t, -lv / g0);
    }
    case Family::Archimedean:
      return std::log(cdf(u, v));
  }
  return kNegInf;
}

bool CopulaSpec::is_symmetric() const noexcept {
  if (base_) return base_->is_symmetric();
  switch (family_) {
    case Family::MarshallOlkin:
      return params_[0] == params_[1];
    case Family::GeneralizedClayton:
      return params_[1] == 0.0;
    default:
      return true;
  }
}

std::string CopulaSpec::describe() const {
  if (base_) return "survival(" + base_->describe() + ")";
  std::string out = to_string(family_);
  switch (family_) {
    case Family::MarshallOlkin:
    case Family::MixtureMO:
      out += "(a=" + fmt_num(params_[0]) + ", b=" + fmt_num(params_[1]) + ")";
      break;
    case Family::FGM:
      out += "(alpha=" + fmt_num(params_[0]) + ")";
      break;
    case Family::GeneralizedClayton:
      out += "(gamma0=" + fmt_num(params_[0]) +
             ", gamma1=" + fmt_num(params_[1]) + ")";
      break;
    case Family::Archimedean:
      out += "(" + generator_->name() + ")";
      break;
    default:
      break;
  }
  return out;
}

double eval_cdf(const CopulaSpec& spec, UnitInterval u, UnitInterval v) {
  return spec.cdf(u.value(), v.value());
}

CopulaSpec survival_copula(const CopulaSpec& spec) {
  CopulaSpec out{spec.family(), {}};
  out.base_ = std::make_shared<const CopulaSpec>(spec);
  return out;
}

// ---------------------------------------------------------------------------
// Axioms

AxiomReport check_axioms(const CopulaSpec& spec, std::size_t grid_n,
                         double tol) {
  if (grid_n < 2) fail(ErrorCode::InvalidArgument, "grid_n must be >= 2");
  const std::size_t m = grid_n + 1;
  std::vector<double> t(m);
  for (std::size_t i = 0; i < m; ++i) {
    t[i] = static_cast<double>(i) / static_cast<double>(grid_n);
  }
  std::vector<double> c(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) c[i * m + j] = spec.cdf(t[i], t[j]);
  }

  AxiomReport rep;
  rep.grid_n = grid_n;
  for (std::size_t i = 0; i < m; ++i) {
    rep.max_grounded_deviation =
        std::max({rep.max_grounded_deviation, std::abs(c[i * m]),
                  std::abs(c[i])});
    rep.max_marginal_deviation =
        std::max({rep.max_marginal_deviation,
                  std::abs(c[i * m + grid_n] - t[i]),
                  std::abs(c[grid_n * m + i] - t[i])});
  }
  rep.grounded_ok = rep.max_grounded_deviation <= tol;
  rep.marginals_ok = rep.max_marginal_deviation <= tol;

  rep.min_rectangle_mass = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = 0; j + 1 < m; ++j) {
      const double mass = c[(i + 1) * m + j + 1] - c[i * m + j + 1] -
                          c[(i + 1) * m + j] + c[i * m + j];
      if (mass < rep.min_rectangle_mass) {
        rep.min_rectangle_mass = mass;
        rep.worst_rectangle = {t[i], t[j], t[i + 1], t[j + 1]};
      }
    }
  }
  rep.two_increasing_ok = rep.min_rectangle_mass >= -tol;
  return rep;
}

}  // namespace maxtail
