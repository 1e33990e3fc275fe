#include "maxtail/indices.hpp"

#include <algorithm>
#include <cmath>

#include "maxtail/error.hpp"
#include "maxtail/numeric.hpp"
#include "maxtail/serialize.hpp"

namespace maxtail {

const char* to_string(PathKind kind) noexcept {
  return kind == PathKind::Diagonal ? "diagonal" : "maximal";
}

const char* to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::MoreLTMD: return "MoreLTMD";
    case Verdict::LessLTMD: return "LessLTMD";
    case Verdict::EquallyLTMD: return "EquallyLTMD";
    case Verdict::MoreWLTMD: return "MoreWLTMD";
    case Verdict::LessWLTMD: return "LessWLTMD";
    case Verdict::EquallyWLTMD: return "EquallyWLTMD";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

double kappa_tolerance(double residual_1, double residual_2) noexcept {
  return std::max(10.0 * std::max(residual_1, residual_2), 1e-4);
}

TailIndexReport estimate_indices(std::span<const double> u_grid,
                                 std::span<const double> probabilities,
                                 PathKind kind) {
  if (u_grid.size() != probabilities.size()) {
    fail(ErrorCode::InvalidArgument, "grid and probabilities differ in size");
  }
  if (u_grid.size() < 4) {
    fail(ErrorCode::InvalidArgument, "index estimation needs >= 4 levels");
  }
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    if (!(u_grid[i] > 0.0 && u_grid[i] < 1.0) ||
        (i > 0 && !(u_grid[i] < u_grid[i - 1]))) {
      fail(ErrorCode::InvalidArgument,
           "u grid must be strictly decreasing inside (0, 1)");
    }
    if (!(probabilities[i] > 0.0)) {
      fail(ErrorCode::Degenerate,
           "zero tail probability at u = " + io::format_double(u_grid[i]) +
               "; log-log slope undefined");
    }
  }

  TailIndexReport rep;
  rep.path_kind = kind;
  rep.u_grid.assign(u_grid.begin(), u_grid.end());
  rep.probabilities.assign(probabilities.begin(), probabilities.end());

  const std::size_t n = u_grid.size();
  std::vector<double> ratios(n);
  for (std::size_t i = 0; i < n; ++i) ratios[i] = probabilities[i] / u_grid[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dp = std::log(probabilities[i]) - std::log(probabilities[i + 1]);
    const double du = std::log(u_grid[i]) - std::log(u_grid[i + 1]);
    rep.local_slopes.push_back(dp / du);
  }

  const auto kappa = numeric::extrapolate_limit(rep.local_slopes);
  rep.kappa = kappa.value;
  rep.extrapolation_residual = kappa.residual;
  // lim 2 log u / log P(u) = 2 / kappa; the slowly varying factor drops out.
  rep.chi = 2.0 / rep.kappa - 1.0;

  rep.lambda_raw = numeric::extrapolate_limit(ratios).value;
  if (rep.kappa > 1.0 + kappa_tolerance(rep.extrapolation_residual, 0.0)) {
    rep.lambda = 0.0;
    rep.lambda_degenerate = true;
  } else {
    rep.lambda = rep.lambda_raw;
  }
  return rep;
}

TailIndexReport classical_indices(const CopulaSpec& spec,
                                  std::span<const double> u_grid) {
  std::vector<double> diag;
  diag.reserve(u_grid.size());
  for (double u : u_grid) {
    if (!(u > 0.0 && u < 1.0)) {
      fail(ErrorCode::InvalidArgument, "u grid must lie inside (0, 1)");
    }
    diag.push_back(spec.cdf(u, u));
  }
  return estimate_indices(u_grid, diag, PathKind::Diagonal);
}

TailIndexReport star_indices(const PathSolution& path) {
  if (path.all_boundary()) {
    fail(ErrorCode::NoAdmissiblePath,
         "maximum is attained only on the boundary x = u^2 or x = 1 at every "
         "level; no admissible path of maximal dependence");
  }
  if (path.any_boundary()) {
    fail(ErrorCode::InvalidArgument,
         "some grid levels are boundary-attained; refusing to mix them into "
         "the maximal-path estimate");
  }
  std::vector<double> pis;
  pis.reserve(path.points.size());
  for (const auto& p : path.points) pis.push_back(p.pi_star);
  return estimate_indices(path.u_grid, pis, PathKind::Maximal);
}

std::optional<double> closed_form_kappa_star(const CopulaSpec& spec) {
  if (spec.is_survival()) return std::nullopt;
  switch (spec.family()) {
    case Family::Independence:
      return 2.0;
    case Family::FrechetUpper:
      return 1.0;
    case Family::MarshallOlkin:
    case Family::MixtureMO: {
      const double a = spec.param(0);
      const double b = spec.param(1);
      if (a + b <= 0.0) return 2.0;
      return 2.0 - 2.0 * a * b / (a + b);
    }
    case Family::FGM:
      if (spec.param(0) > 0.0) return 2.0;
      return std::nullopt;
    case Family::GeneralizedClayton: {
      const double g0 = spec.param(0);
      const double g1 = spec.param(1);
      return 1.0 + g1 / (g1 + 2.0 * g0);
    }
    default:
      return std::nullopt;
  }
}

ComparisonReport compare_paths(const PathSolution& path1,
                               const PathSolution& path2) {
  if (path1.u_grid != path2.u_grid) {
    fail(ErrorCode::InvalidArgument, "compared paths must share the u grid");
  }
  const TailIndexReport s1 = star_indices(path1);
  const TailIndexReport s2 = star_indices(path2);

  ComparisonReport rep;
  rep.kappa_1 = s1.kappa;
  rep.kappa_2 = s2.kappa;
  rep.tolerance =
      kappa_tolerance(s1.extrapolation_residual, s2.extrapolation_residual);

  if (std::abs(s1.kappa - s2.kappa) <= rep.tolerance) {
    std::vector<double> ratio(s1.probabilities.size());
    for (std::size_t i = 0; i < ratio.size(); ++i) {
      ratio[i] = s1.probabilities[i] / s2.probabilities[i];
    }
    const double lp = numeric::extrapolate_limit(ratio).value;
    rep.lambda_pair = lp;
    if (!std::isfinite(lp)) {
      rep.verdict = Verdict::Indeterminate;
    } else if (lp > 1.0 + rep.tolerance) {
      rep.verdict = Verdict::MoreLTMD;
    } else if (lp < 1.0 - rep.tolerance) {
      rep.verdict = Verdict::LessLTMD;
    } else {
      rep.verdict = Verdict::EquallyLTMD;
    }
  } else {
    const double cp = s2.kappa / s1.kappa - 1.0;
    rep.chi_pair = cp;
    if (!std::isfinite(cp)) {
      rep.verdict = Verdict::Indeterminate;
    } else if (cp > rep.tolerance) {
      rep.verdict = Verdict::MoreWLTMD;
    } else if (cp < -rep.tolerance) {
      rep.verdict = Verdict::LessWLTMD;
    } else {
      rep.verdict = Verdict::EquallyWLTMD;
    }
  }
  return rep;
}

ComparisonReport compare(const CopulaSpec& spec1, const CopulaSpec& spec2,
                         std::span<const double> u_grid,
                         const SolverOptions& opts) {
  return compare_paths(solve_path(spec1, u_grid, opts),
                       solve_path(spec2, u_grid, opts));
}

}  // namespace maxtail
