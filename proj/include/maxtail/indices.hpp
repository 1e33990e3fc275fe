#ifndef MAXTAIL_INDICES_HPP
#define MAXTAIL_INDICES_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxtail/copula.hpp"
#include "maxtail/maxpath.hpp"

namespace maxtail {

enum class PathKind { Diagonal, Maximal };

const char* to_string(PathKind kind) noexcept;

// Tail indices estimated from a decreasing grid of levels by extrapolating
// local log-log slopes of P(u) (C(u,u) on the diagonal, Pi*(u) on the maximal
// path) toward u -> 0.
struct TailIndexReport {
  PathKind path_kind = PathKind::Diagonal;
  std::vector<double> u_grid;
  // Per-level probabilities the estimates are based on.
  std::vector<double> probabilities;
  // Slope of log P vs log u between consecutive levels.
  std::vector<double> local_slopes;
  double kappa = 0.0;
  double lambda = 0.0;
  // Extrapolated P(u)/u before the kappa > 1 cut to zero.
  double lambda_raw = 0.0;
  // lambda is pinned to 0 because kappa exceeds 1 beyond tolerance.
  bool lambda_degenerate = false;
  double chi = 0.0;
  // Last-step change of the slope sequence.
  double extrapolation_residual = 0.0;
};

enum class Verdict {
  MoreLTMD,
  LessLTMD,
  EquallyLTMD,
  MoreWLTMD,
  LessWLTMD,
  EquallyWLTMD,
  Indeterminate,
};

const char* to_string(Verdict verdict) noexcept;

struct ComparisonReport {
  std::optional<double> lambda_pair;
  std::optional<double> chi_pair;
  Verdict verdict = Verdict::Indeterminate;
  double kappa_1 = 0.0;
  double kappa_2 = 0.0;
  // Tolerance used for the kappa tie and the verdict thresholds.
  double tolerance = 0.0;
};

// kappa agreement tolerance: 10x the larger residual, floored at 1e-4.
double kappa_tolerance(double residual_1, double residual_2) noexcept;

// Extrapolation on C(u,u). Throws Degenerate if C(u,u) = 0 on the grid.
TailIndexReport classical_indices(const CopulaSpec& spec,
                                  std::span<const double> u_grid);

// Same estimator applied to Pi*(u). Throws NoAdmissiblePath when every level
// is boundary-attained, InvalidArgument when only some are.
TailIndexReport star_indices(const PathSolution& path);

// Indices from a probability sequence on a grid; the shared estimator.
TailIndexReport estimate_indices(std::span<const double> u_grid,
                                 std::span<const double> probabilities,
                                 PathKind kind);

// kappa* where it is known analytically: MO / mixture 2 - 2ab/(a+b),
// generalised Clayton 1 + g1/(g1 + 2 g0), FGM alpha > 0: 2, FrechetUpper 1,
// Independence 2.
std::optional<double> closed_form_kappa_star(const CopulaSpec& spec);

// Solves both maximal paths on u_grid and orders the copulas: LTMD via the
// limit ratio Pi*(u|1)/Pi*(u|2) when the kappa* agree, WLTMD via
// kappa*_2/kappa*_1 - 1 otherwise.
ComparisonReport compare(const CopulaSpec& spec1, const CopulaSpec& spec2,
                         std::span<const double> u_grid,
                         const SolverOptions& opts = {});

// Comparison from two already solved paths on the same grid.
ComparisonReport compare_paths(const PathSolution& path1,
                               const PathSolution& path2);

}  // namespace maxtail

#endif
