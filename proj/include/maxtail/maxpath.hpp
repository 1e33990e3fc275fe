#ifndef MAXTAIL_MAXPATH_HPP
#define MAXTAIL_MAXPATH_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "maxtail/copula.hpp"

namespace maxtail {

struct SolverOptions {
  // Log-spaced scan points over [u^2, 1].
  std::size_t scan_n = 2048;
  // Golden-section stopping width, relative in x (absolute in log x).
  double xtol = 1e-14;
  // Relative gap below which two maxima count as tied.
  double tie_tol = 1e-9;
  unsigned threads = 1;
};

// Maximal-dependence solution at one level u.
struct PathPoint {
  double u = 0.0;
  // Global maximisers of x -> C(x, u^2/x) on [u^2, 1], ascending.
  std::vector<double> maximizers;
  double pi_star = 0.0;
  // Every maximiser sits at x = u^2 or x = 1: no admissible maximum.
  bool boundary_attained = false;
  // The objective is flat to tie_tol over the whole scan (independence-like);
  // maximizers then holds the diagonal x = u as the representative.
  bool all_paths_maximal = false;
};

struct PathSolution {
  std::vector<double> u_grid;
  std::vector<PathPoint> points;
  SolverOptions solver_opts;

  bool any_boundary() const noexcept;
  bool all_boundary() const noexcept;
};

// u = 10^e for e from max_exp down to min_exp in steps of 1/per_decade.
// Strictly decreasing, all in (0, 1).
std::vector<double> make_u_grid(double max_exp = -1.0, double min_exp = -6.0,
                                unsigned per_decade = 1);

// Pi_phi(u) = C(x, u^2/x) for x in [u^2, 1].
double pi_phi(const CopulaSpec& spec, UnitInterval u, double x);

// All global maximisers of x -> C(x, u^2/x) on [u^2, 1], for u in (0, 1).
PathPoint pointwise_max(const CopulaSpec& spec, UnitInterval u,
                        const SolverOptions& opts = {});

PathSolution solve_path(const CopulaSpec& spec, std::span<const double> u_grid,
                        const SolverOptions& opts = {});

// Generalised Clayton stationarity function
//   zeta(x) = x^(-1/g0) (x^(-1/g1t) - g1/g1t) - (1 - g1/g1t) u^(-2/g0),
// g1t = g0 + g1, evaluated from log terms. Throws Overflow when the value is
// not representable.
double zeta(double gamma0, double gamma1, UnitInterval u, double x);

// log of the first term minus log of the second term of zeta. Same sign as
// zeta, finite wherever zeta's terms are representable in log space.
double zeta_log_gap(double gamma0, double gamma1, double u, double x);

// Unique root of zeta on [u^2, 1] by bisection on zeta_log_gap, to absolute
// tolerance xtol. Throws BracketFailure if the end-point signs are wrong.
double zeta_root(double gamma0, double gamma1, UnitInterval u,
                 double xtol = 1e-15);

// Same root via the fixed-point form
//   x = (u^(2/g0) r(x))^(g1t g0/(g1t + g0)),
//   r(x) = (1 - (g1/g1t) x^(1/g1t)) / (1 - g1/g1t).
// Returns nullopt if the iteration does not settle within max_iter.
std::optional<double> zeta_root_fixed_point(double gamma0, double gamma1,
                                            UnitInterval u, double xtol = 1e-15,
                                            int max_iter = 500);

struct DiagonalCheck {
  bool increasing = false;
  bool diagonal_is_maximal = false;
};

// Samples x psi'(x) on grid_n log-spaced points of [u^2, 1]. The generator
// must be strict; this is probed by requiring psi(1e-10) to be infinite or at
// least 5 psi(0.1) (scale-free threshold). Throws NonStrictGenerator
// otherwise.
DiagonalCheck archimedean_diagonal_check(const Generator& generator,
                                         UnitInterval u,
                                         std::size_t grid_n = 512);

// Maximisers derived analytically: MO {u^(2b/(a+b))}; mixture
// {u^(2b/(a+b)), u^(2a/(a+b))}; the diagonal for FGM alpha > 0, FrechetUpper
// and Archimedean specs passing the diagonal check. nullopt otherwise
// (including independence-like plateaus and the generalised Clayton).
std::optional<std::vector<double>> closed_form_path(const CopulaSpec& spec,
                                                    UnitInterval u);

}  // namespace maxtail

#endif
