#ifndef MAXTAIL_NUMERIC_HPP
#define MAXTAIL_NUMERIC_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

// Scalar numerics shared across the library: bracketed maximisation, root
// bracketing, and limit extrapolation for slowly converging sequences.
namespace maxtail::numeric {

double log_add_exp(double x, double y) noexcept;

// n points equally spaced in log between lo and hi, both included.
// Requires 0 < lo < hi and n >= 2.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

struct Extremum {
  double x;
  double value;
  int iterations;
};

// Golden-section search for a maximum of f on [lo, hi]. Stops once the
// bracket is narrower than xtol or stops shrinking in floating point. Returns
// the best point actually evaluated.
Extremum golden_section_max(const std::function<double(double)>& f, double lo,
                            double hi, double xtol, int max_iter = 400);

struct Root {
  double x;
  int iterations;
};

// Bisection for f on [lo, hi] given f(lo) and f(hi) of opposite sign. Returns
// nullopt when the signs do not bracket a root.
std::optional<Root> bisect(const std::function<double(double)>& f, double lo,
                           double hi, double xtol, int max_iter = 2000);

struct Extrapolation {
  double value;
  // |s[n-1] - s[n-2]|: the last step of the raw sequence.
  double residual;
  bool accelerated;
};

// Limit of a sequence whose error decays roughly geometrically. Applies one
// Aitken delta-squared (Richardson with estimated ratio) step to the last
// three terms when the differences change sign consistently and shrink;
// otherwise returns the last term. Single-element input returns itself with
// zero residual.
Extrapolation extrapolate_limit(std::span<const double> seq);

}  // namespace maxtail::numeric

#endif
