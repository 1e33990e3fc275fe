#include "maxtail/numeric.hpp"

#include <cmath>
#include <limits>

#include "maxtail/error.hpp"

namespace maxtail::numeric {

double log_add_exp(double x, double y) noexcept {
  if (x == -std::numeric_limits<double>::infinity()) return y;
  if (y == -std::numeric_limits<double>::infinity()) return x;
  const double m = std::max(x, y);
  return m + std::log1p(std::exp(-std::abs(x - y)));
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    fail(ErrorCode::InvalidArgument, "log_spaced requires 0 < lo < hi, n >= 2");
  }
  std::vector<double> out(n);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = llo + (lhi - llo) * static_cast<double>(i) /
                               static_cast<double>(n - 1);
    out[i] = std::exp(t);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

Extremum golden_section_max(const std::function<double(double)>& f, double lo,
                            double hi, double xtol, int max_iter) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  Extremum best{c, fc, 0};
  if (fd > best.value) best = {d, fd, 0};

  int it = 0;
  for (; it < max_iter && (b - a) > xtol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      if (!(c > a && c < d)) break;
      fc = f(c);
      if (fc > best.value) best = {c, fc, 0};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      if (!(d > c && d < b)) break;
      fd = f(d);
      if (fd > best.value) best = {d, fd, 0};
    }
  }
  best.iterations = it;
  return best;
}

std::optional<Root> bisect(const std::function<double(double)>& f, double lo,
                           double hi, double xtol, int max_iter) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return Root{lo, 0};
  if (fhi == 0.0) return Root{hi, 0};
  if (!(std::signbit(flo) != std::signbit(fhi)) || std::isnan(flo) ||
      std::isnan(fhi)) {
    return std::nullopt;
  }
  int it = 0;
  for (; it < max_iter && (hi - lo) > xtol; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (std::isnan(fm)) return std::nullopt;
    if (fm == 0.0) return Root{mid, it + 1};
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return Root{lo + 0.5 * (hi - lo), it};
}

Extrapolation extrapolate_limit(std::span<const double> seq) {
  if (seq.empty()) {
    fail(ErrorCode::InvalidArgument, "cannot extrapolate an empty sequence");
  }
  const std::size_t n = seq.size();
  if (n == 1) return {seq[0], 0.0, false};
  const double last = seq[n - 1];
  const double d2 = last - seq[n - 2];
  const double residual = std::abs(d2);
  if (n < 3) return {last, residual, false};

  const double d1 = seq[n - 2] - seq[n - 3];
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(last));
  if (std::abs(d1) <= noise || std::abs(d2) <= noise) {
    return {last, residual, false};
  }
  const double ratio = d2 / d1;
  if (!(ratio > 0.0 && ratio < 0.95)) return {last, residual, false};
  return {last + d2 * ratio / (1.0 - ratio), residual, true};
}

}  // namespace maxtail::numeric
