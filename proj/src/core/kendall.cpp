#include <algorithm>
#include <numeric>

#include "maxtail/copula.hpp"
#include "maxtail/error.hpp"
#include "maxtail/risk.hpp"

namespace maxtail {

namespace {

// Counts inversions of v[lo, hi) while merge-sorting it.
std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& buf,
                               std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t inv = count_inversions(v, buf, lo, mid) +
                      count_inversions(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      inv += mid - i;
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
            buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace

double sample_kendall_tau(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    fail(ErrorCode::InvalidArgument, "kendall tau needs >= 2 paired values");
  }
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = y[order[i]];
  std::vector<double> buf(n);
  const double discordant = static_cast<double>(count_inversions(v, buf, 0, n));
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return 1.0 - 2.0 * discordant / pairs;
}

double kendall_tau(const CopulaSpec& spec, TauMethod method, std::size_t n,
                   std::uint64_t seed) {
  if (method == TauMethod::ClosedForm) {
    if (spec.is_survival() || spec.family() != Family::MarshallOlkin) {
      fail(ErrorCode::Unsupported,
           "closed-form Kendall tau only available for marshall_olkin");
    }
    const double a = spec.param(0);
    const double b = spec.param(1);
    const double denom = a + b - a * b;
    return denom > 0.0 ? a * b / denom : 0.0;
  }
  if (n < 2) fail(ErrorCode::InvalidArgument, "Monte Carlo tau needs n >= 2");
  const UniformPairs s = sample_pairs(spec, seed, n);
  return sample_kendall_tau(s.u, s.v);
}

}  // namespace maxtail
