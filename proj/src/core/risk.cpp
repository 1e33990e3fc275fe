#include "maxtail/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "maxtail/error.hpp"
#include "maxtail/parallel.hpp"

namespace maxtail {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// max(W^(1/(1-a)), S^(1/a)) with the degenerate exponents short-circuited.
double mo_coordinate(double w, double shock, double a) {
  if (a <= 0.0) return w;
  if (a >= 1.0) return shock;
  return std::exp(std::max(std::log(w) / (1.0 - a), std::log(shock) / a));
}

// Inverse of v -> v(1 + A(1 - v)) on [0,1], |A| <= 1, written to stay
// accurate as A -> 0.
double fgm_conditional_inverse(double w, double A) {
  const double s = 1.0 + A;
  return 2.0 * w / (s + std::sqrt(s * s - 4.0 * A * w));
}

void draw_batch(const CopulaSpec& spec, Rng& rng, double* u, double* v,
                std::size_t count) {
  const auto p = spec.params();
  switch (spec.family()) {
    case Family::Independence:
      for (std::size_t i = 0; i < count; ++i) {
        u[i] = rng.uniform();
        v[i] = rng.uniform();
      }
      return;
    case Family::FrechetUpper:
      for (std::size_t i = 0; i < count; ++i) u[i] = v[i] = rng.uniform();
      return;
    case Family::MarshallOlkin:
    case Family::MixtureMO: {
      const bool mixture = spec.family() == Family::MixtureMO;
      for (std::size_t i = 0; i < count; ++i) {
        double a = p[0];
        double b = p[1];
        if (mixture && rng.uniform() < 0.5) std::swap(a, b);
        const double w1 = rng.uniform();
        const double w2 = rng.uniform();
        const double w3 = rng.uniform();
        u[i] = mo_coordinate(w1, w3, a);
        v[i] = mo_coordinate(w2, w3, b);
      }
      return;
    }
    case Family::FGM:
      for (std::size_t i = 0; i < count; ++i) {
        u[i] = rng.uniform();
        v[i] = fgm_conditional_inverse(rng.uniform(), p[0] * (1.0 - 2.0 * u[i]));
      }
      return;
    default:
      break;
  }
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t state = seed;
  const std::uint64_t base = splitmix64(state);
  state = base ^ (stream * 0xD1B54A32D192ED03ull);
  splitmix64(state);
  return splitmix64(state);
}

UniformPairs sample_pairs(const CopulaSpec& spec, std::uint64_t seed,
                          std::size_t n, unsigned threads) {
  if (spec.is_survival()) {
    fail(ErrorCode::Unsupported, "no sampler for survival-wrapped copulas");
  }
  switch (spec.family()) {
    case Family::Independence:
    case Family::FrechetUpper:
    case Family::MarshallOlkin:
    case Family::MixtureMO:
    case Family::FGM:
      break;
    default:
      fail(ErrorCode::Unsupported,
           std::string("no sampler for family ") + to_string(spec.family()));
  }
  UniformPairs out;
  out.u.resize(n);
  out.v.resize(n);
  const std::size_t batches = (n + kSampleBatch - 1) / kSampleBatch;
  detail::parallel_for(batches, threads, [&](std::size_t k) {
    Rng rng(substream_seed(seed, k));
    const std::size_t begin = k * kSampleBatch;
    const std::size_t count = std::min(kSampleBatch, n - begin);
    draw_batch(spec, rng, out.u.data() + begin, out.v.data() + begin, count);
  });
  return out;
}

// ---------------------------------------------------------------------------

ParetoII::ParetoII(double mu_, double sigma_, double alpha_)
    : mu(mu_), sigma(sigma_), alpha(alpha_) {
  if (!std::isfinite(mu) || !(sigma > 0.0) || !std::isfinite(sigma) ||
      !(alpha > 0.0) || !std::isfinite(alpha)) {
    fail(ErrorCode::InvalidParameter,
         "pareto_ii: need finite mu, sigma > 0, alpha > 0");
  }
}

double ParetoII::survival(double x) const {
  if (x <= mu) return 1.0;
  return std::pow((x - mu) / sigma + 1.0, -alpha);
}

double ParetoII::survival_quantile(double s) const {
  return mu + sigma * std::expm1(-std::log(s) / alpha);
}

double pareto_quantile(const ParetoII& m, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    fail(ErrorCode::InvalidArgument, "pareto_quantile: p must lie in (0, 1)");
  }
  return m.mu + m.sigma * std::expm1(-std::log1p(-p) / m.alpha);
}

RiskReport tail_measures(std::span<double> z, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    fail(ErrorCode::InvalidArgument, "q must lie in (0, 1)");
  }
  const std::size_t n = z.size();
  if (n == 0) fail(ErrorCode::InvalidArgument, "empty loss sample");
  std::sort(z.begin(), z.end());

  // ceil(n q), guarding against n*q landing a hair above an integer.
  const double nq = static_cast<double>(n) * q;
  const double nearest = std::round(nq);
  std::size_t rank = std::abs(nq - nearest) <= 1e-9 * nq
                         ? static_cast<std::size_t>(nearest)
                         : static_cast<std::size_t>(std::ceil(nq));
  rank = std::clamp<std::size_t>(rank, 1, n);

  RiskReport rep;
  rep.q = q;
  rep.n = n;
  rep.var_q = z[rank - 1];
  const auto first =
      std::upper_bound(z.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                       z.end(), rep.var_q);
  const std::size_t m = static_cast<std::size_t>(z.end() - first);
  rep.exceedances = m;
  if (m < 100) {
    fail(ErrorCode::InsufficientTail,
         "only " + std::to_string(m) + " exceedances above VaR (need 100)");
  }
  // Two-pass mean and variance over the exceedances.
  const double mean = std::accumulate(first, z.end(), 0.0) / static_cast<double>(m);
  double ss = 0.0;
  for (auto it = first; it != z.end(); ++it) ss += (*it - mean) * (*it - mean);
  const double var = ss / static_cast<double>(m - 1);
  rep.cte_q = mean;
  rep.mtvar_q = mean + var / mean;
  rep.stderr_cte = std::sqrt(var / static_cast<double>(m));
  return rep;
}

std::vector<double> aggregate_losses(const CopulaSpec& spec, const ParetoII& m,
                                     std::size_t n, std::uint64_t seed,
                                     const RiskOptions& opts) {
  UniformPairs pairs = sample_pairs(spec, seed, n, opts.threads);
  std::vector<double>& z = pairs.u;
  const std::size_t batches = (n + kSampleBatch - 1) / kSampleBatch;
  const bool surv = opts.coupling == MarginalCoupling::Survival;
  detail::parallel_for(batches, opts.threads, [&](std::size_t k) {
    const std::size_t begin = k * kSampleBatch;
    const std::size_t end = std::min(n, begin + kSampleBatch);
    for (std::size_t i = begin; i < end; ++i) {
      const double x = surv ? m.survival_quantile(pairs.u[i])
                            : pareto_quantile(m, pairs.u[i]);
      const double y = surv ? m.survival_quantile(pairs.v[i])
                            : pareto_quantile(m, pairs.v[i]);
      z[i] = x + y;
    }
  });
  return std::move(pairs.u);
}

RiskReport risk_measures(const CopulaSpec& spec, const ParetoII& m, double q,
                         std::size_t n, std::uint64_t seed,
                         const RiskOptions& opts) {
  if (!(q > 0.0 && q < 1.0)) {
    fail(ErrorCode::InvalidArgument, "q must lie in (0, 1)");
  }
  if (n < 10000) fail(ErrorCode::InvalidArgument, "risk_measures needs n >= 10^4");
  std::vector<double> z = aggregate_losses(spec, m, n, seed, opts);
  RiskReport rep = tail_measures(z, q);
  rep.seed = seed;
  return rep;
}

}  // namespace maxtail
