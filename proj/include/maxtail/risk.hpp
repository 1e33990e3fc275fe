#ifndef MAXTAIL_RISK_HPP
#define MAXTAIL_RISK_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "maxtail/copula.hpp"

namespace maxtail {

// Seed for substream `stream` of a run seeded with `seed` (SplitMix64 mix of
// both). Substreams are what make results independent of the thread count.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

// Pairs per substream. Fixed so that the stream layout depends only on n.
inline constexpr std::size_t kSampleBatch = 1u << 16;

struct UniformPairs {
  std::vector<double> u;
  std::vector<double> v;
};

// Draws n pairs from the copula. Supported: Independence, FrechetUpper,
// MarshallOlkin, MixtureMO, FGM (not survival-wrapped).
//   MO: U = max(W1^(1/(1-a)), W3^(1/a)), V = max(W2^(1/(1-b)), W3^(1/b)).
//   Mixture: a fair coin per pair picks C_{a,b} or C_{b,a}.
//   FGM: U uniform, V by inverting the conditional law dC/du in closed form.
UniformPairs sample_pairs(const CopulaSpec& spec, std::uint64_t seed,
                          std::size_t n, unsigned threads = 1);

// Pareto-II (Lomax): survival ((x - mu)/sigma + 1)^(-alpha), x >= mu.
struct ParetoII {
  double mu = 0.0;
  double sigma = 1.0;
  double alpha = 4.0;

  ParetoII() = default;
  ParetoII(double mu_, double sigma_, double alpha_);

  double survival(double x) const;
  // Survival-quantile: the x with survival(x) = s.
  double survival_quantile(double s) const;
};

// mu + sigma((1 - p)^(-1/alpha) - 1), the inverse of 1 - survival.
double pareto_quantile(const ParetoII& m, double p);

// How copula uniforms become losses. Survival: X = Fbar^{-1}(U), so the
// copula couples the decumulative functions and its lower tail drives joint
// large losses. Distribution: X = F^{-1}(U).
enum class MarginalCoupling { Survival, Distribution };

struct RiskOptions {
  MarginalCoupling coupling = MarginalCoupling::Survival;
  unsigned threads = 1;
};

struct RiskReport {
  double q = 0.0;
  double var_q = 0.0;
  double cte_q = 0.0;
  double mtvar_q = 0.0;
  double stderr_cte = 0.0;
  std::size_t n = 0;
  std::size_t exceedances = 0;
  std::uint64_t seed = 0;
};

// Tail measures of an aggregate-loss sample. VaR is the ceil(n q)-th order
// statistic; CTE and the conditional variance use the observations strictly
// above VaR. Sorts `z` in place.
RiskReport tail_measures(std::span<double> z, double q);

// Simulates Z = X + Y with both marginals m and reports VaR, CTE, MTVar at q.
RiskReport risk_measures(const CopulaSpec& spec, const ParetoII& m, double q,
                         std::size_t n, std::uint64_t seed,
                         const RiskOptions& opts = {});

// Aggregate losses Z = X + Y for a simulated sample.
std::vector<double> aggregate_losses(const CopulaSpec& spec, const ParetoII& m,
                                     std::size_t n, std::uint64_t seed,
                                     const RiskOptions& opts = {});

struct Table1Row {
  double q = 0.0;
  double b = 0.0;
  double tau = 0.0;
  double kappa_l = 0.0;
  double kappa_l_star = 0.0;
  RiskReport risk;
};

inline constexpr double kTable1A = 0.3529;

// Marshall-Olkin a = 0.3529, b in {0.75, 0.5, 0.3529}, q in {0.99, 0.995},
// Pareto-II(0, 1, 4) marginals. Rows ordered by q, then decreasing b. Every b
// reuses the same seed, so rows share their underlying uniforms.
std::vector<Table1Row> table1(std::uint64_t seed, std::size_t n = 2'000'000,
                              unsigned threads = 1);

}  // namespace maxtail

#endif
