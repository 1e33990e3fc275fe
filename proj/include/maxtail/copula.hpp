#ifndef MAXTAIL_COPULA_HPP
#define MAXTAIL_COPULA_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace maxtail {

// A real number constrained to [0, 1]; rejects NaN.
class UnitInterval {
 public:
  explicit UnitInterval(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

enum class Family {
  Independence,
  FrechetUpper,
  MarshallOlkin,
  MixtureMO,
  FGM,
  GeneralizedClayton,
  Archimedean,
};

const char* to_string(Family family) noexcept;

// Archimedean generator psi: [0,1] -> [0,inf] with psi(1) = 0, psi' < 0 and
// psi'' > 0 on (0,1). All four maps are explicit; nothing is inverted
// numerically.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual double psi(double t) const = 0;
  virtual double dpsi(double t) const = 0;
  virtual double d2psi(double t) const = 0;
  virtual double inverse(double s) const = 0;
  virtual std::string name() const = 0;
};

// psi(t) = (t^-theta - 1) / theta, theta > 0. Strict.
class ClaytonGenerator final : public Generator {
 public:
  explicit ClaytonGenerator(double theta);

  double theta() const noexcept { return theta_; }
  double psi(double t) const override;
  double dpsi(double t) const override;
  double d2psi(double t) const override;
  double inverse(double s) const override;
  std::string name() const override;

 private:
  double theta_;
};

// A validated parametric bivariate copula.
//
// Parameter layout by family:
//   MarshallOlkin, MixtureMO   {a, b}          a, b in [0,1]
//   FGM                        {alpha}         alpha in [-1,1]
//   GeneralizedClayton         {gamma0, gamma1} gamma0 > 0, gamma1 >= 0
//   Archimedean                {}              plus a generator handle
//
// Survival copulas are represented as a wrapper around a base spec; family()
// then reports the base family and is_survival() is true.
class CopulaSpec {
 public:
  static CopulaSpec independence();
  static CopulaSpec frechet_upper();
  static CopulaSpec marshall_olkin(double a, double b);
  static CopulaSpec mixture_mo(double a, double b);
  static CopulaSpec fgm(double alpha);
  static CopulaSpec generalized_clayton(double gamma0, double gamma1);
  static CopulaSpec archimedean(std::shared_ptr<const Generator> generator);
  static CopulaSpec clayton(double theta);

  // Skips parameter validation. Only for negative controls.
  static CopulaSpec unchecked(Family family, std::vector<double> params);

  Family family() const noexcept;
  bool is_survival() const noexcept { return base_ != nullptr; }
  const CopulaSpec* base() const noexcept { return base_.get(); }
  std::span<const double> params() const noexcept { return params_; }
  double param(std::size_t i) const { return params_.at(i); }
  const Generator* generator() const noexcept { return generator_.get(); }

  // C(u, v) for u, v in [0,1]. No domain checks; see eval_cdf for the
  // checked entry point.
  double cdf(double u, double v) const;

  // log C(u, v), computed without forming C for the families where that
  // matters (Marshall-Olkin, mixture, generalized Clayton).
  double log_cdf(double u, double v) const;

  // Exchangeability: C(u, v) == C(v, u).
  bool is_symmetric() const noexcept;

  std::string describe() const;

 private:
  CopulaSpec(Family family, std::vector<double> params);

  Family family_;
  std::vector<double> params_;
  std::shared_ptr<const Generator> generator_;
  std::shared_ptr<const CopulaSpec> base_;

  friend CopulaSpec survival_copula(const CopulaSpec& spec);
};

double eval_cdf(const CopulaSpec& spec, UnitInterval u, UnitInterval v);

// C^(u, v) = u + v - 1 + C(1-u, 1-v).
CopulaSpec survival_copula(const CopulaSpec& spec);

struct AxiomReport {
  std::size_t grid_n = 0;
  bool grounded_ok = false;
  double max_grounded_deviation = 0.0;
  bool marginals_ok = false;
  double max_marginal_deviation = 0.0;
  bool two_increasing_ok = false;
  double min_rectangle_mass = 0.0;
  // Cell [u1,u2] x [v1,v2] holding min_rectangle_mass.
  std::array<double, 4> worst_rectangle{};

  bool all_ok() const noexcept {
    return grounded_ok && marginals_ok && two_increasing_ok;
  }
};

AxiomReport check_axioms(const CopulaSpec& spec, std::size_t grid_n,
                         double tol);

enum class TauMethod { ClosedForm, MonteCarlo };

// Kendall's tau. ClosedForm only exists for Marshall-Olkin:
// tau = ab / (a + b - ab). MonteCarlo draws n pairs with sample_pairs and
// returns the sample concordance statistic.
double kendall_tau(const CopulaSpec& spec, TauMethod method, std::size_t n = 0,
                   std::uint64_t seed = 0);

// Sample Kendall tau of paired observations, O(n log n). Assumes no ties in
// either coordinate across observations.
double sample_kendall_tau(std::span<const double> x, std::span<const double> y);

}  // namespace maxtail

#endif
