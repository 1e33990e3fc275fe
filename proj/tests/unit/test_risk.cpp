#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "maxtail/error.hpp"
#include "maxtail/risk.hpp"
#include "oracles.hpp"

using namespace maxtail;

TEST_CASE("pareto quantile") {
  const ParetoII m(0, 1, 4);
  CHECK(pareto_quantile(m, 0.99) == doctest::Approx(std::pow(10.0, 0.5) - 1).epsilon(1e-14));
  CHECK(pareto_quantile(m, 0.99) == doctest::Approx(2.16228).epsilon(1e-5));
  CHECK(pareto_quantile(ParetoII(1.5, 2, 3), 1e-300) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(pareto_quantile(ParetoII(0, 1, 1), 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m.survival(0.0) == 1.0);
  CHECK(m.survival(1.0) == doctest::Approx(1.0 / 16));
  CHECK(m.survival_quantile(m.survival(3.7)) == doctest::Approx(3.7).epsilon(1e-13));
  CHECK_THROWS_AS(ParetoII(0, -1, 4), Error);
  CHECK_THROWS_AS(ParetoII(0, 1, 0), Error);
  CHECK_THROWS_AS(pareto_quantile(m, 1.0), Error);
}

TEST_CASE("samplers match their copulas") {
  const auto ind = sample_pairs(CopulaSpec::independence(), 1, 100000);
  CHECK(oracle::empirical_sup_gap(ind.u, ind.v, [](double u, double v) { return u * v; }) < 0.01);

  const auto mo = sample_pairs(CopulaSpec::marshall_olkin(0.3529, 0.75), 2, 1000000);
  CHECK(oracle::empirical_sup_gap(mo.u, mo.v, [](double u, double v) {
          return oracle::mo(0.3529, 0.75, u, v);
        }) < 0.003);

  const auto up = sample_pairs(CopulaSpec::frechet_upper(), 3, 1000);
  CHECK(up.u == up.v);

  for (double x : mo.u) {
    if (!(x > 0 && x < 1)) {
      CHECK(false);
      break;
    }
  }
  CHECK_THROWS_AS(sample_pairs(CopulaSpec::generalized_clayton(0.5, 0.3), 1, 10), Error);
  CHECK_THROWS_AS(sample_pairs(survival_copula(CopulaSpec::fgm(0.5)), 1, 10), Error);
}

TEST_CASE("property: empirical copula error shrinks like n^-1/2") {
  struct Case {
    CopulaSpec spec;
    std::function<double(double, double)> cdf;
  };
  const std::vector<Case> cases = {
      {CopulaSpec::independence(), [](double u, double v) { return u * v; }},
      {CopulaSpec::marshall_olkin(0.3529, 0.75),
       [](double u, double v) { return oracle::mo(0.3529, 0.75, u, v); }},
      {CopulaSpec::mixture_mo(0.2, 0.7),
       [](double u, double v) { return oracle::mixture(0.2, 0.7, u, v); }},
      {CopulaSpec::fgm(-0.8), [](double u, double v) { return oracle::fgm(-0.8, u, v); }},
      {CopulaSpec::fgm(0.9), [](double u, double v) { return oracle::fgm(0.9, u, v); }}};
  const std::vector<double> sizes = {1e4, 1e5, 1e6};
  constexpr int kSeeds = 5;
  for (const auto& c : cases) {
    std::vector<double> lx, ly;
    for (double n : sizes) {
      double gap = 0;
      for (int s = 0; s < kSeeds; ++s) {
        const auto p = sample_pairs(c.spec, 100 + s, static_cast<std::size_t>(n));
        gap += oracle::empirical_sup_gap(p.u, p.v, c.cdf);
      }
      lx.push_back(std::log(n));
      ly.push_back(std::log(gap / kSeeds));
    }
    INFO(c.spec.describe());
    CHECK(oracle::ls_slope(lx, ly) == doctest::Approx(-0.5).epsilon(0.3));
  }
}

TEST_CASE("property: marginal transform") {
  // With the comonotone copula Z = 2X, so Z/2 has the marginal law.
  const ParetoII m(0, 1, 4);
  const std::size_t n = 400000;
  for (auto coupling : {MarginalCoupling::Survival, MarginalCoupling::Distribution}) {
    RiskOptions opts;
    opts.coupling = coupling;
    auto z = aggregate_losses(CopulaSpec::frechet_upper(), m, n, 5, opts);
    std::sort(z.begin(), z.end());
    for (double q : {0.9, 0.99}) {
      const double x_q = z[static_cast<std::size_t>(std::ceil(n * q)) - 1] / 2;
      const double want = pareto_quantile(m, q);
      const double dens = m.alpha / m.sigma * std::pow(1 + want / m.sigma, -m.alpha - 1);
      const double se = std::sqrt(q * (1 - q) / n) / dens;
      CHECK(std::abs(x_q - want) <= 3 * se);
    }
  }
}

TEST_CASE("comonotone VaR is twice the marginal quantile") {
  const auto r = risk_measures(CopulaSpec::frechet_upper(), ParetoII(0, 1, 4), 0.99, 1000000, 9);
  CHECK(r.var_q == doctest::Approx(2 * 2.16228).epsilon(0.01));
}

TEST_CASE("tail measures on a known sample") {
  std::vector<double> z;
  for (int i = 1; i <= 1000; ++i) z.push_back(1001 - i);
  const auto r = tail_measures(z, 0.8);
  CHECK(r.var_q == 800.0);
  CHECK(r.exceedances == 200);
  CHECK(r.cte_q == doctest::Approx(900.5));
  double var = 0;
  for (int k = 801; k <= 1000; ++k) var += (k - 900.5) * (k - 900.5);
  var /= 199;
  CHECK(r.mtvar_q == doctest::Approx(900.5 + var / 900.5).epsilon(1e-12));
  CHECK(r.stderr_cte == doctest::Approx(std::sqrt(var / 200)).epsilon(1e-12));

  std::vector<double> small(500, 1.0);
  CHECK_THROWS_AS(tail_measures(small, 0.99), Error);
}

TEST_CASE("property: VaR <= CTE <= MTVar and determinism") {
  const ParetoII m(0, 1, 4);
  for (const auto& c : {CopulaSpec::marshall_olkin(0.3529, 0.75), CopulaSpec::mixture_mo(0.3, 0.6),
                        CopulaSpec::fgm(-0.5), CopulaSpec::independence()}) {
    for (double q : {0.95, 0.99, 0.995}) {
      const auto r = risk_measures(c, m, q, 200000, 77);
      CHECK(r.var_q <= r.cte_q);
      CHECK(r.cte_q <= r.mtvar_q);
      RiskOptions three;
      three.threads = 3;
      const auto again = risk_measures(c, m, q, 200000, 77, three);
      CHECK(again.var_q == r.var_q);
      CHECK(again.cte_q == r.cte_q);
      CHECK(again.mtvar_q == r.mtvar_q);
      CHECK(again.stderr_cte == r.stderr_cte);
    }
  }
  CHECK_THROWS_AS(risk_measures(CopulaSpec::independence(), m, 0.99, 9999, 1), Error);
}

TEST_CASE("substreams") {
  CHECK(substream_seed(1, 0) != substream_seed(1, 1));
  CHECK(substream_seed(1, 0) != substream_seed(2, 0));
  CHECK(substream_seed(5, 3) == substream_seed(5, 3));
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = r.uniform();
    CHECK((x > 0 && x < 1));
  }
}

TEST_CASE("table rows are ordered and carry the closed forms") {
  const auto rows = table1(42, 100000);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].q == 0.99);
  CHECK(rows[3].q == 0.995);
  CHECK(rows[0].b == 0.75);
  CHECK(rows[2].b == kTable1A);
  CHECK(rows[1].kappa_l_star == doctest::Approx(1.5862).epsilon(5e-5));
  CHECK(rows[1].tau == doctest::Approx(0.2609).epsilon(5e-4 / 0.2609));
  for (const auto& r : rows) CHECK(r.kappa_l == doctest::Approx(1.6471).epsilon(1e-10));
}
