#include <cmath>
#include <random>

#include "doctest.h"
#include "maxtail/copula.hpp"
#include "maxtail/error.hpp"
#include "oracles.hpp"

using namespace maxtail;

namespace {

std::vector<CopulaSpec> all_families() {
  return {CopulaSpec::independence(),
          CopulaSpec::frechet_upper(),
          CopulaSpec::marshall_olkin(0.3529, 0.75),
          CopulaSpec::marshall_olkin(0.0, 1.0),
          CopulaSpec::mixture_mo(0.3529, 0.75),
          CopulaSpec::fgm(-1.0),
          CopulaSpec::fgm(0.5),
          CopulaSpec::fgm(1.0),
          CopulaSpec::generalized_clayton(0.04, 0.02),
          CopulaSpec::generalized_clayton(0.5, 0.3),
          CopulaSpec::generalized_clayton(1.0, 0.0),
          CopulaSpec::clayton(0.5),
          CopulaSpec::clayton(2.0),
          survival_copula(CopulaSpec::marshall_olkin(0.3529, 0.75)),
          survival_copula(CopulaSpec::clayton(1.0))};
}

double ev(const CopulaSpec& c, double u, double v) {
  return eval_cdf(c, UnitInterval(u), UnitInterval(v));
}

}  // namespace

TEST_CASE("cdf values against direct formulas") {
  CHECK(ev(CopulaSpec::independence(), 0.3, 0.5) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(ev(CopulaSpec::marshall_olkin(0.3529, 0.75), 0.04363, 0.22921) ==
        doctest::Approx(0.030189).epsilon(1e-4));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double u = unif(rng), v = unif(rng);
    CHECK(ev(CopulaSpec::marshall_olkin(0.2, 0.7), u, v) ==
          doctest::Approx(oracle::mo(0.2, 0.7, u, v)).epsilon(1e-13));
    CHECK(ev(CopulaSpec::mixture_mo(0.2, 0.7), u, v) ==
          doctest::Approx(oracle::mixture(0.2, 0.7, u, v)).epsilon(1e-13));
    CHECK(ev(CopulaSpec::fgm(-0.4), u, v) ==
          doctest::Approx(oracle::fgm(-0.4, u, v)).epsilon(1e-13));
    CHECK(ev(CopulaSpec::clayton(1.5), u, v) ==
          doctest::Approx(oracle::clayton(1.5, u, v)).epsilon(1e-12));
    CHECK(ev(CopulaSpec::generalized_clayton(0.5, 0.3), u, v) ==
          doctest::Approx(oracle::gen_clayton(0.5, 0.3, u, v)).epsilon(1e-12));
  }
}

TEST_CASE("grounded and uniform margins for every family") {
  for (const auto& c : all_families()) {
    for (double u : {0.0, 1e-6, 0.1, 0.37, 0.9, 1.0}) {
      CHECK(ev(c, u, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(ev(c, 0.0, u) == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(ev(c, u, 1.0) == doctest::Approx(u).epsilon(1e-12));
      CHECK(ev(c, 1.0, u) == doctest::Approx(u).epsilon(1e-12));
    }
  }
}

TEST_CASE("log_cdf stays finite deep in the tail") {
  const auto mo = CopulaSpec::marshall_olkin(0.3529, 0.75);
  const double u = 1e-8;
  CHECK(mo.log_cdf(u, u) == doctest::Approx((2 - 0.3529) * std::log(u)).epsilon(1e-12));
  const auto gc = CopulaSpec::generalized_clayton(0.04, 0.02);
  CHECK(std::isfinite(gc.log_cdf(1e-8, 1e-8)));
  CHECK(gc.log_cdf(0.2, 0.3) ==
        doctest::Approx(std::log(oracle::gen_clayton(0.04, 0.02, 0.2, 0.3))).epsilon(1e-12));
  CHECK(std::isinf(CopulaSpec::independence().log_cdf(0.0, 0.5)));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(CopulaSpec::marshall_olkin(-0.1, 0.5), Error);
  CHECK_THROWS_AS(CopulaSpec::marshall_olkin(0.5, 1.1), Error);
  CHECK_THROWS_AS(CopulaSpec::fgm(1.5), Error);
  CHECK_THROWS_AS(CopulaSpec::generalized_clayton(0.0, 0.1), Error);
  CHECK_THROWS_AS(CopulaSpec::generalized_clayton(0.1, -0.1), Error);
  CHECK_THROWS_AS(CopulaSpec::clayton(0.0), Error);
  CHECK_THROWS_AS(UnitInterval(1.5), Error);
  CHECK_THROWS_AS(UnitInterval(std::nan("")), Error);
  try {
    CopulaSpec::fgm(2.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidParameter);
  }
  try {
    UnitInterval(-0.5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("survival copula") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double u = unif(rng), v = unif(rng);
    CHECK(ev(survival_copula(CopulaSpec::independence()), u, v) ==
          doctest::Approx(u * v).epsilon(1e-12));
    CHECK(ev(survival_copula(CopulaSpec::frechet_upper()), u, u) ==
          doctest::Approx(u).epsilon(1e-12));
  }
  for (double alpha : {-1.0, -0.3, 0.6, 1.0}) {
    const auto s = survival_copula(CopulaSpec::fgm(alpha));
    for (int i = 1; i < 50; ++i) {
      for (int j = 1; j < 50; ++j) {
        const double u = i / 50.0, v = j / 50.0;
        CHECK(ev(s, u, v) == doctest::Approx(oracle::fgm(alpha, u, v)).epsilon(1e-12));
      }
    }
  }
  const auto mo = CopulaSpec::marshall_olkin(0.3, 0.6);
  const double u = 0.2, v = 0.7;
  CHECK(ev(survival_copula(mo), u, v) ==
        doctest::Approx(u + v - 1 + oracle::mo(0.3, 0.6, 1 - u, 1 - v)).epsilon(1e-13));
  CHECK(survival_copula(mo).is_survival());
  CHECK(survival_copula(mo).family() == Family::MarshallOlkin);
}

TEST_CASE("property: survival is an involution") {
  for (const auto& c : all_families()) {
    const auto twice = survival_copula(survival_copula(c));
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) {
        const double u = i / 40.0, v = j / 40.0;
        CHECK(std::abs(ev(twice, u, v) - ev(c, u, v)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("property: axioms hold for every family") {
  for (const auto& c : all_families()) {
    const auto rep = check_axioms(c, 100, 1e-10);
    INFO(c.describe());
    CHECK(rep.grounded_ok);
    CHECK(rep.marginals_ok);
    CHECK(rep.two_increasing_ok);
    CHECK(rep.all_ok());
  }
  CHECK(check_axioms(CopulaSpec::marshall_olkin(0.3529, 0.75), 100, 1e-12).all_ok());
  CHECK(check_axioms(CopulaSpec::fgm(-1.0), 100, 1e-12).all_ok());
}

TEST_CASE("axioms flag a corrupted FGM") {
  const auto bad = CopulaSpec::unchecked(Family::FGM, {3.0});
  const auto rep = check_axioms(bad, 100, 1e-10);
  CHECK_FALSE(rep.two_increasing_ok);
  CHECK(rep.min_rectangle_mass < 0);
  const auto& w = rep.worst_rectangle;
  const double mass = oracle::fgm(3, w[2], w[3]) - oracle::fgm(3, w[0], w[3]) -
                      oracle::fgm(3, w[2], w[1]) + oracle::fgm(3, w[0], w[1]);
  CHECK(mass == doctest::Approx(rep.min_rectangle_mass).epsilon(1e-9));
}

TEST_CASE("property: Frechet bounds on random points") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& c : all_families()) {
    for (int i = 0; i < 200; ++i) {
      const double u = unif(rng), v = unif(rng);
      const double x = ev(c, u, v);
      CHECK(x <= std::min(u, v) + 1e-15);
      CHECK(x >= std::max(u + v - 1, 0.0) - 1e-15);
    }
  }
}

TEST_CASE("property: mixture and symmetric families are exchangeable") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> par(0.05, 0.95);
  for (int k = 0; k < 20; ++k) {
    const auto mix = CopulaSpec::mixture_mo(par(rng), par(rng));
    CHECK(mix.is_symmetric());
    for (int i = 0; i < 50; ++i) {
      const double u = unif(rng), v = unif(rng);
      CHECK(std::abs(ev(mix, u, v) - ev(mix, v, u)) <= 1e-15);
    }
  }
  CHECK_FALSE(CopulaSpec::marshall_olkin(0.3, 0.6).is_symmetric());
  CHECK(CopulaSpec::marshall_olkin(0.4, 0.4).is_symmetric());
  CHECK(CopulaSpec::fgm(0.3).is_symmetric());
  CHECK(CopulaSpec::clayton(1.0).is_symmetric());
  CHECK_FALSE(CopulaSpec::generalized_clayton(0.5, 0.3).is_symmetric());
}

TEST_CASE("kendall tau") {
  CHECK(kendall_tau(CopulaSpec::marshall_olkin(0.3529, 0.75), TauMethod::ClosedForm) ==
        doctest::Approx(0.3158).epsilon(5e-4 / 0.3158));
  CHECK(kendall_tau(CopulaSpec::marshall_olkin(0.3529, 0.5), TauMethod::ClosedForm) ==
        doctest::Approx(0.2609).epsilon(5e-4 / 0.2609));
  CHECK(kendall_tau(CopulaSpec::marshall_olkin(0.3529, 0.3529), TauMethod::ClosedForm) ==
        doctest::Approx(0.2143).epsilon(5e-4 / 0.2143));
  CHECK_THROWS_AS(kendall_tau(CopulaSpec::fgm(0.5), TauMethod::ClosedForm), Error);

  // Monte Carlo agrees with the closed form, and with FGM's 2 alpha / 9.
  const double mc = kendall_tau(CopulaSpec::marshall_olkin(0.3529, 0.75),
                                TauMethod::MonteCarlo, 200000, 3);
  CHECK(mc == doctest::Approx(0.31576).epsilon(0.02));
  const double fgm = kendall_tau(CopulaSpec::fgm(0.9), TauMethod::MonteCarlo, 200000, 3);
  CHECK(fgm == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("sample kendall tau against the O(n^2) definition") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  std::vector<double> x(300), y(300);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = g(rng);
    y[i] = 0.6 * x[i] + g(rng);
  }
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      s += ((x[i] - x[j]) * (y[i] - y[j]) > 0) ? 1 : -1;
    }
  }
  const double brute = s / (x.size() * (x.size() - 1) / 2.0);
  CHECK(sample_kendall_tau(x, y) == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("clayton generator maps") {
  const ClaytonGenerator g(2.0);
  for (double t : {1e-6, 0.01, 0.3, 0.9, 1.0}) {
    CHECK(g.psi(t) == doctest::Approx((std::pow(t, -2.0) - 1) / 2).epsilon(1e-14));
    CHECK(g.dpsi(t) == doctest::Approx(-std::pow(t, -3.0)).epsilon(1e-14));
    CHECK(g.d2psi(t) == doctest::Approx(3 * std::pow(t, -4.0)).epsilon(1e-14));
    CHECK(g.inverse(g.psi(t)) == doctest::Approx(t).epsilon(1e-12));
  }
  CHECK(to_string(Family::GeneralizedClayton) == std::string("generalized_clayton"));
}
