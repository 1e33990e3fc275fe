#include <cmath>

#include "doctest.h"
#include "maxtail/numeric.hpp"
#include "maxtail/parallel.hpp"

using namespace maxtail::numeric;

TEST_CASE("golden section") {
  const auto e = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0, 1, 1e-12);
  CHECK(e.x == doctest::Approx(0.3).epsilon(1e-9));
  const auto edge = golden_section_max([](double x) { return x; }, 0, 2, 1e-12);
  CHECK(edge.x == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("bisection") {
  const auto r = bisect([](double x) { return x * x - 2; }, 0, 2, 1e-14);
  REQUIRE(r);
  CHECK(r->x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK_FALSE(bisect([](double x) { return x * x + 1; }, -1, 1, 1e-12));
}

TEST_CASE("log helpers") {
  CHECK(log_add_exp(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)));
  CHECK(log_add_exp(-1000, -1000) == doctest::Approx(-1000 + std::log(2.0)));
  CHECK(log_add_exp(-INFINITY, 1.0) == 1.0);
  const auto g = log_spaced(1e-4, 1, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == doctest::Approx(1e-4));
  CHECK(g[2] == doctest::Approx(1e-2));
  CHECK(g.back() == 1.0);
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hit(1000, 0);
  maxtail::detail::parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK_THROWS(maxtail::detail::parallel_for(10, 3, [](std::size_t i) {
    if (i == 7) throw std::runtime_error("boom");
  }));
}
