#include <algorithm>

#include "maxtail/indices.hpp"
#include "maxtail/maxpath.hpp"
#include "maxtail/risk.hpp"

namespace maxtail {

std::vector<Table1Row> table1(std::uint64_t seed, std::size_t n,
                              unsigned threads) {
  constexpr double kQs[] = {0.990, 0.995};
  constexpr double kBs[] = {0.75, 0.5, kTable1A};
  const ParetoII marginal(0.0, 1.0, 4.0);
  const auto grid = make_u_grid();
  RiskOptions opts;
  opts.threads = threads;

  std::vector<Table1Row> rows;
  for (double q : kQs) {
    for (double b : kBs) rows.push_back({q, b, 0.0, 0.0, 0.0, {}});
  }
  for (double b : kBs) {
    const CopulaSpec mo = CopulaSpec::marshall_olkin(kTable1A, b);
    const double tau = kendall_tau(mo, TauMethod::ClosedForm);
    const double kappa_l = classical_indices(mo, grid).kappa;
    const double kappa_star = *closed_form_kappa_star(mo);
    std::vector<double> z = aggregate_losses(mo, marginal, n, seed, opts);
    for (auto& row : rows) {
      if (row.b != b) continue;
      row.tau = tau;
      row.kappa_l = kappa_l;
      row.kappa_l_star = kappa_star;
      row.risk = tail_measures(z, row.q);
      row.risk.seed = seed;
    }
  }
  return rows;
}

}  // namespace maxtail
