#ifndef MAXTAIL_SERIALIZE_HPP
#define MAXTAIL_SERIALIZE_HPP

#include <optional>
#include <string>
#include <vector>

#include "maxtail/copula.hpp"
#include "maxtail/indices.hpp"
#include "maxtail/maxpath.hpp"
#include "maxtail/risk.hpp"

// CSV and JSON emitters. Floats are written with 17 significant digits;
// non-finite values become `null` in JSON and `nan`/`inf` in CSV. CSV output
// always starts with a header row.
namespace maxtail::io {

std::string format_double(double x);

class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double x);
  JsonWriter& value(std::int64_t x);
  JsonWriter& value(std::uint64_t x);
  JsonWriter& value(bool b);
  JsonWriter& value(const std::string& s);
  JsonWriter& value(const char* s) { return value(std::string(s)); }
  JsonWriter& null();
  // Splices an already serialised JSON value.
  JsonWriter& raw(const std::string& json);
  JsonWriter& value(const std::vector<double>& xs);
  JsonWriter& value(const std::optional<double>& x);

  const std::string& str() const { return out_; }

 private:
  void separate();

  std::string out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

// Columns: u, x_star_1..x_star_k, pi_star, boundary_attained,
// all_paths_maximal; short rows pad the maximiser columns with empty cells.
std::string path_to_csv(const PathSolution& path);
std::string path_to_json(const PathSolution& path);

std::string index_report_to_json(const TailIndexReport& rep);
// Header: path_kind, kappa, lambda, chi, residual; one data row.
std::string index_report_to_csv(const TailIndexReport& rep);

std::string comparison_to_json(const ComparisonReport& rep);

std::string risk_report_to_json(const RiskReport& rep);
std::string risk_report_to_csv(const RiskReport& rep);

// Columns: q, b, tau, kappa_L, kappa_L_star, VaR, CTE, MTVar.
std::string table1_to_csv(const std::vector<Table1Row>& rows);
std::string table1_to_json(const std::vector<Table1Row>& rows);

std::string axiom_report_to_json(const AxiomReport& rep);

// (resolution x resolution) lattice on [0,1]^2; columns u, v, C.
std::string contour_grid_csv(const CopulaSpec& spec, std::size_t resolution);

// Maximal-dependence path points on `levels` equally spaced u in (0, 1);
// columns u, path, x, y, pi_star with y = u^2 / x.
std::string contour_path_csv(const CopulaSpec& spec, std::size_t levels,
                             const SolverOptions& opts);

}  // namespace maxtail::io

#endif
