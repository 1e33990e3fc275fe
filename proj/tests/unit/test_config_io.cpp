#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "maxtail/config.hpp"
#include "maxtail/error.hpp"
#include "maxtail/serialize.hpp"

using namespace maxtail;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Domain;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("config grammar") {
  const auto cfg = Config::parse(
      "# Table 1 copula\n"
      "family = marshall_olkin\n"
      "a = 0.3529   # common shock\n"
      "\n"
      "b=0.75\n"
      "n = 2e6\n");
  CHECK(cfg.get("family") == "marshall_olkin");
  CHECK(cfg.get_double("a", 0) == 0.3529);
  CHECK(cfg.get_int("n", 0) == 2000000);
  CHECK(cfg.get_double("q", 0.99) == 0.99);
  const auto spec = copula_from_config(cfg);
  CHECK(spec.family() == Family::MarshallOlkin);
  CHECK(spec.param(1) == 0.75);

  const auto inl = Config::parse_inline("family=fgm; alpha=-0.5, survival=true");
  const auto s = copula_from_config(inl);
  CHECK(s.is_survival());
  CHECK(s.family() == Family::FGM);

  const auto clay = copula_from_config(Config::parse("family = archimedean\ngenerator = clayton\ntheta = 2\n"));
  CHECK(clay.family() == Family::Archimedean);
  CHECK(clay.generator() != nullptr);
}

TEST_CASE("config errors") {
  CHECK(code_of([] { Config::parse("family marshall_olkin\n"); }) == ErrorCode::ConfigParse);
  CHECK(code_of([] { Config::parse("colour = red\n"); }) == ErrorCode::ConfigParse);
  CHECK(code_of([] { Config::parse("a = 1\na = 2\n"); }) == ErrorCode::ConfigParse);
  CHECK(code_of([] { Config::parse("a =\n"); }) == ErrorCode::ConfigParse);
  CHECK(code_of([] { Config::parse("a = x1").get_double("a", 0); }) == ErrorCode::ConfigParse);
  CHECK(code_of([] { Config::parse("n = 2.5").get_int("n", 0); }) == ErrorCode::ConfigParse);
  CHECK(code_of([] { copula_from_config(Config::parse("a = 0.3\n")); }) == ErrorCode::ConfigParse);
  CHECK(code_of([] { copula_from_config(Config::parse("family = marshall_olkin\na = 0.3\n")); }) ==
        ErrorCode::ConfigParse);
  CHECK(code_of([] {
          copula_from_config(Config::parse("family = marshall_olkin\na = 0.3\nb = 2\n"));
        }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { copula_from_config(Config::parse("family = gumbel\n")); }) ==
        ErrorCode::ConfigParse);
  try {
    Config::parse("a = 1\n\nb = 2\nwhat\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  Config c;
  c.set("a", "0.5");
  c.set("a", "0.6");
  CHECK(c.get_double("a", 0) == 0.6);
  CHECK_THROWS_AS(c.set("nope", "1"), Error);
}

TEST_CASE("double formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -2.5}) {
    CHECK(std::stod(io::format_double(x)) == x);
  }
  CHECK(io::format_double(std::nan("")) == "nan");
}

TEST_CASE("path CSV and JSON re-parse") {
  const auto grid = make_u_grid();
  const auto sol = solve_path(CopulaSpec::mixture_mo(0.3529, 0.75), grid);
  const auto rows = csv_rows(io::path_to_csv(sol));
  REQUIRE(rows.size() == grid.size() + 1);
  CHECK(rows[0] == std::vector<std::string>{"u", "x_star_1", "x_star_2", "pi_star",
                                            "boundary_attained", "all_paths_maximal"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    REQUIRE(rows[i + 1].size() == 6);
    CHECK(std::stod(rows[i + 1][0]) == sol.points[i].u);
    CHECK(std::stod(rows[i + 1][1]) == sol.points[i].maximizers[0]);
    CHECK(std::stod(rows[i + 1][3]) == sol.points[i].pi_star);
    CHECK(rows[i + 1][4] == "false");
  }
  const auto j = json::parse(io::path_to_json(sol));
  CHECK(j["points"].size() == grid.size());
  CHECK(j["points"][3]["maximizers"][1].get<double>() == sol.points[3].maximizers[1]);
  CHECK(j["solver_opts"]["scan_n"] == 2048);

  const auto ind = solve_path(CopulaSpec::independence(), grid);
  CHECK(csv_rows(io::path_to_csv(ind))[1][4] == "true");
}

TEST_CASE("report JSON re-parses") {
  const auto grid = make_u_grid();
  const auto rep = classical_indices(CopulaSpec::marshall_olkin(0.3529, 0.75), grid);
  const auto j = json::parse(io::index_report_to_json(rep));
  CHECK(j["path_kind"] == "diagonal");
  CHECK(j["kappa"].get<double>() == rep.kappa);
  CHECK(j["local_slopes"].size() == grid.size() - 1);
  CHECK(j["lambda_degenerate"] == true);

  const auto cmp = compare(CopulaSpec::frechet_upper(), CopulaSpec::independence(), grid);
  const auto jc = json::parse(io::comparison_to_json(cmp));
  CHECK(jc["lambda_pair"].is_null());
  CHECK(jc["verdict"] == "MoreWLTMD");

  const auto risk = risk_measures(CopulaSpec::independence(), ParetoII(), 0.99, 20000, 4);
  const auto jr = json::parse(io::risk_report_to_json(risk));
  CHECK(jr["VaR"].get<double>() == risk.var_q);
  CHECK(jr["seed"] == 4);
  const auto rr = csv_rows(io::risk_report_to_csv(risk));
  CHECK(rr[0][1] == "VaR");
  CHECK(std::stod(rr[1][2]) == risk.cte_q);

  const auto ja = json::parse(io::axiom_report_to_json(check_axioms(CopulaSpec::fgm(0.5), 20, 1e-10)));
  CHECK(ja["two_increasing_ok"] == true);
  CHECK(ja["worst_rectangle"].size() == 4);

  io::JsonWriter w;
  w.begin_object().key("x").value(INFINITY).key("s").value("a\"b").end_object();
  const auto jw = json::parse(w.str());
  CHECK(jw["x"].is_null());
  CHECK(jw["s"] == "a\"b");
}

TEST_CASE("contour output") {
  const auto spec = CopulaSpec::marshall_olkin(0.3529, 0.75);
  const auto grid = csv_rows(io::contour_grid_csv(spec, 11));
  REQUIRE(grid.size() == 122);
  CHECK(grid[0] == std::vector<std::string>{"u", "v", "C"});
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double u = std::stod(grid[i][0]), v = std::stod(grid[i][1]);
    CHECK(std::stod(grid[i][2]) == doctest::Approx(spec.cdf(u, v)));
  }
  const auto path = csv_rows(io::contour_path_csv(spec, 9, {}));
  REQUIRE(path.size() == 10);
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double u = std::stod(path[i][0]), x = std::stod(path[i][2]), y = std::stod(path[i][3]);
    CHECK(x * y == doctest::Approx(u * u));
    CHECK(x == doctest::Approx(std::pow(u, 2 * 0.75 / (0.3529 + 0.75))).epsilon(1e-8));
  }
  CHECK_THROWS_AS(io::contour_grid_csv(spec, 1), Error);
}
