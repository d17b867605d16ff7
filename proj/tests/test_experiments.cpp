#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cnoma/experiments.hpp"
#include "cnoma/montecarlo.hpp"

using namespace cnoma;

#ifndef CNOMA_PRESET_DIR
#define CNOMA_PRESET_DIR "presets"
#endif
#ifndef CNOMA_TEST_DATA_DIR
#define CNOMA_TEST_DATA_DIR "tests/data"
#endif

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// canonical one-line echo of everything a preset pins down; compared against
// the checked-in manifest so caption drift cannot pass unnoticed
std::string echo_spec(const SweepSpec& s) {
  std::ostringstream os;
  os << s.name << " swept=" << swept_variable_name(s.swept) << " grid=";
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    if (i) os << ',';
    os << fmt(s.grid[i]);
  }
  os << " metric=" << metric_name(s.metric)
     << " analytic=" << (s.analytic ? 1 : 0)
     << " optimize_theta=" << (s.optimize_theta ? 1 : 0)
     << " samples=" << s.n_samples << " seed=" << s.seed << " schemes=";
  for (std::size_t i = 0; i < s.schemes.size(); ++i) {
    if (i) os << ',';
    os << scheme_name(s.schemes[i]);
  }
  const SystemParams& p = s.base;
  os << " d_s1=" << fmt(p.d_s1) << " d_s2=" << fmt(p.d_s2) << " d_12=";
  if (p.d_12) {
    os << fmt(*p.d_12);
  } else {
    os << "auto";
  }
  os << " v=" << fmt(p.v) << " theta=" << fmt(p.theta)
     << " delta=" << fmt(p.delta) << " eta=" << fmt(p.eta)
     << " beta=" << fmt(p.beta) << " rho_db=" << fmt(p.rho_db)
     << " r_th1=" << fmt(p.r_th1) << " r_th2=" << fmt(p.r_th2)
     << " t=" << fmt(p.t_total);
  return os.str();
}

SweepSpec tiny_spec() {
  SweepSpec spec;
  spec.name = "tiny";
  spec.swept = SweptVariable::kRhoDb;
  spec.grid = {10.0, 15.0};
  spec.schemes = {SchemeId::kCnomaIhs, SchemeId::kOmaIhs};
  spec.metric = Metric::kEsc;
  spec.n_samples = 2000;
  spec.seed = 7;
  return spec;
}

}  // namespace

TEST_CASE("a sweep config file parses into the expected spec") {
  const KeyValueConfig cfg = KeyValueConfig::parse_text(
      "name = demo\n"
      "swept = theta\n"
      "grid = 0.2, 0.4, 0.6\n"
      "metric = EE\n"
      "schemes = CNOMA_IHS, CNOMA_TS\n"
      "n_samples = 5000\n"
      "seed = 9\n"
      "sinr_mode = printed\n"
      "delta = 0.25\n"
      "rho_db = 20\n",
      "demo");
  const SweepSpec spec = sweep_from_config(cfg);
  CHECK(spec.name == "demo");
  CHECK(spec.swept == SweptVariable::kTheta);
  CHECK(spec.grid == std::vector<double>{0.2, 0.4, 0.6});
  CHECK(spec.metric == Metric::kEe);
  REQUIRE(spec.schemes.size() == 2);
  CHECK(spec.schemes[1] == SchemeId::kCnomaTs);
  CHECK(spec.n_samples == 5000);
  CHECK(spec.seed == 9);
  CHECK(spec.sinr_mode == SinrMode::kAsPrinted);
  CHECK(spec.base.delta == doctest::Approx(0.25));
  CHECK(spec.base.rho_db == doctest::Approx(20.0));
  CHECK(validate_sweep(spec).empty());
}

TEST_CASE("misspelled and invalid config entries are rejected") {
  const char* bad_texts[] = {
      "swept = banana\ngrid = 1\nmetric = ESC\nschemes = CNOMA_IHS\n",
      "swept = theta\ngrid = 0.4\nmetric = FOO\nschemes = CNOMA_IHS\n",
      "swept = theta\ngrid = 0.4\nmetric = ESC\nschemes = NOPE\n",
      "swept = theta\ngrid = 0.4\nmetric = ESC\nschemes = CNOMA_IHS\n"
      "thetaa = 0.3\n",
      "swept = theta\ngrid = 0.4\nmetric = ESC\nschemes = CNOMA_IHS\n"
      "sinr_mode = loud\n",
      "swept = theta\ngrid = 0.4\nmetric = ESC\nschemes = CNOMA_IHS\n"
      "ee_pn_term = huge\n",
  };
  for (const char* text : bad_texts) {
    CHECK_THROWS_AS(
        sweep_from_config(KeyValueConfig::parse_text(text, "bad")),
        ConfigError);
  }
}

TEST_CASE("parameter files reject unknown keys only when asked") {
  const KeyValueConfig cfg =
      KeyValueConfig::parse_text("theta = 0.3\nmystery = 1\n", "p");
  CHECK_THROWS_AS(params_from_config(cfg, true), ConfigError);
  const KeyValueConfig cfg2 =
      KeyValueConfig::parse_text("theta = 0.3\nmystery = 1\n", "p");
  CHECK(params_from_config(cfg2, false).theta == doctest::Approx(0.3));
}

TEST_CASE("sweep validation rules") {
  SweepSpec s = tiny_spec();
  s.grid = {};
  CHECK_FALSE(validate_sweep(s).empty());

  s = tiny_spec();
  s.grid = {10.0, 10.0};
  CHECK_FALSE(validate_sweep(s).empty());

  s = tiny_spec();
  s.grid = {15.0, 10.0};
  CHECK_FALSE(validate_sweep(s).empty());

  s = tiny_spec();
  s.schemes = {};
  CHECK_FALSE(validate_sweep(s).empty());

  s = tiny_spec();
  s.n_samples = 999;
  CHECK_FALSE(validate_sweep(s).empty());

  s = tiny_spec();
  s.optimize_theta = true;  // metric is ESC: rejected
  CHECK_FALSE(validate_sweep(s).empty());

  s = tiny_spec();
  s.metric = Metric::kEe;
  s.optimize_theta = true;
  s.swept = SweptVariable::kTheta;
  s.grid = {0.2, 0.4};
  CHECK_FALSE(validate_sweep(s).empty());

  s = tiny_spec();
  s.analytic = true;
  s.metric = Metric::kEe;
  CHECK_FALSE(validate_sweep(s).empty());

  // a grid point that lands on an invalid parameter set is caught up front
  s = tiny_spec();
  s.swept = SweptVariable::kTheta;
  s.grid = {0.4, 1.0};
  const auto violations = validate_sweep(s);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations[0].message.find("grid[1]") != std::string::npos);

  CHECK_THROWS_AS(run_sweep(s, 1), std::invalid_argument);
}

TEST_CASE("single grid point yields one row per scheme") {
  SweepSpec s = tiny_spec();
  s.grid = {15.0};
  const SweepResult r = run_sweep(s, 1);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].scheme == "CNOMA_IHS");
  CHECK(r.rows[1].scheme == "OMA_IHS");
  CHECK(r.rows[0].mean > r.rows[1].mean);  // proposed beats orthogonal here
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0].pairs.size() == 1);
}

TEST_CASE("sweeping the near distance recomputes the relay distance") {
  SweepSpec s = tiny_spec();
  s.swept = SweptVariable::kDS1;
  s.grid = {0.3, 0.7};
  s.schemes = {SchemeId::kCnomaIhs};
  const SweepResult r = run_sweep(s, 1);
  REQUIRE(r.rows.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    SystemParams manual;
    manual.d_s1 = s.grid[i];
    const ValidatedParams vp = validate_or_throw(manual);
    CHECK(vp.d_12 == doctest::Approx(1.0 - s.grid[i]));
    const ReportEstimates est =
        estimate(SchemeId::kCnomaIhs, vp, s.n_samples, SeedSpec{s.seed},
                 SinrMode::kTheoremConsistent, 1);
    CHECK(r.rows[i].mean == est.c_sum.mean);
  }
}

TEST_CASE("optimized series appends with the same randomness") {
  SweepSpec s = tiny_spec();
  s.metric = Metric::kEe;
  s.grid = {15.0};
  s.schemes = {SchemeId::kCnomaIhs};
  s.optimize_theta = true;
  s.theta_search_samples = 2000;  // match n so the argmax transfers exactly
  const SweepResult r = run_sweep(s, 1);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].scheme == "CNOMA_IHS");
  CHECK(r.rows[1].scheme == "CNOMA_IHS_opt");
  CHECK(r.rows[1].mean >= r.rows[0].mean);
}

TEST_CASE("csv layout, significant digits, analytic columns") {
  SweepSpec s = tiny_spec();
  s.grid = {15.0};
  s.analytic = true;
  const SweepResult r = run_sweep(s, 1);
  std::ostringstream os;
  emit_csv(r, os);
  std::istringstream in(os.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line ==
        "swept_value,scheme,metric,mean,std_error,analytic_c1,"
        "analytic_c2_printed,analytic_c2_oracle,analytic_sum");
  REQUIRE(std::getline(in, line));
  // first data row is CNOMA_IHS with all analytic cells filled
  std::vector<std::string> cells;
  std::istringstream ls(line);
  std::string cell;
  while (std::getline(ls, cell, ',')) cells.push_back(cell);
  REQUIRE(cells.size() == 9);
  CHECK(cells[1] == "CNOMA_IHS");
  CHECK(cells[2] == "ESC");
  CHECK(std::stod(cells[3]) ==
        doctest::Approx(r.rows[0].mean).epsilon(1e-11));
  CHECK(std::stod(cells[8]) ==
        doctest::Approx(*r.rows[0].analytic_c1 + *r.rows[0].analytic_c2_oracle)
            .epsilon(1e-11));
  REQUIRE(std::getline(in, line));
  // the orthogonal baseline carries empty analytic cells
  CHECK(line.find("OMA_IHS") != std::string::npos);
  CHECK(line.substr(line.size() - 4) == ",,,,");
}

TEST_CASE("csv without the analytic flag has the five base columns") {
  SweepSpec s = tiny_spec();
  s.grid = {15.0};
  const SweepResult r = run_sweep(s, 1);
  std::ostringstream os;
  emit_csv(r, os);
  std::istringstream in(os.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "swept_value,scheme,metric,mean,std_error");
}

TEST_CASE("identical seeds and any worker split give identical csv bytes") {
  SweepSpec s = tiny_spec();
  const SweepResult a = run_sweep(s, 1);
  const SweepResult b = run_sweep(s, 5);
  std::ostringstream oa, ob;
  emit_csv(a, oa);
  emit_csv(b, ob);
  CHECK(oa.str() == ob.str());
}

TEST_CASE("unwritable output paths surface as io errors with the path") {
  SweepSpec s = tiny_spec();
  s.grid = {15.0};
  s.schemes = {SchemeId::kCnomaIhs};
  const SweepResult r = run_sweep(s, 1);
  try {
    write_csv(r, "/nonexistent_dir_zz/out.csv");
    FAIL("expected an io error");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent_dir_zz/out.csv") !=
          std::string::npos);
  }
}

TEST_CASE("svg output carries one series per scheme plus whiskers") {
  SweepSpec s = tiny_spec();
  const SweepResult r = run_sweep(s, 1);
  std::ostringstream os;
  emit_svg(r, os);
  const std::string svg = os.str();
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("CNOMA_IHS") != std::string::npos);
  CHECK(svg.find("OMA_IHS") != std::string::npos);
  std::size_t polylines = 0, from = 0;
  while ((from = svg.find("<polyline", from)) != std::string::npos) {
    ++polylines;
    from += 9;
  }
  CHECK(polylines == s.schemes.size());
}

TEST_CASE("figure presets echo the pinned captions") {
  std::ifstream manifest(std::string(CNOMA_TEST_DATA_DIR) +
                         "/preset_manifest.txt");
  REQUIRE(manifest.good());
  std::string expected;
  int checked = 0;
  while (std::getline(manifest, expected)) {
    if (expected.empty()) continue;
    const std::string name = expected.substr(0, expected.find(' '));
    const KeyValueConfig cfg = KeyValueConfig::parse_file(
        std::string(CNOMA_PRESET_DIR) + "/" + name + ".cfg");
    const SweepSpec spec = sweep_from_config(cfg);
    CHECK(echo_spec(spec) == expected);
    CHECK(validate_sweep(spec).empty());
    ++checked;
  }
  CHECK(checked == 7);
}

TEST_CASE("preset rerun reproduces the committed golden csv bitwise") {
  const KeyValueConfig cfg = KeyValueConfig::parse_file(
      std::string(CNOMA_PRESET_DIR) + "/figure3.cfg");
  SweepSpec spec = sweep_from_config(cfg);
  spec.n_samples = 2000;  // the golden file is the desk-scale cut
  const SweepResult r = run_sweep(spec, 3);
  std::ostringstream os;
  emit_csv(r, os);
  std::ifstream golden(std::string(CNOMA_TEST_DATA_DIR) +
                       "/golden_figure3_n2000.csv",
                       std::ios::binary);
  REQUIRE(golden.good());
  std::ostringstream want;
  want << golden.rdbuf();
  CHECK(os.str() == want.str());
}
