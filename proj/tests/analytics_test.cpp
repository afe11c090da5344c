#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sfv/analytics.hpp"
#include "sfv/config.hpp"
#include "sfv/csv.hpp"

using namespace sfv;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DetectionModel model(double a, double b, double c, int n = 1) { return {a, b, c, n}; }

}  // namespace

TEST_CASE("detection probability") {
  CHECK(detection_probability(model(0, 0, 0)) == 1.0);
  CHECK(detection_probability(model(1, 0.5, 0.5)) == 0.0);
  CHECK(detection_probability(model(0.2, 0.3, 0.5)) == doctest::Approx(0.28).epsilon(1e-12));
}

TEST_CASE("detection rate") {
  const DetectionModel p04 = DetectionModel::calibrated(0.4, 1);
  CHECK(detection_probability(p04) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(detection_rate(p04) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(detection_rate(DetectionModel::calibrated(0.4, 6)) == doctest::Approx(0.953344).epsilon(1e-12));
  CHECK(detection_rate(DetectionModel::calibrated(kCalibratedDetection, 8)) ==
        doctest::Approx(1.0 - std::pow(0.65, 8)).epsilon(1e-12));

  for (const double p : {0.05, 0.35, 0.9}) {
    double prev = 0.0;
    for (int n = 1; n <= 60; ++n) {
      const double r = detection_rate(DetectionModel::calibrated(p, n));
      REQUIRE(r >= prev);
      REQUIRE(r <= 1.0);
      prev = r;
    }
    CHECK(prev > 0.95);
  }
  CHECK_THROWS_AS(model(0, 0, 0, 0).validate(), ConfigError);
  CHECK_THROWS_AS(model(1.1, 0, 0).validate(), ConfigError);
}

TEST_CASE("key space arithmetic") {
  CHECK(keyspace_size(1) == 2);
  CHECK(brute_force_average(1) == 1);
  CHECK(to_decimal(keyspace_size(90)) == "1237940039285380274899124224");
  CHECK(to_decimal(brute_force_average(90)) == "618970019642690137449562112");
  CHECK(to_decimal(keyspace_size(90)).size() == 28);
  CHECK(scientific(keyspace_size(90), 10) == "1.237940039e27");
  CHECK(scientific(BigInt(1999), 2) == "2.0e3");
  CHECK(scientific(BigInt(7), 3) == "7.00e0");
  CHECK_THROWS_AS(keyspace_size(0), std::invalid_argument);
  CHECK_THROWS_AS(scientific(BigInt(5), 0), std::invalid_argument);
}

TEST_CASE("analytic vs empirical comparison") {
  const auto rows =
      compare_analytic_empirical(DetectionModel::calibrated(kCalibratedDetection, 1), {1, 2}, 2000, HandshakeConfig{}, 9);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n_ids == 1);
  CHECK(rows[0].analytic == doctest::Approx(0.35));
  CHECK(rows[1].analytic == doctest::Approx(1 - 0.65 * 0.65));
  for (const auto& r : rows) {
    CHECK(r.attempts == 2000);
    CHECK(r.abs_gap == doctest::Approx(std::abs(r.empirical - r.analytic)));
    CHECK(r.sigma == doctest::Approx(std::sqrt(r.analytic * (1 - r.analytic) / 2000)));
    CHECK(r.within_sigmas(4));
  }
  CHECK(comparison_table(rows).rows.size() == 2);
}

TEST_CASE("sweep specs") {
  SweepSpec s;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.values = {200, 400, 400};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.values = {600, 400, 200};
  CHECK_NOTHROW(s.validate());
  s.variable = SweepVariable::kNIds;
  s.values = {1, 2.5};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.values = {1, 2};
  s.repetitions = 0;
  CHECK_THROWS_AS(s.validate(), ConfigError);

  CHECK(parse_sweep_variable("node_speed") == SweepVariable::kNodeSpeed);
  CHECK(to_string(SweepVariable::kTxRate) == "tx_rate");
  CHECK_THROWS_AS(parse_sweep_variable("speed"), ConfigError);

  const Scenario fast = apply_sweep_value(Scenario{}, SweepVariable::kNodeSpeed, 35.0);
  CHECK(fast.speed_min == 35.0);
  CHECK(fast.speed_max == 35.0);
  CHECK(apply_sweep_value(Scenario{}, SweepVariable::kTxRate, 800.0).tx_rate_kbps == 800.0);
}

TEST_CASE("sweeps are ordered and reproducible") {
  Scenario base = Scenario::desk_scale();
  base.duration = 2.0;
  base.master_seed = 40;
  SweepSpec spec;
  spec.values = {200, 1000};
  spec.repetitions = 2;
  const std::vector<SfvMode> modes{SfvMode::kOff, SfvMode::kSfvRanging};
  const auto one = run_sweep(base, spec, modes, 1);
  const auto many = run_sweep(base, spec, modes, 4);
  REQUIRE(one.size() == 8);
  CHECK(one[0].value == 200);
  CHECK(one[0].mode == SfvMode::kOff);
  CHECK(one[0].seed == 40);
  CHECK(one[1].seed == 41);
  CHECK(one[2].mode == SfvMode::kSfvRanging);
  CHECK(one[4].value == 1000);
  CHECK(to_csv(sweep_table(one, spec.variable)) == to_csv(sweep_table(many, spec.variable)));
  CHECK(sweep_summary_table(one, spec.variable).rows.size() == 4);
}

TEST_CASE("report tables") {
  const CsvTable k = keyspace_table(90);
  REQUIRE(k.rows.size() == 1);
  CHECK(k.rows[0][1] == "1237940039285380274899124224");
  CHECK(k.rows[0][3] == "618970019642690137449562112");

  const CsvTable d = detection_table(DetectionModel::calibrated(0.4, 1), 6);
  CHECK(d.rows.size() == 6);
  CHECK(parse_double(d.rows[5][5]) == doctest::Approx(0.953344).epsilon(1e-12));
  CHECK_THROWS_AS(detection_table(DetectionModel{}, 0), ConfigError);

  ScenarioMetrics m;
  m.clusters = {{3, 1}, {4, 0}};
  const CsvTable c = cluster_table(m);
  CHECK(to_csv(c) == "cluster,friendly,suspicious\n1,3,1\n2,4,0\n");
}

TEST_CASE("csv") {
  SUBCASE("header only") {
    CsvTable t{{"a", "b"}, {}};
    CHECK(to_csv(t) == "a,b\n");
    CHECK(parse_csv(to_csv(t)) == t);
  }
  SUBCASE("one record") {
    CsvTable t{{"a", "b"}, {{"1", "2"}}};
    CHECK(to_csv(t) == "a,b\n1,2\n");
  }
  SUBCASE("quoting round trip") {
    CsvTable t{{"text", "n"}, {{"has,comma", "1"}, {"has \"quotes\"", "2"}, {"two\nlines", "3"}, {"", "4"}}};
    const std::string s = to_csv(t);
    CHECK(s.find("\"has,comma\"") != std::string::npos);
    CHECK(s.find("\"has \"\"quotes\"\"\"") != std::string::npos);
    CHECK(parse_csv(s) == t);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(to_csv(CsvTable{{"a"}, {{"1", "2"}}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("a\n\"open\n"), std::invalid_argument);
    CHECK_THROWS_AS(write_csv(CsvTable{{"a"}, {}}, "/nonexistent-dir/x.csv"), std::runtime_error);
  }
  SUBCASE("files are byte identical") {
    const auto dir = std::filesystem::temp_directory_path();
    const CsvTable t{{"x", "y"}, {{"0.1", "2"}, {"3", "a,b"}}};
    write_csv(t, dir / "sfv_csv_a.csv");
    write_csv(t, dir / "sfv_csv_b.csv");
    CHECK(slurp(dir / "sfv_csv_a.csv") == slurp(dir / "sfv_csv_b.csv"));
    CHECK(read_csv(dir / "sfv_csv_a.csv") == t);
  }
  SUBCASE("doubles") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-6) == "1e-06");
    CHECK(format_double(250.0) == "250");
    for (const double v : {0.1 + 0.2, 1.0 / 3.0, 6.02e23, -4.5e-300}) {
      REQUIRE(parse_double(format_double(v)) == v);
    }
    CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
  }
}

TEST_CASE("scenario config files") {
  const Scenario sc = parse_scenario_config(
      "# desk\nclusters = 2\nnodes_per_cluster=20  # inline\n\nradio_ranges = 200, 260\nsfv_mode = sfv-ranging\n"
      "p_i = 0.5\nm_blocks = 6\n");
  CHECK(sc.clusters == 2);
  CHECK(sc.nodes_per_cluster == 20);
  CHECK(sc.radio_ranges == std::vector<double>{200, 260});
  CHECK(sc.sfv_mode == SfvMode::kSfvRanging);
  CHECK(sc.replay.p_i == 0.5);
  CHECK(sc.handshake.m_blocks == 6);
  CHECK(sc.tx_rate_kbps == 200.0);

  Scenario odd = sc;
  odd.tick = 0.002;
  odd.measurement_noise = 0.3;
  const Scenario back = parse_scenario_config(format_scenario_config(odd));
  CHECK(format_scenario_config(back) == format_scenario_config(odd));
  CHECK(scenario_config_keys().size() == 35);

  auto error_of = [](const char* text) {
    try {
      parse_scenario_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(error_of("clusters = 2\nwarp = 9\n").find("line 2") != std::string::npos);
  CHECK(error_of("clusters 2\n").find("line 1") != std::string::npos);
  CHECK(error_of("tx_rate = fast\n").find("expected a number") != std::string::npos);
  CHECK(error_of("clusters = 2.5\n").find("integer") != std::string::npos);
  CHECK(error_of("tx_rate =\n").find("missing value") != std::string::npos);
  CHECK(error_of("speed_min = 80\n") != "");
  CHECK_THROWS_AS(load_scenario_config("/nonexistent.conf"), ConfigError);
  CHECK(parse_number_list(" 1, 2.5 ,3") == std::vector<double>{1, 2.5, 3});
  CHECK_THROWS_AS(parse_number_list("1,,2"), ConfigError);
}
