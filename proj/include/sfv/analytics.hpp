// Closed-form detection model, exact key-space arithmetic, analytic vs
// empirical comparison, parameter sweeps and their CSV reports.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sfv/adversary.hpp"
#include "sfv/csv.hpp"
#include "sfv/simulator.hpp"

namespace sfv {

/// Detection probability the comparison harness calibrates to by default.
inline constexpr double kCalibratedDetection = 0.35;

struct DetectionModel {
  double p_wh = 0.0;
  double p_i = 0.0;
  double p_r = 0.0;
  int n_ids = 1;

  void validate() const;
  ReplayProfile profile() const { return {p_wh, p_i, p_r}; }
  static DetectionModel calibrated(double detection, int n_ids);
};

/// P = (1 - p_wh)(1 - p_i)(1 - p_r)
double detection_probability(const DetectionModel& m);
/// P_dr = 1 - (1 - P)^n
double detection_rate(const DetectionModel& m);

using BigInt = boost::multiprecision::cpp_int;

/// 2^bits. Throws std::invalid_argument for bits < 1.
BigInt keyspace_size(unsigned bits);
/// 2^(bits - 1): the expected number of trials of an exhaustive search.
BigInt brute_force_average(unsigned bits);
std::string to_decimal(const BigInt& value);
/// Rounded scientific rendering with `significant` digits, e.g.
/// "1.237940039e27".
std::string scientific(const BigInt& value, int significant);

struct ComparisonRow {
  int n_ids = 1;
  double analytic = 0.0;
  double empirical = 0.0;
  double abs_gap = 0.0;
  double sigma = 0.0;  // binomial standard deviation at the analytic rate
  std::uint64_t attempts = 0;

  bool within_sigmas(double k) const { return abs_gap <= k * sigma; }
};

/// For each n in `n_values`, runs `attempts` simulated attacker attempts
/// and pairs the empirical detection fraction with the closed form.
std::vector<ComparisonRow> compare_analytic_empirical(const DetectionModel& base, const std::vector<int>& n_values,
                                                      std::uint64_t attempts, const HandshakeConfig& cfg,
                                                      std::uint64_t seed);

enum class SweepVariable { kTxRate, kNodeSpeed, kNIds };

std::string to_string(SweepVariable v);
SweepVariable parse_sweep_variable(const std::string& text);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kTxRate;
  std::vector<double> values;
  int repetitions = 1;

  /// Values must be non-empty and strictly monotone; n_ids values must be
  /// positive integers.
  void validate() const;
};

struct SweepRecord {
  double value = 0.0;
  SfvMode mode = SfvMode::kOff;
  int repetition = 0;
  std::uint64_t seed = 0;
  ScenarioMetrics metrics;
};

/// Applies a sweep value to a scenario (tx_rate, or a fixed node speed).
Scenario apply_sweep_value(Scenario sc, SweepVariable variable, double value);

/// Runs every (value, mode, repetition) point; repetition r uses seed
/// base.master_seed + r. Points run in parallel on `threads` workers
/// (0 = hardware concurrency); the result order is fixed.
std::vector<SweepRecord> run_sweep(const Scenario& base, const SweepSpec& spec, const std::vector<SfvMode>& modes,
                                   unsigned threads = 0);

CsvTable metrics_table(const ScenarioMetrics& m, const Scenario& sc);
CsvTable cluster_table(const ScenarioMetrics& m);
CsvTable sweep_table(const std::vector<SweepRecord>& records, SweepVariable variable);
/// Per (value, mode) means over repetitions.
CsvTable sweep_summary_table(const std::vector<SweepRecord>& records, SweepVariable variable);
CsvTable comparison_table(const std::vector<ComparisonRow>& rows);
CsvTable detection_table(const DetectionModel& base, int n_max);
CsvTable keyspace_table(unsigned bits);

}  // namespace sfv
