#include "sfv/analytics.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace sfv {

void DetectionModel::validate() const {
  profile().validate();
  if (n_ids < 1) {
    throw ConfigError("n_ids must be at least 1");
  }
}

DetectionModel DetectionModel::calibrated(double detection, int n_ids) {
  const ReplayProfile p = ReplayProfile::for_detection_probability(detection);
  return {p.p_wh, p.p_i, p.p_r, n_ids};
}

double detection_probability(const DetectionModel& m) {
  m.validate();
  return (1.0 - m.p_wh) * (1.0 - m.p_i) * (1.0 - m.p_r);
}

double detection_rate(const DetectionModel& m) {
  const double p = detection_probability(m);
  return 1.0 - std::pow(1.0 - p, m.n_ids);
}

BigInt keyspace_size(unsigned bits) {
  if (bits < 1) {
    throw std::invalid_argument("key length must be at least one bit");
  }
  return BigInt{1} << bits;
}

BigInt brute_force_average(unsigned bits) { return keyspace_size(bits) >> 1; }

std::string to_decimal(const BigInt& value) { return value.str(); }

std::string scientific(const BigInt& value, int significant) {
  if (significant < 1) {
    throw std::invalid_argument("need at least one significant digit");
  }
  std::string digits = value.str();
  if (digits == "0") {
    return "0e0";
  }
  int exponent = static_cast<int>(digits.size()) - 1;
  if (static_cast<int>(digits.size()) > significant) {
    // Round half up on the exact decimal expansion.
    BigInt scale = 1;
    for (std::size_t i = 0; i < digits.size() - static_cast<std::size_t>(significant); ++i) {
      scale *= 10;
    }
    const BigInt rounded = (value + scale / 2) / scale;
    digits = rounded.str();
    if (static_cast<int>(digits.size()) > significant) {
      ++exponent;
      digits.resize(static_cast<std::size_t>(significant));
    }
  }
  digits.resize(static_cast<std::size_t>(significant), '0');
  std::string out(1, digits[0]);
  if (digits.size() > 1) {
    out += '.';
    out += digits.substr(1);
  }
  out += 'e';
  out += std::to_string(exponent);
  return out;
}

std::vector<ComparisonRow> compare_analytic_empirical(const DetectionModel& base, const std::vector<int>& n_values,
                                                      std::uint64_t attempts, const HandshakeConfig& cfg,
                                                      std::uint64_t seed) {
  std::vector<ComparisonRow> rows;
  for (const int n : n_values) {
    DetectionModel m = base;
    m.n_ids = n;
    m.validate();
    ComparisonRow row;
    row.n_ids = n;
    row.attempts = attempts;
    row.analytic = detection_rate(m);
    const DetectionTally tally = run_detection_trials(m.profile(), n, attempts, cfg, seed + static_cast<std::uint64_t>(n));
    row.empirical = tally.rate();
    row.abs_gap = std::abs(row.empirical - row.analytic);
    row.sigma = attempts == 0 ? 0.0 : std::sqrt(row.analytic * (1.0 - row.analytic) / static_cast<double>(attempts));
    rows.push_back(row);
  }
  return rows;
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::kTxRate:
      return "tx_rate";
    case SweepVariable::kNodeSpeed:
      return "node_speed";
    case SweepVariable::kNIds:
      return "n_ids";
  }
  return "unknown";
}

SweepVariable parse_sweep_variable(const std::string& text) {
  if (text == "tx_rate") return SweepVariable::kTxRate;
  if (text == "node_speed") return SweepVariable::kNodeSpeed;
  if (text == "n_ids") return SweepVariable::kNIds;
  throw ConfigError("unknown sweep variable '" + text + "' (expected tx_rate, node_speed or n_ids)");
}

void SweepSpec::validate() const {
  if (values.empty()) {
    throw ConfigError("sweep needs at least one value");
  }
  if (repetitions < 1) {
    throw ConfigError("sweep repetitions must be at least 1");
  }
  bool increasing = true;
  bool decreasing = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    increasing = increasing && values[i] > values[i - 1];
    decreasing = decreasing && values[i] < values[i - 1];
  }
  if (!increasing && !decreasing) {
    throw ConfigError("sweep values must be strictly monotone");
  }
  if (variable == SweepVariable::kNIds) {
    for (const double v : values) {
      if (!(v >= 1.0) || v != std::floor(v)) {
        throw ConfigError("n_ids sweep values must be positive integers");
      }
    }
  }
}

Scenario apply_sweep_value(Scenario sc, SweepVariable variable, double value) {
  switch (variable) {
    case SweepVariable::kTxRate:
      sc.tx_rate_kbps = value;
      break;
    case SweepVariable::kNodeSpeed:
      sc.speed_min = value;
      sc.speed_max = value;
      break;
    case SweepVariable::kNIds:
      sc.n_ids = static_cast<int>(value);
      break;
  }
  return sc;
}

std::vector<SweepRecord> run_sweep(const Scenario& base, const SweepSpec& spec, const std::vector<SfvMode>& modes,
                                   unsigned threads) {
  spec.validate();
  if (modes.empty()) {
    throw ConfigError("sweep needs at least one mode");
  }
  std::vector<SweepRecord> records;
  for (const double value : spec.values) {
    for (const SfvMode mode : modes) {
      for (int r = 0; r < spec.repetitions; ++r) {
        SweepRecord rec;
        rec.value = value;
        rec.mode = mode;
        rec.repetition = r;
        rec.seed = base.master_seed + static_cast<std::uint64_t>(r);
        records.push_back(rec);
      }
    }
  }
  // Validate every point before starting any work.
  std::vector<Scenario> scenarios;
  scenarios.reserve(records.size());
  for (const SweepRecord& rec : records) {
    Scenario sc = apply_sweep_value(base, spec.variable, rec.value);
    sc.sfv_mode = rec.mode;
    sc.master_seed = rec.seed;
    sc.validate();
    scenarios.push_back(std::move(sc));
  }

  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min<unsigned>(threads, static_cast<unsigned>(records.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (std::size_t i = next++; i < records.size(); i = next++) {
      try {
        records[i].metrics = run_scenario(scenarios[i], scenarios[i].duration);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return records;
}

namespace {

std::vector<std::string> metric_columns() {
  return {"throughput_kbps", "offered_kbps", "mean_delay_s", "pdr", "generated", "delivered",
          "dropped_queue", "dropped_range", "in_flight", "handshakes", "handshakes_failed"};
}

void append_metrics(std::vector<std::string>& row, const ScenarioMetrics& m) {
  row.push_back(format_double(m.aggregate_throughput_kbps));
  row.push_back(format_double(m.offered_load_kbps));
  row.push_back(format_double(m.mean_delay_s));
  row.push_back(format_double(m.pdr));
  row.push_back(std::to_string(m.generated));
  row.push_back(std::to_string(m.delivered));
  row.push_back(std::to_string(m.dropped_queue));
  row.push_back(std::to_string(m.dropped_range));
  row.push_back(std::to_string(m.in_flight));
  row.push_back(std::to_string(m.handshakes));
  row.push_back(std::to_string(m.handshakes_failed));
}

}  // namespace

CsvTable metrics_table(const ScenarioMetrics& m, const Scenario& sc) {
  CsvTable t;
  t.header = {"mode", "seed", "duration_s"};
  for (auto& c : metric_columns()) {
    t.header.push_back(c);
  }
  for (const char* c : {"zero_generated", "attacker_handshakes", "attacker_detected", "empirical_detection_rate"}) {
    t.header.emplace_back(c);
  }
  std::vector<std::string> row{to_string(sc.sfv_mode), std::to_string(sc.master_seed), format_double(sc.duration)};
  append_metrics(row, m);
  row.push_back(m.zero_generated ? "1" : "0");
  row.push_back(std::to_string(m.attacker_handshakes));
  row.push_back(std::to_string(m.attacker_detected));
  row.push_back(format_double(m.empirical_detection_rate));
  t.rows.push_back(std::move(row));
  return t;
}

CsvTable cluster_table(const ScenarioMetrics& m) {
  CsvTable t;
  t.header = {"cluster", "friendly", "suspicious"};
  for (std::size_t c = 0; c < m.clusters.size(); ++c) {
    t.rows.push_back({std::to_string(c + 1), std::to_string(m.clusters[c].friendly),
                      std::to_string(m.clusters[c].suspicious)});
  }
  return t;
}

CsvTable sweep_table(const std::vector<SweepRecord>& records, SweepVariable variable) {
  CsvTable t;
  t.header = {"variable", "value", "mode", "repetition", "seed"};
  for (auto& c : metric_columns()) {
    t.header.push_back(c);
  }
  for (const SweepRecord& rec : records) {
    std::vector<std::string> row{to_string(variable), format_double(rec.value), to_string(rec.mode),
                                 std::to_string(rec.repetition), std::to_string(rec.seed)};
    append_metrics(row, rec.metrics);
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable sweep_summary_table(const std::vector<SweepRecord>& records, SweepVariable variable) {
  struct Acc {
    int n = 0;
    double throughput = 0.0;
    double delay = 0.0;
    double pdr = 0.0;
  };
  std::vector<std::pair<double, SfvMode>> order;
  std::map<std::pair<double, int>, Acc> acc;
  for (const SweepRecord& rec : records) {
    const auto key = std::make_pair(rec.value, static_cast<int>(rec.mode));
    if (!acc.contains(key)) {
      order.emplace_back(rec.value, rec.mode);
    }
    Acc& a = acc[key];
    ++a.n;
    a.throughput += rec.metrics.aggregate_throughput_kbps;
    a.delay += rec.metrics.mean_delay_s;
    a.pdr += rec.metrics.pdr;
  }
  CsvTable t;
  t.header = {"variable", "value", "mode", "repetitions", "throughput_kbps_mean", "mean_delay_s_mean", "pdr_mean"};
  for (const auto& [value, mode] : order) {
    const Acc& a = acc[{value, static_cast<int>(mode)}];
    t.rows.push_back({to_string(variable), format_double(value), to_string(mode), std::to_string(a.n),
                      format_double(a.throughput / a.n), format_double(a.delay / a.n), format_double(a.pdr / a.n)});
  }
  return t;
}

CsvTable comparison_table(const std::vector<ComparisonRow>& rows) {
  CsvTable t;
  t.header = {"n_ids", "analytic_pdr", "empirical_rate", "abs_gap", "sigma", "attempts"};
  for (const ComparisonRow& r : rows) {
    t.rows.push_back({std::to_string(r.n_ids), format_double(r.analytic), format_double(r.empirical),
                      format_double(r.abs_gap), format_double(r.sigma), std::to_string(r.attempts)});
  }
  return t;
}

CsvTable detection_table(const DetectionModel& base, int n_max) {
  if (n_max < 1) {
    throw ConfigError("n_max must be at least 1");
  }
  CsvTable t;
  t.header = {"p_wh", "p_i", "p_r", "detection_probability", "n_ids", "detection_rate"};
  for (int n = 1; n <= n_max; ++n) {
    DetectionModel m = base;
    m.n_ids = n;
    t.rows.push_back({format_double(m.p_wh), format_double(m.p_i), format_double(m.p_r),
                      format_double(detection_probability(m)), std::to_string(n), format_double(detection_rate(m))});
  }
  return t;
}

CsvTable keyspace_table(unsigned bits) {
  CsvTable t;
  t.header = {"bits", "keyspace", "keyspace_scientific", "brute_force_average"};
  const BigInt size = keyspace_size(bits);
  t.rows.push_back({std::to_string(bits), to_decimal(size), scientific(size, 10),
                    to_decimal(brute_force_average(bits))});
  return t;
}

}  // namespace sfv
