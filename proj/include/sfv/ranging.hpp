// ToA/ToD ranging, RTT, threshold validation and power-stepped scanning.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfv/core.hpp"

namespace sfv {

struct TimestampSet {
  std::vector<std::pair<double, double>> pairs;  // (toa, tod), seconds
  double t1 = 0.0;                               // send time
  double t2 = 0.0;                               // response receipt time
};

struct DistanceEstimate {
  double meters = 0.0;
  bool clamped = false;  // mean time difference was negative
};

/// c * mean(tod - toa). Throws std::invalid_argument on an empty pair list.
DistanceEstimate radial_distance(const TimestampSet& ts);

/// Elapsed t2 - t1. Throws std::invalid_argument when t2 < t1.
double round_trip_time(const TimestampSet& ts);

inline constexpr double kDefaultProcessingBudget = 5e-6;
inline constexpr double kDefaultAoaHalfwidth = 45.0;

/// 2 * d_max / c + processing budget.
double rtt_max_for(double d_max, double processing_budget = kDefaultProcessingBudget);

/// Shortest angular separation in degrees, in [0, 180].
double angular_distance(double a, double b);

enum class ThresholdCheck { kDistance, kRtt, kAoa };

std::string to_string(ThresholdCheck check);

struct ValidationResult {
  std::vector<ThresholdCheck> failed;

  bool passed() const { return failed.empty(); }
  bool failed_check(ThresholdCheck c) const;
};

ValidationResult validate_evidence(const RangingEvidence& ev);

enum class ScanMode { kRanging, kNonRanging };

struct ScanPlan {
  std::vector<double> ranges{230.0, 250.0, 270.0};
  ScanMode mode = ScanMode::kRanging;

  /// Throws ConfigError unless ranges are non-empty and strictly increasing.
  void validate() const;
};

struct ScanResult {
  std::optional<double> selected_range;
  int attempts = 0;

  bool found() const { return selected_range.has_value(); }
};

ScanResult scan_for_neighbor(const ScanPlan& plan, double true_distance);

}  // namespace sfv
