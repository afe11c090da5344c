#include "sfv/ranging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfv {

DistanceEstimate radial_distance(const TimestampSet& ts) {
  if (ts.pairs.empty()) {
    throw std::invalid_argument("radial_distance needs at least one (toa, tod) pair");
  }
  double sum = 0.0;
  for (const auto& [toa, tod] : ts.pairs) {
    sum += tod - toa;
  }
  const double mean = sum / static_cast<double>(ts.pairs.size());
  if (mean < 0.0) {
    return {0.0, true};
  }
  return {kSpeedOfLight * mean, false};
}

double round_trip_time(const TimestampSet& ts) {
  if (ts.t2 < ts.t1) {
    throw std::invalid_argument("response receipt precedes transmission (t2 < t1)");
  }
  return ts.t2 - ts.t1;
}

double rtt_max_for(double d_max, double processing_budget) {
  return 2.0 * d_max / kSpeedOfLight + processing_budget;
}

double angular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

std::string to_string(ThresholdCheck check) {
  switch (check) {
    case ThresholdCheck::kDistance:
      return "threshold-distance";
    case ThresholdCheck::kRtt:
      return "threshold-rtt";
    case ThresholdCheck::kAoa:
      return "threshold-aoa";
  }
  return "threshold-unknown";
}

bool ValidationResult::failed_check(ThresholdCheck c) const {
  return std::find(failed.begin(), failed.end(), c) != failed.end();
}

ValidationResult validate_evidence(const RangingEvidence& ev) {
  ValidationResult r;
  if (!(ev.d_radial <= ev.d_max)) {
    r.failed.push_back(ThresholdCheck::kDistance);
  }
  if (!(ev.rtt <= ev.rtt_max)) {
    r.failed.push_back(ThresholdCheck::kRtt);
  }
  if (!(angular_distance(ev.aoa, ev.aoa_center) <= ev.aoa_halfwidth)) {
    r.failed.push_back(ThresholdCheck::kAoa);
  }
  return r;
}

void ScanPlan::validate() const {
  if (ranges.empty()) {
    throw ConfigError("scan plan needs at least one range");
  }
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (!(ranges[i] > 0.0) || (i > 0 && !(ranges[i] > ranges[i - 1]))) {
      throw ConfigError("scan ranges must be positive and strictly increasing");
    }
  }
}

ScanResult scan_for_neighbor(const ScanPlan& plan, double true_distance) {
  if (plan.mode == ScanMode::kNonRanging) {
    const double full = plan.ranges.back();
    if (true_distance <= full) {
      return {full, 1};
    }
    return {std::nullopt, 1};
  }
  int attempts = 0;
  for (const double range : plan.ranges) {
    ++attempts;
    if (true_distance <= range) {
      return {range, attempts};
    }
  }
  return {std::nullopt, attempts};
}

}  // namespace sfv
