#pragma once

// Parameter partitions: regular, repeating-weight pattern, jittered.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sigcurve/error.hpp"
#include "sigcurve/random.hpp"

namespace sigcurve {

enum class PartitionKind { Regular, Pattern, Jitter };

constexpr std::string_view to_string(PartitionKind k) noexcept {
  switch (k) {
    case PartitionKind::Regular: return "regular";
    case PartitionKind::Pattern: return "pattern";
    case PartitionKind::Jitter: return "jitter";
  }
  return "?";
}

struct PartitionSpec {
  PartitionKind kind = PartitionKind::Regular;
  double dt = 0.1;
  double t_lo = 0.0;
  double t_hi = 1.0;
  /// Step multipliers cycled by Pattern partitions.
  std::vector<double> weights = {1.0, 0.5, 1.0 / 3.0};
  /// Jitter: each interior point moves by up to amplitude * dt (< 0.5).
  double amplitude = 0.25;
  std::uint64_t seed = 1;

  double min_weight() const {
    return kind == PartitionKind::Pattern ? *std::min_element(weights.begin(), weights.end())
                                          : 1.0;
  }
  double max_weight() const {
    return kind == PartitionKind::Pattern ? *std::max_element(weights.begin(), weights.end())
                                          : 1.0;
  }
};

namespace detail {

inline void validate(const PartitionSpec& s) {
  if (!std::isfinite(s.t_lo) || !std::isfinite(s.t_hi) || !(s.t_hi > s.t_lo)) {
    throw SignatureError(ErrorCode::EmptyRange, "partition range is empty");
  }
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) {
    throw SignatureError(ErrorCode::InvalidArgument, "partition step must be positive");
  }
  if (s.kind == PartitionKind::Pattern) {
    if (s.weights.empty()) {
      throw SignatureError(ErrorCode::InvalidArgument, "pattern needs at least one weight");
    }
    for (const double w : s.weights) {
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw SignatureError(ErrorCode::InvalidArgument, "pattern weights must be positive");
      }
    }
  }
  if (s.kind == PartitionKind::Jitter && !(s.amplitude >= 0.0 && s.amplitude < 0.5)) {
    throw SignatureError(ErrorCode::InvalidArgument, "jitter amplitude must lie in [0, 0.5)");
  }
}

}  // namespace detail

/// Strictly increasing parameters from t_lo to t_hi. The step that would
/// overshoot t_hi is clipped to land on it; a final point within 1e-9 dt of
/// t_hi is moved onto it instead of adding a sliver.
inline std::vector<double> generate_partition(const PartitionSpec& spec) {
  detail::validate(spec);
  const double eps = 1e-9 * spec.dt;
  std::vector<double> t;

  if (spec.kind == PartitionKind::Pattern) {
    // Accumulate cycle by cycle from cycle starts to bound rounding drift.
    double cycle = 0.0;
    for (const double w : spec.weights) cycle += w * spec.dt;
    double start = spec.t_lo;
    for (std::size_t c = 0;; ++c) {
      start = spec.t_lo + static_cast<double>(c) * cycle;
      double cur = start;
      bool done = false;
      for (const double w : spec.weights) {
        if (cur > spec.t_hi - eps) {
          done = true;
          break;
        }
        t.push_back(cur);
        cur += w * spec.dt;
      }
      if (done) break;
    }
  } else {
    for (std::size_t i = 0;; ++i) {
      const double cur = spec.t_lo + static_cast<double>(i) * spec.dt;
      if (cur > spec.t_hi - eps) break;
      t.push_back(cur);
    }
  }
  t.push_back(spec.t_hi);

  if (spec.kind == PartitionKind::Jitter) {
    CounterRng rng(spec.seed);
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      t[i] += spec.amplitude * spec.dt * (2.0 * rng.uniform() - 1.0);
    }
    // The clipped last gap may be short; keep the order strict.
    if (t.size() >= 3 && !(t[t.size() - 2] < t.back())) {
      t.erase(t.end() - 2);
    }
  }
  return t;
}

/// Partition of one period of a closed curve: t_hi is the same point as
/// t_lo and is dropped, and a trailing point closer to t_hi than half the
/// smallest step is dropped so the seam gap is not a sliver.
inline std::vector<double> generate_closed_partition(const PartitionSpec& spec) {
  auto t = generate_partition(spec);
  t.pop_back();
  const double min_gap = 0.5 * spec.dt * spec.min_weight();
  while (t.size() > 1 && spec.t_hi - t.back() < min_gap) t.pop_back();
  return t;
}

}  // namespace sigcurve
