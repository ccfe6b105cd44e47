#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "swapnet/rng.hpp"
#include "swapnet/tags.hpp"

namespace swapnet {

struct DetectorParams {
  double efficiency = 1.0;
  double jitter_sigma_ps = 0.0;
  double dead_time_ps = 0.0;
  double dark_rate_hz = 0.0;
  std::uint16_t channel = 0;

  void check() const {
    if (efficiency < 0.0 || efficiency > 1.0)
      throw std::invalid_argument("DetectorParams: efficiency must be in [0,1]");
    if (jitter_sigma_ps < 0.0) throw std::invalid_argument("DetectorParams: jitter must be >= 0");
    if (dead_time_ps < 0.0) throw std::invalid_argument("DetectorParams: dead_time must be >= 0");
    if (dark_rate_hz < 0.0) throw std::invalid_argument("DetectorParams: dark_rate must be >= 0");
  }
};

/// Non-paralyzable dead time on an already sorted stream: a tag arriving
/// within dead_time after the last accepted tag is dropped and does not
/// extend the blocking window.
inline std::vector<TimeTagRecord> apply_dead_time(std::vector<TimeTagRecord> tags,
                                                  double dead_time_ps) {
  if (tags.empty() || dead_time_ps <= 0.0) return tags;
  const auto dead = static_cast<std::uint64_t>(dead_time_ps);
  std::size_t n = 0;
  std::uint64_t last = 0;
  bool have_last = false;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (have_last && tags[i].timestamp_ps < last + dead) continue;
    last = tags[i].timestamp_ps;
    have_last = true;
    tags[n++] = tags[i];
  }
  tags.resize(n);
  return tags;
}

/// Convert photon arrivals on one detector into time tags: Bernoulli
/// efficiency, Gaussian jitter, Poisson dark counts over [t_start, t_end),
/// then non-paralyzable dead time on the merged sorted stream.
/// `extra_jitter_sigma_ps` folds in the node clock's per-tag sync noise.
inline std::vector<TimeTagRecord> detect(const std::vector<std::int64_t>& arrivals,
                                         const DetectorParams& params, std::int64_t t_start_ps,
                                         std::int64_t t_end_ps, RandomStream& rng,
                                         double extra_jitter_sigma_ps = 0.0,
                                         std::int64_t clock_offset_ps = 0) {
  params.check();
  const double sigma =
      std::sqrt(params.jitter_sigma_ps * params.jitter_sigma_ps +
                extra_jitter_sigma_ps * extra_jitter_sigma_ps);
  std::vector<TimeTagRecord> tags;
  tags.reserve(arrivals.size() + 64);
  std::int64_t prev = std::numeric_limits<std::int64_t>::min();
  for (std::int64_t t : arrivals) {
    if (t < prev) throw std::invalid_argument("detect: arrivals not time-sorted");
    prev = t;
    if (!rng.bernoulli(params.efficiency)) continue;
    std::int64_t stamped = t + clock_offset_ps;
    if (sigma > 0.0) stamped += static_cast<std::int64_t>(std::llround(rng.normal(sigma)));
    tags.push_back(TimeTagRecord{static_cast<std::uint64_t>(stamped), params.channel, 0, 0});
  }
  // Dark counts: homogeneous Poisson process over the acquisition span.
  if (params.dark_rate_hz > 0.0 && t_end_ps > t_start_ps) {
    const double mean_gap = kPsPerSecond / params.dark_rate_hz;
    double t = 0.0;
    const double span = static_cast<double>(t_end_ps - t_start_ps);
    for (;;) {
      t += rng.exponential(mean_gap);
      if (t >= span) break;
      const std::int64_t stamped =
          t_start_ps + static_cast<std::int64_t>(std::llround(t)) + clock_offset_ps;
      tags.push_back(TimeTagRecord{static_cast<std::uint64_t>(stamped), params.channel,
                                   kFlagDarkCount, 0});
    }
  }
  std::sort(tags.begin(), tags.end(), [](const TimeTagRecord& a, const TimeTagRecord& b) {
    return a.timestamp_ps < b.timestamp_ps || (a.timestamp_ps == b.timestamp_ps && a.flags < b.flags);
  });
  if (params.dead_time_ps > 0.0) tags = apply_dead_time(std::move(tags), params.dead_time_ps);
  return tags;
}

}  // namespace swapnet
