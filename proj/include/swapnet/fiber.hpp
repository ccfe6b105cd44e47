#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "swapnet/polarization.hpp"
#include "swapnet/rng.hpp"

namespace swapnet {

/// Standard single-mode fiber group delay used when a delay is derived from
/// length: 4.9 us per km.
constexpr double kFiberDelayPsPerKm = 4.9e6;

struct FiberParams {
  double length_km = 0.0;
  double loss_db = 0.0;                 ///< total, connectors included
  double delay_ps = 0.0;                ///< if 0, derived from length
  double drift_rate_rad_per_sqrt_hour = 0.0;

  double effective_delay_ps() const {
    return delay_ps != 0.0 ? delay_ps : length_km * kFiberDelayPsPerKm;
  }
  void check() const {
    if (loss_db < 0.0) throw std::invalid_argument("FiberParams: loss must be >= 0");
    if (length_km < 0.0) throw std::invalid_argument("FiberParams: length must be >= 0");
    if (drift_rate_rad_per_sqrt_hour < 0.0)
      throw std::invalid_argument("FiberParams: drift_rate must be >= 0");
  }
};

struct ApcParams {
  bool enabled = false;
  double check_interval_s = 30.0;
  double tolerance_rad = 0.1;    ///< allowed rotation angle before a correction
  double insertion_loss_db = 2.0;

  void check() const {
    if (!(check_interval_s > 0.0)) throw std::invalid_argument("ApcParams: check_interval must be > 0");
    if (tolerance_rad < 0.0) throw std::invalid_argument("ApcParams: tolerance must be >= 0");
  }
};

/// Slowly varying polarization rotation of one link.
struct DriftState {
  PolarizationOperator current_rotation{};
  std::int64_t last_update_ps = 0;
};

/// Linear transmission through fiber plus (when enabled) the compensator's
/// insertion loss.
inline double transmission_probability(const FiberParams& fiber, const ApcParams& apc) {
  const double total_db = fiber.loss_db + (apc.enabled ? apc.insertion_loss_db : 0.0);
  return std::pow(10.0, -total_db / 10.0);
}

/// Rotation angle of the closest SU(2) rotation, recovered from the trace:
/// |tr U| = 2 |cos(angle/2)|, insensitive to global phase.
inline double rotation_angle(const PolarizationOperator& op) {
  double c = 0.5 * std::abs(op.u.trace());
  c = std::clamp(c, 0.0, 1.0);
  return 2.0 * std::acos(c);
}

constexpr double kPsPerHour = 3.6e15;

/// Advance the drift random walk to `now`: compose with a rotation about a
/// uniformly random axis whose angle is Gaussian with sigma =
/// drift_rate * sqrt(dt in hours).
inline DriftState step_drift(const DriftState& state, std::int64_t now_ps,
                             double drift_rate_rad_per_sqrt_hour, RandomStream& rng) {
  if (now_ps < state.last_update_ps) throw std::invalid_argument("step_drift: time went backwards");
  const double dt_hours = static_cast<double>(now_ps - state.last_update_ps) / kPsPerHour;
  if (dt_hours == 0.0 || drift_rate_rad_per_sqrt_hour == 0.0)
    return DriftState{state.current_rotation, now_ps};
  const double sigma = drift_rate_rad_per_sqrt_hour * std::sqrt(dt_hours);
  const double angle = rng.normal(sigma);
  double nx, ny, nz;
  rng.unit_vector(nx, ny, nz);
  const PolarizationOperator step = axis_rotation(angle, nx, ny, nz);
  return DriftState{PolarizationOperator{step.u * state.current_rotation.u}, now_ps};
}

/// One compensator check: reset to identity when the accumulated rotation
/// exceeds the tolerance.  Returns the new state and whether a correction
/// happened.  Scheduling on the check_interval grid is the caller's job.
inline std::pair<DriftState, bool> apc_cycle(const DriftState& state, const ApcParams& apc,
                                             std::int64_t now_ps) {
  if (apc.enabled && rotation_angle(state.current_rotation) > apc.tolerance_rad) {
    return {DriftState{PolarizationOperator{}, now_ps}, true};
  }
  return {DriftState{state.current_rotation, now_ps}, false};
}

/// Piecewise-constant rotation history of one link, advanced on a fixed grid
/// (dwell boundaries and APC checks).  Lookup returns the rotation in effect
/// at a given time.
struct DriftTimeline {
  std::vector<std::int64_t> t_ps;            // segment start times, ascending
  std::vector<PolarizationOperator> rot;     // rotation for [t_ps[i], t_ps[i+1])

  const PolarizationOperator& at(std::int64_t t) const {
    if (rot.empty()) {
      static const PolarizationOperator id{};
      return id;
    }
    auto it = std::upper_bound(t_ps.begin(), t_ps.end(), t);
    std::size_t idx = (it == t_ps.begin()) ? 0 : static_cast<std::size_t>(it - t_ps.begin() - 1);
    return rot[idx];
  }
};

/// A photon event moving through a link.
struct PhotonEvent {
  std::int64_t t_ps = 0;
  std::uint32_t tag = 0;  ///< caller-defined payload (emission index etc.)
};

/// Attenuate, delay and polarization-stamp a time-sorted photon stream.
/// Survivors keep their order; each carries the index of the drift segment in
/// effect at its transit time (so callers can fetch the rotation later).
struct TransmittedPhoton {
  std::int64_t t_ps = 0;    // arrival time (emission + delay)
  std::uint32_t tag = 0;
  std::uint32_t drift_segment = 0;
};

inline std::vector<TransmittedPhoton> transmit(const std::vector<PhotonEvent>& events,
                                               const FiberParams& fiber, const ApcParams& apc,
                                               const DriftTimeline& drift, RandomStream& rng) {
  const double p = transmission_probability(fiber, apc);
  const std::int64_t delay = static_cast<std::int64_t>(std::llround(fiber.effective_delay_ps()));
  std::vector<TransmittedPhoton> out;
  out.reserve(static_cast<std::size_t>(static_cast<double>(events.size()) * p * 1.05) + 16);
  std::size_t seg = 0;
  for (const auto& e : events) {
    if (!rng.bernoulli(p)) continue;
    while (seg + 1 < drift.t_ps.size() && drift.t_ps[seg + 1] <= e.t_ps) ++seg;
    out.push_back(TransmittedPhoton{e.t_ps + delay, e.tag, static_cast<std::uint32_t>(seg)});
  }
  return out;
}

}  // namespace swapnet
