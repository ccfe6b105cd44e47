#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "swapnet/polarization.hpp"
#include "swapnet/rng.hpp"

namespace swapnet {

/// One biphoton source: continuous-wave Poisson pair emission, signal-idler
/// delay drawn from a symmetric double exponential with scale coherence_time.
struct SourceParams {
  double pair_rate_hz = 0.0;        ///< pairs per second at the source output
  double coherence_time_ps = 0.0;   ///< scale of the signal-idler delay profile
  TwoQubitState emitted_state = bell_state(BellKind::PhiPlus);  ///< (signal, idler)
  std::string label = "S";

  void check() const {
    if (!(pair_rate_hz > 0.0)) throw std::invalid_argument("SourceParams: pair_rate must be > 0");
    if (!(coherence_time_ps > 0.0))
      throw std::invalid_argument("SourceParams: coherence_time must be > 0");
  }
};

/// One pair emission.  Times in integer picoseconds; the polarization state is
/// shared per source, so emissions carry only the source index.
struct PairEmission {
  std::int64_t t_idler_ps = 0;
  std::int64_t t_signal_ps = 0;
  std::uint8_t source = 0;
};

constexpr double kPsPerSecond = 1e12;

/// Coherence time (ps) that makes the signal-idler cross-correlation peak hit
/// g2_peak at this pair rate: g2(0) = 1 + 1/(2 R tau) for the double-exponential
/// delay profile, hence tau = 1 / (2 R (g2_peak - 1)).
inline double coherence_time_for_g2(double pair_rate_hz, double g2_peak) {
  if (!(pair_rate_hz > 0.0))
    throw std::invalid_argument("coherence_time_for_g2: pair_rate must be > 0");
  if (!(g2_peak > 1.0)) throw std::invalid_argument("coherence_time_for_g2: g2_peak must be > 1");
  return kPsPerSecond / (2.0 * pair_rate_hz * (g2_peak - 1.0));
}

/// Analytic signal-idler cross-correlation at delay tau (ps):
/// g2(tau) = 1 + exp(-|tau|/tau_c) / (2 R tau_c).
inline double expected_g2(const SourceParams& p, double tau_ps) {
  const double rt = p.pair_rate_hz / kPsPerSecond;  // pairs per ps
  return 1.0 + std::exp(-std::abs(tau_ps) / p.coherence_time_ps) /
                   (2.0 * rt * p.coherence_time_ps);
}

/// Emissions on [t_start, t_end): idler times are a homogeneous Poisson
/// process, signal = idler + Laplace(coherence_time) delay.  Sorted by idler
/// time; bit-identical for a given rng state.
inline std::vector<PairEmission> sample_emissions(const SourceParams& params,
                                                  std::int64_t t_start_ps, std::int64_t t_end_ps,
                                                  RandomStream& rng, std::uint8_t source_index = 0) {
  if (t_end_ps < t_start_ps) throw std::invalid_argument("sample_emissions: t_end < t_start");
  params.check();
  std::vector<PairEmission> out;
  const double span = static_cast<double>(t_end_ps - t_start_ps);
  const double mean_gap_ps = kPsPerSecond / params.pair_rate_hz;
  out.reserve(static_cast<std::size_t>(span / mean_gap_ps * 1.02) + 16);
  double t = 0.0;  // offset from t_start, accumulated in double (per-interval spans stay small)
  for (;;) {
    t += rng.exponential(mean_gap_ps);
    if (t >= span) break;
    const double d = rng.laplace(params.coherence_time_ps);
    PairEmission e;
    e.t_idler_ps = t_start_ps + static_cast<std::int64_t>(std::llround(t));
    e.t_signal_ps = e.t_idler_ps + static_cast<std::int64_t>(std::llround(d));
    e.source = source_index;
    out.push_back(e);
  }
  return out;
}

}  // namespace swapnet
