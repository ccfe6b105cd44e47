#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace swapnet {

/// splitmix64 round; used to decorrelate derived seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d49bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Deterministic per-purpose seed: master seed hashed with a stream label and
/// an index (dwell number, channel id, ...).  Reruns with the same master seed
/// reproduce every stream bit for bit.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                 std::uint64_t index = 0) {
  return mix64(master ^ mix64(fnv1a(label)) ^ mix64(0x51a3c0de00000000ull + index));
}

/// Seeded random stream with explicit samplers.  The samplers are written out
/// here (instead of std:: distributions) so that a given seed yields the same
/// sequence on every standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe as a log() argument.
  double uniform_pos() { return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  double exponential(double mean) { return -mean * std::log(uniform_pos()); }

  /// Symmetric double-exponential with scale b (mean |x| = b).
  double laplace(double scale) {
    const double u = uniform() - 0.5;
    const double s = (u < 0.0) ? -1.0 : 1.0;
    return -s * scale * std::log1p(-2.0 * std::abs(u) * (1.0 - 1e-17));
  }

  double normal(double sigma = 1.0) {
    if (have_spare_) {
      have_spare_ = false;
      return spare_ * sigma;
    }
    double u1 = uniform_pos();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a) * sigma;
  }

  /// Poisson count with the given mean; inversion for small means, PTRS-style
  /// transformed rejection for large ones.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) {
      const double l = std::exp(-mean);
      std::uint64_t k = 0;
      double p = 1.0;
      do {
        ++k;
        p *= uniform();
      } while (p > l);
      return k - 1;
    }
    // Transformed rejection (Hörmann); exact for large means.
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      double u = uniform() - 0.5;
      double v = uniform();
      double us = 0.5 - std::abs(u);
      double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
      if (k < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          k * std::log(mean) - mean - std::lgamma(k + 1.0)) {
        return static_cast<std::uint64_t>(k);
      }
    }
  }

  /// Uniformly random unit vector (for drift rotation axes).
  void unit_vector(double& x, double& y, double& z) {
    const double ct = 2.0 * uniform() - 1.0;
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double ph = 2.0 * std::numbers::pi * uniform();
    x = st * std::cos(ph);
    y = st * std::sin(ph);
    z = ct;
  }

  /// Pick an index from a small discrete distribution given its (possibly
  /// unnormalized) weights.
  template <typename It>
  std::size_t categorical(It first, It last) {
    double total = 0.0;
    for (It it = first; it != last; ++it) total += *it;
    double x = uniform() * total;
    std::size_t idx = 0;
    for (It it = first; it != last; ++it, ++idx) {
      x -= *it;
      if (x <= 0.0) return idx;
    }
    return idx - 1;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace swapnet
