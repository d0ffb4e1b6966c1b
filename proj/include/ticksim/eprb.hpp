#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>

#include "ticksim/rng.hpp"
#include "ticksim/types.hpp"

namespace ticksim {

/// Hidden oscillation of a spin eigenket: angular rate omega per tick unit,
/// phase phi (normalized into [0, 2pi)), and optionally the unknown real
/// duration of one tick in seconds. The canonical model has omega = 2pi
/// exactly, making the oscillation invisible on the tick grid.
class OscillationParams {
 public:
  static constexpr double kCanonicalOmega = 2 * std::numbers::pi;

  explicit OscillationParams(double omega = kCanonicalOmega, double phi = 0.0,
                             std::optional<double> tau_seconds = std::nullopt)
      : omega_(omega), phi_(normalize_phase(phi)), tau_seconds_(tau_seconds) {
    if (!(omega > 0.0)) throw DomainError("OscillationParams: omega must be > 0");
    if (tau_seconds && !(*tau_seconds > 0.0)) {
      throw DomainError("OscillationParams: tau_seconds must be > 0");
    }
  }

  double omega() const { return omega_; }
  double phi() const { return phi_; }
  std::optional<double> tau_seconds() const { return tau_seconds_; }

  static double normalize_phase(double phi) {
    const double two_pi = 2 * std::numbers::pi;
    double p = std::fmod(phi, two_pi);
    if (p < 0.0) p += two_pi;
    if (p >= two_pi) p = 0.0;  // fmod rounding at the boundary
    return p;
  }

 private:
  double omega_;
  double phi_;
  std::optional<double> tau_seconds_;
};

/// P(a+; b+) = sin^2(theta/2) for the singlet pair.
inline double p_standard(double theta) {
  const double s = std::sin(0.5 * theta);
  return s * s;
}

/// Discrete-time form sin^2(pi n + theta/2). sin^2 is pi-periodic, so the
/// integer multiple of pi drops out exactly: the value equals p_standard at
/// every tick, bit for bit, with no accumulated phase error at large n.
inline double p_discrete(double theta, TickTime n) {
  (void)n;
  return p_standard(theta);
}

/// Continuous oscillating form sin^2(omega t / 2 + phi + theta/2), with t in
/// tick units. At integer t with omega = 2pi and phi = 0 this reproduces
/// p_discrete; between ticks the probability sweeps its full range.
inline double p_continuous(double theta, double t, const OscillationParams& params) {
  const double s = std::sin(0.5 * params.omega() * t + params.phi() + 0.5 * theta);
  return s * s;
}

/// Spin-s form sin^2(2 pi s n + s theta). 2 pi s n is an integer multiple of
/// pi for any allowed s (2s integral), so it drops out of sin^2 exactly and
/// the value is sin^2(s theta) at every tick. Reduces to p_discrete at
/// s = 1/2; identically zero at s = 0 (rotations of a spin-0 system are
/// unobservable).
inline double p_spin_s(SpinQuantumNumber s, double theta, TickTime n) {
  (void)n;
  const double v = std::sin(s.value() * theta);
  return v * v;
}

/// Joint outcome law for the singlet pair, (sigma1, sigma2) in {+,-}^2.
/// Marginals are uniform by singlet symmetry, so each probability is half of
/// the matching conditional.
class JointDistribution {
 public:
  JointDistribution(double p_pp, double p_pm, double p_mp, double p_mm)
      : p_pp_(p_pp), p_pm_(p_pm), p_mp_(p_mp), p_mm_(p_mm) {
    const double entries[] = {p_pp, p_pm, p_mp, p_mm};
    for (double p : entries) {
      if (!(p >= 0.0 && p <= 1.0)) throw DomainError("JointDistribution: entry outside [0,1]");
    }
    const double sum = p_pp + p_pm + p_mp + p_mm;
    if (std::abs(sum - 1.0) > 1e-12) throw DomainError("JointDistribution: entries must sum to 1");
    if (std::abs(p_pp + p_pm - 0.5) > 1e-12 || std::abs(p_mp + p_mm - 0.5) > 1e-12) {
      throw DomainError("JointDistribution: marginals must be 1/2");
    }
  }

  double p_pp() const { return p_pp_; }
  double p_pm() const { return p_pm_; }
  double p_mp() const { return p_mp_; }
  double p_mm() const { return p_mm_; }

 private:
  double p_pp_, p_pm_, p_mp_, p_mm_;
};

inline JointDistribution joint_distribution(double theta, TickTime n) {
  const double p = p_discrete(theta, n);
  return JointDistribution(0.5 * p, 0.5 * (1.0 - p), 0.5 * (1.0 - p), 0.5 * p);
}

/// Correlation E(a,b) = E[sigma1 sigma2] = 2 p_discrete - 1 = -cos(theta).
inline double correlation(double theta, TickTime n) {
  return 2.0 * p_discrete(theta, n) - 1.0;
}

/// Result of averaging the oscillation out of a measurement probability.
/// closed_form is the exact integral of sin^2 over a uniform phase (1/2,
/// the Born weight of an equal superposition); estimate is the sampled
/// counterpart with its standard error.
struct PhaseAverage {
  double closed_form = 0.5;
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Average sin^2(phi) over explicitly supplied phases.
inline PhaseAverage phase_averaged_probability(std::span<const double> phases) {
  if (phases.empty()) throw DomainError("phase_averaged_probability: need at least one sample");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double phi : phases) {
    const double s = std::sin(phi);
    const double v = s * s;
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(phases.size());
  PhaseAverage out;
  out.samples = phases.size();
  out.estimate = sum / n;
  if (phases.size() > 1) {
    const double var = std::max(0.0, (sum_sq - n * out.estimate * out.estimate) / (n - 1.0));
    out.std_error = std::sqrt(var / n);
  }
  return out;
}

/// Average sin^2(phi) over `samples` phases drawn uniformly on [0, 2pi).
inline PhaseAverage phase_averaged_probability(std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw DomainError("phase_averaged_probability: samples must be >= 1");
  CounterRng rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double phi = 2 * std::numbers::pi * rng.next_u01();
    const double s = std::sin(phi);
    const double v = s * s;
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(samples);
  PhaseAverage out;
  out.samples = samples;
  out.estimate = sum / n;
  if (samples > 1) {
    const double var = std::max(0.0, (sum_sq - n * out.estimate * out.estimate) / (n - 1.0));
    out.std_error = std::sqrt(var / n);
  }
  return out;
}

}  // namespace ticksim
