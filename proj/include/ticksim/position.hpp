#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>

#include <Eigen/Dense>

#include "ticksim/rng.hpp"
#include "ticksim/types.hpp"

namespace ticksim {

/// Periodic discretized line: L sites with spacing h, total length L*h.
class PositionGrid {
 public:
  PositionGrid(int sites, double spacing) : sites_(sites), spacing_(spacing) {
    if (sites < 2) throw DomainError("PositionGrid: need at least 2 sites");
    if (!(spacing > 0.0)) throw DomainError("PositionGrid: spacing must be > 0");
  }

  int sites() const { return sites_; }
  double spacing() const { return spacing_; }
  double length() const { return sites_ * spacing_; }

 private:
  int sites_;
  double spacing_;
};

/// Discrete Fourier modes of a grid: unitary matrix of plane-wave columns
/// and the wavenumber of each column, k = 2 pi m / (L h) for
/// m = -floor(L/2) .. ceil(L/2)-1.
template <typename Scalar = double>
struct FourierModes {
  ComplexMatrix<Scalar> basis;       // column c = plane wave with mode m_c
  RealVector<Scalar> wavenumbers;    // k_c, units 1/length
};

template <typename Scalar = double>
FourierModes<Scalar> fourier_modes(const PositionGrid& grid) {
  using Complex = std::complex<Scalar>;
  const int L = grid.sites();
  FourierModes<Scalar> f;
  f.basis.resize(L, L);
  f.wavenumbers.resize(L);
  const Scalar norm = Scalar(1) / std::sqrt(static_cast<Scalar>(L));
  for (int c = 0; c < L; ++c) {
    const int m = c - L / 2;
    f.wavenumbers(c) =
        Scalar(2) * std::numbers::pi_v<Scalar> * static_cast<Scalar>(m) /
        (static_cast<Scalar>(L) * static_cast<Scalar>(grid.spacing()));
    for (int j = 0; j < L; ++j) {
      const Scalar arg = Scalar(2) * std::numbers::pi_v<Scalar> *
                         static_cast<Scalar>(m) * static_cast<Scalar>(j) /
                         static_cast<Scalar>(L);
      f.basis(j, c) = norm * Complex(std::cos(arg), std::sin(arg));
    }
  }
  return f;
}

/// Momentum operator in spectral form, p = F diag(k) F^dag (hbar = 1).
/// Hermitian; the constant vector is its zero mode.
template <typename Scalar = double>
ComplexMatrix<Scalar> momentum_operator(const PositionGrid& grid) {
  const FourierModes<Scalar> f = fourier_modes<Scalar>(grid);
  return f.basis * f.wavenumbers.template cast<std::complex<Scalar>>().asDiagonal() *
         f.basis.adjoint();
}

/// Normalized state vector on a grid: one complex amplitude per site,
/// unit norm after construction and after every unitary operation.
class WaveVector {
 public:
  template <typename Derived>
  explicit WaveVector(const Eigen::MatrixBase<Derived>& amplitudes)
      : amp_(amplitudes.template cast<std::complex<double>>()) {
    if (!amp_.allFinite()) throw DomainError("WaveVector: non-finite amplitude");
    const double norm = amp_.norm();
    if (!(norm > 0.0)) throw DomainError("WaveVector: zero vector");
    amp_ /= norm;
  }

  const ComplexVector<double>& amplitudes() const { return amp_; }
  int sites() const { return static_cast<int>(amp_.size()); }

  /// Wraps amplitudes that are already unit-norm (to 1e-10) without
  /// renormalizing, so unitarity defects stay observable.
  static WaveVector from_unit(ComplexVector<double> amplitudes) {
    if (std::abs(amplitudes.norm() - 1.0) > 1e-10) {
      throw NumericError("WaveVector: amplitudes are not unit norm within 1e-10");
    }
    WaveVector v;
    v.amp_ = std::move(amplitudes);
    return v;
  }

 private:
  WaveVector() = default;
  ComplexVector<double> amp_;
};

/// Plane wave of mode m on the grid (|m| must stay below the Nyquist range).
inline WaveVector plane_wave(const PositionGrid& grid, int mode) {
  const int L = grid.sites();
  if (mode < -(L / 2) || mode >= (L + 1) / 2) {
    throw DomainError("plane_wave: mode outside the grid's Fourier range");
  }
  ComplexVector<double> amp(L);
  const double norm = 1.0 / std::sqrt(static_cast<double>(L));
  for (int j = 0; j < L; ++j) {
    const double arg = 2 * std::numbers::pi * mode * j / static_cast<double>(L);
    amp(j) = norm * std::complex<double>(std::cos(arg), std::sin(arg));
  }
  return WaveVector::from_unit(std::move(amp));
}

/// Fixed band-limited test vector: modes |m| <= max_mode with coefficients
/// 1/(1+|m|), normalized. Deterministic; used for the translation error
/// scaling checks.
inline WaveVector band_limited_vector(const PositionGrid& grid, int max_mode) {
  const int L = grid.sites();
  if (max_mode < 0 || max_mode >= (L + 1) / 2) {
    throw DomainError("band_limited_vector: max_mode outside the grid's Fourier range");
  }
  ComplexVector<double> amp = ComplexVector<double>::Zero(L);
  for (int m = -max_mode; m <= max_mode; ++m) {
    const double c = 1.0 / (1.0 + std::abs(m));
    for (int j = 0; j < L; ++j) {
      const double arg = 2 * std::numbers::pi * m * j / static_cast<double>(L);
      amp(j) += c * std::complex<double>(std::cos(arg), std::sin(arg));
    }
  }
  return WaveVector(amp);
}

/// Exact translation T(delta) = exp(-i p delta): a pure phase per Fourier
/// mode. Unitary; for delta = j*h it is the circular shift by j sites.
inline WaveVector translate_exact(const WaveVector& v, double delta, const PositionGrid& grid) {
  if (v.sites() != grid.sites()) throw DomainError("translate_exact: grid size mismatch");
  if (delta == 0.0) return v;
  const FourierModes<double> f = fourier_modes<double>(grid);
  ComplexVector<double> coeffs = f.basis.adjoint() * v.amplitudes();
  for (int c = 0; c < grid.sites(); ++c) {
    coeffs(c) *= std::polar(1.0, -f.wavenumbers(c) * delta);
  }
  return WaveVector::from_unit(f.basis * coeffs);
}

/// First-order translation (I - i p delta) v. Not unitary: the norm (and the
/// error against translate_exact) deviates at order (delta * k)^2 per mode.
inline ComplexVector<double> translate_first_order(const WaveVector& v, double delta,
                                                   const PositionGrid& grid) {
  if (v.sites() != grid.sites()) throw DomainError("translate_first_order: grid size mismatch");
  if (delta == 0.0) return v.amplitudes();
  const FourierModes<double> f = fourier_modes<double>(grid);
  ComplexVector<double> coeffs = f.basis.adjoint() * v.amplitudes();
  for (int c = 0; c < grid.sites(); ++c) {
    coeffs(c) *= std::complex<double>(1.0, -f.wavenumbers(c) * delta);
  }
  return f.basis * coeffs;
}

/// Hidden position state: center x', aperture cap Delta, and the rule
/// generating the bounded displacement sequence delta_n. Every generated
/// sample lies in [x' - Delta/2, x' + Delta/2]. The default rule draws
/// delta_n uniformly; a custom rule is any function of n whose values stay
/// within the cap.
class HiddenPositionState {
 public:
  using DeltaRule = std::function<double(std::uint64_t n)>;

  HiddenPositionState(double x_center, double delta_cap, DeltaRule rule = nullptr)
      : x_center_(x_center), delta_cap_(delta_cap), rule_(std::move(rule)) {
    if (!(delta_cap > 0.0)) throw DomainError("HiddenPositionState: Delta must be > 0");
  }

  double x_center() const { return x_center_; }
  double delta_cap() const { return delta_cap_; }
  const DeltaRule& rule() const { return rule_; }

 private:
  double x_center_;
  double delta_cap_;
  DeltaRule rule_;
};

/// Position eigenvalue at tick n: x' + delta_n. The default rule reads one
/// uniform draw at stream position n of `seed`, so the sample is a pure
/// function of (state, n, seed). A custom rule that leaves the aperture
/// interval is rejected.
inline double step_hidden_position(const HiddenPositionState& state, TickTime n,
                                   std::uint64_t seed) {
  double delta;
  if (state.rule()) {
    delta = state.rule()(n.n);
    if (!(std::abs(delta) <= 0.5 * state.delta_cap())) {
      throw DomainError("step_hidden_position: rule produced delta outside [-Delta/2, Delta/2]");
    }
  } else {
    CounterRng rng(seed, n.n);
    delta = (rng.next_u01() - 0.5) * state.delta_cap();
  }
  return state.x_center() + delta;
}

inline constexpr int kMeasureSamples = 256;

/// Measurement per the aperture axiom: replace Delta and re-center on the
/// mean of `samples` fresh draws from the old state (taken at ticks
/// 0..samples-1 of the given seed). Returns the new state; the old one is
/// untouched.
inline HiddenPositionState measure_position(const HiddenPositionState& state,
                                            double new_delta_cap, std::uint64_t seed = 0,
                                            int samples = kMeasureSamples) {
  if (!(new_delta_cap > 0.0)) throw DomainError("measure_position: new Delta must be > 0");
  if (samples < 1) throw DomainError("measure_position: need at least one sample");
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    sum += step_hidden_position(state, TickTime(static_cast<std::uint64_t>(i)), seed);
  }
  const double new_center = sum / samples;
  return HiddenPositionState(new_center, new_delta_cap, state.rule());
}

}  // namespace ticksim
