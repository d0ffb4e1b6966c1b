#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ticksim {

inline constexpr const char* kVersion = "0.1.0";

/// Bad input value (non-unit axis, angle out of range, invalid grid, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical failure (eigensolver non-convergence, insufficient data, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense types. Internally hbar = 1: spin matrices carry m-values directly
// and all angles are radians.
template <typename Scalar = double>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar = double>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Discrete instant: the integer count n of elapsed time units tau.
/// There are no fractional ticks; real-valued time enters only through
/// the continuous oscillation law.
struct TickTime {
  std::uint64_t n = 0;

  constexpr TickTime() = default;
  constexpr explicit TickTime(std::uint64_t ticks) : n(ticks) {}
};

/// Spin quantum number s stored as the integer 2s, so s may be any
/// half-integer. Fixes the representation dimension d = 2s + 1.
class SpinQuantumNumber {
 public:
  constexpr explicit SpinQuantumNumber(int twice_s) : twice_s_(twice_s) {
    if (twice_s < 0) throw DomainError("SpinQuantumNumber: 2s must be >= 0");
  }

  constexpr int twice_s() const { return twice_s_; }
  constexpr int dimension() const { return twice_s_ + 1; }
  constexpr double value() const { return 0.5 * twice_s_; }
  constexpr bool half_odd_integer() const { return twice_s_ % 2 != 0; }

 private:
  int twice_s_;
};

/// One eigenvalue m of a spin component, stored as the integer 2m.
/// Valid m run over {-s, -s+1, ..., +s}, same parity as s.
class SpinEigenvalue {
 public:
  constexpr SpinEigenvalue(SpinQuantumNumber s, int twice_m)
      : twice_m_(twice_m) {
    if (std::abs(twice_m) > s.twice_s() ||
        (twice_m - s.twice_s()) % 2 != 0) {
      throw DomainError("SpinEigenvalue: 2m must lie in {-2s..2s} with the parity of 2s");
    }
  }

  constexpr int twice_m() const { return twice_m_; }
  constexpr double value() const { return 0.5 * twice_m_; }

 private:
  int twice_m_;
};

/// Unit 3-vector labeling a spin-measurement axis.
///
/// Construction normalizes inputs whose norm is within 1e-6 of 1 and
/// rejects anything further off.
template <typename Scalar>
class DirectionT {
 public:
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

  DirectionT(Scalar x, Scalar y, Scalar z) : DirectionT(Vector3(x, y, z)) {}

  template <typename Derived>
  explicit DirectionT(const Eigen::MatrixBase<Derived>& v) : v_(v) {
    const Scalar norm = v_.norm();
    // negated form so a NaN norm fails the containment check and throws
    if (!(std::abs(norm - Scalar(1)) <= kNormSlack)) {
      throw DomainError("Direction: vector norm " + std::to_string(static_cast<double>(norm)) +
                        " is not within 1e-6 of 1");
    }
    v_ /= norm;
  }

  const Vector3& vec() const { return v_; }
  Scalar x() const { return v_.x(); }
  Scalar y() const { return v_.y(); }
  Scalar z() const { return v_.z(); }

  static DirectionT unit_x() { return DirectionT(Scalar(1), Scalar(0), Scalar(0)); }
  static DirectionT unit_y() { return DirectionT(Scalar(0), Scalar(1), Scalar(0)); }
  static DirectionT unit_z() { return DirectionT(Scalar(0), Scalar(0), Scalar(1)); }

  /// Axis at polar angle `alpha` from +z in the x-z plane. Coplanar sets of
  /// axes built this way have pairwise angle |alpha_i - alpha_j|.
  static DirectionT in_xz_plane(Scalar alpha) {
    return DirectionT(std::sin(alpha), Scalar(0), std::cos(alpha));
  }

 private:
  static constexpr Scalar kNormSlack = Scalar(1e-6);
  Vector3 v_;
};

using Direction = DirectionT<double>;

}  // namespace ticksim
