#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "ticksim/jacobi.hpp"
#include "ticksim/types.hpp"

namespace ticksim {

/// Angle between two measurement axes, in [0, pi].
template <typename Scalar>
Scalar angle_between(const DirectionT<Scalar>& a, const DirectionT<Scalar>& b) {
  const Scalar dot = std::clamp(a.vec().dot(b.vec()), Scalar(-1), Scalar(1));
  return std::acos(dot);
}

template <typename Scalar = double>
struct SpinMatrices {
  ComplexMatrix<Scalar> sx, sy, sz;
};

/// Cartesian spin matrices for spin s in the basis m = s, s-1, ..., -s,
/// built from ladder operators:
///   (S+)_{m',m} = sqrt(s(s+1) - m(m+1)) delta_{m',m+1}
///   Sx = (S+ + S-)/2,  Sy = (S+ - S-)/(2i),  Sz = diag(s, ..., -s).
/// Units of hbar (hbar = 1 internally).
template <typename Scalar = double>
SpinMatrices<Scalar> spin_matrices(SpinQuantumNumber s) {
  using Complex = std::complex<Scalar>;
  const int d = s.dimension();
  const Scalar sv = static_cast<Scalar>(s.value());

  ComplexMatrix<Scalar> raise = ComplexMatrix<Scalar>::Zero(d, d);
  for (int i = 1; i < d; ++i) {
    const Scalar m = sv - static_cast<Scalar>(i);  // state being raised
    raise(i - 1, i) = Complex(std::sqrt(sv * (sv + 1) - m * (m + 1)), 0);
  }
  const ComplexMatrix<Scalar> lower = raise.adjoint();

  SpinMatrices<Scalar> out;
  out.sx = Scalar(0.5) * (raise + lower);
  out.sy = Complex(0, -0.5) * (raise - lower);
  out.sz = ComplexMatrix<Scalar>::Zero(d, d);
  for (int i = 0; i < d; ++i) out.sz(i, i) = Complex(sv - static_cast<Scalar>(i), 0);
  return out;
}

/// Spin component along axis a: S_a = a_x Sx + a_y Sy + a_z Sz.
/// Hermitian with eigenvalues {m : m = -s..s}.
template <typename Scalar>
ComplexMatrix<Scalar> spin_component(SpinQuantumNumber s, const DirectionT<Scalar>& a) {
  const SpinMatrices<Scalar> m = spin_matrices<Scalar>(s);
  return a.x() * m.sx + a.y() * m.sy + a.z() * m.sz;
}

/// Rotation operator D_a(phi) = exp(-i S_a phi), evaluated through the
/// eigendecomposition of S_a. Unitary; D_a(0) = I.
template <typename Scalar>
ComplexMatrix<Scalar> rotation_operator(SpinQuantumNumber s, const DirectionT<Scalar>& a,
                                        Scalar phi) {
  const ComplexMatrix<Scalar> sa = spin_component(s, a);
  const HermitianEigen<Scalar> eig = hermitian_eigendecomposition(sa);
  const int d = s.dimension();
  ComplexVector<Scalar> phases(d);
  for (int i = 0; i < d; ++i) {
    phases(i) = std::polar(Scalar(1), -eig.eigenvalues(i) * phi);
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

/// Scalar form of the rotation law: the phase exp(-i m phi) an m-eigenket
/// picks up under a phi-rotation about its own axis. Modulus 1.
template <typename Scalar = double>
std::complex<Scalar> rotation_phase(SpinEigenvalue m, Scalar phi) {
  return std::polar(Scalar(1), static_cast<Scalar>(-m.value()) * phi);
}

}  // namespace ticksim
