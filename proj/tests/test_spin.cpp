#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "ticksim/jacobi.hpp"
#include "ticksim/rng.hpp"
#include "ticksim/spin.hpp"
#include "support.hpp"

using namespace ticksim;
using test_support::max_abs_diff;
using test_support::random_direction;
using Complex = std::complex<double>;

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a * b - b * a;
}
}  // namespace

TEST_CASE("angle_between recovers planar angles") {
  CHECK(angle_between(Direction::unit_x(), Direction::unit_z()) ==
        doctest::Approx(kPi / 2).epsilon(1e-14));
  const Direction a = Direction::in_xz_plane(0.3);
  CHECK(angle_between(a, a) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(angle_between(Direction::unit_z(), Direction::in_xz_plane(1.1)) ==
        doctest::Approx(1.1).epsilon(1e-12));
  CHECK(angle_between(Direction::unit_x(), Direction(-1.0, 0.0, 0.0)) ==
        doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("spin one-half matrices are half the Pauli matrices") {
  const auto m = spin_matrices(SpinQuantumNumber(1));
  Eigen::MatrixXcd sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0.0, 0.5, 0.5, 0.0;
  sy << 0.0, -0.5 * kI, 0.5 * kI, 0.0;
  sz << 0.5, 0.0, 0.0, -0.5;
  CHECK(max_abs_diff(m.sx, sx) < 1e-15);
  CHECK(max_abs_diff(m.sy, sy) < 1e-15);
  CHECK(max_abs_diff(m.sz, sz) < 1e-15);
}

TEST_CASE("spin one matrices match the textbook forms") {
  const auto m = spin_matrices(SpinQuantumNumber(2));
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd sx(3, 3), sy(3, 3), sz(3, 3);
  sx << 0, r, 0, r, 0, r, 0, r, 0;
  sy << 0.0, -r * kI, 0.0, r * kI, 0.0, -r * kI, 0.0, r * kI, 0.0;
  sz << 1, 0, 0, 0, 0, 0, 0, 0, -1;
  CHECK(max_abs_diff(m.sx, sx) < 1e-15);
  CHECK(max_abs_diff(m.sy, sy) < 1e-15);
  CHECK(max_abs_diff(m.sz, sz) < 1e-15);
}

TEST_CASE("spin three-half ladder amplitudes") {
  const auto m = spin_matrices(SpinQuantumNumber(3));
  const double s3 = std::sqrt(3.0);
  Eigen::MatrixXcd sx(4, 4);
  sx << 0, s3, 0, 0, s3, 0, 2, 0, 0, 2, 0, s3, 0, 0, s3, 0;
  sx *= 0.5;
  CHECK(max_abs_diff(m.sx, sx) < 1e-14);
  CHECK(m.sz(0, 0).real() == doctest::Approx(1.5));
  CHECK(m.sz(3, 3).real() == doctest::Approx(-1.5));
}

TEST_CASE("su(2) commutators and Casimir hold for all dimensions up to 2s = 10") {
  for (int twice_s = 0; twice_s <= 10; ++twice_s) {
    const SpinQuantumNumber s(twice_s);
    const auto m = spin_matrices(s);
    CHECK(max_abs_diff(commutator(m.sx, m.sy), kI * m.sz) < 1e-12);
    CHECK(max_abs_diff(commutator(m.sy, m.sz), kI * m.sx) < 1e-12);
    CHECK(max_abs_diff(commutator(m.sz, m.sx), kI * m.sy) < 1e-12);

    const Eigen::MatrixXcd casimir = m.sx * m.sx + m.sy * m.sy + m.sz * m.sz;
    const double expect = s.value() * (s.value() + 1.0);
    CHECK(max_abs_diff(casimir, expect * Eigen::MatrixXcd::Identity(s.dimension(),
                                                                    s.dimension())) < 1e-12);
    // Hermiticity
    CHECK(max_abs_diff(m.sx, m.sx.adjoint()) < 1e-15);
    CHECK(max_abs_diff(m.sy, m.sy.adjoint()) < 1e-15);
  }
}

TEST_CASE("spin_component along any axis has the ladder spectrum") {
  CounterRng rng(11);
  for (int twice_s = 1; twice_s <= 6; ++twice_s) {
    const SpinQuantumNumber s(twice_s);
    const Direction a = random_direction(rng);
    const auto eig = hermitian_eigendecomposition(spin_component(s, a));
    for (int i = 0; i < s.dimension(); ++i) {
      const double expect = -s.value() + i;
      CHECK(eig.eigenvalues(i) == doctest::Approx(expect).epsilon(1e-10));
    }
  }
  CHECK(max_abs_diff(spin_component(SpinQuantumNumber(3), Direction::unit_z()),
                     spin_matrices(SpinQuantumNumber(3)).sz) < 1e-15);
}

TEST_CASE("half-spin rotation matches the closed Pauli form") {
  // D = cos(phi/2) I - i sin(phi/2) (a . sigma), sigma = 2 S
  CounterRng rng(2024);
  const SpinQuantumNumber half(1);
  for (int k = 0; k < 50; ++k) {
    const Direction a = random_direction(rng);
    const double phi = (2.0 * rng.next_u01() - 1.0) * 4.0 * kPi;
    const Eigen::MatrixXcd d = rotation_operator(half, a, phi);
    const Eigen::MatrixXcd sigma = 2.0 * spin_component(half, a);
    const Eigen::MatrixXcd ref = std::cos(0.5 * phi) * Eigen::MatrixXcd::Identity(2, 2) -
                                 kI * std::sin(0.5 * phi) * sigma;
    CHECK(max_abs_diff(d, ref) < 1e-12);
  }
}

TEST_CASE("z-axis rotations are diagonal phases") {
  for (int twice_s = 1; twice_s <= 5; ++twice_s) {
    const SpinQuantumNumber s(twice_s);
    const double phi = 0.73;
    const Eigen::MatrixXcd d = rotation_operator(s, Direction::unit_z(), phi);
    for (int i = 0; i < s.dimension(); ++i) {
      const int twice_m = s.twice_s() - 2 * i;
      const Complex expect = rotation_phase(SpinEigenvalue(s, twice_m), phi);
      CHECK(std::abs(d(i, i) - expect) < 1e-12);
      for (int j = 0; j < s.dimension(); ++j) {
        if (j != i) CHECK(std::abs(d(i, j)) < 1e-12);
      }
    }
  }
  // spin-1 closed form
  const Eigen::MatrixXcd d = rotation_operator(SpinQuantumNumber(2), Direction::unit_z(), 0.4);
  CHECK(std::abs(d(0, 0) - std::polar(1.0, -0.4)) < 1e-12);
  CHECK(std::abs(d(1, 1) - 1.0) < 1e-12);
  CHECK(std::abs(d(2, 2) - std::polar(1.0, 0.4)) < 1e-12);
}

TEST_CASE("rotation_phase is the scalar rotation law") {
  const SpinQuantumNumber half(1);
  const Complex p = rotation_phase(SpinEigenvalue(half, 1), kPi);
  CHECK(std::abs(p - Complex(0.0, -1.0)) < 1e-15);  // e^{-i pi/2}
  CHECK(std::abs(rotation_phase(SpinEigenvalue(half, 1), 4.0 * kPi) - 1.0) < 1e-12);
  CHECK(std::abs(rotation_phase(SpinEigenvalue(half, 1), 2.0 * kPi) + 1.0) < 1e-12);
  // modulus one regardless of arguments
  CHECK(std::abs(std::abs(rotation_phase(SpinEigenvalue(half, -1), 123.456)) - 1.0) < 1e-15);
}

TEST_CASE("rotations are unitary and compose on a fixed axis") {
  CounterRng rng(77);
  for (int twice_s = 0; twice_s <= 10; ++twice_s) {
    const SpinQuantumNumber s(twice_s);
    const int d = s.dimension();
    for (int k = 0; k < 5; ++k) {
      const Direction a = random_direction(rng);
      const double p1 = (2.0 * rng.next_u01() - 1.0) * 2.0 * kPi;
      const double p2 = (2.0 * rng.next_u01() - 1.0) * 2.0 * kPi;
      const Eigen::MatrixXcd d1 = rotation_operator(s, a, p1);
      CHECK(max_abs_diff(d1.adjoint() * d1, Eigen::MatrixXcd::Identity(d, d)) < 1e-10);
      const Eigen::MatrixXcd d2 = rotation_operator(s, a, p2);
      const Eigen::MatrixXcd d12 = rotation_operator(s, a, p1 + p2);
      CHECK(max_abs_diff(d1 * d2, d12) < 1e-10);
    }
    CHECK(max_abs_diff(rotation_operator(s, Direction::unit_x(), 0.0),
                       Eigen::MatrixXcd::Identity(d, d)) < 1e-12);
  }
}

TEST_CASE("spinor sign flip at one turn, identity at two turns") {
  CounterRng rng(15);
  for (int k = 0; k < 20; ++k) {
    const Direction a = random_direction(rng);
    const SpinQuantumNumber half(1);
    const Eigen::MatrixXcd full = rotation_operator(half, a, 2.0 * kPi);
    CHECK(max_abs_diff(full, -Eigen::MatrixXcd::Identity(2, 2)) < 1e-10);
    const Eigen::MatrixXcd twice = rotation_operator(half, a, 4.0 * kPi);
    CHECK(max_abs_diff(twice, Eigen::MatrixXcd::Identity(2, 2)) < 1e-10);
  }
  // integer spins return to identity after one turn
  for (const int twice_s : {0, 2, 4, 6}) {
    const SpinQuantumNumber s(twice_s);
    const Direction a = Direction::in_xz_plane(0.9);
    CHECK(max_abs_diff(rotation_operator(s, a, 2.0 * kPi),
                       Eigen::MatrixXcd::Identity(s.dimension(), s.dimension())) < 1e-10);
  }
  // half-odd spins of higher dimension flip sign as well
  const SpinQuantumNumber three_half(3);
  CHECK(max_abs_diff(rotation_operator(three_half, Direction::unit_y(), 2.0 * kPi),
                     -Eigen::MatrixXcd::Identity(4, 4)) < 1e-10);
}

TEST_CASE("spin-0 rotations are trivially the identity") {
  const SpinQuantumNumber zero(0);
  const auto m = spin_matrices(zero);
  CHECK(m.sx.rows() == 1);
  CHECK(std::abs(m.sx(0, 0)) == 0.0);
  const Eigen::MatrixXcd d = rotation_operator(zero, Direction::unit_x(), 1.234);
  CHECK(std::abs(d(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("single precision instantiation stays usable") {
  const auto m = spin_matrices<float>(SpinQuantumNumber(1));
  CHECK(std::abs(m.sz(0, 0).real() - 0.5f) < 1e-6f);
  const DirectionT<float> a = DirectionT<float>::unit_z();
  const auto d = rotation_operator(SpinQuantumNumber(1), a, 3.14159265f);
  CHECK(std::abs(d(0, 0) - std::complex<float>(0.0f, -1.0f)) < 1e-5f);  // e^{-i pi/2}
}
