#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ticksim/eprb.hpp"
#include "ticksim/rng.hpp"

using namespace ticksim;

namespace {
constexpr double kPi = std::numbers::pi;

// Literal evaluation of sin^2(pi n + theta/2), kept as an independent
// reference for the tick-equivalence identity.
double p_discrete_naive(double theta, std::uint64_t n) {
  const double s = std::sin(kPi * static_cast<double>(n) + 0.5 * theta);
  return s * s;
}
}  // namespace

TEST_CASE("p_standard hits the exact anchor angles") {
  CHECK(p_standard(0.0) == 0.0);
  CHECK(p_standard(kPi) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p_standard(kPi / 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p_standard(2 * kPi / 3) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(p_standard(kPi / 3) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("p_discrete equals p_standard at every tick, bit for bit") {
  for (int i = 0; i <= 720; ++i) {
    const double theta = 2.0 * kPi * i / 720.0;
    const double base = p_standard(theta);
    for (const std::uint64_t n : {0ull, 1ull, 2ull, 3ull, 17ull, 10000ull, 1000000007ull}) {
      CHECK(p_discrete(theta, TickTime{n}) == base);
    }
  }
}

TEST_CASE("p_discrete agrees with the literal formula to float accuracy") {
  // The literal sin(pi n + theta/2) accumulates ~ n * ulp(pi) of phase
  // error; at n = 1e4 that is ~4e-12, well inside 1e-9.
  double max_diff = 0.0;
  for (int i = 0; i <= 72; ++i) {
    const double theta = 2.0 * kPi * i / 72.0;
    for (const std::uint64_t n : {0ull, 1ull, 2ull, 3ull, 10ull, 100ull, 10000ull}) {
      max_diff = std::max(max_diff,
                          std::abs(p_discrete(theta, TickTime{n}) - p_discrete_naive(theta, n)));
    }
  }
  CHECK(max_diff < 1e-9);
}

TEST_CASE("OscillationParams validates and normalizes") {
  CHECK(OscillationParams().omega() == doctest::Approx(2 * kPi));
  CHECK(OscillationParams().phi() == 0.0);
  CHECK_THROWS_AS(OscillationParams(0.0), DomainError);
  CHECK_THROWS_AS(OscillationParams(-1.0), DomainError);
  CHECK(OscillationParams(1.0, -kPi / 2).phi() == doctest::Approx(1.5 * kPi).epsilon(1e-14));
  CHECK(OscillationParams(1.0, 2 * kPi).phi() == doctest::Approx(0.0));
  CHECK(OscillationParams(1.0, 7 * kPi).phi() == doctest::Approx(kPi).epsilon(1e-14));
  CHECK_THROWS_AS(OscillationParams(1.0, 0.0, 0.0), DomainError);
  CHECK(OscillationParams(1.0, 0.0, 1e-9).tau_seconds().value() == 1e-9);
  CHECK_FALSE(OscillationParams().tau_seconds().has_value());
}

TEST_CASE("p_continuous sweeps the oscillation") {
  const OscillationParams canon;
  // at t = 0 and phi = 0 the continuous law is the standard law
  for (const double theta : {0.0, 0.4, kPi / 2, 2.3, kPi}) {
    CHECK(p_continuous(theta, 0.0, canon) == doctest::Approx(p_standard(theta)).epsilon(1e-15));
  }
  // at integer t with omega = 2 pi the tick law returns
  for (const int n : {1, 2, 5, 100}) {
    CHECK(p_continuous(0.8, n, canon) ==
          doctest::Approx(p_discrete(0.8, TickTime{static_cast<std::uint64_t>(n)}))
              .epsilon(1e-11));
  }
  // quarter period: sin^2(pi/2) = 1
  CHECK(p_continuous(0.0, 0.5, OscillationParams(2 * kPi)) == doctest::Approx(1.0).epsilon(1e-14));
  // phase offset alone
  CHECK(p_continuous(0.0, 0.0, OscillationParams(1.0, kPi / 2)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  // midway between ticks the probability leaves the tick value
  CHECK(p_continuous(0.0, 0.25, canon) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("p_spin_s reduces to the half-spin law and kills spin zero") {
  const SpinQuantumNumber half(1);
  for (int i = 0; i <= 720; ++i) {
    const double theta = 2.0 * kPi * i / 720.0;
    for (const std::uint64_t n : {0ull, 1ull, 9999ull}) {
      CHECK(p_spin_s(half, theta, TickTime{n}) == p_discrete(theta, TickTime{n}));
      CHECK(p_spin_s(SpinQuantumNumber(0), theta, TickTime{n}) == 0.0);
    }
  }
  // spin 1 doubles the angle, spin 3/2 triples it
  CHECK(p_spin_s(SpinQuantumNumber(2), 0.7, TickTime{0}) ==
        doctest::Approx(std::pow(std::sin(0.7), 2)).epsilon(1e-15));
  CHECK(p_spin_s(SpinQuantumNumber(3), 0.7, TickTime{4}) ==
        doctest::Approx(std::pow(std::sin(1.05), 2)).epsilon(1e-15));
}

TEST_CASE("joint_distribution carries the singlet structure") {
  const JointDistribution j = joint_distribution(2 * kPi / 3, TickTime{0});
  CHECK(j.p_pp() == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(j.p_pm() == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(j.p_mp() == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(j.p_mm() == doctest::Approx(0.375).epsilon(1e-14));

  // theta = 0: never the same outcome; theta = pi: always the same
  const JointDistribution zero = joint_distribution(0.0, TickTime{0});
  CHECK(zero.p_pp() == 0.0);
  CHECK(zero.p_pm() == doctest::Approx(0.5));
  const JointDistribution anti = joint_distribution(kPi, TickTime{0});
  CHECK(anti.p_pp() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("JointDistribution rejects malformed tables") {
  CHECK_THROWS_AS(JointDistribution(-0.1, 0.6, 0.3, 0.2), DomainError);
  CHECK_THROWS_AS(JointDistribution(0.3, 0.3, 0.3, 0.3), DomainError);  // sum 1.2
  CHECK_THROWS_AS(JointDistribution(0.6, 0.0, 0.4, 0.0), DomainError);  // marginal 0.6
  CHECK_NOTHROW(JointDistribution(0.25, 0.25, 0.25, 0.25));
}

TEST_CASE("correlation is minus cosine of the angle") {
  for (const double theta : {0.0, 0.3, kPi / 2, 2 * kPi / 3, kPi}) {
    CHECK(correlation(theta, TickTime{0}) == doctest::Approx(-std::cos(theta)).epsilon(1e-12));
  }
  CHECK(correlation(0.0, TickTime{5}) == doctest::Approx(-1.0));
  CHECK(correlation(kPi, TickTime{5}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("phase average over explicit phases") {
  // the closed form is exactly one half for any phase distribution claim
  const std::vector<double> phases = {0.0, kPi / 2};
  const PhaseAverage avg = phase_averaged_probability(phases);
  CHECK(avg.closed_form == 0.5);
  CHECK(avg.estimate == doctest::Approx(0.5).epsilon(1e-14));  // sin^2(0) + sin^2(pi/2) over 2
  CHECK(avg.samples == 2);
  // Bessel variance of {0, 1} is 1/2; std error sqrt(var / n) = 1/2
  CHECK(avg.std_error == doctest::Approx(0.5).epsilon(1e-12));

  const std::vector<double> single = {kPi / 4};
  const PhaseAverage one = phase_averaged_probability(single);
  CHECK(one.estimate == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(one.std_error == 0.0);  // undefined spread; reported as zero

  CHECK_THROWS_AS(phase_averaged_probability(std::span<const double>{}), DomainError);
}

TEST_CASE("sampled phase average converges at the Monte Carlo rate") {
  const PhaseAverage avg = phase_averaged_probability(100000, 2);
  CHECK(avg.closed_form == 0.5);
  CHECK(avg.samples == 100000);
  // sd of sin^2(U) is sqrt(1/8) ~ 0.3536
  CHECK(avg.std_error == doctest::Approx(std::sqrt(0.125) / std::sqrt(100000.0)).epsilon(0.02));
  CHECK(std::abs(avg.estimate - 0.5) < 4.0 * avg.std_error);
  // deterministic in the seed
  const PhaseAverage again = phase_averaged_probability(100000, 2);
  CHECK(again.estimate == avg.estimate);
  const PhaseAverage other = phase_averaged_probability(100000, 3);
  CHECK(other.estimate != avg.estimate);
  CHECK_THROWS_AS(phase_averaged_probability(0, 1), DomainError);
}
