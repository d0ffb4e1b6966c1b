#pragma once

#include <cmath>
#include <numbers>
#include <span>

#include <Eigen/Dense>

#include "ticksim/rng.hpp"
#include "ticksim/types.hpp"

namespace test_support {

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Uniform direction on the sphere (area measure).
inline ticksim::Direction random_direction(ticksim::CounterRng& rng) {
  const double z = 2.0 * rng.next_u01() - 1.0;
  const double az = 2.0 * std::numbers::pi * rng.next_u01();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return ticksim::Direction(r * std::cos(az), r * std::sin(az), z);
}

/// Least-squares slope of y on x.
inline double fit_slope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace test_support
