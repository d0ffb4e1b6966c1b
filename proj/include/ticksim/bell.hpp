#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <thread>
#include <vector>

#include "ticksim/eprb.hpp"
#include "ticksim/spin.hpp"
#include "ticksim/types.hpp"

namespace ticksim {

/// Measurement geometry for the CHSH statistic: two axes per side.
struct ChshConfig {
  Direction a;
  Direction a_prime;
  Direction b;
  Direction b_prime;
};

/// Outcome of one inequality evaluation. `violated` applies a fixed 1e-12
/// guard above the bound so float noise at an equality never flags.
struct BellReport {
  double lhs = 0.0;
  double rhs_or_bound = 0.0;
  bool violated = false;
  double margin = 0.0;
};

inline constexpr double kViolationGuard = 1e-12;

inline BellReport make_bell_report(double lhs, double rhs) {
  BellReport r;
  r.lhs = lhs;
  r.rhs_or_bound = rhs;
  r.margin = lhs - rhs;
  r.violated = lhs > rhs + kViolationGuard;
  return r;
}

/// Three-axis Bell inequality P(a+;b+) <= P(a+;c+) + P(c+;b+) with c the
/// coplanar bisector of a and b, evaluated on the discrete law:
/// lhs = p_discrete(theta, n), rhs = 2 p_discrete(theta/2, n).
/// Violated on the whole open interval theta in (0, pi), equality at pi.
inline BellReport bell_original_check(double theta, TickTime n) {
  constexpr double slack = 1e-12;
  if (!(theta >= -slack && theta <= std::numbers::pi + slack)) {
    throw DomainError("bell_original_check: theta must lie in [0, pi]");
  }
  const double t = std::clamp(theta, 0.0, std::numbers::pi);
  return make_bell_report(p_discrete(t, n), 2.0 * p_discrete(0.5 * t, n));
}

/// CHSH statistic S = |E(a,b) - E(a,b')| + |E(a',b) + E(a',b')| over the
/// model correlation. In [0, 4]; local deterministic strategies cap at 2,
/// the optimal coplanar geometry reaches 2 sqrt(2).
inline double chsh_value(const ChshConfig& config, TickTime n) {
  const auto e = [n](const Direction& x, const Direction& y) {
    return correlation(angle_between(x, y), n);
  };
  return std::abs(e(config.a, config.b) - e(config.a, config.b_prime)) +
         std::abs(e(config.a_prime, config.b) + e(config.a_prime, config.b_prime));
}

struct ChshScanResult {
  std::array<double, 4> angles{};  // radians: a, a', b, b'
  ChshConfig config;
  double s_value = 0.0;
};

/// Exhaustive grid search over coplanar four-angle CHSH configurations with
/// angles k*step on [0, pi). Cost grows as (pi/step)^4. Ties resolve to the
/// lexicographically smallest angle tuple, and the result is independent of
/// the thread partitioning.
inline ChshScanResult chsh_scan(double step, TickTime n, unsigned threads = 0) {
  constexpr double slack = 1e-12;
  if (!(step > 0.0 && step <= std::numbers::pi / 8 + slack)) {
    throw DomainError("chsh_scan: step must lie in (0, pi/8]");
  }

  std::size_t count = 0;
  while (static_cast<double>(count) * step < std::numbers::pi - slack) ++count;

  // Pairwise correlations depend only on |alpha_i - alpha_j|.
  std::vector<double> e_table(count * count);
  std::vector<Direction> axes;
  axes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    axes.push_back(Direction::in_xz_plane(static_cast<double>(i) * step));
  }
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j)
      e_table[i * count + j] = correlation(angle_between(axes[i], axes[j]), n);

  struct Best {
    double s = -1.0;
    std::array<std::size_t, 4> idx{};
  };
  const auto scan_range = [&](std::size_t ia_begin, std::size_t ia_end) {
    Best best;
    for (std::size_t ia = ia_begin; ia < ia_end; ++ia) {
      const double* ea = &e_table[ia * count];
      for (std::size_t iap = 0; iap < count; ++iap) {
        const double* eap = &e_table[iap * count];
        for (std::size_t ib = 0; ib < count; ++ib) {
          for (std::size_t ibp = 0; ibp < count; ++ibp) {
            const double s = std::abs(ea[ib] - ea[ibp]) + std::abs(eap[ib] + eap[ibp]);
            if (s > best.s) {
              best.s = s;
              best.idx = {ia, iap, ib, ibp};
            }
          }
        }
      }
    }
    return best;
  };

  unsigned n_threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(count));

  Best overall;
  if (n_threads <= 1) {
    overall = scan_range(0, count);
  } else {
    std::vector<Best> partial(n_threads);
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
      const std::size_t lo = count * t / n_threads;
      const std::size_t hi = count * (t + 1) / n_threads;
      pool.emplace_back([&, t, lo, hi] { partial[t] = scan_range(lo, hi); });
    }
    for (auto& th : pool) th.join();
    overall = partial[0];
    for (unsigned t = 1; t < n_threads; ++t) {
      // Strictly-greater merge in slice order keeps the lexicographic
      // tie-break identical to the single-threaded scan.
      if (partial[t].s > overall.s) overall = partial[t];
    }
  }

  ChshScanResult result{
      {static_cast<double>(overall.idx[0]) * step, static_cast<double>(overall.idx[1]) * step,
       static_cast<double>(overall.idx[2]) * step, static_cast<double>(overall.idx[3]) * step},
      ChshConfig{axes[overall.idx[0]], axes[overall.idx[1]], axes[overall.idx[2]],
                 axes[overall.idx[3]]},
      overall.s};
  return result;
}

/// S values of all 16 local deterministic strategies (each side assigns a
/// fixed +-1 to each of its two axes). Every single one lands exactly on 2.
inline std::array<double, 16> local_strategy_values() {
  std::array<double, 16> values{};
  for (int bits = 0; bits < 16; ++bits) {
    const int sa = (bits & 1) ? 1 : -1;
    const int sap = (bits & 2) ? 1 : -1;
    const int sb = (bits & 4) ? 1 : -1;
    const int sbp = (bits & 8) ? 1 : -1;
    values[static_cast<std::size_t>(bits)] =
        std::abs(static_cast<double>(sa * sb - sa * sbp)) +
        std::abs(static_cast<double>(sap * sb + sap * sbp));
  }
  return values;
}

/// Classical CHSH bound by brute force over the 16 deterministic local
/// strategies: exactly 2.
inline double local_deterministic_bound() {
  const auto values = local_strategy_values();
  double best = 0.0;
  for (double v : values) best = std::max(best, v);
  return best;
}

}  // namespace ticksim
