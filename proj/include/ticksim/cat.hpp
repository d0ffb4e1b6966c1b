#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "ticksim/rng.hpp"
#include "ticksim/sampler.hpp"
#include "ticksim/types.hpp"

namespace ticksim {

/// The discretely-shooting-gun experiment: at each tick n = 1..N the gun
/// fires with the oscillating single-particle probability sin^2(omega n/2 +
/// phi); the first hit is absorbing.
class CatConfig {
 public:
  CatConfig(double omega, double phi, std::uint64_t ticks)
      : omega_(omega), phi_(phi), ticks_(ticks) {
    if (!(omega > 0.0)) throw DomainError("CatConfig: omega must be > 0");
  }

  double omega() const { return omega_; }
  double phi() const { return phi_; }
  std::uint64_t ticks() const { return ticks_; }

 private:
  double omega_;
  double phi_;
  std::uint64_t ticks_;
};

struct CatRunResult {
  bool dead = false;
  std::optional<std::uint64_t> death_tick;  // present iff dead, in 1..N
};

/// Probability that the gun fires at tick n >= 1.
inline double fire_probability(std::uint64_t n, double omega, double phi) {
  if (n == 0) throw DomainError("fire_probability: ticks start at n = 1");
  const double s = std::sin(0.5 * omega * static_cast<double>(n) + phi);
  return s * s;
}

/// Closed-form survival through N ticks: prod_{n=1..N} (1 - fire(n)).
/// Monotone non-increasing in N.
inline double survival_probability(const CatConfig& config) {
  double s = 1.0;
  for (std::uint64_t n = 1; n <= config.ticks(); ++n) {
    s *= 1.0 - fire_probability(n, config.omega(), config.phi());
  }
  return s;
}

/// Survival after each tick 0..N; element 0 is 1.
inline std::vector<double> survival_curve(const CatConfig& config) {
  std::vector<double> curve;
  curve.reserve(config.ticks() + 1);
  curve.push_back(1.0);
  double s = 1.0;
  for (std::uint64_t n = 1; n <= config.ticks(); ++n) {
    s *= 1.0 - fire_probability(n, config.omega(), config.phi());
    curve.push_back(s);
  }
  return curve;
}

/// One sequential run: Bernoulli draw per tick, death absorbing. One draw is
/// consumed per surviving tick, so the stream position is the tick index.
inline CatRunResult simulate_cat(const CatConfig& config, std::uint64_t seed) {
  CounterRng rng(seed);
  for (std::uint64_t n = 1; n <= config.ticks(); ++n) {
    if (rng.bernoulli(fire_probability(n, config.omega(), config.phi()))) {
      return CatRunResult{true, n};
    }
  }
  return CatRunResult{false, std::nullopt};
}

/// Death-tick histogram over an ensemble of seeded runs. Run r uses the
/// stream derive_seed(master_seed, r); tallies are integers, so the result
/// is identical for any thread count.
struct CatEnsemble {
  std::uint64_t runs = 0;
  std::uint64_t survivors = 0;
  std::vector<std::uint64_t> deaths_at;  // index n = 1..N; [0] unused

  /// Fraction of runs still alive after tick n.
  double empirical_survival(std::uint64_t n) const {
    std::uint64_t dead = 0;
    for (std::uint64_t k = 1; k <= n && k < deaths_at.size(); ++k) dead += deaths_at[k];
    return static_cast<double>(runs - dead) / static_cast<double>(runs);
  }

  double mean_death_tick() const {
    std::uint64_t dead = 0;
    std::uint64_t sum = 0;
    for (std::uint64_t k = 1; k < deaths_at.size(); ++k) {
      dead += deaths_at[k];
      sum += k * deaths_at[k];
    }
    if (dead == 0) return 0.0;
    return static_cast<double>(sum) / static_cast<double>(dead);
  }
};

inline CatEnsemble simulate_cat_ensemble(const CatConfig& config, std::uint64_t runs,
                                         std::uint64_t master_seed, unsigned threads = 0) {
  if (runs == 0) throw DomainError("simulate_cat_ensemble: runs must be >= 1");
  const std::vector<double> fire = [&] {
    std::vector<double> p(config.ticks() + 1, 0.0);
    for (std::uint64_t n = 1; n <= config.ticks(); ++n) {
      p[n] = fire_probability(n, config.omega(), config.phi());
    }
    return p;
  }();

  unsigned n_threads =
      threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  if (runs < n_threads) n_threads = static_cast<unsigned>(runs);

  std::vector<CatEnsemble> partial(std::max(1u, n_threads));
  const auto worker = [&](unsigned t) {
    CatEnsemble& acc = partial[t];
    acc.deaths_at.assign(config.ticks() + 1, 0);
    for (std::uint64_t r = t; r < runs; r += n_threads) {
      CounterRng rng(derive_seed(master_seed, r));
      bool dead = false;
      for (std::uint64_t n = 1; n <= config.ticks(); ++n) {
        if (rng.bernoulli(fire[n])) {
          ++acc.deaths_at[n];
          dead = true;
          break;
        }
      }
      if (!dead) ++acc.survivors;
    }
  };
  if (n_threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  CatEnsemble total;
  total.runs = runs;
  total.deaths_at.assign(config.ticks() + 1, 0);
  for (const CatEnsemble& p : partial) {
    total.survivors += p.survivors;
    for (std::size_t i = 0; i < p.deaths_at.size(); ++i) total.deaths_at[i] += p.deaths_at[i];
  }
  return total;
}

/// Truncated expectation of the death tick: sum_{n=1..N} n P(death at n),
/// with the mass still alive at N reported separately. `divergent` marks
/// the degenerate case with no death mass at all (every fire probability
/// zero, or N = 0), where the expectation has no support.
struct ExpectedDeathTick {
  double truncated_mean = 0.0;
  double survivor_mass = 1.0;
  bool divergent = false;
};

inline ExpectedDeathTick expected_death_tick(const CatConfig& config) {
  ExpectedDeathTick out;
  double alive = 1.0;
  double mean = 0.0;
  for (std::uint64_t n = 1; n <= config.ticks(); ++n) {
    const double p = fire_probability(n, config.omega(), config.phi());
    mean += static_cast<double>(n) * alive * p;
    alive *= 1.0 - p;
  }
  out.truncated_mean = mean;
  out.survivor_mass = alive;
  out.divergent = alive == 1.0;
  return out;
}

}  // namespace ticksim
