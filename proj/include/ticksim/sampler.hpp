#pragma once

#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "ticksim/bell.hpp"
#include "ticksim/eprb.hpp"
#include "ticksim/rng.hpp"
#include "ticksim/types.hpp"

namespace ticksim {

/// One EPRB trial: the two +-1 spin outcomes.
struct TrialOutcome {
  int sigma1 = 0;
  int sigma2 = 0;
};

/// Monte Carlo estimate with its standard error. For direct estimates
/// std_error is the sample standard deviation over sqrt(trials); derived
/// statistics (CHSH) propagate the four term errors in quadrature, and
/// `trials` counts the samples the estimate was actually computed from
/// (conditioning events for conditional estimates).
struct EstimateReport {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

/// One singlet trial at angle theta, tick n. sigma1 is a fair coin; sigma2
/// then comes up + with probability p_discrete(theta, n) when sigma1 = +,
/// and with probability 1 - p_discrete when sigma1 = - (singlet symmetry).
/// Consumes exactly two draws from rng.
inline TrialOutcome sample_pair(double theta, TickTime n, CounterRng& rng) {
  const double p = p_discrete(theta, n);
  TrialOutcome t;
  t.sigma1 = rng.next_sign();
  const double p_plus = t.sigma1 > 0 ? p : 1.0 - p;
  t.sigma2 = rng.bernoulli(p_plus) ? +1 : -1;
  return t;
}

/// Tallies pooled across trials. Integer fields only, so pooling is exact
/// and independent of merge order.
struct PairCounts {
  std::uint64_t trials = 0;
  std::uint64_t sigma1_plus = 0;
  std::uint64_t joint_plus_plus = 0;  // sigma1 = +1 and sigma2 = +1
  std::int64_t product_sum = 0;       // sum of sigma1 * sigma2

  PairCounts& operator+=(const PairCounts& o) {
    trials += o.trials;
    sigma1_plus += o.sigma1_plus;
    joint_plus_plus += o.joint_plus_plus;
    product_sum += o.product_sum;
    return *this;
  }
};

/// Run `count` trials on one stream. Trial j of a stream reads draws 2j and
/// 2j+1, so a stream's tallies are a pure function of (theta, n, seed, count).
inline PairCounts run_trials(double theta, TickTime n, std::uint64_t seed, std::uint64_t count) {
  CounterRng rng(seed);
  PairCounts c;
  c.trials = count;
  for (std::uint64_t j = 0; j < count; ++j) {
    const TrialOutcome t = sample_pair(theta, n, rng);
    if (t.sigma1 > 0) {
      ++c.sigma1_plus;
      if (t.sigma2 > 0) ++c.joint_plus_plus;
    }
    c.product_sum += t.sigma1 * t.sigma2;
  }
  return c;
}

// Parallel-batch layout: trials split into fixed batches of kTrialBatch;
// batch b runs on the stream seeded by derive_seed(master, b). The layout
// depends only on the trial count, never on the thread count.
inline constexpr std::uint64_t kTrialBatch = 65536;

namespace detail {

template <typename BatchFn>
void for_each_batch(std::uint64_t batches, unsigned threads, BatchFn&& fn) {
  unsigned n_threads =
      threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  if (batches < n_threads) n_threads = static_cast<unsigned>(batches);
  if (n_threads <= 1) {
    for (std::uint64_t b = 0; b < batches; ++b) fn(b);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&fn, t, n_threads, batches] {
      for (std::uint64_t b = t; b < batches; b += n_threads) fn(b);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// Pool trial tallies over the documented batch layout.
inline PairCounts pooled_counts(double theta, TickTime n, std::uint64_t trials,
                                std::uint64_t master_seed, unsigned threads = 0) {
  const std::uint64_t batches = (trials + kTrialBatch - 1) / kTrialBatch;
  std::vector<PairCounts> per_batch(batches);
  detail::for_each_batch(batches, threads, [&](std::uint64_t b) {
    const std::uint64_t count = std::min(kTrialBatch, trials - b * kTrialBatch);
    per_batch[b] = run_trials(theta, n, derive_seed(master_seed, b), count);
  });
  PairCounts total;
  for (const PairCounts& c : per_batch) total += c;
  return total;
}

/// Conditional-frequency estimate of p_discrete(theta, n): among trials with
/// sigma1 = +1, the fraction with sigma2 = +1. Throws NumericError when no
/// trial conditions (all sigma1 = -1).
inline EstimateReport estimate_probability(double theta, TickTime n, std::uint64_t trials,
                                           std::uint64_t seed, unsigned threads = 0) {
  if (trials == 0) throw DomainError("estimate_probability: trials must be >= 1");
  const PairCounts c = pooled_counts(theta, n, trials, seed, threads);
  if (c.sigma1_plus == 0) {
    throw NumericError("estimate_probability: no conditioning events (all sigma1 = -1)");
  }
  const double k = static_cast<double>(c.sigma1_plus);
  const double p = static_cast<double>(c.joint_plus_plus) / k;
  EstimateReport r;
  r.estimate = p;
  r.std_error = std::sqrt(p * (1.0 - p) / k);
  r.trials = c.sigma1_plus;
  return r;
}

/// Joint-frequency estimate of the correlation E = E[sigma1 sigma2].
/// Outcomes are +-1, so the sample variance is 1 - E^2.
inline EstimateReport estimate_correlation(double theta, TickTime n, std::uint64_t trials,
                                           std::uint64_t seed, unsigned threads = 0) {
  if (trials == 0) throw DomainError("estimate_correlation: trials must be >= 1");
  const PairCounts c = pooled_counts(theta, n, trials, seed, threads);
  const double e = static_cast<double>(c.product_sum) / static_cast<double>(trials);
  EstimateReport r;
  r.estimate = e;
  r.std_error = std::sqrt(std::max(0.0, 1.0 - e * e) / static_cast<double>(trials));
  r.trials = trials;
  return r;
}

/// Monte Carlo CHSH: the four correlations are estimated from independent
/// blocks seeded by derive_seed(seed, k) for k = 0..3, in the term order
/// (a,b), (a,b'), (a',b), (a',b'); errors combine in quadrature.
inline EstimateReport estimate_chsh(const ChshConfig& config, TickTime n,
                                    std::uint64_t trials_per_pair, std::uint64_t seed,
                                    unsigned threads = 0) {
  if (trials_per_pair == 0) throw DomainError("estimate_chsh: trials_per_pair must be >= 1");
  const std::pair<const Direction&, const Direction&> pairs[4] = {
      {config.a, config.b},
      {config.a, config.b_prime},
      {config.a_prime, config.b},
      {config.a_prime, config.b_prime},
  };
  double e[4];
  double var_sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double theta = angle_between(pairs[k].first, pairs[k].second);
    const EstimateReport r = estimate_correlation(theta, n, trials_per_pair,
                                                  derive_seed(seed, static_cast<std::uint64_t>(k)),
                                                  threads);
    e[k] = r.estimate;
    var_sum += r.std_error * r.std_error;
  }
  EstimateReport out;
  out.estimate = std::abs(e[0] - e[1]) + std::abs(e[2] + e[3]);
  out.std_error = std::sqrt(var_sum);
  out.trials = 4 * trials_per_pair;
  return out;
}

}  // namespace ticksim
