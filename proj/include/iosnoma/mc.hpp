#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "iosnoma/rates.hpp"
#include "iosnoma/scenario.hpp"

namespace iosnoma {

struct McConfig {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::uint64_t batch = 256;  // trials per work unit; fixes the merge tree
  unsigned workers = 1;

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double half_width_95 = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t sic_violations = 0;
};

inline constexpr double kZ95 = 1.959963984540054;

// Welford accumulator with the pairwise (Chan et al.) merge.
class RunningStats {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }

  void merge(const RunningStats& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n_), nb = static_cast<double>(o.n_);
    const double n = na + nb;
    const double d = o.mean_ - mean_;
    mean_ += d * nb / n;
    m2_ += o.m2_ + d * d * na * nb / n;
    n_ += o.n_;
  }

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  // Unbiased sample variance; 0 for fewer than two samples.
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double half_width_95() const {
    return n_ > 1 ? kZ95 * std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }
  McEstimate estimate(std::uint64_t sic_violations = 0) const {
    return {mean_, half_width_95(), n_, sic_violations};
  }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct SchemeEstimates {
  McEstimate r1, r2, rgm;
};

struct ErgodicRatesMc {
  SchemeEstimates noma;
  SchemeEstimates oma;
};

struct ChannelMomentsMc {
  McEstimate e_h2, e_h4, e_inv_h2;
};

// Per-trial channel powers, trial-indexed.
struct ChannelPowerSamples {
  std::vector<double> h1_sq, h2_sq;
};

// sqrt(mean1 * mean2) with a delta-method half-width, the two means taken as
// independent.
McEstimate geometric_mean_estimate(const McEstimate& r1, const McEstimate& r2);

// |h_user|^2 of one trial. Depends on (seed, trial, user) only.
double sample_channel_power(const SystemModel& model, int user, std::uint64_t seed, std::uint64_t trial,
                            std::vector<double>& scratch);

ErgodicRatesMc ergodic_rates_mc(const SystemModel& model, const McConfig& mc);
ErgodicRatesMc ergodic_rates_mc(const Scenario& scenario, const McConfig& mc);

ChannelMomentsMc channel_moments_mc(const SystemModel& model, int user, const McConfig& mc);

ChannelPowerSamples sample_channel_powers(const SystemModel& model, const McConfig& mc);

namespace detail {

// Runs fn(batch_index, begin, end) -> Partial for every batch on up to
// `workers` threads and returns the partials in batch order. The first
// exception thrown by any batch is rethrown.
template <class Partial, class Fn>
std::vector<Partial> run_batches(std::uint64_t trials, std::uint64_t batch, unsigned workers, Fn&& fn) {
  const std::uint64_t n_batches = (trials + batch - 1) / batch;
  std::vector<Partial> out(n_batches);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= n_batches) return;
      try {
        const std::uint64_t begin = b * batch;
        out[b] = fn(b, begin, std::min(trials, begin + batch));
      } catch (...) {
        std::lock_guard lk(err_mu);
        if (!err) err = std::current_exception();
        next.store(n_batches);
        return;
      }
    }
  };
  const unsigned n_threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), n_batches));
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace detail

}  // namespace iosnoma
