#pragma once

// Random numbers, sharded Monte-Carlo plumbing and the small statistics
// toolkit shared by the samplers.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace tropvol {

std::uint64_t splitmix64(std::uint64_t x);

/// Sub-seed of shard `index` for a run seeded with `seed`.
std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index);

/// xoshiro256** seeded through splitmix64; output is platform independent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., n-1}.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t s_[4];
};

/// Work is cut into shards of fixed size so results do not depend on the
/// number of threads.
inline constexpr std::size_t kShardSize = 1 << 14;

struct ShardRange {
  std::size_t index;
  std::size_t begin;
  std::size_t end;
};

std::vector<ShardRange> make_shards(std::size_t n, std::size_t shard_size = kShardSize);

/// Runs fn on every shard using up to `threads` workers (0 = hardware
/// concurrency). fn must only write to state owned by its shard. The first
/// exception thrown by a worker is rethrown.
void for_each_shard(std::span<const ShardRange> shards, unsigned threads,
                    const std::function<void(const ShardRange&)>& fn);

/// Mean and standard error of an i.i.d. sum estimator.
struct Estimate {
  double value = 0;
  double stderr_ = 0;
  std::size_t n = 0;

  /// |value - target| <= k stderr, with a relative slack of 1e-12 so exact
  /// (zero-variance) estimators compare equal to their targets.
  bool within(double target, double k = 3.0) const;
  double z_score(double target) const;
};

/// Welford mean and variance of a scalar estimator.
class Accumulator {
 public:
  void add(double x);
  void merge(const Accumulator& other);
  std::size_t count() const { return n_; }
  double sum() const { return mean_ * static_cast<double>(n_); }
  /// Sample mean with its standard error.
  Estimate mean() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0;
  double m2_ = 0;
};

struct WeightedPoint {
  double x;
  double weight;
};

/// sup_x |F_w(x) - cdf(x)| for the weight-normalized empirical CDF. Points
/// with zero weight are ignored; negative weights are rejected.
double weighted_ks_distance(std::vector<WeightedPoint> points, const std::function<double(double)>& cdf);

/// Kish effective sample size (sum w)^2 / sum w^2.
double effective_sample_size(std::span<const WeightedPoint> points);

/// Weighted histogram on a regular grid over [lo, hi]; values outside are clamped
/// into the edge bins.
struct Histogram1D {
  double lo = 0;
  double hi = 1;
  std::vector<double> mass;
  std::vector<double> mass_sq;
  std::vector<std::size_t> counts;

  Histogram1D(double lo, double hi, std::size_t bins);
  void add(double x, double weight);
  double center(std::size_t bin) const;
  double total() const;
};

}  // namespace tropvol
