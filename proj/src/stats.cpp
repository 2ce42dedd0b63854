#include "tropvol/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace tropvol {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

namespace {
std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) {
    x = splitmix64(x);
    s = x;
  }
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

std::vector<ShardRange> make_shards(std::size_t n, std::size_t shard_size) {
  std::vector<ShardRange> out;
  for (std::size_t begin = 0, i = 0; begin < n; begin += shard_size, ++i) {
    out.push_back({i, begin, std::min(n, begin + shard_size)});
  }
  return out;
}

void for_each_shard(std::span<const ShardRange> shards, unsigned threads,
                    const std::function<void(const ShardRange&)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, shards.size())));
  if (threads <= 1) {
    for (const auto& s : shards) fn(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= shards.size()) return;
      try {
        fn(shards[k]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = shards.size();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

bool Estimate::within(double target, double k) const {
  const double slack = 1e-12 * std::max(std::abs(target), std::abs(value));
  return std::abs(value - target) <= k * stderr_ + slack;
}

double Estimate::z_score(double target) const {
  if (stderr_ == 0) return value == target ? 0.0 : INFINITY;
  return (value - target) / stderr_;
}

void Accumulator::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void Accumulator::merge(const Accumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / (na + nb);
  m2_ += other.m2_ + delta * delta * na * nb / (na + nb);
  n_ += other.n_;
}

Estimate Accumulator::mean() const {
  if (n_ == 0) return {};
  const double n = static_cast<double>(n_);
  const double var = n_ > 1 ? std::max(0.0, m2_ / (n - 1)) : 0.0;
  return {mean_, std::sqrt(var / n), n_};
}

double weighted_ks_distance(std::vector<WeightedPoint> points, const std::function<double(double)>& cdf) {
  double total = 0;
  for (const auto& p : points) {
    if (p.weight < 0) throw std::invalid_argument("weighted_ks_distance: negative weight");
    total += p.weight;
  }
  if (total <= 0) throw std::invalid_argument("weighted_ks_distance: no mass");
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  double acc = 0, d = 0;
  for (std::size_t i = 0; i < points.size();) {
    const double x = points[i].x;
    const double before = acc / total;
    while (i < points.size() && points[i].x == x) acc += points[i++].weight;
    const double f = cdf(x);
    d = std::max({d, std::abs(before - f), std::abs(acc / total - f)});
  }
  return d;
}

double effective_sample_size(std::span<const WeightedPoint> points) {
  double s = 0, s2 = 0;
  for (const auto& p : points) {
    s += p.weight;
    s2 += p.weight * p.weight;
  }
  return s2 > 0 ? s * s / s2 : 0.0;
}

Histogram1D::Histogram1D(double lo_, double hi_, std::size_t bins)
    : lo(lo_), hi(hi_), mass(bins, 0.0), mass_sq(bins, 0.0), counts(bins, 0) {
  if (bins == 0 || !(hi > lo)) throw std::invalid_argument("Histogram1D: need bins > 0 and hi > lo");
}

void Histogram1D::add(double x, double weight) {
  const double f = (x - lo) / (hi - lo) * static_cast<double>(mass.size());
  const auto k = static_cast<std::size_t>(std::clamp(f, 0.0, static_cast<double>(mass.size() - 1)));
  mass[k] += weight;
  mass_sq[k] += weight * weight;
  ++counts[k];
}

double Histogram1D::center(std::size_t bin) const {
  return lo + (static_cast<double>(bin) + 0.5) * (hi - lo) / static_cast<double>(mass.size());
}

double Histogram1D::total() const {
  double t = 0;
  for (double m : mass) t += m;
  return t;
}

}  // namespace tropvol
