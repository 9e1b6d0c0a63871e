#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace prefforge {

using Seed = std::uint64_t;

// Deterministic, splittable random source.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distributions are implemented here rather than taken from
// <random> because the standard leaves their algorithms to the vendor, and
// sampled elections must be identical on every platform for a given seed.
//
// Streams are derived from (seed, stream id) only, never from the state of
// another generator, so vote i of an election can be produced independently
// of votes 0..i-1.
class Rng {
 public:
  explicit Rng(Seed seed, std::uint64_t stream = 0);

  // A generator for a sub-stream; depends only on this generator's
  // (seed, stream) identity, not on how many numbers were drawn from it.
  Rng split(std::uint64_t child) const;

  Seed seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform integer on [lo, hi] (inclusive).
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p);
  double normal(double mean = 0.0, double sd = 1.0);
  // Marsaglia-Tsang; shape and scale must be positive.
  double gamma(double shape, double scale);

  // Index drawn with probability proportional to weights[i].
  std::size_t discrete(std::span<const double> weights);

  template <class T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = below(i);
      std::swap(values[i - 1], values[j]);
    }
  }

  template <class T>
  void shuffle(std::vector<T>& values) {
    shuffle(std::span<T>(values));
  }

  // Uniformly random permutation of 0..size-1.
  std::vector<int> permutation(int size);

 private:
  Seed seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace prefforge
