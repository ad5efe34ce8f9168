#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace prefsim {

/// Finalizer from the SplitMix64 generator; a bijective 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t x);

/// Stable 64-bit FNV-1a hash of a byte string.
std::uint64_t fnv1a64(std::string_view bytes);

/// Order-sensitive accumulator for deriving seeds from tuples of values.
/// The result depends only on the sequence of values fed in, never on the
/// platform or on pointer identity.
class SeedHasher {
 public:
  explicit SeedHasher(std::uint64_t seed = 0);

  SeedHasher& add(std::uint64_t value);
  SeedHasher& add(std::int64_t value) { return add(static_cast<std::uint64_t>(value)); }
  SeedHasher& add(int value) { return add(static_cast<std::int64_t>(value)); }
  SeedHasher& add(double value);
  SeedHasher& add(std::string_view text);

  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_;
};

/// A labelled, seeded stream of random values.
///
/// Two sources built from the same (seed, label) yield the same sequence.
/// Labels partition randomness by purpose, so a new consumer of randomness
/// never shifts the draws seen by an existing one.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::string label);

  std::uint64_t seed() const { return seed_; }
  const std::string& label() const { return label_; }

  /// Uniform real in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi] (inclusive).
  int uniform_int(int lo, int hi);
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);
  double normal(double mean = 0.0, double stddev = 1.0);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::string label_;
  std::mt19937_64 engine_;
};

}  // namespace prefsim
