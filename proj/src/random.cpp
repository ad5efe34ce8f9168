#include "prefsim/random.hpp"

#include <bit>
#include <utility>

namespace prefsim {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SeedHasher::SeedHasher(std::uint64_t seed) : state_(splitmix64(seed)) {}

SeedHasher& SeedHasher::add(std::uint64_t value) {
  state_ = splitmix64(state_ ^ splitmix64(value));
  return *this;
}

SeedHasher& SeedHasher::add(double value) {
  // -0.0 and 0.0 hash identically
  if (value == 0.0) value = 0.0;
  return add(std::bit_cast<std::uint64_t>(value));
}

SeedHasher& SeedHasher::add(std::string_view text) {
  add(static_cast<std::uint64_t>(text.size()));
  return add(fnv1a64(text));
}

RandomSource::RandomSource(std::uint64_t seed, std::string label)
    : seed_(seed),
      label_(std::move(label)),
      engine_(SeedHasher(seed).add(std::string_view(label_)).value()) {}

double RandomSource::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int RandomSource::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

std::size_t RandomSource::index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

double RandomSource::normal(double mean, double stddev) {
  return std::normal_distribution<double>(mean, stddev)(engine_);
}

}  // namespace prefsim
