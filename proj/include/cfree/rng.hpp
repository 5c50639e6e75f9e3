#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace cfree {

using Seed = std::uint64_t;

std::uint64_t splitmix64(std::uint64_t& state);

// Per-stage seed: the stage name is FNV-1a hashed, xor-ed into the master
// seed, and the result is passed through one splitmix64 round.
Seed derive_seed(Seed master, std::string_view stage);
Seed derive_seed(Seed master, std::string_view stage, std::uint64_t index);

// Portable generator. Everything above the raw engine is implemented here so
// that sampled instances are identical across standard libraries.
class Rng {
 public:
  explicit Rng(Seed seed);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }
  // Standard normal via Box-Muller.
  double normal();

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cfree
