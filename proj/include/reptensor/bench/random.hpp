#pragma once

#include <cstdint>
#include <vector>

#include "reptensor/bench/dataset.hpp"

namespace reptensor::bench {

// SplitMix64 (Steele, Lea, Flood 2014): state advances by the golden-ratio
// increment and every output is a fixed 64-bit finalizer of the state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform on [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal (Box-Muller, both halves used).
  double normal();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix64(std::uint64_t z);

// seed_r = mix64(master ^ mix64(realization + 0x9E3779B97F4A7C15))
std::uint64_t realization_seed(std::uint64_t master, std::uint64_t realization);

struct Split {
  std::vector<Index> train;  // ascending
  std::vector<Index> test;   // ascending
};

/// Classes are visited in ascending label order; each class's members (in
/// dataset order) are Fisher-Yates shuffled with one shared generator and
/// the first n_train become training items.
Split split(const std::vector<Label>& labels, Index n_train, std::uint64_t seed);

}  // namespace reptensor::bench
