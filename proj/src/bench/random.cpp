#include "reptensor/bench/random.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "reptensor/error.hpp"

namespace reptensor::bench {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix64(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("empty sampling range");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % bound;
  }
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t realization_seed(std::uint64_t master, std::uint64_t realization) {
  return mix64(master ^ mix64(realization + kGolden));
}

Split split(const std::vector<Label>& labels, Index n_train, std::uint64_t seed) {
  if (n_train < 1) throw ParameterError("train-per-class must be positive");
  std::map<Label, std::vector<Index>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(static_cast<Index>(i));

  SplitMix64 rng(seed);
  Split out;
  for (auto& [label, idx] : members) {
    const Index count = static_cast<Index>(idx.size());
    if (count <= n_train)
      throw ParameterError("class " + std::to_string(label) + " has " + std::to_string(count) +
                           " images; need more than " + std::to_string(n_train));
    for (std::size_t i = idx.size() - 1; i > 0; --i) std::swap(idx[i], idx[rng.below(i + 1)]);
    out.train.insert(out.train.end(), idx.begin(), idx.begin() + n_train);
    out.test.insert(out.test.end(), idx.begin() + n_train, idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

}  // namespace reptensor::bench
