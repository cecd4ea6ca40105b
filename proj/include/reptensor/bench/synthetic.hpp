#pragma once

#include <cstdint>
#include <filesystem>

#include "reptensor/bench/dataset.hpp"

namespace reptensor::bench {

/// Matrix-valued classes with controllable confusion. All patterns are
/// rank-2 and mutually Frobenius-orthogonal. Classes 2.. sit on their own
/// prototype. Classes 0 and 1 share a mean pattern plus a nuisance pattern
/// with a random per-sample amplitude, and differ only by a weaker pattern
/// of their own, so their members are each other's input-space neighbours.
struct SyntheticParams {
  Index classes = 4;
  Index per_class = 30;
  Index rows = 8;
  Index cols = 8;
  double prototype_scale = 1.0;
  double shared_scale = 2.0;    // amplitude spread of the shared pattern
  double distinct_scale = 1.0;  // weight of the confusable pair's own patterns
  double noise = 1.5;           // i.i.d. Gaussian pixel noise
  std::uint64_t seed = 1;
};

ImageDataset make_synthetic(const SyntheticParams& params);

// Writes <dir>/<class>/<nn>.pgm after an affine map of the whole dataset
// onto [0, 1] (16-bit samples).
void write_dataset(const ImageDataset& ds, const std::filesystem::path& dir);

}  // namespace reptensor::bench
