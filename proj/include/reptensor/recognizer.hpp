#pragma once

#include <span>
#include <vector>

#include "reptensor/embed2d.hpp"

// Nearest-neighbour recognition in the projected space.
namespace reptensor::recognizer {

using graph::Label;

struct GallerySet {
  Tensor3 projected;  // d1 x d2 x n
  std::vector<Label> labels;

  GallerySet() = default;
  GallerySet(Tensor3 projected, std::vector<Label> labels);

  Index size() const { return projected.dim(Mode::third); }
};

// Y = U^T X V
Matrix project(const Matrix& x, const embed2d::ProjectorPair& pair);

GallerySet build_gallery(const Tensor3& train, std::span<const Label> labels,
                         const embed2d::ProjectorPair& pair);

// Label of the Frobenius-nearest gallery item; ties go to the lowest index.
Label classify_1nn(const Matrix& y, const GallerySet& gallery);

// Classifies every frontal slice of `queries` (already projected). Queries
// are split across up to `jobs` threads; results keep query order.
std::vector<Label> classify_batch(const Tensor3& queries, const GallerySet& gallery, int jobs = 1);

double error_rate(std::span<const Label> predictions, std::span<const Label> truth);

}  // namespace reptensor::recognizer
