#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reptensor/graph.hpp"
#include "reptensor/tensor.hpp"

namespace reptensor::bench {

using graph::Label;

struct ImageDataset {
  std::string name;
  std::vector<Matrix> images;
  std::vector<Label> labels;             // index into class_names
  std::vector<std::string> class_names;  // lexicographic directory order
  std::vector<std::string> files;

  Index size() const { return static_cast<Index>(images.size()); }
  Index rows() const { return images.empty() ? 0 : images.front().rows(); }
  Index cols() const { return images.empty() ? 0 : images.front().cols(); }
  std::vector<Index> class_counts() const;
};

using Shape = std::pair<Index, Index>;  // (rows, cols)

// Block average; when the shape does not divide evenly every output pixel
// averages the input area it covers, weighting partially covered pixels.
Matrix resize_area(const Matrix& image, Index rows, Index cols);

/// One subdirectory per class, graymap files inside (.pgm/.pnm, any case).
/// Directories and files are visited in lexicographic order.
ImageDataset load_dataset(const std::filesystem::path& root, std::optional<Shape> resize = std::nullopt);

// Images in the given order stacked as frontal slices.
Tensor3 stack(const ImageDataset& ds, const std::vector<Index>& indices);
std::vector<Label> labels_of(const ImageDataset& ds, const std::vector<Index>& indices);

}  // namespace reptensor::bench
