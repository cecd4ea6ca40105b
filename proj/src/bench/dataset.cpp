#include "reptensor/bench/dataset.hpp"

#include <algorithm>
#include <cctype>

#include "reptensor/bench/pgm.hpp"
#include "reptensor/error.hpp"

namespace reptensor::bench {

namespace fs = std::filesystem;

namespace {

bool is_graymap(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm" || ext == ".pnm";
}

// Weight of input cell [i, i+1) inside output cell [o*s, (o+1)*s).
double overlap(Index i, Index o, double scale) {
  const double lo = std::max<double>(static_cast<double>(i), o * scale);
  const double hi = std::min<double>(static_cast<double>(i + 1), (o + 1) * scale);
  return std::max(0.0, hi - lo);
}

Matrix area_weights(Index in, Index out) {
  const double scale = static_cast<double>(in) / static_cast<double>(out);
  Matrix w = Matrix::Zero(out, in);
  for (Index o = 0; o < out; ++o)
    for (Index i = static_cast<Index>(o * scale); i < in && i < (o + 1) * scale; ++i)
      w(o, i) = overlap(i, o, scale) / scale;
  return w;
}

}  // namespace

std::vector<Index> ImageDataset::class_counts() const {
  std::vector<Index> counts(class_names.size(), 0);
  for (Label l : labels) ++counts[static_cast<std::size_t>(l)];
  return counts;
}

Matrix resize_area(const Matrix& image, Index rows, Index cols) {
  if (rows < 1 || cols < 1) throw ParameterError("resize target must be positive");
  if (rows > image.rows() || cols > image.cols()) throw ParameterError("resize only shrinks images");
  return area_weights(image.rows(), rows) * image * area_weights(image.cols(), cols).transpose();
}

ImageDataset load_dataset(const fs::path& root, std::optional<Shape> resize) {
  if (!fs::is_directory(root)) throw DataError(root.string() + ": not a directory");
  std::vector<fs::path> classes;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory()) classes.push_back(e.path());
  std::sort(classes.begin(), classes.end());
  if (classes.empty()) throw DataError(root.string() + ": no class subdirectories");

  ImageDataset ds;
  ds.name = root.filename().empty() ? root.parent_path().filename().string() : root.filename().string();
  for (const auto& dir : classes) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file() && is_graymap(e.path())) files.push_back(e.path());
    if (files.empty()) continue;
    std::sort(files.begin(), files.end());
    const Label label = static_cast<Label>(ds.class_names.size());
    ds.class_names.push_back(dir.filename().string());
    for (const auto& f : files) {
      Matrix img = read_pgm(f);
      if (resize) img = resize_area(img, resize->first, resize->second);
      if (!ds.images.empty() && (img.rows() != ds.rows() || img.cols() != ds.cols()))
        throw DataError(f.string() + ": image is " + std::to_string(img.rows()) + "x" + std::to_string(img.cols()) +
                        ", expected " + std::to_string(ds.rows()) + "x" + std::to_string(ds.cols()));
      ds.images.push_back(std::move(img));
      ds.labels.push_back(label);
      ds.files.push_back(f.string());
    }
  }
  if (ds.images.empty()) throw DataError(root.string() + ": no graymap files found");
  return ds;
}

Tensor3 stack(const ImageDataset& ds, const std::vector<Index>& indices) {
  std::vector<Matrix> slices;
  slices.reserve(indices.size());
  for (Index i : indices) slices.push_back(ds.images.at(static_cast<std::size_t>(i)));
  return Tensor3::from_slices(slices);
}

std::vector<Label> labels_of(const ImageDataset& ds, const std::vector<Index>& indices) {
  std::vector<Label> out;
  out.reserve(indices.size());
  for (Index i : indices) out.push_back(ds.labels.at(static_cast<std::size_t>(i)));
  return out;
}

}  // namespace reptensor::bench
