#include "reptensor/bench/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "reptensor/bench/pgm.hpp"
#include "reptensor/bench/random.hpp"
#include "reptensor/error.hpp"

namespace reptensor::bench {

namespace fs = std::filesystem;

namespace {

Matrix gaussian(SplitMix64& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) m(r, c) = rng.normal();
  return m;
}

// Rank-2 pattern with unit RMS entry.
Matrix pattern(SplitMix64& rng, Index rows, Index cols) {
  Matrix p = gaussian(rng, rows, 2) * gaussian(rng, cols, 2).transpose();
  return p * (std::sqrt(static_cast<double>(rows * cols)) / p.norm());
}

// Frobenius-orthogonal to every earlier pattern, then rescaled to unit RMS.
Matrix orthogonal_pattern(SplitMix64& rng, Index rows, Index cols, const std::vector<Matrix>& earlier) {
  Matrix p = pattern(rng, rows, cols);
  for (const auto& e : earlier) p -= (p.cwiseProduct(e).sum() / e.squaredNorm()) * e;
  return p * (std::sqrt(static_cast<double>(rows * cols)) / p.norm());
}

}  // namespace

ImageDataset make_synthetic(const SyntheticParams& params) {
  if (params.classes < 2 || params.per_class < 2 || params.rows < 1 || params.cols < 1)
    throw ParameterError("synthetic dataset needs at least 2 classes of 2 images");
  SplitMix64 rng(params.seed);
  const Index m1 = params.rows;
  const Index m2 = params.cols;

  std::vector<Matrix> basis;
  for (Index i = 0; i < params.classes + 2; ++i) basis.push_back(orthogonal_pattern(rng, m1, m2, basis));
  const Matrix& shared_mean = basis[0];
  const Matrix& nuisance = basis[1];
  std::vector<Matrix> means;
  for (Index c = 0; c < params.classes; ++c) {
    const Matrix& own = basis[static_cast<std::size_t>(c + 2)];
    means.push_back(c < 2 ? Matrix(shared_mean + params.distinct_scale * own) : Matrix(params.prototype_scale * own));
  }

  ImageDataset ds;
  ds.name = "synthetic";
  for (Index c = 0; c < params.classes; ++c) {
    char name[32];
    std::snprintf(name, sizeof name, "class%02d", static_cast<int>(c));
    ds.class_names.emplace_back(name);
    for (Index k = 0; k < params.per_class; ++k) {
      Matrix x = means[static_cast<std::size_t>(c)] + params.noise * gaussian(rng, m1, m2);
      if (c < 2) x += params.shared_scale * rng.normal() * nuisance;
      ds.images.push_back(std::move(x));
      ds.labels.push_back(static_cast<Label>(c));
      char file[32];
      std::snprintf(file, sizeof file, "%03d.pgm", static_cast<int>(k));
      ds.files.push_back(ds.class_names.back() + "/" + file);
    }
  }
  return ds;
}

void write_dataset(const ImageDataset& ds, const fs::path& dir) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& img : ds.images) {
    lo = std::min(lo, img.minCoeff());
    hi = std::max(hi, img.maxCoeff());
  }
  const double span = hi > lo ? hi - lo : 1.0;

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir.string() + ": " + ec.message());
  std::vector<Index> seen(ds.class_names.size(), 0);
  for (std::size_t i = 0; i < ds.images.size(); ++i) {
    const auto label = static_cast<std::size_t>(ds.labels[i]);
    const fs::path class_dir = dir / ds.class_names[label];
    fs::create_directories(class_dir, ec);
    if (ec) throw IoError(class_dir.string() + ": " + ec.message());
    char file[32];
    std::snprintf(file, sizeof file, "%03d.pgm", static_cast<int>(seen[label]++));
    write_pgm(class_dir / file, (ds.images[i].array() - lo) / span, 65535);
  }
}

}  // namespace reptensor::bench
