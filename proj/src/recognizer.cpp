#include "reptensor/recognizer.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <thread>

#include "reptensor/error.hpp"

namespace reptensor::recognizer {

namespace {

Label nearest(const double* query, Index len, const GallerySet& gallery) {
  const auto cols = gallery.projected.slices_as_columns();
  const Eigen::Map<const Vector> q(query, len);
  double best = std::numeric_limits<double>::infinity();
  Index arg = 0;
  for (Index k = 0; k < cols.cols(); ++k) {
    const double dist = (cols.col(k) - q).squaredNorm();
    if (dist < best) {
      best = dist;
      arg = k;
    }
  }
  return gallery.labels[static_cast<std::size_t>(arg)];
}

void require_query(Index rows, Index cols, const GallerySet& gallery) {
  if (gallery.size() == 0) throw ParameterError("1-NN gallery is empty");
  if (rows != gallery.projected.dim(Mode::first) || cols != gallery.projected.dim(Mode::second))
    throw ShapeError("query is " + std::to_string(rows) + "x" + std::to_string(cols) + ", gallery items are " +
                     std::to_string(gallery.projected.dim(Mode::first)) + "x" +
                     std::to_string(gallery.projected.dim(Mode::second)));
}

}  // namespace

GallerySet::GallerySet(Tensor3 projected_, std::vector<Label> labels_)
    : projected(std::move(projected_)), labels(std::move(labels_)) {
  if (static_cast<Index>(labels.size()) != projected.dim(Mode::third))
    throw ShapeError("gallery label count differs from the number of projected items");
}

Matrix project(const Matrix& x, const embed2d::ProjectorPair& pair) {
  if (x.rows() != pair.u.rows() || x.cols() != pair.v.rows())
    throw ShapeError("image is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                     ", projectors expect " + std::to_string(pair.u.rows()) + "x" + std::to_string(pair.v.rows()));
  return pair.u.transpose() * x * pair.v;
}

GallerySet build_gallery(const Tensor3& train, std::span<const Label> labels,
                         const embed2d::ProjectorPair& pair) {
  if (train.dim(Mode::first) != pair.u.rows() || train.dim(Mode::second) != pair.v.rows())
    throw ShapeError("training images do not match the projectors");
  return GallerySet(embed2d::project_tensor(train, pair), std::vector<Label>(labels.begin(), labels.end()));
}

Label classify_1nn(const Matrix& y, const GallerySet& gallery) {
  require_query(y.rows(), y.cols(), gallery);
  return nearest(y.data(), y.size(), gallery);
}

std::vector<Label> classify_batch(const Tensor3& queries, const GallerySet& gallery, int jobs) {
  const Index n = queries.dim(Mode::third);
  std::vector<Label> out(static_cast<std::size_t>(n));
  if (n == 0) return out;
  require_query(queries.dim(Mode::first), queries.dim(Mode::second), gallery);

  const Index len = queries.dim(Mode::first) * queries.dim(Mode::second);
  auto run = [&](Index begin, Index end) {
    for (Index k = begin; k < end; ++k)
      out[static_cast<std::size_t>(k)] = nearest(queries.data().data() + k * len, len, gallery);
  };
  const Index workers = std::clamp<Index>(jobs, 1, n);
  if (workers == 1) {
    run(0, n);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    const Index chunk = (n + workers - 1) / workers;
    for (Index b = 0; b < n; b += chunk) pool.emplace_back(run, b, std::min(n, b + chunk));
  }
  return out;
}

double error_rate(std::span<const Label> predictions, std::span<const Label> truth) {
  if (predictions.size() != truth.size())
    throw ShapeError("prediction count " + std::to_string(predictions.size()) + " differs from truth count " +
                     std::to_string(truth.size()));
  if (truth.empty()) return 0.0;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) wrong += predictions[i] != truth[i];
  return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

}  // namespace reptensor::recognizer
