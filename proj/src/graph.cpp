#include "reptensor/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "reptensor/error.hpp"

namespace reptensor::graph {

namespace {

double squared_distance(const Matrix& points, Index i, Index j) {
  return (points.col(i) - points.col(j)).squaredNorm();
}

void require_points(const WeightedGraph& g, const Matrix& points) {
  if (points.cols() != g.size())
    throw ShapeError("graph has " + std::to_string(g.size()) + " vertices but " +
                     std::to_string(points.cols()) + " points were given");
}

}  // namespace

bool WeightedGraph::has_edge(Index i, Index j) const {
  const auto& row = neighbors[static_cast<std::size_t>(i)];
  return std::binary_search(row.begin(), row.end(), j);
}

std::vector<std::pair<Index, Index>> WeightedGraph::edges() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index i = 0; i < size(); ++i)
    for (Index j : neighbors[static_cast<std::size_t>(i)])
      if (!symmetric || i < j) out.emplace_back(i, j);
  return out;
}

WeightedGraph from_neighbors(std::vector<std::vector<Index>> neighbors, bool symmetric) {
  const Index n = static_cast<Index>(neighbors.size());
  WeightedGraph g{std::move(neighbors), Matrix::Zero(n, n), symmetric};
  for (Index i = 0; i < n; ++i) {
    auto& row = g.neighbors[static_cast<std::size_t>(i)];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    for (Index j : row) {
      if (j < 0 || j >= n || j == i) throw ParameterError("invalid neighbor index in adjacency list");
      g.weights(i, j) = 1.0;
    }
  }
  return g;
}

WeightedGraph build_knn_graph(const Matrix& points, Index k) {
  const Index n = points.cols();
  if (k < 1 || k >= n)
    throw ParameterError("kNN graph needs 1 <= k < n (k = " + std::to_string(k) +
                         ", n = " + std::to_string(n) + ")");

  Matrix dist = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = j + 1; i < n; ++i) dist(i, j) = dist(j, i) = squared_distance(points, i, j);

  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  std::vector<Index> order;
  for (Index i = 0; i < n; ++i) {
    order.clear();
    for (Index j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](Index a, Index b) {
      return dist(i, a) != dist(i, b) ? dist(i, a) < dist(i, b) : a < b;
    });
    for (Index c = 0; c < k; ++c) {
      adj[static_cast<std::size_t>(i)].push_back(order[static_cast<std::size_t>(c)]);
      adj[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])].push_back(i);
    }
  }
  return from_neighbors(std::move(adj), true);
}

WeightedGraph build_label_graph(std::span<const Label> labels) {
  const std::size_t n = labels.size();
  std::vector<std::vector<Index>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && labels[i] == labels[j]) adj[i].push_back(static_cast<Index>(j));
  return from_neighbors(std::move(adj), true);
}

WeightedGraph gaussian_weights(const WeightedGraph& g, const Matrix& points, double t) {
  if (!(t > 0.0)) throw ParameterError("Gaussian width t must be positive");
  require_points(g, points);
  WeightedGraph out = g;
  out.weights.setZero();
  for (Index i = 0; i < g.size(); ++i) {
    for (Index j : g.neighbors[static_cast<std::size_t>(i)]) {
      // Computed once per unordered pair so symmetric graphs stay exactly symmetric.
      const Index a = std::min(i, j);
      const Index b = std::max(i, j);
      out.weights(i, j) = std::exp(-squared_distance(points, a, b) / t);
    }
  }
  return out;
}

WeightedGraph binary_weights(const WeightedGraph& g) {
  WeightedGraph out = g;
  out.weights.setZero();
  for (Index i = 0; i < g.size(); ++i)
    for (Index j : g.neighbors[static_cast<std::size_t>(i)]) out.weights(i, j) = 1.0;
  return out;
}

double default_heat_parameter(const WeightedGraph& g, const Matrix& points) {
  require_points(g, points);
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& [i, j] : g.edges()) {
    sum += squared_distance(points, i, j);
    ++count;
  }
  if (count == 0 || !(sum > 0.0)) return 1.0;
  return sum / static_cast<double>(count);
}

WeightedGraph lle_weights(const WeightedGraph& g, const Matrix& points) {
  require_points(g, points);
  WeightedGraph out = g;
  out.symmetric = false;
  out.weights.setZero();

  for (Index i = 0; i < g.size(); ++i) {
    const auto& nb = g.neighbors[static_cast<std::size_t>(i)];
    const Index k = static_cast<Index>(nb.size());
    if (k == 0)
      throw ParameterError("vertex " + std::to_string(i) + " has no neighbors for LLE weights");

    Matrix diff(points.rows(), k);
    for (Index c = 0; c < k; ++c) diff.col(c) = points.col(nb[static_cast<std::size_t>(c)]) - points.col(i);
    Matrix gram = diff.transpose() * diff;

    Vector w;
    const double trace = gram.trace();
    if (!(trace > 0.0)) {
      // Every neighbor coincides with x_i: any affine combination is exact.
      w = Vector::Constant(k, 1.0 / static_cast<double>(k));
    } else {
      Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
      const double lo = es.eigenvalues()(0);
      const double hi = es.eigenvalues()(k - 1);
      if (lo <= 1e-10 * hi)
        gram.diagonal().array() += kLleRegularization * trace / static_cast<double>(k);
      w = gram.ldlt().solve(Vector::Ones(k));
      w /= w.sum();
    }
    for (Index c = 0; c < k; ++c) out.weights(i, nb[static_cast<std::size_t>(c)]) = w(c);
  }
  return out;
}

LaplacianBundle laplacian(const WeightedGraph& g) {
  const Matrix& w = g.weights;
  if (!g.symmetric || (w - w.transpose()).norm() > 1e-12 * std::max(1.0, w.norm()))
    throw ContractError("graph Laplacian requires symmetric weights");
  LaplacianBundle out;
  out.degree = w.rowwise().sum().asDiagonal();
  out.laplacian = out.degree - w;
  return out;
}

WeightedGraph build_repulsion_graph(const WeightedGraph& label, const WeightedGraph& affinity) {
  if (label.size() != affinity.size())
    throw ShapeError("label and affinity graphs differ in vertex count");
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(affinity.size()));
  for (Index i = 0; i < affinity.size(); ++i)
    for (Index j : affinity.neighbors[static_cast<std::size_t>(i)])
      if (!label.has_edge(i, j)) adj[static_cast<std::size_t>(i)].push_back(j);
  return from_neighbors(std::move(adj), label.symmetric && affinity.symmetric);
}

LaplacianBundle repulsion_laplacian(const WeightedGraph& repulsion, const Matrix& points, double t) {
  return laplacian(gaussian_weights(repulsion, points, t));
}

}  // namespace reptensor::graph
