#pragma once

#include <span>
#include <utility>
#include <vector>

#include "reptensor/tensor.hpp"

namespace reptensor::graph {

using Label = int;

/// Graph on vertices 0..n-1 with a dense weight matrix.
///
/// `neighbors[i]` lists the out-edges of i in ascending order; for a
/// symmetric graph the lists mirror each other. Weights outside the edge set
/// are exactly zero. Freshly built graphs carry binary (unit) weights.
struct WeightedGraph {
  std::vector<std::vector<Index>> neighbors;
  Matrix weights;
  bool symmetric = true;

  Index size() const { return static_cast<Index>(neighbors.size()); }
  bool has_edge(Index i, Index j) const;
  // Undirected edges (i < j) for symmetric graphs, directed pairs otherwise.
  std::vector<std::pair<Index, Index>> edges() const;
};

struct LaplacianBundle {
  Matrix laplacian;  // D - W
  Matrix degree;     // diagonal, d_ii = sum_j w_ij
};

// Builds a graph from explicit adjacency lists with unit weights.
WeightedGraph from_neighbors(std::vector<std::vector<Index>> neighbors, bool symmetric);

/// k-nearest-neighbor graph on the columns of `points` (Euclidean distance).
/// Each vertex selects its k nearest other vertices, distance ties going to
/// the smaller index; the result is the union of both directions.
WeightedGraph build_knn_graph(const Matrix& points, Index k);

// Edge (i, j), i != j, iff labels agree.
WeightedGraph build_label_graph(std::span<const Label> labels);

// exp(-||x_i - x_j||^2 / t) on edges, zero elsewhere.
WeightedGraph gaussian_weights(const WeightedGraph& g, const Matrix& points, double t);

// Unit weights on edges; the t -> 0 limit of the Gaussian scheme.
WeightedGraph binary_weights(const WeightedGraph& g);

// Mean squared edge length of g, used as the default Gaussian width. Falls
// back to 1 when g has no edges or all edges have zero length.
double default_heat_parameter(const WeightedGraph& g, const Matrix& points);

/// Locally linear reconstruction weights: row i minimizes
/// ||x_i - sum_j w_ij x_j||^2 over its neighbors subject to sum_j w_ij = 1.
/// A singular local Gram matrix G (lambda_min <= 1e-10 lambda_max) is
/// regularized with 1e-6 * trace(G) / k * I. The result is generally
/// asymmetric and may contain negative weights.
WeightedGraph lle_weights(const WeightedGraph& g, const Matrix& points);

inline constexpr double kLleRegularization = 1e-6;

// Requires symmetric weights; throws ContractError otherwise.
LaplacianBundle laplacian(const WeightedGraph& g);

// Edges of `affinity` that are not edges of `label`.
WeightedGraph build_repulsion_graph(const WeightedGraph& label, const WeightedGraph& affinity);

// Gaussian-weighted Laplacian of a repulsion graph.
LaplacianBundle repulsion_laplacian(const WeightedGraph& repulsion, const Matrix& points, double t);

}  // namespace reptensor::graph
