#include <gtest/gtest.h>

#include <random>
#include <set>

#include "reptensor/error.hpp"
#include "reptensor/graph.hpp"
#include "reptensor/spectral.hpp"
#include "support.hpp"

using namespace reptensor;
using namespace reptensor::graph;
using namespace testing_support;

namespace {

using EdgeSet = std::set<std::pair<Index, Index>>;

EdgeSet edge_set(const WeightedGraph& g) {
  const auto e = g.edges();
  return EdgeSet(e.begin(), e.end());
}

double lle_residual(const Matrix& x, Index i, const std::vector<Index>& nbrs, const Vector& w) {
  Vector r = x.col(i);
  for (std::size_t a = 0; a < nbrs.size(); ++a) r -= w(static_cast<Index>(a)) * x.col(nbrs[a]);
  return r.squaredNorm();
}

}  // namespace

TEST(KnnGraph, CollinearPointsNearestOnly) {
  Matrix x(1, 3);
  x << 0, 1, 2;
  const auto g = build_knn_graph(x, 1);
  EXPECT_EQ(edge_set(g), (EdgeSet{{0, 1}, {1, 2}}));
  EXPECT_TRUE(g.symmetric);
}

TEST(KnnGraph, FullNeighbourhoodIsComplete) {
  std::mt19937_64 rng(1);
  const Matrix x = random_matrix(rng, 3, 5);
  const auto g = build_knn_graph(x, 4);
  EXPECT_EQ(g.edges().size(), 10u);
}

TEST(KnnGraph, DuplicatesBreakTiesByLowerIndex) {
  Matrix x(1, 4);
  x << 0, 5, 5, 5;
  const auto g = build_knn_graph(x, 1);
  // vertex 1 picks 2, vertex 2 picks 1, vertex 3 picks 1, vertex 0 picks 1
  EXPECT_EQ(edge_set(g), (EdgeSet{{0, 1}, {1, 2}, {1, 3}}));
  EXPECT_EQ(edge_set(build_knn_graph(x, 1)), edge_set(g));
}

TEST(KnnGraph, NoSelfLoopsAndUnionSymmetric) {
  std::mt19937_64 rng(2);
  const Matrix x = random_matrix(rng, 4, 20);
  const auto g = build_knn_graph(x, 3);
  for (Index i = 0; i < 20; ++i) {
    EXPECT_FALSE(g.has_edge(i, i));
    EXPECT_GE(static_cast<Index>(g.neighbors[static_cast<std::size_t>(i)].size()), 3);
    for (Index j : g.neighbors[static_cast<std::size_t>(i)]) EXPECT_TRUE(g.has_edge(j, i));
  }
  EXPECT_EQ(g.weights, g.weights.transpose());
}

TEST(KnnGraph, InvalidKThrows) {
  const Matrix x = Matrix::Zero(2, 3);
  EXPECT_THROW(build_knn_graph(x, 3), ParameterError);
  EXPECT_THROW(build_knn_graph(x, 0), ParameterError);
}

TEST(LabelGraph, Examples) {
  const std::vector<Label> a{1, 1, 2};
  EXPECT_EQ(edge_set(build_label_graph(a)), (EdgeSet{{0, 1}}));
  const std::vector<Label> b{1, 2, 3};
  EXPECT_TRUE(build_label_graph(b).edges().empty());
  const std::vector<Label> c{1, 1, 1};
  EXPECT_EQ(edge_set(build_label_graph(c)), (EdgeSet{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(GaussianWeights, AnalyticValues) {
  Matrix x(2, 3);
  x << 0, 0, 1,
       0, 0, 1;
  const auto g = from_neighbors({{1, 2}, {0}, {0}}, true);
  const auto w = gaussian_weights(g, x, 2.0);
  EXPECT_DOUBLE_EQ(w.weights(0, 1), 1.0);            // coincident points
  EXPECT_NEAR(w.weights(0, 2), std::exp(-1.0), 1e-15);  // squared distance equals t
  EXPECT_EQ(w.weights(1, 2), 0.0);                    // not an edge
  EXPECT_THROW(gaussian_weights(g, x, 0.0), ParameterError);
  EXPECT_THROW(gaussian_weights(g, x, -1.0), ParameterError);
}

TEST(GaussianWeights, BinaryLimitAndDefaultWidth) {
  Matrix x(1, 3);
  x << 0, 1, 3;
  const auto g = from_neighbors({{1, 2}, {0}, {0}}, true);
  const auto b = binary_weights(g);
  EXPECT_EQ(b.weights(0, 1), 1.0);
  EXPECT_EQ(b.weights(0, 2), 1.0);
  EXPECT_EQ(b.weights(1, 2), 0.0);
  EXPECT_DOUBLE_EQ(default_heat_parameter(g, x), (1.0 + 9.0) / 2.0);
  EXPECT_EQ(default_heat_parameter(from_neighbors({{}, {}, {}}, true), x), 1.0);
}

TEST(LleWeights, SingleIdenticalNeighbour) {
  Matrix x(2, 2);
  x << 1, 1,
       2, 2;
  const auto w = lle_weights(from_neighbors({{1}, {0}}, true), x);
  EXPECT_NEAR(w.weights(0, 1), 1.0, 1e-12);
  EXPECT_NEAR(lle_residual(x, 0, {1}, Vector::Ones(1)), 0.0, 1e-24);
}

TEST(LleWeights, MidpointGetsHalfHalf) {
  Matrix x(1, 3);
  x << 1, 0, 2;
  const auto w = lle_weights(from_neighbors({{1, 2}, {0}, {0}}, true), x);
  EXPECT_NEAR(w.weights(0, 1), 0.5, 1e-6);
  EXPECT_NEAR(w.weights(0, 2), 0.5, 1e-6);
}

TEST(LleWeights, MatchesKktSolveOnGeneralPosition) {
  std::mt19937_64 rng(3);
  const Matrix x = random_matrix(rng, 6, 12);
  const auto g = build_knn_graph(x, 3);
  const auto w = lle_weights(g, x);
  for (Index i = 0; i < 12; ++i) {
    const auto& nb = g.neighbors[static_cast<std::size_t>(i)];
    const Index k = static_cast<Index>(nb.size());
    if (k > x.rows()) continue;  // singular local Gram: regularized, not exact
    // [2G e; e^T 0][w; mu] = [0; 1], G_ab = (x_i - x_a)^T (x_i - x_b)
    Matrix kkt = Matrix::Zero(k + 1, k + 1);
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b)
        kkt(a, b) = 2.0 * (x.col(i) - x.col(nb[static_cast<std::size_t>(a)]))
                              .dot(x.col(i) - x.col(nb[static_cast<std::size_t>(b)]));
    kkt.block(0, k, k, 1).setOnes();
    kkt.block(k, 0, 1, k).setOnes();
    Vector rhs = Vector::Zero(k + 1);
    rhs(k) = 1.0;
    const Vector sol = kkt.fullPivLu().solve(rhs);
    for (Index a = 0; a < k; ++a) EXPECT_NEAR(w.weights(i, nb[static_cast<std::size_t>(a)]), sol(a), 1e-8);
  }
}

TEST(LleWeights, RowsSumToOneAndBeatRandomFeasibleWeights) {
  std::mt19937_64 rng(4);
  const Matrix x = random_matrix(rng, 3, 15);  // 6 neighbours in 3-D: singular local Gram
  const auto g = build_knn_graph(x, 6);
  const auto w = lle_weights(g, x);
  EXPECT_FALSE(w.symmetric);
  std::normal_distribution<double> n;
  for (Index i = 0; i < 15; ++i) {
    EXPECT_NEAR(w.weights.row(i).sum(), 1.0, 1e-10);
    const auto& nb = g.neighbors[static_cast<std::size_t>(i)];
    const Index k = static_cast<Index>(nb.size());
    Vector own(k);
    for (Index a = 0; a < k; ++a) own(a) = w.weights(i, nb[static_cast<std::size_t>(a)]);
    const double best = lle_residual(x, i, nb, own);
    for (int trial = 0; trial < 1000; ++trial) {
      Vector r(k);
      for (Index a = 0; a < k; ++a) r(a) = n(rng);
      r.array() += (1.0 - r.sum()) / static_cast<double>(k);
      EXPECT_LE(best, lle_residual(x, i, nb, r) + 1e-6 * x.squaredNorm() / 15.0);
    }
  }
}

TEST(LleWeights, IsolatedVertexThrows) {
  EXPECT_THROW(lle_weights(from_neighbors({{}, {}}, true), Matrix::Zero(2, 2)), ParameterError);
}

TEST(Laplacian, SingleEdge) {
  WeightedGraph g = from_neighbors({{1}, {0}}, true);
  g.weights << 0, 0.7, 0.7, 0;
  const auto l = laplacian(g);
  EXPECT_EQ(l.laplacian, (Matrix(2, 2) << 0.7, -0.7, -0.7, 0.7).finished());
  EXPECT_EQ(l.degree, (Matrix(2, 2) << 0.7, 0, 0, 0.7).finished());
}

TEST(Laplacian, RowSumsZeroAndPsd) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix x = random_matrix(rng, 3, 12);
    const auto g = gaussian_weights(build_knn_graph(x, 4), x, 1.5);
    const auto l = laplacian(g);
    EXPECT_LE((l.laplacian * Vector::Ones(12)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(l.laplacian, l.laplacian.transpose());
    EXPECT_GE(spectral::min_eigenvalue(l.laplacian), -1e-10);
  }
}

TEST(Laplacian, AsymmetricInputThrows) {
  std::mt19937_64 rng(6);
  const Matrix x = random_matrix(rng, 2, 6);
  EXPECT_THROW(laplacian(lle_weights(build_knn_graph(x, 2), x)), ContractError);
}

TEST(RepulsionGraph, SubsetGivesEmpty) {
  const std::vector<Label> labels{0, 0, 0, 1, 1};
  const auto label = build_label_graph(labels);
  const auto affinity = from_neighbors({{1}, {0, 2}, {1}, {4}, {3}}, true);
  EXPECT_TRUE(build_repulsion_graph(label, affinity).edges().empty());
}

TEST(RepulsionGraph, EmptyLabelGraphKeepsAffinity) {
  const std::vector<Label> labels{0, 1, 2, 3};
  const auto affinity = from_neighbors({{1, 3}, {0}, {3}, {0, 2}}, true);
  EXPECT_EQ(edge_set(build_repulsion_graph(build_label_graph(labels), affinity)), edge_set(affinity));
}

TEST(RepulsionGraph, FourPointExample) {
  const std::vector<Label> labels{1, 1, 2, 2};
  const auto affinity = from_neighbors({{1}, {0, 2}, {1, 3}, {2}}, true);
  const auto rep = build_repulsion_graph(build_label_graph(labels), affinity);
  EXPECT_EQ(edge_set(rep), (EdgeSet{{1, 2}}));
  EXPECT_TRUE(rep.symmetric);
}

TEST(RepulsionGraph, DisjointFromLabelEdgesOnRandomData) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Label> lab(0, 3);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Label> labels(20);
    for (auto& l : labels) l = lab(rng);
    const Matrix x = random_matrix(rng, 3, 20);
    const auto label = build_label_graph(labels);
    const auto r = build_repulsion_graph(label, build_knn_graph(x, 6));
    for (const auto& [i, j] : r.edges()) {
      EXPECT_FALSE(label.has_edge(i, j));
      EXPECT_NE(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]);
    }
  }
}

TEST(RepulsionGraph, VertexCountMismatchThrows) {
  const std::vector<Label> labels{0, 1};
  EXPECT_THROW(build_repulsion_graph(build_label_graph(labels), from_neighbors({{}, {}, {}}, true)), ShapeError);
}

TEST(RepulsionLaplacian, EmptyIsZero) {
  const auto l = repulsion_laplacian(from_neighbors({{}, {}, {}}, true), Matrix::Zero(2, 3), 1.0);
  EXPECT_EQ(l.laplacian, Matrix::Zero(3, 3));
}

TEST(RepulsionLaplacian, CoincidentPairIsUnitWeight) {
  Matrix x(2, 3);
  x << 1, 1, 5,
       2, 2, 0;
  const auto l = repulsion_laplacian(from_neighbors({{1}, {0}, {}}, true), x, 0.3);
  Matrix expected = Matrix::Zero(3, 3);
  expected.topLeftCorner(2, 2) << 1, -1, -1, 1;
  EXPECT_EQ(l.laplacian, expected);
}

TEST(RepulsionLaplacian, RowSumsZeroOnRandomInstances) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<Label> lab(0, 2);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Label> labels(15);
    for (auto& l : labels) l = lab(rng);
    const Matrix x = random_matrix(rng, 4, 15);
    const auto r = build_repulsion_graph(build_label_graph(labels), build_knn_graph(x, 6));
    const auto l = repulsion_laplacian(r, x, 2.0);
    EXPECT_LE((l.laplacian * Vector::Ones(15)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_THROW(repulsion_laplacian(r, x, 0.0), ParameterError);
  }
}
