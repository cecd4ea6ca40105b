#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "reptensor/graph.hpp"
#include "reptensor/tensor.hpp"

// Image-as-vector projections: the classical baselines and their repulsion
// variants. Data points are the columns of an m x n matrix.
namespace reptensor::embed1d {

using graph::Label;

enum class Method { pca, lda, lpp, olpp, npp, onpp, lda_r, olpp_r, onpp_r };

Method parse_method(std::string_view name);
std::string_view method_name(Method m);
bool uses_repulsion(Method m);

enum class Constraint { orthonormal, b_orthonormal };

struct VectorDataset {
  Matrix data;  // m x n, one sample per column
  std::vector<Label> labels;

  Index dimension() const { return data.rows(); }
  Index size() const { return data.cols(); }
  Index class_count() const;
};

struct Projector1D {
  Matrix basis;  // m x d
  Constraint constraint = Constraint::orthonormal;
};

struct Params {
  Index knn = 6;
  std::optional<double> t;     // Gaussian width; mean squared label-edge length when unset
  double beta = 0.5;           // repulsion strength for the -R methods
  bool preprocess = true;      // PCA pre-reduction for every method but PCA
  std::optional<Index> predim; // defaults to min(n - c, m)
};

struct Scatter {
  Matrix within;
  Matrix between;
};

Scatter scatter_matrices(const VectorDataset& ds);

// Top-d principal directions of X J_n X^T; switches to the n x n Gram form
// when m > n.
Matrix pca_basis(const Matrix& data, Index d);

/// Fits one of the vector methods. Non-PCA methods run on PCA-reduced data
/// when `params.preprocess` is set and the returned basis already composes
/// both projections.
Projector1D fit_1d(const VectorDataset& ds, Method method, Index d, const Params& params = {});

// trace(U^T X M X^T U)
double objective(const Matrix& data, const Matrix& middle, const Matrix& basis);

}  // namespace reptensor::embed1d
