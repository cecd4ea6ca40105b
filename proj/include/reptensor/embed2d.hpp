#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "reptensor/graph.hpp"
#include "reptensor/tensor.hpp"

// Image-as-matrix projections Y_k = U^T X_k V. Every method is a pair of
// n x n matrices (A, B): A's tensor trace trace(<Y x3 A, Y>) is minimized,
// B's is maximized. Repulsion variants subtract beta * L_r from A.
namespace reptensor::embed2d {

using graph::Label;

enum class MethodName {
  glram,
  pca,
  olpp,
  lpp,
  onpp,
  npp,
  lda,
  olpp_r,
  lpp_r,
  onpp_r,
  npp_r,
  lda_r,
};

MethodName parse_method(std::string_view name);
std::string_view method_name(MethodName m);
bool uses_repulsion(MethodName m);
// Repulsion-free row for a -R method (identity for the others).
MethodName base_method(MethodName m);

enum class Solver {
  alg1_min,     // bottom eigenvectors of A-side matrices, orthonormal
  alg1_max,     // top eigenvectors of B-side matrices, orthonormal
  alg2,         // bottom of A_s v = lambda B_s v
  lda_variant,  // top of B_s v = lambda A_s v
};

Solver solver_for(MethodName m);
double default_beta(MethodName m);

struct MatrixDataset {
  Tensor3 tensor;  // m1 x m2 x n
  std::vector<Label> labels;
};

struct GraphParams {
  Index knn = 6;
  std::optional<double> beta;  // default_beta(name) when unset
  std::optional<double> t;     // mean squared label-edge length when unset
};

struct MethodSpec {
  MethodName name = MethodName::glram;
  std::optional<Matrix> a;
  std::optional<Matrix> b;
  Solver solver = Solver::alg1_max;
  double beta = 0.0;
  Index knn = 6;
  double t = 1.0;
};

struct LdaWeights {
  Matrix w;  // w_ij = 1/n_c when c(i) = c(j) = c
  Matrix s;  // I - w
};

LdaWeights lda_weight_matrix(std::span<const Label> labels);

// J_n = I - ee^T / n
Matrix centering_matrix(Index n);

/// Table-2 assembly from precomputed graph matrices.
///
/// `weights` is the affinity weight matrix the method family uses: Gaussian
/// label-graph weights for the LPP rows, LLE weights for the NPP rows and
/// the class-mean weights for the LDA rows. It is ignored by GLRAM/2D-PCA.
/// `repulsion` (L_r) is required only by the -R rows.
MethodSpec assemble_method(MethodName name, const Matrix& weights, const Matrix* repulsion,
                           double beta);

/// Builds graphs from the dataset (points are the vectorized images) and
/// assembles the method. The Gaussian width t is resolved once from the
/// label graph and reused for the repulsion weights.
MethodSpec method_matrices(MethodName name, const MatrixDataset& ds, const GraphParams& params = {});

// A_1 = sum_i Z1(i,:,:) A Z1(i,:,:)^T with Z1 = X x1 U^T (m2 x m2).
Matrix v_side_matrix(const Tensor3& x, const Matrix& u, const Matrix& a);
// A_2 = sum_j Z2(:,j,:) A Z2(:,j,:)^T with Z2 = X x2 V^T (m1 x m1).
Matrix u_side_matrix(const Tensor3& x, const Matrix& v, const Matrix& a);

enum class Sides { left_only, right_only, bilateral };
enum class Constraint { identity, orthonormal, b_orthonormal };

struct ProjectorPair {
  Matrix u;  // m1 x d1
  Matrix v;  // m2 x d2
  Sides sides = Sides::bilateral;
  Constraint u_constraint = Constraint::orthonormal;
  Constraint v_constraint = Constraint::orthonormal;
};

struct FitTrace {
  // Objective after every half-step (V update, then U update, ...).
  std::vector<double> objectives;
  int iterations = 0;
  bool converged = false;
  int ridge_shifts = 0;
};

struct FitResult {
  ProjectorPair projectors;
  FitTrace trace;
};

struct FitOptions {
  int max_iter = 5;
  double tol = 1e-6;
};

/// Alternating orthonormal solver. Starts from the first d1 columns of
/// I_{m1}, then alternates V and U eigen-updates until the relative change
/// of the objective between consecutive iterations drops below tol (the
/// first iteration compares against its own V half-step).
FitResult fit_alg1(const Tensor3& x, const MethodSpec& spec, Index d1, Index d2,
                   const FitOptions& opts = {});

/// Alternating generalized solver: bottom eigenvectors of A_1 v = lambda B_1 v
/// and A_2 u = lambda B_2 u. A B-side matrix that is not SPD is ridge
/// shifted once; a second failure throws DefinitenessError.
FitResult fit_alg2(const Tensor3& x, const MethodSpec& spec, Index d1, Index d2,
                   const FitOptions& opts = {});

/// Discriminant variant: top eigenvectors of B_s v = lambda A_s v. 2D-LDA
/// alternates; 2D-LDA-R runs a single pass in which U and V are both solved
/// against the unprojected tensor.
FitResult fit_lda_variant(const Tensor3& x, const MethodSpec& spec, Index d1, Index d2,
                          const FitOptions& opts = {});

// Dispatches on spec.solver.
FitResult fit_bilateral(const Tensor3& x, const MethodSpec& spec, Index d1, Index d2,
                        const FitOptions& opts = {});

// Side being projected; the other side is the exact identity.
enum class Side { left, right };

ProjectorPair fit_unilateral(const Tensor3& x, const MethodSpec& spec, Side side, Index d);

struct Preprocessed {
  Tensor3 reduced;
  ProjectorPair projectors;
};

// Bilateral 2D-PCA down to p1 x p2.
Preprocessed pre_process_2dpca(const Tensor3& x, Index p1, Index p2, const FitOptions& opts = {});

// outer.u * inner.u, outer.v * inner.v
ProjectorPair compose(const ProjectorPair& outer, const ProjectorPair& inner);

// X x1 U^T x2 V^T
Tensor3 project_tensor(const Tensor3& x, const ProjectorPair& p);

// trace(<Y x3 M, Y>_[3;3]) through the Gram matrix of the projected slices.
double objective(const Tensor3& x, const ProjectorPair& p, const Matrix& m);
// Same value through the explicit contracted product and tensor trace.
double objective_via_tensor_trace(const Tensor3& x, const ProjectorPair& p, const Matrix& m);

}  // namespace reptensor::embed2d
