#include "reptensor/embed1d.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <string>

#include "reptensor/error.hpp"
#include "reptensor/spectral.hpp"
#include "ridge.hpp"

namespace reptensor::embed1d {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 9> kNames{{
    {Method::pca, "PCA"},
    {Method::lda, "LDA"},
    {Method::lpp, "LPP"},
    {Method::olpp, "OLPP"},
    {Method::npp, "NPP"},
    {Method::onpp, "ONPP"},
    {Method::lda_r, "LDA-R"},
    {Method::olpp_r, "OLPP-R"},
    {Method::onpp_r, "ONPP-R"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
         });
}

Matrix repulsion_laplacian_for(const Matrix& x, const graph::WeightedGraph& label_graph, Index knn,
                               double t) {
  const auto affinity = graph::build_knn_graph(x, knn);
  const auto repulsion = graph::build_repulsion_graph(label_graph, affinity);
  return graph::repulsion_laplacian(repulsion, x, t).laplacian;
}

}  // namespace

Method parse_method(std::string_view name) {
  for (const auto& [m, n] : kNames)
    if (iequals(n, name)) return m;
  throw ParameterError("unknown vector method '" + std::string(name) + "'");
}

std::string_view method_name(Method m) {
  for (const auto& [k, n] : kNames)
    if (k == m) return n;
  return "?";
}

bool uses_repulsion(Method m) {
  return m == Method::lda_r || m == Method::olpp_r || m == Method::onpp_r;
}

Index VectorDataset::class_count() const {
  return static_cast<Index>(std::set<Label>(labels.begin(), labels.end()).size());
}

Scatter scatter_matrices(const VectorDataset& ds) {
  const Index m = ds.dimension();
  const Index n = ds.size();
  if (static_cast<Index>(ds.labels.size()) != n) throw ShapeError("label count differs from sample count");

  const Vector mean = n > 0 ? Vector(ds.data.rowwise().mean()) : Vector::Zero(m);
  std::map<Label, std::pair<Vector, Index>> classes;
  for (Index i = 0; i < n; ++i) {
    auto [it, inserted] = classes.try_emplace(ds.labels[static_cast<std::size_t>(i)], Vector::Zero(m), 0);
    it->second.first += ds.data.col(i);
    ++it->second.second;
  }
  for (auto& [label, acc] : classes) acc.first /= static_cast<double>(acc.second);

  Scatter out{Matrix::Zero(m, m), Matrix::Zero(m, m)};
  for (Index i = 0; i < n; ++i) {
    const Vector dev = ds.data.col(i) - classes.at(ds.labels[static_cast<std::size_t>(i)]).first;
    out.within.noalias() += dev * dev.transpose();
  }
  for (const auto& [label, acc] : classes) {
    const Vector dev = mean - acc.first;
    out.between.noalias() += static_cast<double>(acc.second) * dev * dev.transpose();
  }
  return out;
}

Matrix pca_basis(const Matrix& data, Index d) {
  const Index m = data.rows();
  const Index n = data.cols();
  if (d < 1 || d > m) throw ParameterError("PCA dimension " + std::to_string(d) + " outside [1, m]");
  const Matrix centered = data.colwise() - data.rowwise().mean();

  if (m <= n) return spectral::sym_eig(centered * centered.transpose(), spectral::top(d)).vectors;

  // Gram route: u = X_c w / sqrt(lambda) for the top eigenpairs of X_c^T X_c.
  if (d > n) throw ParameterError("PCA dimension exceeds the sample count");
  const auto pairs = spectral::sym_eig(centered.transpose() * centered, spectral::top(d));
  const double lead = std::max(pairs.values(0), 0.0);
  if (!(pairs.values(d - 1) > 1e-12 * lead))
    throw RankError("PCA dimension " + std::to_string(d) + " exceeds the rank of the centered data");
  Matrix basis = centered * pairs.vectors;
  for (Index c = 0; c < d; ++c) basis.col(c) /= std::sqrt(pairs.values(c));

  // Re-orthonormalize; the span is unchanged.
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix q = qr.householderQ() * Matrix::Identity(m, d);
  const Matrix r = qr.matrixQR().topLeftCorner(d, d);
  for (Index c = 0; c < d; ++c)
    if (r(c, c) < 0.0) q.col(c) *= -1.0;
  spectral::normalize_signs(q);
  return q;
}

Projector1D fit_1d(const VectorDataset& ds, Method method, Index d, const Params& params) {
  const Index m = ds.dimension();
  const Index n = ds.size();
  if (static_cast<Index>(ds.labels.size()) != n) throw ShapeError("label count differs from sample count");
  if (d < 1) throw ParameterError("projection dimension must be positive");

  if (method == Method::pca) return {pca_basis(ds.data, d), Constraint::orthonormal};

  Matrix pre;
  Matrix x = ds.data;
  if (params.preprocess) {
    const Index p = params.predim.value_or(std::min(n - ds.class_count(), m));
    if (p < 1) throw ParameterError("PCA pre-dimension must be positive");
    pre = pca_basis(ds.data, p);
    x = pre.transpose() * ds.data;
  }
  if (d > x.rows())
    throw ParameterError("projection dimension " + std::to_string(d) + " exceeds working dimension " +
                         std::to_string(x.rows()));

  const auto label_graph = graph::build_label_graph(ds.labels);
  const double t = params.t.value_or(graph::default_heat_parameter(label_graph, x));
  auto repulsion = [&] { return repulsion_laplacian_for(x, label_graph, params.knn, t); };

  spectral::EigenPairs pairs;
  Constraint constraint = Constraint::orthonormal;
  switch (method) {
    case Method::pca:
      break;
    case Method::lda:
    case Method::lda_r: {
      const Scatter sc = scatter_matrices({x, ds.labels});
      Matrix within = sc.within;
      if (method == Method::lda_r) within -= params.beta * x * repulsion() * x.transpose();
      int shifts = 0;
      pairs = method == Method::lda
                  ? spectral::gen_sym_eig(sc.between, within, spectral::top(d))
                  : detail::solve_with_ridge(sc.between, within, spectral::top(d), shifts, "LDA-R");
      constraint = Constraint::b_orthonormal;
      break;
    }
    case Method::lpp:
    case Method::olpp:
    case Method::olpp_r: {
      const auto lap = graph::laplacian(graph::gaussian_weights(label_graph, x, t));
      Matrix middle = lap.laplacian;
      if (method == Method::olpp_r) middle -= params.beta * repulsion();
      if (method == Method::lpp) {
        pairs = spectral::gen_sym_eig(x * middle * x.transpose(), x * lap.degree * x.transpose(),
                                      spectral::bottom(d));
        constraint = Constraint::b_orthonormal;
      } else {
        pairs = spectral::sym_eig(x * middle * x.transpose(), spectral::bottom(d));
      }
      break;
    }
    case Method::npp:
    case Method::onpp:
    case Method::onpp_r: {
      const auto w = graph::lle_weights(label_graph, x).weights;
      const Matrix resid = Matrix::Identity(n, n) - w;
      Matrix middle = resid.transpose() * resid;
      if (method == Method::onpp_r) middle -= params.beta * repulsion();
      if (method == Method::npp) {
        pairs = spectral::gen_sym_eig(x * middle * x.transpose(), x * x.transpose(), spectral::bottom(d));
        constraint = Constraint::b_orthonormal;
      } else {
        pairs = spectral::sym_eig(x * middle * x.transpose(), spectral::bottom(d));
      }
      break;
    }
  }

  Projector1D out{params.preprocess ? Matrix(pre * pairs.vectors) : pairs.vectors, constraint};
  return out;
}

double objective(const Matrix& data, const Matrix& middle, const Matrix& basis) {
  const Matrix y = basis.transpose() * data;
  return (y * middle * y.transpose()).trace();
}

}  // namespace reptensor::embed1d
