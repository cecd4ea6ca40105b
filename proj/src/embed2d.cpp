#include "reptensor/embed2d.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <string>

#include "reptensor/error.hpp"
#include "reptensor/spectral.hpp"
#include "ridge.hpp"

namespace reptensor::embed2d {

namespace {

constexpr std::array<std::pair<MethodName, std::string_view>, 12> kNames{{
    {MethodName::glram, "GLRAM"},
    {MethodName::pca, "2D-PCA"},
    {MethodName::olpp, "2D-OLPP"},
    {MethodName::lpp, "2D-LPP"},
    {MethodName::onpp, "2D-ONPP"},
    {MethodName::npp, "2D-NPP"},
    {MethodName::lda, "2D-LDA"},
    {MethodName::olpp_r, "2D-OLPP-R"},
    {MethodName::lpp_r, "2D-LPP-R"},
    {MethodName::onpp_r, "2D-ONPP-R"},
    {MethodName::npp_r, "2D-NPP-R"},
    {MethodName::lda_r, "2D-LDA-R"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
         });
}

enum class Family { variance, laplacian, reconstruction, discriminant };

Family family_of(MethodName m) {
  switch (m) {
    case MethodName::glram:
    case MethodName::pca:
      return Family::variance;
    case MethodName::olpp:
    case MethodName::lpp:
    case MethodName::olpp_r:
    case MethodName::lpp_r:
      return Family::laplacian;
    case MethodName::onpp:
    case MethodName::npp:
    case MethodName::onpp_r:
    case MethodName::npp_r:
      return Family::reconstruction;
    case MethodName::lda:
    case MethodName::lda_r:
      return Family::discriminant;
  }
  return Family::variance;
}

void require_dims(const Tensor3& x, Index d1, Index d2) {
  if (d1 < 1 || d1 > x.dim(Mode::first) || d2 < 1 || d2 > x.dim(Mode::second))
    throw ParameterError("projection dims (" + std::to_string(d1) + ", " + std::to_string(d2) +
                         ") outside the image size " + std::to_string(x.dim(Mode::first)) + "x" +
                         std::to_string(x.dim(Mode::second)));
}

const Matrix& require_a(const MethodSpec& spec) {
  if (!spec.a) throw ParameterError(std::string(method_name(spec.name)) + " has no A matrix");
  return *spec.a;
}

const Matrix& require_b(const MethodSpec& spec) {
  if (!spec.b) throw ParameterError(std::string(method_name(spec.name)) + " has no B matrix");
  return *spec.b;
}

void require_between_class(const Matrix& b) {
  if (!(b.norm() > 1e-12 * std::max<double>(1.0, static_cast<double>(b.rows()))))
    throw RankError("between-class matrix vanishes (fewer than two classes)");
}

void require_conformable(const Tensor3& x, const Matrix& a) {
  const Index n = x.dim(Mode::third);
  if (a.rows() != n || a.cols() != n)
    throw ShapeError("method matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " but the tensor holds " + std::to_string(n) + " samples");
}

bool is_identity(const Matrix& m) { return m.rows() == m.cols() && m.isIdentity(0.0); }

// sum over horizontal slices z(i,:,:) A z(i,:,:)^T
Matrix horizontal_sum(const Tensor3& z, const Matrix& a) {
  const Index m2 = z.dim(Mode::second);
  Matrix out = Matrix::Zero(m2, m2);
  for (Index i = 0; i < z.dim(Mode::first); ++i) {
    const Matrix h = z.horizontal(i);
    out.noalias() += (h * a) * h.transpose();
  }
  return spectral::symmetrized(out);
}

// sum over lateral slices z(:,j,:) A z(:,j,:)^T
Matrix lateral_sum(const Tensor3& z, const Matrix& a) {
  const Index m1 = z.dim(Mode::first);
  Matrix out = Matrix::Zero(m1, m1);
  for (Index j = 0; j < z.dim(Mode::second); ++j) {
    const Matrix l = z.lateral(j);
    out.noalias() += (l * a) * l.transpose();
  }
  return spectral::symmetrized(out);
}

bool converged(double current, double reference, double tol) {
  return std::abs(current - reference) <= tol * std::max(std::abs(current), std::abs(reference));
}

}  // namespace

MethodName parse_method(std::string_view name) {
  for (const auto& [m, n] : kNames)
    if (iequals(n, name)) return m;
  if (iequals(name, "CSA")) return MethodName::glram;
  throw ParameterError("unknown matrix method '" + std::string(name) + "'");
}

std::string_view method_name(MethodName m) {
  for (const auto& [k, n] : kNames)
    if (k == m) return n;
  return "?";
}

bool uses_repulsion(MethodName m) {
  return m == MethodName::olpp_r || m == MethodName::lpp_r || m == MethodName::onpp_r ||
         m == MethodName::npp_r || m == MethodName::lda_r;
}

MethodName base_method(MethodName m) {
  switch (m) {
    case MethodName::olpp_r: return MethodName::olpp;
    case MethodName::lpp_r: return MethodName::lpp;
    case MethodName::onpp_r: return MethodName::onpp;
    case MethodName::npp_r: return MethodName::npp;
    case MethodName::lda_r: return MethodName::lda;
    default: return m;
  }
}

Solver solver_for(MethodName m) {
  switch (m) {
    case MethodName::glram:
    case MethodName::pca:
      return Solver::alg1_max;
    case MethodName::olpp:
    case MethodName::onpp:
    case MethodName::olpp_r:
    case MethodName::onpp_r:
      return Solver::alg1_min;
    case MethodName::lpp:
    case MethodName::npp:
    case MethodName::lpp_r:
    case MethodName::npp_r:
      return Solver::alg2;
    case MethodName::lda:
    case MethodName::lda_r:
      return Solver::lda_variant;
  }
  return Solver::alg1_max;
}

double default_beta(MethodName m) {
  if (m == MethodName::lda_r) return 0.2;
  return uses_repulsion(m) ? 0.5 : 0.0;
}

LdaWeights lda_weight_matrix(std::span<const Label> labels) {
  const Index n = static_cast<Index>(labels.size());
  std::map<Label, Index> counts;
  for (Label l : labels) ++counts[l];
  LdaWeights out{Matrix::Zero(n, n), Matrix()};
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)])
        out.w(i, j) = 1.0 / static_cast<double>(counts[labels[static_cast<std::size_t>(i)]]);
  out.s = Matrix::Identity(n, n) - out.w;
  return out;
}

Matrix centering_matrix(Index n) {
  return Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
}

MethodSpec assemble_method(MethodName name, const Matrix& weights, const Matrix* repulsion,
                           double beta) {
  const Index n = weights.rows();
  if (weights.cols() != n) throw ShapeError("weight matrix must be square");
  if (uses_repulsion(name)) {
    if (repulsion == nullptr) throw ParameterError(std::string(method_name(name)) + " needs a repulsion Laplacian");
    if (repulsion->rows() != n || repulsion->cols() != n)
      throw ShapeError("repulsion Laplacian does not match the weight matrix");
  }

  MethodSpec spec;
  spec.name = name;
  spec.solver = solver_for(name);
  spec.beta = uses_repulsion(name) ? beta : 0.0;
  const Matrix identity = Matrix::Identity(n, n);

  auto penalized = [&](Matrix a) {
    if (uses_repulsion(name)) a -= beta * *repulsion;
    return a;
  };

  switch (family_of(name)) {
    case Family::variance:
      spec.b = name == MethodName::glram ? identity : centering_matrix(n);
      break;
    case Family::laplacian: {
      if ((weights - weights.transpose()).norm() > 1e-12 * std::max(1.0, weights.norm()))
        throw ContractError("Laplacian-based methods need symmetric weights");
      const Matrix degree = weights.rowwise().sum().asDiagonal();
      spec.a = penalized(degree - weights);
      if (name == MethodName::lpp || name == MethodName::lpp_r) spec.b = degree;
      break;
    }
    case Family::reconstruction: {
      const Matrix resid = identity - weights;
      spec.a = penalized(spectral::symmetrized(resid.transpose() * resid));
      if (name == MethodName::npp || name == MethodName::npp_r) spec.b = identity;
      break;
    }
    case Family::discriminant: {
      const Matrix s = identity - weights;
      spec.a = penalized(s);
      spec.b = centering_matrix(n) - s;
      break;
    }
  }
  return spec;
}

MethodSpec method_matrices(MethodName name, const MatrixDataset& ds, const GraphParams& params) {
  const Index n = ds.tensor.dim(Mode::third);
  if (static_cast<Index>(ds.labels.size()) != n)
    throw ShapeError("label count differs from the tensor's third extent");

  const Matrix points = ds.tensor.slices_as_columns();
  const auto label_graph = graph::build_label_graph(ds.labels);
  const double t = params.t.value_or(graph::default_heat_parameter(label_graph, points));
  const double beta = params.beta.value_or(default_beta(name));

  Matrix weights;
  switch (family_of(name)) {
    case Family::variance:
      weights = Matrix::Identity(n, n);
      break;
    case Family::laplacian:
      weights = graph::gaussian_weights(label_graph, points, t).weights;
      break;
    case Family::reconstruction:
      weights = graph::lle_weights(label_graph, points).weights;
      break;
    case Family::discriminant:
      weights = lda_weight_matrix(ds.labels).w;
      break;
  }

  Matrix repulsion;
  if (uses_repulsion(name)) {
    const auto affinity = graph::build_knn_graph(points, params.knn);
    repulsion = graph::repulsion_laplacian(graph::build_repulsion_graph(label_graph, affinity), points, t)
                    .laplacian;
  }
  MethodSpec spec = assemble_method(name, weights, uses_repulsion(name) ? &repulsion : nullptr, beta);
  spec.knn = params.knn;
  spec.t = t;
  return spec;
}

Matrix v_side_matrix(const Tensor3& x, const Matrix& u, const Matrix& a) {
  require_conformable(x, a);
  if (u.rows() != x.dim(Mode::first)) throw ShapeError("U does not match the image row count");
  if (is_identity(u)) return horizontal_sum(x, a);
  return horizontal_sum(mode_product(x, u.transpose(), Mode::first), a);
}

Matrix u_side_matrix(const Tensor3& x, const Matrix& v, const Matrix& a) {
  require_conformable(x, a);
  if (v.rows() != x.dim(Mode::second)) throw ShapeError("V does not match the image column count");
  if (is_identity(v)) return lateral_sum(x, a);
  return lateral_sum(mode_product(x, v.transpose(), Mode::second), a);
}

FitResult fit_alg1(const Tensor3& x, const MethodSpec& spec, Index d1, Index d2, const FitOptions& opts) {
  require_dims(x, d1, d2);
  if (spec.solver != Solver::alg1_min && spec.solver != Solver::alg1_max)
    throw ParameterError("alternating process #1 needs an alg1 solver");
  const bool minimize = spec.solver == Solver::alg1_min;
  const Matrix& m = minimize ? require_a(spec) : require_b(spec);
  require_conformable(x, m);
  auto pick = [&](Index d) { return minimize ? spectral::bottom(d) : spectral::top(d); };

  FitResult out;
  ProjectorPair& p = out.projectors;
  p.u = Matrix::Identity(x.dim(Mode::first), d1);
  double reference = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    p.v = spectral::sym_eig(v_side_matrix(x, p.u, m), pick(d2)).vectors;
    const double half = objective(x, p, m);
    out.trace.objectives.push_back(half);
    if (it == 1) reference = half;

    p.u = spectral::sym_eig(u_side_matrix(x, p.v, m), pick(d1)).vectors;
    const double full = objective(x, p, m);
    out.trace.objectives.push_back(full);
    out.trace.iterations = it;
    if (converged(full, reference, opts.tol)) {
      out.trace.converged = true;
      break;
    }
    reference = full;
  }
  return out;
}

FitResult fit_alg2(const Tensor3& x, const MethodSpec& spec, Index d1, Index d2, const FitOptions& opts) {
  require_dims(x, d1, d2);
  const Matrix& a = require_a(spec);
  const Matrix& b = require_b(spec);
  require_conformable(x, a);
  require_conformable(x, b);

  FitResult out;
  ProjectorPair& p = out.projectors;
  p.u_constraint = p.v_constraint = Constraint::b_orthonormal;
  p.u = Matrix::Identity(x.dim(Mode::first), d1);
  double reference = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    p.v = detail::solve_with_ridge(v_side_matrix(x, p.u, a), v_side_matrix(x, p.u, b), spectral::bottom(d2),
                                   out.trace.ridge_shifts, "V update")
              .vectors;
    const double half = objective(x, p, a);
    out.trace.objectives.push_back(half);
    if (it == 1) reference = half;

    p.u = detail::solve_with_ridge(u_side_matrix(x, p.v, a), u_side_matrix(x, p.v, b), spectral::bottom(d1),
                                   out.trace.ridge_shifts, "U update")
              .vectors;
    const double full = objective(x, p, a);
    out.trace.objectives.push_back(full);
    out.trace.iterations = it;
    if (converged(full, reference, opts.tol)) {
      out.trace.converged = true;
      break;
    }
    reference = full;
  }
  return out;
}

FitResult fit_lda_variant(const Tensor3& x, const MethodSpec& spec, Index d1, Index d2,
                          const FitOptions& opts) {
  if (spec.name != MethodName::lda && spec.name != MethodName::lda_r)
    throw ParameterError("the discriminant variant applies to 2D-LDA and 2D-LDA-R only");
  require_dims(x, d1, d2);
  const Matrix& a = require_a(spec);
  const Matrix& b = require_b(spec);
  require_conformable(x, a);
  require_conformable(x, b);
  require_between_class(b);

  FitResult out;
  ProjectorPair& p = out.projectors;
  p.u_constraint = p.v_constraint = Constraint::b_orthonormal;
  int& shifts = out.trace.ridge_shifts;

  if (spec.name == MethodName::lda_r) {
    const Matrix iu = Matrix::Identity(x.dim(Mode::first), x.dim(Mode::first));
    const Matrix iv = Matrix::Identity(x.dim(Mode::second), x.dim(Mode::second));
    p.v = detail::solve_with_ridge(v_side_matrix(x, iu, b), v_side_matrix(x, iu, a), spectral::top(d2), shifts,
                                   "2D-LDA-R V solve")
              .vectors;
    p.u = detail::solve_with_ridge(u_side_matrix(x, iv, b), u_side_matrix(x, iv, a), spectral::top(d1), shifts,
                                   "2D-LDA-R U solve")
              .vectors;
    out.trace.objectives.push_back(objective(x, p, b));
    out.trace.iterations = 1;
    out.trace.converged = true;
    return out;
  }

  p.u = Matrix::Identity(x.dim(Mode::first), d1);
  double reference = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    p.v = detail::solve_with_ridge(v_side_matrix(x, p.u, b), v_side_matrix(x, p.u, a), spectral::top(d2), shifts,
                                   "2D-LDA V update")
              .vectors;
    const double half = objective(x, p, b);
    out.trace.objectives.push_back(half);
    if (it == 1) reference = half;

    p.u = detail::solve_with_ridge(u_side_matrix(x, p.v, b), u_side_matrix(x, p.v, a), spectral::top(d1), shifts,
                                   "2D-LDA U update")
              .vectors;
    const double full = objective(x, p, b);
    out.trace.objectives.push_back(full);
    out.trace.iterations = it;
    if (converged(full, reference, opts.tol)) {
      out.trace.converged = true;
      break;
    }
    reference = full;
  }
  return out;
}

FitResult fit_bilateral(const Tensor3& x, const MethodSpec& spec, Index d1, Index d2, const FitOptions& opts) {
  switch (spec.solver) {
    case Solver::alg1_min:
    case Solver::alg1_max:
      return fit_alg1(x, spec, d1, d2, opts);
    case Solver::alg2:
      return fit_alg2(x, spec, d1, d2, opts);
    case Solver::lda_variant:
      return fit_lda_variant(x, spec, d1, d2, opts);
  }
  throw ParameterError("unknown solver");
}

ProjectorPair fit_unilateral(const Tensor3& x, const MethodSpec& spec, Side side, Index d) {
  const Index m1 = x.dim(Mode::first);
  const Index m2 = x.dim(Mode::second);
  const bool left = side == Side::left;
  const Index extent = left ? m1 : m2;
  if (d < 1 || d > extent)
    throw ParameterError("unilateral dimension " + std::to_string(d) + " outside [1, " + std::to_string(extent) + "]");

  const Matrix fixed = Matrix::Identity(left ? m2 : m1, left ? m2 : m1);
  auto side_matrix = [&](const Matrix& m) {
    return left ? u_side_matrix(x, fixed, m) : v_side_matrix(x, fixed, m);
  };

  Matrix basis;
  Constraint constraint = Constraint::orthonormal;
  int shifts = 0;
  switch (spec.solver) {
    case Solver::alg1_min:
      basis = spectral::sym_eig(side_matrix(require_a(spec)), spectral::bottom(d)).vectors;
      break;
    case Solver::alg1_max:
      basis = spectral::sym_eig(side_matrix(require_b(spec)), spectral::top(d)).vectors;
      break;
    case Solver::alg2:
      basis = detail::solve_with_ridge(side_matrix(require_a(spec)), side_matrix(require_b(spec)),
                                       spectral::bottom(d), shifts, "unilateral solve")
                  .vectors;
      constraint = Constraint::b_orthonormal;
      break;
    case Solver::lda_variant:
      require_between_class(require_b(spec));
      basis = detail::solve_with_ridge(side_matrix(require_b(spec)), side_matrix(require_a(spec)),
                                       spectral::top(d), shifts, "unilateral discriminant solve")
                  .vectors;
      constraint = Constraint::b_orthonormal;
      break;
  }

  ProjectorPair p;
  if (left) {
    p.u = std::move(basis);
    p.v = fixed;
    p.sides = Sides::left_only;
    p.u_constraint = constraint;
    p.v_constraint = Constraint::identity;
  } else {
    p.u = fixed;
    p.v = std::move(basis);
    p.sides = Sides::right_only;
    p.u_constraint = Constraint::identity;
    p.v_constraint = constraint;
  }
  return p;
}

Preprocessed pre_process_2dpca(const Tensor3& x, Index p1, Index p2, const FitOptions& opts) {
  require_dims(x, p1, p2);
  const MethodSpec spec = assemble_method(MethodName::pca, Matrix::Identity(x.dim(Mode::third), x.dim(Mode::third)),
                                          nullptr, 0.0);
  FitResult fit = fit_alg1(x, spec, p1, p2, opts);
  Tensor3 reduced = project_tensor(x, fit.projectors);
  return {std::move(reduced), std::move(fit.projectors)};
}

ProjectorPair compose(const ProjectorPair& outer, const ProjectorPair& inner) {
  if (outer.u.cols() != inner.u.rows() || outer.v.cols() != inner.v.rows())
    throw ShapeError("projector pairs are not composable");
  ProjectorPair out;
  out.u = outer.u * inner.u;
  out.v = outer.v * inner.v;
  out.sides = outer.sides == Sides::bilateral ? Sides::bilateral : inner.sides;
  out.u_constraint = inner.u_constraint == Constraint::identity ? outer.u_constraint : inner.u_constraint;
  out.v_constraint = inner.v_constraint == Constraint::identity ? outer.v_constraint : inner.v_constraint;
  return out;
}

Tensor3 project_tensor(const Tensor3& x, const ProjectorPair& p) {
  Tensor3 y = is_identity(p.u) ? x : mode_product(x, p.u.transpose(), Mode::first);
  return is_identity(p.v) ? y : mode_product(y, p.v.transpose(), Mode::second);
}

double objective(const Tensor3& x, const ProjectorPair& p, const Matrix& m) {
  require_conformable(x, m);
  const Tensor3 y = project_tensor(x, p);
  const auto cols = y.slices_as_columns();
  const Matrix gram = cols.transpose() * cols;
  return m.cwiseProduct(gram).sum();
}

double objective_via_tensor_trace(const Tensor3& x, const ProjectorPair& p, const Matrix& m) {
  require_conformable(x, m);
  const Tensor3 y = project_tensor(x, p);
  return tensor_trace(contracted_product_33(mode_product(y, m, Mode::third), y));
}

}  // namespace reptensor::embed2d
