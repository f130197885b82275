/*
 * Copyright 2026 The m2r authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "m2r/parametric.hpp"

#include <cmath>

namespace m2r {

namespace {

constexpr double kMinDiagonal = 1e-6;

void check_diagonal(const AffineMap& map) {
  for (int i = 0; i < map.ndim; ++i)
    if (map.A(i, i) == 0.0)
      throw SolverError("parametric: singular configuration, a_" + std::to_string(i + 1) +
                        std::to_string(i + 1) + " is zero");
}

int num_regularizer_rows(int n) { return n * n + n * (n - 1); }

}  // namespace

Eigen::VectorXd parametric_residuals(const AffineMap& map,
                                     const std::vector<QuadraturePoint>& quad,
                                     const SignedDistanceField& sdf, double alpha, double mu) {
  check_diagonal(map);
  const int n = map.ndim;
  const Eigen::VectorXd data = data_residuals(quad, sdf, map);
  Eigen::VectorXd r(data.size() + num_regularizer_rows(n));
  r.head(data.size()) = data;
  std::int64_t k = data.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r[k++] = i == j ? alpha * (1.0 - map.A(i, i)) : alpha * map.A(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      r[k++] = mu * (1.0 - map.A(i, i) / map.A(j, j));
    }
  return r;
}

Eigen::MatrixXd parametric_jacobian(const AffineMap& map,
                                    const std::vector<QuadraturePoint>& quad,
                                    const SignedDistanceField& sdf, double alpha, double mu) {
  check_diagonal(map);
  const int n = map.ndim;
  const int np = map.num_parameters();
  Eigen::MatrixXd jac =
      Eigen::MatrixXd::Zero(static_cast<std::int64_t>(quad.size()) + num_regularizer_rows(n), np);
  for (std::size_t q = 0; q < quad.size(); ++q)
    jac.row(q) = data_jacobian_row(quad[q], sdf, map).transpose();
  std::int64_t k = static_cast<std::int64_t>(quad.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      jac(k, i * n + j) = i == j ? -alpha : alpha;
      ++k;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      jac(k, i * n + i) = -mu / map.A(j, j);
      jac(k, j * n + j) = mu * map.A(i, i) / (map.A(j, j) * map.A(j, j));
      ++k;
    }
  return jac;
}

namespace {

class ParametricProblem final : public LeastSquaresProblem {
 public:
  ParametricProblem(int ndim, const std::vector<QuadraturePoint>& quad,
                    const SignedDistanceField& sdf, double alpha, double mu)
      : ndim_(ndim), quad_(quad), sdf_(sdf), alpha_(alpha), mu_(mu), map_(ndim) {}

  std::int64_t num_unknowns() const override { return map_.num_parameters(); }
  std::int64_t num_residuals() const override {
    return static_cast<std::int64_t>(quad_.size()) + num_regularizer_rows(ndim_);
  }

  void set_point(const Eigen::VectorXd& x) override {
    map_ = AffineMap::from_parameters(ndim_, x);
  }
  Eigen::VectorXd residuals() const override {
    return parametric_residuals(map_, quad_, sdf_, alpha_, mu_);
  }
  bool has_dense_jacobian() const override { return true; }
  Eigen::MatrixXd dense_jacobian() const override {
    return parametric_jacobian(map_, quad_, sdf_, alpha_, mu_);
  }
  void apply_jacobian(const Eigen::VectorXd& v, Eigen::VectorXd& out) const override {
    out.noalias() = dense_jacobian() * v;
  }
  void apply_jacobian_transpose(const Eigen::VectorXd& w, Eigen::VectorXd& out) const override {
    out.noalias() = dense_jacobian().transpose() * w;
  }
  std::pair<double, double> energy_split() const override {
    const Eigen::VectorXd r = residuals();
    const std::int64_t nq = static_cast<std::int64_t>(quad_.size());
    return {0.5 * r.head(nq).squaredNorm(), 0.5 * r.tail(r.size() - nq).squaredNorm()};
  }
  bool admissible(const Eigen::VectorXd& x) const override {
    for (int i = 0; i < ndim_; ++i)
      if (std::abs(x[i * ndim_ + i]) < kMinDiagonal) return false;
    return true;
  }

 private:
  int ndim_;
  const std::vector<QuadraturePoint>& quad_;
  const SignedDistanceField& sdf_;
  double alpha_, mu_;
  AffineMap map_;
};

}  // namespace

ParametricResult register_parametric(const std::vector<QuadraturePoint>& quad,
                                     const SignedDistanceField& sdf,
                                     const RegistrationParams& params) {
  params.validate();
  const int ndim = sdf.field.grid.ndim;
  ParametricProblem problem(ndim, quad, sdf, params.alpha, params.mu);

  GnOptions opt;
  opt.max_iters = params.max_gn_iters;
  opt.energy_rel_tol = params.energy_rel_tol;
  opt.solver = params.solver;
  opt.solver.backend = SolveBackend::DenseNormal;

  const GnResult gn = gn_minimize(problem, AffineMap(ndim).parameters(), opt);

  ParametricResult res;
  res.map = AffineMap::from_parameters(ndim, gn.x);
  res.status = gn.status;
  res.iterations = gn.iterations;
  res.trace = gn.trace;
  if (!gn.trace.empty()) {
    res.e_match = gn.trace.back().e_match;
    res.e_reg = gn.trace.back().e_reg;
  }
  if (res.map.A.determinant() == 0.0)
    throw SolverError("parametric: registration returned a singular matrix");
  return res;
}

ParametricResult register_parametric(const Contour& contour, const SignedDistanceField& sdf,
                                     const RegistrationParams& params) {
  return register_parametric(curve_quadrature(contour), sdf, params);
}

ParametricResult register_parametric(const TriMesh& mesh, const SignedDistanceField& sdf,
                                     const RegistrationParams& params) {
  return register_parametric(surface_quadrature(mesh), sdf, params);
}

DisplacementField affine_to_displacement(const AffineMap& map, const GridSpec& grid) {
  grid.validate();
  if (map.ndim != grid.ndim)
    throw ValidationError("affine_to_displacement: dimension mismatch");
  DisplacementField u(grid);
  const Eigen::MatrixXd a_minus_i = map.A - Eigen::MatrixXd::Identity(map.ndim, map.ndim);
  const int nz = grid.ndim == 3 ? grid.dims[2] : 1;
  std::int64_t idx = 0;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int i = 0; i < grid.dims[0]; ++i) {
        const Vec3 p = node_coordinates(grid, {i, j, k});
        const Eigen::VectorXd v = a_minus_i * p.head(grid.ndim) + map.t;
        for (int c = 0; c < grid.ndim; ++c) u.component(c)[idx] = v[c];
        ++idx;
      }
  return u;
}

}  // namespace m2r
