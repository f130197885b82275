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

#include "m2r/nonrigid.hpp"

#include <cmath>

namespace m2r {

Eigen::VectorXd nonrigid_residuals(const DisplacementField& u,
                                   const std::vector<QuadraturePoint>& quad,
                                   const SignedDistanceField& sdf, double lambda,
                                   const Eigen::VectorXd& mass, const SparseMat& stiffness) {
  if (!u.grid.same_lattice(sdf.field.grid))
    throw ValidationError("nonrigid_residuals: displacement and field grids differ");
  const Eigen::VectorXd data = data_residuals(quad, sdf, u);
  const Eigen::VectorXd reg = regularizer_residual(lambda, mass, stiffness, u);
  Eigen::VectorXd r(data.size() + reg.size());
  r << data, reg;
  return r;
}

std::pair<double, double> evaluate_energy(const DisplacementField& u,
                                          const std::vector<QuadraturePoint>& quad,
                                          const SignedDistanceField& sdf, double lambda,
                                          const Eigen::VectorXd& mass,
                                          const SparseMat& stiffness) {
  const Eigen::VectorXd data = data_residuals(quad, sdf, u);
  const Eigen::VectorXd reg = regularizer_residual(lambda, mass, stiffness, u);
  return {0.5 * data.squaredNorm(), 0.5 * reg.squaredNorm()};
}

NonrigidProblem::NonrigidProblem(const GridFem& fem, const QuadCache& cache,
                                 const SignedDistanceField& sdf, double lambda)
    : fem_(fem), cache_(cache), sdf_(sdf), lambda_(lambda) {
  if (!fem.grid().same_lattice(sdf.field.grid))
    throw ValidationError("NonrigidProblem: FE grid and distance field grids differ");
  if (!cache.grid.same_lattice(fem.grid()))
    throw ValidationError("NonrigidProblem: quadrature cache built for a different grid");
  const std::int64_t nn = fem_.grid().num_nodes();
  dist_.resize(cache_.size());
  grad_.resize(cache_.size());
  reg_.resize(nn * fem_.grid().ndim);
  scratch_.resize(static_cast<std::size_t>(nn));
  if (fem_.grid().ndim == 2) {
    auto scaled = std::make_shared<SparseMat>();
    *scaled = fem_.inv_sqrt_mass().asDiagonal() * assemble_stiffness(fem_.grid());
    scaled->makeCompressed();
    scaled_stiffness_ = std::move(scaled);
  }
}

std::int64_t NonrigidProblem::num_unknowns() const {
  return fem_.grid().num_nodes() * fem_.grid().ndim;
}

std::int64_t NonrigidProblem::num_residuals() const {
  return static_cast<std::int64_t>(cache_.size()) + num_unknowns();
}

void NonrigidProblem::set_point(const Eigen::VectorXd& x) {
  x_ = x;
  const GridSpec& grid = fem_.grid();
  const int n = grid.ndim;
  const std::int64_t nn = grid.num_nodes();
  const int corners = cache_.corners;

  for (std::size_t k = 0; k < cache_.size(); ++k) {
    Vec3 phi = cache_.position[k];
    const std::int64_t* nodes = &cache_.node[k * corners];
    const double* psi = &cache_.psi[k * corners];
    for (int c = 0; c < corners; ++c) {
      const std::int64_t j = nodes[c];
      const double p = psi[c];
      for (int comp = 0; comp < n; ++comp) phi[comp] += p * x[comp * nn + j];
    }
    dist_[k] = sample_value(sdf_, phi);
    grad_[k] = sample_gradient(sdf_, phi);
  }
  for (int comp = 0; comp < n; ++comp)
    fem_.apply_regularizer(lambda_, x.data() + comp * nn, reg_.data() + comp * nn);
}

Eigen::VectorXd NonrigidProblem::residuals() const {
  const std::int64_t nq = static_cast<std::int64_t>(cache_.size());
  Eigen::VectorXd r(num_residuals());
  for (std::int64_t k = 0; k < nq; ++k) r[k] = cache_.sqrt_weight[k] * dist_[k];
  r.tail(reg_.size()) = reg_;
  return r;
}

void NonrigidProblem::apply_jacobian(const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
  const GridSpec& grid = fem_.grid();
  const int n = grid.ndim;
  const std::int64_t nn = grid.num_nodes();
  const int corners = cache_.corners;
  const std::int64_t nq = static_cast<std::int64_t>(cache_.size());

  out.resize(num_residuals());
  for (std::int64_t k = 0; k < nq; ++k) {
    const std::int64_t* nodes = &cache_.node[k * corners];
    const double* psi = &cache_.psi[k * corners];
    const Vec3& g = grad_[k];
    double acc = 0.0;
    for (int c = 0; c < corners; ++c) {
      const std::int64_t j = nodes[c];
      double dv = 0.0;
      for (int comp = 0; comp < n; ++comp) dv += g[comp] * v[comp * nn + j];
      acc += psi[c] * dv;
    }
    out[k] = cache_.sqrt_weight[k] * acc;
  }
  for (int comp = 0; comp < n; ++comp)
    fem_.apply_regularizer(lambda_, v.data() + comp * nn, out.data() + nq + comp * nn);
}

void NonrigidProblem::apply_jacobian_transpose(const Eigen::VectorXd& w,
                                               Eigen::VectorXd& out) const {
  const GridSpec& grid = fem_.grid();
  const int n = grid.ndim;
  const std::int64_t nn = grid.num_nodes();
  const int corners = cache_.corners;
  const std::int64_t nq = static_cast<std::int64_t>(cache_.size());

  out.resize(num_unknowns());
  for (int comp = 0; comp < n; ++comp) {
    fem_.apply_regularizer_transpose(lambda_, w.data() + nq + comp * nn,
                                     out.data() + comp * nn);
  }
  for (std::int64_t k = 0; k < nq; ++k) {
    const std::int64_t* nodes = &cache_.node[k * corners];
    const double* psi = &cache_.psi[k * corners];
    const Vec3& g = grad_[k];
    const double f = cache_.sqrt_weight[k] * w[k];
    for (int c = 0; c < corners; ++c) {
      const std::int64_t j = nodes[c];
      for (int comp = 0; comp < n; ++comp) out[comp * nn + j] += f * g[comp] * psi[c];
    }
  }
}

Eigen::SparseMatrix<double> NonrigidProblem::sparse_jacobian() const {
  if (!scaled_stiffness_) throw SolverError("NonrigidProblem: sparse Jacobian is 2D-only");
  const GridSpec& grid = fem_.grid();
  const int n = grid.ndim;
  const std::int64_t nn = grid.num_nodes();
  const int corners = cache_.corners;
  const std::int64_t nq = static_cast<std::int64_t>(cache_.size());

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(nq * corners * n + scaled_stiffness_->nonZeros() * n);
  for (std::int64_t k = 0; k < nq; ++k) {
    const std::int64_t* nodes = &cache_.node[k * corners];
    const double* psi = &cache_.psi[k * corners];
    const Vec3& g = grad_[k];
    for (int c = 0; c < corners; ++c)
      for (int comp = 0; comp < n; ++comp)
        trip.emplace_back(k, comp * nn + nodes[c], cache_.sqrt_weight[k] * g[comp] * psi[c]);
  }
  const SparseMat& r = *scaled_stiffness_;
  for (int outer = 0; outer < r.outerSize(); ++outer)
    for (SparseMat::InnerIterator it(r, outer); it; ++it)
      for (int comp = 0; comp < n; ++comp)
        trip.emplace_back(nq + comp * nn + it.row(), comp * nn + it.col(),
                          lambda_ * it.value());
  Eigen::SparseMatrix<double> jac(num_residuals(), num_unknowns());
  jac.setFromTriplets(trip.begin(), trip.end());
  jac.makeCompressed();
  return jac;
}

std::pair<double, double> NonrigidProblem::energy_split() const {
  double em = 0.0;
  for (std::size_t k = 0; k < cache_.size(); ++k) {
    const double r = cache_.sqrt_weight[k] * dist_[k];
    em += r * r;
  }
  return {0.5 * em, 0.5 * reg_.squaredNorm()};
}

namespace {

double roughness_of(const GridFem& fem, const Eigen::VectorXd& x) {
  DisplacementField u(fem.grid());
  std::copy(x.data(), x.data() + x.size(), u.nodal.begin());
  return fem.roughness(u);
}

}  // namespace

NonrigidResult register_nonrigid(const std::vector<QuadraturePoint>& quad,
                                 const SignedDistanceField& sdf, const DisplacementField& init,
                                 const RegistrationParams& params) {
  params.validate();
  if (!init.grid.same_lattice(sdf.field.grid))
    throw ValidationError("register_nonrigid: init field and distance field grids differ");

  const GridFem fem(init.grid);
  const QuadCache cache = build_quad_cache(init.grid, quad);

  NonrigidResult res;
  res.u = init;
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(init.nodal.data(), init.nodal.size());

  for (std::size_t s = 0; s < params.lambda_schedule.size(); ++s) {
    const double lambda = params.lambda_schedule[s];
    NonrigidProblem problem(fem, cache, sdf, lambda);

    GnOptions opt;
    opt.max_iters = params.max_gn_iters;
    opt.energy_rel_tol = params.energy_rel_tol;
    opt.stage_lambda = lambda;
    opt.solver = params.solver;
    if (opt.solver.backend == SolveBackend::Auto)
      opt.solver.backend =
          init.grid.ndim == 2 ? SolveBackend::DirectNormal : SolveBackend::Iterative;

    const GnResult gn = gn_minimize(problem, x, opt);
    x = gn.x;

    NonrigidStage stage;
    stage.lambda = lambda;
    stage.iterations = gn.iterations;
    stage.status = gn.status;
    stage.trace = gn.trace;
    if (!gn.trace.empty()) {
      stage.e_match = gn.trace.back().e_match;
      stage.e_reg = gn.trace.back().e_reg;
    }
    stage.roughness = roughness_of(fem, x);
    res.stages.push_back(std::move(stage));

    if (gn.status == GnStatus::LineSearchFailed || gn.status == GnStatus::StalledDirection) {
      res.ok = false;
      res.failed_stage = static_cast<int>(s);
      break;
    }
  }
  std::copy(x.data(), x.data() + x.size(), res.u.nodal.begin());
  return res;
}

NonrigidResult register_nonrigid(const Contour& contour, const SignedDistanceField& sdf,
                                 const DisplacementField& init, const RegistrationParams& params) {
  return register_nonrigid(curve_quadrature(contour), sdf, init, params);
}

NonrigidResult register_nonrigid(const TriMesh& mesh, const SignedDistanceField& sdf,
                                 const DisplacementField& init, const RegistrationParams& params) {
  return register_nonrigid(surface_quadrature(mesh), sdf, init, params);
}

}  // namespace m2r
