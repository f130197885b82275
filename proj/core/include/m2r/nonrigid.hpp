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

#pragma once

#include <memory>

#include "m2r/data_term.hpp"
#include "m2r/fem.hpp"
#include "m2r/gn.hpp"
#include "m2r/params.hpp"

namespace m2r {

/// Residual vector of the discretized non-rigid energy: the weighted
/// signed-distance rows at the FE-deformed quadrature points, then
/// lambda * M^{-1/2} L U_c per displacement component.
Eigen::VectorXd nonrigid_residuals(const DisplacementField& u,
                                   const std::vector<QuadraturePoint>& quad,
                                   const SignedDistanceField& sdf, double lambda,
                                   const Eigen::VectorXd& mass, const SparseMat& stiffness);

/// (E_match, E_reg) of a displacement; E_reg carries the lambda^2 factor.
std::pair<double, double> evaluate_energy(const DisplacementField& u,
                                          const std::vector<QuadraturePoint>& quad,
                                          const SignedDistanceField& sdf, double lambda,
                                          const Eigen::VectorXd& mass, const SparseMat& stiffness);

/// Least-squares problem of one lambda stage over the flat component-major
/// nodal unknowns. In 2D the sparse Jacobian (and hence the direct normal
/// path) is available; in 3D only operator access is exposed, so the solver
/// can never form J^T J there.
class NonrigidProblem final : public LeastSquaresProblem {
 public:
  NonrigidProblem(const GridFem& fem, const QuadCache& cache, const SignedDistanceField& sdf,
                  double lambda);

  std::int64_t num_unknowns() const override;
  std::int64_t num_residuals() const override;
  void set_point(const Eigen::VectorXd& x) override;
  Eigen::VectorXd residuals() const override;
  void apply_jacobian(const Eigen::VectorXd& v, Eigen::VectorXd& out) const override;
  void apply_jacobian_transpose(const Eigen::VectorXd& w, Eigen::VectorXd& out) const override;
  bool has_sparse_jacobian() const override { return fem_.grid().ndim == 2; }
  Eigen::SparseMatrix<double> sparse_jacobian() const override;
  std::pair<double, double> energy_split() const override;

  double lambda() const { return lambda_; }

 private:
  const GridFem& fem_;
  const QuadCache& cache_;
  const SignedDistanceField& sdf_;
  double lambda_;
  std::shared_ptr<const SparseMat> scaled_stiffness_;  // M^{-1/2} L, 2D only

  // state at the current point
  Eigen::VectorXd x_;
  std::vector<double> dist_;              // d(phi(x_k))
  std::vector<Vec3> grad_;                // grad d(phi(x_k))
  Eigen::VectorXd reg_;                   // lambda M^{-1/2} L U_c, stacked
  mutable std::vector<double> scratch_;   // one nodal component
};

struct NonrigidStage {
  double lambda = 0.0;
  double e_match = 0.0;     // at the stage's converged iterate
  double e_reg = 0.0;       // with this stage's lambda^2
  double roughness = 0.0;   // the lambda-free seminorm 0.5 sum |M^{-1/2} L U_c|^2
  int iterations = 0;
  GnStatus status = GnStatus::Converged;
  std::vector<GnIterate> trace;
};

struct NonrigidResult {
  DisplacementField u;
  std::vector<NonrigidStage> stages;
  bool ok = true;           // false if any stage failed (partial result)
  int failed_stage = -1;
};

/// Lambda-cascade: one Gauss-Newton run per schedule entry, warm-started from
/// the previous stage (the first from `init`). A stage failure stops the
/// cascade and returns the partial result with `ok` cleared.
NonrigidResult register_nonrigid(const std::vector<QuadraturePoint>& quad,
                                 const SignedDistanceField& sdf, const DisplacementField& init,
                                 const RegistrationParams& params);
NonrigidResult register_nonrigid(const Contour& contour, const SignedDistanceField& sdf,
                                 const DisplacementField& init, const RegistrationParams& params);
NonrigidResult register_nonrigid(const TriMesh& mesh, const SignedDistanceField& sdf,
                                 const DisplacementField& init, const RegistrationParams& params);

}  // namespace m2r
