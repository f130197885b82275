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

#include "m2r/data_term.hpp"
#include "m2r/gn.hpp"
#include "m2r/params.hpp"

namespace m2r {

/// Residual vector of the regularized affine problem: the weighted
/// signed-distance rows, then n^2 Dirichlet rows alpha*(delta_ij - a_ij) on
/// the diagonal pattern, then the n(n-1) isotropy rows mu*(1 - a_ii/a_jj)
/// over ordered pairs i != j. Throws SolverError when a diagonal entry
/// vanishes (singular configuration).
Eigen::VectorXd parametric_residuals(const AffineMap& map,
                                     const std::vector<QuadraturePoint>& quad,
                                     const SignedDistanceField& sdf, double alpha, double mu);

/// Jacobian of parametric_residuals with respect to the flat parameters.
Eigen::MatrixXd parametric_jacobian(const AffineMap& map,
                                    const std::vector<QuadraturePoint>& quad,
                                    const SignedDistanceField& sdf, double alpha, double mu);

struct ParametricResult {
  AffineMap map;
  double e_match = 0.0;
  double e_reg = 0.0;
  GnStatus status = GnStatus::Converged;
  int iterations = 0;
  std::vector<GnIterate> trace;
};

/// Affine pre-registration by Gauss-Newton from the identity, solving the
/// tiny dense normal equations. The returned map never increases the energy
/// relative to the identity and has det(A) != 0.
ParametricResult register_parametric(const std::vector<QuadraturePoint>& quad,
                                     const SignedDistanceField& sdf,
                                     const RegistrationParams& params);
ParametricResult register_parametric(const Contour& contour, const SignedDistanceField& sdf,
                                     const RegistrationParams& params);
ParametricResult register_parametric(const TriMesh& mesh, const SignedDistanceField& sdf,
                                     const RegistrationParams& params);

/// Nodal samples of u(x) = (A - I) x + t on the grid; the hand-off from the
/// parametric stage to the non-rigid one.
DisplacementField affine_to_displacement(const AffineMap& map, const GridSpec& grid);

}  // namespace m2r
