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

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "m2r/distance_field.hpp"
#include "m2r/geometry.hpp"
#include "m2r/grid.hpp"

namespace m2r {

/// One quadrature point on the template hypersurface. `weight` already folds
/// the hypersurface weight in: w * segment length in 2D, triangle area in 3D.
struct QuadraturePoint {
  Vec3 position = Vec3::Zero();
  double weight = 0.0;
  int owner = 0;  // segment / triangle index
};

/// How the per-segment hypersurface weight w_c is chosen in 2D.
enum class CurveWeightPolicy {
  OrientationX,  // |x-component of the unit tangent|; vertical runs get 0
  Constant,      // w = 1
};

/// Midpoint rule on the contour segments: one point per segment, weight
/// w * |c_{i+1} - c_i|. Throws on zero-length segments.
std::vector<QuadraturePoint> curve_quadrature(const Contour& contour,
                                              CurveWeightPolicy policy = CurveWeightPolicy::OrientationX);

/// Barycenter rule on the mesh triangles: one point per triangle, weight =
/// area (the hypersurface weight is 1). Throws on degenerate triangles.
std::vector<QuadraturePoint> surface_quadrature(const TriMesh& mesh);

/// sqrt(weight) * d(phi(x)) per quadrature point.
Eigen::VectorXd data_residuals(const std::vector<QuadraturePoint>& quad,
                               const SignedDistanceField& sdf, const DisplacementField& u);
Eigen::VectorXd data_residuals(const std::vector<QuadraturePoint>& quad,
                               const SignedDistanceField& sdf, const AffineMap& map);

/// Derivative of one residual with respect to the nodal displacement,
/// as (flat unknown index, value) pairs; unknowns are component-major.
/// At most 2^n nodes per component are touched.
std::vector<std::pair<std::int64_t, double>> data_jacobian_row(const QuadraturePoint& q,
                                                               const SignedDistanceField& sdf,
                                                               const DisplacementField& u);

/// Derivative of one residual with respect to the affine parameters
/// (A row-major, then t).
Eigen::VectorXd data_jacobian_row(const QuadraturePoint& q, const SignedDistanceField& sdf,
                                  const AffineMap& map);

/// Interpolation data of quadrature points pinned to the displacement grid.
/// Cells and basis values depend only on the undeformed positions, so they
/// are computed once per registration and reused across iterations.
struct QuadCache {
  GridSpec grid;
  int corners = 4;                    // 2^n
  std::vector<Vec3> position;         // quadrature positions
  std::vector<double> sqrt_weight;
  std::vector<std::int64_t> node;     // [q * corners + c] node linear index
  std::vector<double> psi;            // [q * corners + c] basis value

  std::size_t size() const { return position.size(); }
};

QuadCache build_quad_cache(const GridSpec& grid, const std::vector<QuadraturePoint>& quad);

}  // namespace m2r
