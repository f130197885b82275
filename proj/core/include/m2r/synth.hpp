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

#include <functional>

#include "m2r/geometry.hpp"
#include "m2r/grid.hpp"

namespace m2r {

/// The analytic nonlinear test deformation: three fixed polynomials scaled by
/// beta, vanishing at the domain center.
Vec3 brain_deformation(const Vec3& x, double beta);

/// Rotation about the domain center (1/2,1/2,1/2) by extrinsic X-then-Y-then-Z
/// Euler angles, followed by a translation.
Vec3 rigid_body(const Vec3& x, const Vec3& t, const Vec3& theta_radians);

TriMesh map_vertices(const TriMesh& mesh, const std::function<Vec3(const Vec3&)>& fn);
Contour map_points(const Contour& contour, const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& fn);

/// Icosahedron subdivided `level` times with vertices projected to the unit
/// sphere, then scaled/translated. All vertices sit at distance `radius` from
/// `center` up to roundoff; triangles are outward-oriented.
TriMesh icosphere(const Vec3& center, double radius, int level);

struct Primitive2d {
  BinaryMask mask;
  Contour contour;
};
struct Primitive3d {
  BinaryMask mask;
  TriMesh mesh;
};

/// All generators produce a mask and the matching analytic boundary
/// discretization, and throw if the shape leaves the unit domain.
Primitive2d make_disk(const GridSpec& grid, const Eigen::Vector2d& center, double radius,
                      int n_points = 128);
Primitive2d make_square(const GridSpec& grid, const Eigen::Vector2d& center, double side,
                        int points_per_side = 32);
Primitive3d make_sphere(const GridSpec& grid, const Vec3& center, double radius, int level = 3);
Primitive3d make_ellipsoid(const GridSpec& grid, const Vec3& center, const Vec3& semiaxes,
                           int level = 3);
Primitive3d make_box(const GridSpec& grid, const Vec3& center, const Vec3& half_extents);

/// Smooth star-shaped blob: an icosphere whose radius varies with direction
/// by a fixed low-order polynomial profile. Mask and mesh share the profile.
Primitive3d make_blob(const GridSpec& grid, const Vec3& center, double base_radius,
                      int level = 4);

/// Radius of the blob boundary along a unit direction.
double blob_radius(const Vec3& unit_dir, double base_radius);

}  // namespace m2r
