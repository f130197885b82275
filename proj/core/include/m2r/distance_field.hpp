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

#include "m2r/grid.hpp"

namespace m2r {

/// Signed Euclidean distance to the mask boundary, sampled at the grid nodes.
/// Positive outside the mask, negative inside. The boundary is located at
/// lattice resolution: |d| at a node is the distance to the nearest node of
/// opposite sign minus half the cell width, so nodes straddling the boundary
/// get |d| of about half a cell.
struct SignedDistanceField {
  ScalarField field;
  BinaryMask source;
};

/// Exact (to lattice resolution) signed Euclidean distance transform,
/// computed with the separable lower-envelope algorithm, one linear pass per
/// axis. Works in 2D and 3D. Throws ValidationError if the mask is uniform.
SignedDistanceField signed_distance_transform(const BinaryMask& mask);

/// Multilinear interpolation of d at p; coordinates are clamped
/// componentwise to [0,1] first, which extends d constantly along each axis.
double sample_value(const SignedDistanceField& sdf, const Vec3& p);

/// Gradient of the interpolated d at p (one-sided across cell faces,
/// ties to the lower cell).
Vec3 sample_gradient(const SignedDistanceField& sdf, const Vec3& p);

/// Squared Euclidean distance from every node to the set of nodes where
/// `seed` is true, via per-axis parabola envelopes. Building block of the
/// signed transform, exposed for reuse and testing.
std::vector<double> squared_distance_to_set(const GridSpec& grid, const std::vector<std::uint8_t>& seed);

}  // namespace m2r
