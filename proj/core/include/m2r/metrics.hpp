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

#include <vector>

#include "m2r/geometry.hpp"
#include "m2r/grid.hpp"

namespace m2r {

/// Dice coefficient 2|A n B| / (|A| + |B|); 1 when both masks are empty.
/// Throws on grid mismatch.
double dice(const BinaryMask& a, const BinaryMask& b);

struct HausdorffResult {
  double symmetric = 0.0;
  double d_ab = 0.0;  // max over a of the distance to b
  double d_ba = 0.0;
};

/// Directed distances are measured from the vertices of one set to the
/// closest point of the other set's geometry (point-to-segment in 2D,
/// point-to-triangle in 3D, point-to-point for raw point sets).
HausdorffResult hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b);
HausdorffResult hausdorff(const Contour& a, const Contour& b);
HausdorffResult hausdorff(const TriMesh& a, const TriMesh& b);

/// Nearest-rank percentile (pct in (0,100]) of the directed vertex-to-surface
/// distances from a to b; pct = 100 reproduces the directed Hausdorff value.
double hausdorff_percentile(const Contour& a, const Contour& b, double pct);
double hausdorff_percentile(const TriMesh& a, const TriMesh& b, double pct);
double hausdorff_percentile(const std::vector<Vec3>& a, const std::vector<Vec3>& b, double pct);

/// Distance samples behind the percentile/Hausdorff values; exposed for
/// reports and tests.
std::vector<double> directed_distances(const Contour& a, const Contour& b);
std::vector<double> directed_distances(const TriMesh& a, const TriMesh& b);
std::vector<double> directed_distances(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

/// Exact closest-point distances to single primitives.
double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b);
double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

double nearest_rank_percentile(std::vector<double> samples, double pct);

}  // namespace m2r
