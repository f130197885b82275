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

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Dense>

#include "m2r/errors.hpp"
#include "m2r/grid.hpp"

namespace m2r {

/// Closed or open 2D polyline in [0,1]^2. When closed, the segment from the
/// last point back to the first is implied.
struct Contour {
  std::vector<Eigen::Vector2d> points;
  bool closed = true;

  int num_points() const { return static_cast<int>(points.size()); }
  int num_segments() const {
    return closed ? num_points() : std::max(0, num_points() - 1);
  }
  std::pair<Eigen::Vector2d, Eigen::Vector2d> segment(int i) const {
    const int n = num_points();
    return {points[i], points[(i + 1) % n]};
  }

  void validate() const;
  double length() const;
};

/// Returns index pairs of properly intersecting, non-adjacent segments.
/// Empty result means the contour is simple.
std::vector<std::pair<int, int>> contour_self_intersections(const Contour& c);

/// Triangle surface mesh in [0,1]^3.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;

  void validate() const;  // index range + no zero-area triangle
  double total_area() const;
};

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

/// Affine deformation phi(c) = A c + t.
struct AffineMap {
  int ndim = 2;
  Eigen::MatrixXd A;  // n x n
  Eigen::VectorXd t;  // n

  AffineMap() : A(Eigen::MatrixXd::Identity(2, 2)), t(Eigen::VectorXd::Zero(2)) {}
  explicit AffineMap(int n)
      : ndim(n), A(Eigen::MatrixXd::Identity(n, n)), t(Eigen::VectorXd::Zero(n)) {}

  Vec3 apply(const Vec3& p) const {
    Eigen::VectorXd q = A * p.head(ndim) + t;
    Vec3 out = Vec3::Zero();
    out.head(ndim) = q;
    return out;
  }

  /// Flat parameter vector: A row-major, then t. This is also the unknown
  /// ordering of the parametric solver and the JSON serialization order.
  Eigen::VectorXd parameters() const;
  static AffineMap from_parameters(int ndim, const Eigen::VectorXd& p);

  int num_parameters() const { return ndim * ndim + ndim; }
};

}  // namespace m2r
