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

#include "m2r/geometry.hpp"

#include <cmath>

namespace m2r {

void Contour::validate() const {
  if (closed && num_points() < 3)
    throw ValidationError("Contour: a closed contour needs at least 3 points");
  if (!closed && num_points() < 2)
    throw ValidationError("Contour: an open polyline needs at least 2 points");
  for (int i = 0; i < num_segments(); ++i) {
    auto [a, b] = segment(i);
    if ((b - a).norm() == 0.0)
      throw ValidationError("Contour: zero-length segment at index " + std::to_string(i));
  }
}

double Contour::length() const {
  double l = 0.0;
  for (int i = 0; i < num_segments(); ++i) {
    auto [a, b] = segment(i);
    l += (b - a).norm();
  }
  return l;
}

namespace {

double orient(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

bool segments_properly_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                                 const Eigen::Vector2d& q1, const Eigen::Vector2d& q2) {
  const double d1 = orient(q1, q2, p1);
  const double d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1);
  const double d4 = orient(p1, p2, q2);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

std::vector<std::pair<int, int>> contour_self_intersections(const Contour& c) {
  std::vector<std::pair<int, int>> hits;
  const int n = c.num_segments();
  for (int i = 0; i < n; ++i) {
    auto [p1, p2] = c.segment(i);
    for (int j = i + 1; j < n; ++j) {
      // Skip segments sharing an endpoint (adjacent, incl. the wrap pair).
      if (j == i + 1 || (c.closed && i == 0 && j == n - 1)) continue;
      auto [q1, q2] = c.segment(j);
      if (segments_properly_intersect(p1, p2, q1, q2)) hits.emplace_back(i, j);
    }
  }
  return hits;
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

void TriMesh::validate() const {
  const int nv = static_cast<int>(vertices.size());
  for (std::size_t k = 0; k < triangles.size(); ++k) {
    const auto& tr = triangles[k];
    for (int v : tr)
      if (v < 0 || v >= nv)
        throw ValidationError("TriMesh: vertex index out of range in triangle " + std::to_string(k));
    if (triangle_area(vertices[tr[0]], vertices[tr[1]], vertices[tr[2]]) <= 0.0)
      throw ValidationError("TriMesh: degenerate triangle at index " + std::to_string(k));
  }
}

double TriMesh::total_area() const {
  double s = 0.0;
  for (const auto& tr : triangles)
    s += triangle_area(vertices[tr[0]], vertices[tr[1]], vertices[tr[2]]);
  return s;
}

Eigen::VectorXd AffineMap::parameters() const {
  Eigen::VectorXd p(num_parameters());
  int k = 0;
  for (int i = 0; i < ndim; ++i)
    for (int j = 0; j < ndim; ++j) p[k++] = A(i, j);
  for (int i = 0; i < ndim; ++i) p[k++] = t[i];
  return p;
}

AffineMap AffineMap::from_parameters(int ndim, const Eigen::VectorXd& p) {
  AffineMap m(ndim);
  if (p.size() != m.num_parameters())
    throw ValidationError("AffineMap: wrong parameter count");
  int k = 0;
  for (int i = 0; i < ndim; ++i)
    for (int j = 0; j < ndim; ++j) m.A(i, j) = p[k++];
  for (int i = 0; i < ndim; ++i) m.t[i] = p[k++];
  return m;
}

}  // namespace m2r
