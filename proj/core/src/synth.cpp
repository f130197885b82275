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

#include "m2r/synth.hpp"

#include <cmath>
#include <map>

#include <Eigen/Geometry>

namespace m2r {

Vec3 brain_deformation(const Vec3& x, double beta) {
  const double x1 = x[0], x2 = x[1], x3 = x[2];
  Vec3 u;
  u[0] = -beta * x1 * (x2 - 0.5) + beta * (1.0 - x1) * (x1 - 0.5) + beta * (1.0 - x1) * (x3 - 0.5);
  u[1] = beta * x1 * (x2 - 0.5) + beta * (1.0 - x1) * (x2 - 0.5) - beta * (1.0 - x1) * (x3 - 0.5);
  u[2] = -beta * x1 * (x3 - 0.5) + beta * (1.0 - x1) * (x3 - 0.5);
  return u;
}

Vec3 rigid_body(const Vec3& x, const Vec3& t, const Vec3& theta) {
  const Vec3 center(0.5, 0.5, 0.5);
  const Eigen::Matrix3d r =
      (Eigen::AngleAxisd(theta[2], Vec3::UnitZ()) * Eigen::AngleAxisd(theta[1], Vec3::UnitY()) *
       Eigen::AngleAxisd(theta[0], Vec3::UnitX()))
          .toRotationMatrix();
  return r * (x - center) + center + t;
}

TriMesh map_vertices(const TriMesh& mesh, const std::function<Vec3(const Vec3&)>& fn) {
  TriMesh out = mesh;
  for (auto& v : out.vertices) v = fn(v);
  return out;
}

Contour map_points(const Contour& contour,
                   const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& fn) {
  Contour out = contour;
  for (auto& p : out.points) p = fn(p);
  return out;
}

namespace {

TriMesh unit_icosahedron() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriMesh m;
  m.vertices = {{-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
                {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : m.vertices) v.normalize();
  m.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                 {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                 {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                 {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return m;
}

TriMesh subdivide_projected(const TriMesh& in) {
  TriMesh out;
  out.vertices = in.vertices;
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    Vec3 v = (out.vertices[a] + out.vertices[b]).normalized();
    const int idx = static_cast<int>(out.vertices.size());
    out.vertices.push_back(v);
    midpoint.emplace(key, idx);
    return idx;
  };
  for (const auto& tr : in.triangles) {
    const int ab = mid(tr[0], tr[1]);
    const int bc = mid(tr[1], tr[2]);
    const int ca = mid(tr[2], tr[0]);
    out.triangles.push_back({tr[0], ab, ca});
    out.triangles.push_back({tr[1], bc, ab});
    out.triangles.push_back({tr[2], ca, bc});
    out.triangles.push_back({ab, bc, ca});
  }
  return out;
}

void require_inside_unit_domain(const Vec3& lo, const Vec3& hi, int ndim) {
  for (int a = 0; a < ndim; ++a)
    if (lo[a] < 0.0 || hi[a] > 1.0)
      throw ValidationError("synth: shape exits the unit domain");
}

}  // namespace

TriMesh icosphere(const Vec3& center, double radius, int level) {
  TriMesh m = unit_icosahedron();
  for (int l = 0; l < level; ++l) m = subdivide_projected(m);
  for (auto& v : m.vertices) v = center + radius * v;
  return m;
}

Primitive2d make_disk(const GridSpec& grid, const Eigen::Vector2d& center, double radius,
                      int n_points) {
  require_inside_unit_domain(Vec3(center.x() - radius, center.y() - radius, 0),
                             Vec3(center.x() + radius, center.y() + radius, 0), 2);
  Primitive2d out;
  out.mask = BinaryMask(grid);
  for (int j = 0; j < grid.dims[1]; ++j)
    for (int i = 0; i < grid.dims[0]; ++i) {
      const Vec3 p = node_coordinates(grid, {i, j, 0});
      out.mask.set(i, j, 0, (p.head<2>() - center).norm() <= radius);
    }
  out.contour.closed = true;
  for (int k = 0; k < n_points; ++k) {
    const double a = 2.0 * M_PI * k / n_points;
    out.contour.points.emplace_back(center.x() + radius * std::cos(a),
                                    center.y() + radius * std::sin(a));
  }
  return out;
}

Primitive2d make_square(const GridSpec& grid, const Eigen::Vector2d& center, double side,
                        int points_per_side) {
  const double h = side / 2.0;
  require_inside_unit_domain(Vec3(center.x() - h, center.y() - h, 0),
                             Vec3(center.x() + h, center.y() + h, 0), 2);
  Primitive2d out;
  out.mask = BinaryMask(grid);
  for (int j = 0; j < grid.dims[1]; ++j)
    for (int i = 0; i < grid.dims[0]; ++i) {
      const Vec3 p = node_coordinates(grid, {i, j, 0});
      out.mask.set(i, j, 0,
                   std::abs(p.x() - center.x()) <= h && std::abs(p.y() - center.y()) <= h);
    }
  // counter-clockwise from the bottom-left corner
  const Eigen::Vector2d corners[4] = {{center.x() - h, center.y() - h},
                                      {center.x() + h, center.y() - h},
                                      {center.x() + h, center.y() + h},
                                      {center.x() - h, center.y() + h}};
  out.contour.closed = true;
  for (int s = 0; s < 4; ++s) {
    const Eigen::Vector2d a = corners[s], b = corners[(s + 1) % 4];
    for (int k = 0; k < points_per_side; ++k)
      out.contour.points.emplace_back(a + (b - a) * (static_cast<double>(k) / points_per_side));
  }
  return out;
}

Primitive3d make_sphere(const GridSpec& grid, const Vec3& center, double radius, int level) {
  return make_ellipsoid(grid, center, Vec3(radius, radius, radius), level);
}

Primitive3d make_ellipsoid(const GridSpec& grid, const Vec3& center, const Vec3& semiaxes,
                           int level) {
  require_inside_unit_domain(center - semiaxes, center + semiaxes, 3);
  Primitive3d out;
  out.mask = BinaryMask(grid);
  for (int k = 0; k < grid.dims[2]; ++k)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int i = 0; i < grid.dims[0]; ++i) {
        const Vec3 p = node_coordinates(grid, {i, j, k});
        const Vec3 q = (p - center).cwiseQuotient(semiaxes);
        out.mask.set(i, j, k, q.squaredNorm() <= 1.0);
      }
  out.mesh = icosphere(Vec3::Zero(), 1.0, level);
  for (auto& v : out.mesh.vertices) v = center + v.cwiseProduct(semiaxes);
  return out;
}

Primitive3d make_box(const GridSpec& grid, const Vec3& center, const Vec3& half_extents) {
  require_inside_unit_domain(center - half_extents, center + half_extents, 3);
  Primitive3d out;
  out.mask = BinaryMask(grid);
  for (int k = 0; k < grid.dims[2]; ++k)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int i = 0; i < grid.dims[0]; ++i) {
        const Vec3 p = node_coordinates(grid, {i, j, k});
        const Vec3 q = (p - center).cwiseAbs() - half_extents;
        out.mask.set(i, j, k, q.maxCoeff() <= 0.0);
      }
  // two triangles per face, outward-oriented
  const Vec3 lo = center - half_extents, hi = center + half_extents;
  auto v = [&](int bx, int by, int bz) {
    return Vec3(bx ? hi.x() : lo.x(), by ? hi.y() : lo.y(), bz ? hi.z() : lo.z());
  };
  out.mesh.vertices = {v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(1, 1, 0),
                       v(0, 0, 1), v(1, 0, 1), v(0, 1, 1), v(1, 1, 1)};
  out.mesh.triangles = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6}, {0, 1, 4}, {1, 5, 4},
                        {2, 6, 3}, {3, 6, 7}, {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
  return out;
}

double blob_radius(const Vec3& d, double base_radius) {
  return base_radius * (1.0 + 0.15 * d.x() * d.y() + 0.12 * d.y() * d.z() -
                        0.10 * d.x() * d.z() + 0.08 * (d.z() * d.z() - 1.0 / 3.0));
}

Primitive3d make_blob(const GridSpec& grid, const Vec3& center, double base_radius, int level) {
  const double rmax = base_radius * 1.30;
  require_inside_unit_domain(center - Vec3::Constant(rmax), center + Vec3::Constant(rmax), 3);
  Primitive3d out;
  out.mask = BinaryMask(grid);
  for (int k = 0; k < grid.dims[2]; ++k)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int i = 0; i < grid.dims[0]; ++i) {
        const Vec3 p = node_coordinates(grid, {i, j, k});
        const Vec3 d = p - center;
        const double r = d.norm();
        if (r == 0.0) {
          out.mask.set(i, j, k, true);
          continue;
        }
        out.mask.set(i, j, k, r <= blob_radius(d / r, base_radius));
      }
  out.mesh = icosphere(Vec3::Zero(), 1.0, level);
  for (auto& v : out.mesh.vertices) v = center + blob_radius(v, base_radius) * v;
  return out;
}

}  // namespace m2r
