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

#include "m2r/data_term.hpp"

#include <cmath>

namespace m2r {

std::vector<QuadraturePoint> curve_quadrature(const Contour& contour, CurveWeightPolicy policy) {
  contour.validate();
  std::vector<QuadraturePoint> quad;
  quad.reserve(contour.num_segments());
  for (int i = 0; i < contour.num_segments(); ++i) {
    auto [a, b] = contour.segment(i);
    const Eigen::Vector2d tangent = 0.5 * (b - a);
    const double len = (b - a).norm();
    if (len == 0.0)
      throw ValidationError("curve_quadrature: zero-length segment at index " + std::to_string(i));
    QuadraturePoint q;
    q.position = Vec3::Zero();
    q.position.head<2>() = 0.5 * (a + b);
    const double w = policy == CurveWeightPolicy::OrientationX
                         ? std::abs(tangent.x()) / tangent.norm()
                         : 1.0;
    q.weight = w * len;
    q.owner = i;
    quad.push_back(q);
  }
  return quad;
}

std::vector<QuadraturePoint> surface_quadrature(const TriMesh& mesh) {
  mesh.validate();
  std::vector<QuadraturePoint> quad;
  quad.reserve(mesh.triangles.size());
  for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
    const auto& tr = mesh.triangles[k];
    const Vec3 &a = mesh.vertices[tr[0]], &b = mesh.vertices[tr[1]], &c = mesh.vertices[tr[2]];
    QuadraturePoint q;
    q.position = (a + b + c) / 3.0;
    q.weight = triangle_area(a, b, c);
    q.owner = static_cast<int>(k);
    quad.push_back(q);
  }
  return quad;
}

Eigen::VectorXd data_residuals(const std::vector<QuadraturePoint>& quad,
                               const SignedDistanceField& sdf, const DisplacementField& u) {
  Eigen::VectorXd r(quad.size());
  for (std::size_t k = 0; k < quad.size(); ++k) {
    const Vec3 phi = deform_point(u, quad[k].position);
    r[k] = std::sqrt(quad[k].weight) * sample_value(sdf, phi);
  }
  return r;
}

Eigen::VectorXd data_residuals(const std::vector<QuadraturePoint>& quad,
                               const SignedDistanceField& sdf, const AffineMap& map) {
  Eigen::VectorXd r(quad.size());
  for (std::size_t k = 0; k < quad.size(); ++k) {
    const Vec3 phi = map.apply(quad[k].position);
    r[k] = std::sqrt(quad[k].weight) * sample_value(sdf, phi);
  }
  return r;
}

std::vector<std::pair<std::int64_t, double>> data_jacobian_row(const QuadraturePoint& q,
                                                               const SignedDistanceField& sdf,
                                                               const DisplacementField& u) {
  const GridSpec& grid = u.grid;
  const int n = grid.ndim;
  const std::int64_t nn = grid.num_nodes();
  const double sw = std::sqrt(q.weight);

  const Vec3 phi = deform_point(u, q.position);
  const Vec3 g = sample_gradient(sdf, phi);

  const CellLocation loc = locate_cell(grid, q.position);
  std::vector<std::pair<std::int64_t, double>> row;
  row.reserve((1 << n) * n);
  for (int c = 0; c < (1 << n); ++c) {
    std::int64_t off = loc.base;
    for (int a = 0; a < n; ++a)
      if ((c >> a) & 1) off += grid.stride(a);
    const double psi = corner_weight(grid, loc, c);
    for (int comp = 0; comp < n; ++comp)
      row.emplace_back(static_cast<std::int64_t>(comp) * nn + off, sw * g[comp] * psi);
  }
  return row;
}

Eigen::VectorXd data_jacobian_row(const QuadraturePoint& q, const SignedDistanceField& sdf,
                                  const AffineMap& map) {
  const int n = map.ndim;
  const double sw = std::sqrt(q.weight);
  const Vec3 phi = map.apply(q.position);
  const Vec3 g = sample_gradient(sdf, phi);

  Eigen::VectorXd row = Eigen::VectorXd::Zero(map.num_parameters());
  // d/da_pq [d(Ac + t)] = grad_p * c_q ; d/dt_p = grad_p
  for (int p = 0; p < n; ++p)
    for (int c = 0; c < n; ++c) row[p * n + c] = sw * g[p] * q.position[c];
  for (int p = 0; p < n; ++p) row[n * n + p] = sw * g[p];
  return row;
}

QuadCache build_quad_cache(const GridSpec& grid, const std::vector<QuadraturePoint>& quad) {
  QuadCache cache;
  cache.grid = grid;
  cache.corners = 1 << grid.ndim;
  cache.position.reserve(quad.size());
  cache.sqrt_weight.reserve(quad.size());
  cache.node.resize(quad.size() * cache.corners);
  cache.psi.resize(quad.size() * cache.corners);
  for (std::size_t k = 0; k < quad.size(); ++k) {
    cache.position.push_back(quad[k].position);
    cache.sqrt_weight.push_back(std::sqrt(quad[k].weight));
    const CellLocation loc = locate_cell(grid, quad[k].position);
    for (int c = 0; c < cache.corners; ++c) {
      std::int64_t off = loc.base;
      for (int a = 0; a < grid.ndim; ++a)
        if ((c >> a) & 1) off += grid.stride(a);
      cache.node[k * cache.corners + c] = off;
      cache.psi[k * cache.corners + c] = corner_weight(grid, loc, c);
    }
  }
  return cache;
}

}  // namespace m2r
