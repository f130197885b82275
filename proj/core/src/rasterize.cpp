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

#include "m2r/rasterize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace m2r {

BinaryMask rasterize_contour(const Contour& contour, const GridSpec& grid) {
  contour.validate();
  if (!contour.closed) throw ValidationError("rasterize_contour: contour must be closed");
  if (grid.ndim != 2) throw ValidationError("rasterize_contour: 2D grids only");

  BinaryMask mask(grid);
  const int nseg = contour.num_segments();
  std::vector<double> xs;
  for (int j = 0; j < grid.dims[1]; ++j) {
    const double y = static_cast<double>(j) / (grid.dims[1] - 1);
    xs.clear();
    for (int s = 0; s < nseg; ++s) {
      auto [a, b] = contour.segment(s);
      // Half-open rule in y so shared vertices count once.
      if ((a.y() > y) == (b.y() > y)) continue;
      xs.push_back(a.x() + (y - a.y()) / (b.y() - a.y()) * (b.x() - a.x()));
    }
    std::sort(xs.begin(), xs.end());
    for (int i = 0; i < grid.dims[0]; ++i) {
      const double x = static_cast<double>(i) / (grid.dims[0] - 1);
      const std::size_t crossings_right =
          xs.end() - std::upper_bound(xs.begin(), xs.end(), x);
      mask.set(i, j, 0, (crossings_right % 2) == 1);
    }
  }
  return mask;
}

BinaryMask rasterize_mesh(const TriMesh& mesh, const GridSpec& grid) {
  mesh.validate();
  if (grid.ndim != 3) throw ValidationError("rasterize_mesh: 3D grids only");

  // Fixed irrational-ish ray offsets avoid rays passing exactly through
  // vertices or edges of meshes aligned with the lattice.
  const double eps_y = 0.6180339887498949e-7;
  const double eps_z = 0.4142135623730951e-7;

  BinaryMask mask(grid);
  const int ny = grid.dims[1], nz = grid.dims[2], nx = grid.dims[0];
  std::vector<std::vector<double>> crossings(static_cast<std::size_t>(ny) * nz);

  for (const auto& tr : mesh.triangles) {
    const Vec3 &a = mesh.vertices[tr[0]], &b = mesh.vertices[tr[1]], &c = mesh.vertices[tr[2]];
    const double ylo = std::min({a.y(), b.y(), c.y()}), yhi = std::max({a.y(), b.y(), c.y()});
    const double zlo = std::min({a.z(), b.z(), c.z()}), zhi = std::max({a.z(), b.z(), c.z()});
    const int j0 = std::max(0, static_cast<int>(std::ceil((ylo - eps_y) * (ny - 1))));
    const int j1 = std::min(ny - 1, static_cast<int>(std::floor((yhi - eps_y) * (ny - 1))) + 1);
    const int k0 = std::max(0, static_cast<int>(std::ceil((zlo - eps_z) * (nz - 1))));
    const int k1 = std::min(nz - 1, static_cast<int>(std::floor((zhi - eps_z) * (nz - 1))) + 1);
    for (int k = k0; k <= k1; ++k) {
      const double z = static_cast<double>(k) / (nz - 1) + eps_z;
      for (int j = j0; j <= j1; ++j) {
        const double y = static_cast<double>(j) / (ny - 1) + eps_y;
        // Barycentric solve in the (y,z) projection.
        const double d11 = b.y() - a.y(), d12 = c.y() - a.y();
        const double d21 = b.z() - a.z(), d22 = c.z() - a.z();
        const double det = d11 * d22 - d12 * d21;
        if (det == 0.0) continue;  // edge-on triangle; neighbors cover the crossing
        const double ry = y - a.y(), rz = z - a.z();
        const double s = (ry * d22 - rz * d12) / det;
        const double t = (-ry * d21 + rz * d11) / det;
        if (s < 0.0 || t < 0.0 || s + t > 1.0) continue;
        const double x = a.x() + s * (b.x() - a.x()) + t * (c.x() - a.x());
        crossings[static_cast<std::size_t>(k) * ny + j].push_back(x);
      }
    }
  }

  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j) {
      auto& xs = crossings[static_cast<std::size_t>(k) * ny + j];
      std::sort(xs.begin(), xs.end());
      for (int i = 0; i < nx; ++i) {
        const double x = static_cast<double>(i) / (nx - 1);
        const std::size_t right = xs.end() - std::upper_bound(xs.begin(), xs.end(), x);
        mask.set(i, j, k, (right % 2) == 1);
      }
    }
  return mask;
}

std::vector<Vec3> mask_boundary_nodes(const BinaryMask& mask) {
  const GridSpec& grid = mask.grid;
  std::vector<Vec3> pts;
  const int nz = grid.ndim == 3 ? grid.dims[2] : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int i = 0; i < grid.dims[0]; ++i) {
        if (!mask.at(i, j, k)) continue;
        bool boundary = false;
        const int di[6] = {1, -1, 0, 0, 0, 0};
        const int dj[6] = {0, 0, 1, -1, 0, 0};
        const int dk[6] = {0, 0, 0, 0, 1, -1};
        const int nneigh = grid.ndim == 3 ? 6 : 4;
        for (int nb = 0; nb < nneigh && !boundary; ++nb) {
          const int ii = i + di[nb], jj = j + dj[nb], kk = k + dk[nb];
          if (ii < 0 || ii >= grid.dims[0] || jj < 0 || jj >= grid.dims[1] || kk < 0 ||
              kk >= nz)
            continue;
          if (!mask.at(ii, jj, kk)) boundary = true;
        }
        if (boundary) pts.push_back(node_coordinates(grid, {i, j, k}));
      }
  return pts;
}

}  // namespace m2r
