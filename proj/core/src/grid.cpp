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

#include "m2r/grid.hpp"

#include <algorithm>
#include <cmath>

namespace m2r {

void GridSpec::validate() const {
  if (ndim != 2 && ndim != 3)
    throw ValidationError("GridSpec: ndim must be 2 or 3, got " + std::to_string(ndim));
  for (int a = 0; a < ndim; ++a) {
    if (dims[a] < 2)
      throw ValidationError("GridSpec: dims[" + std::to_string(a) + "] must be >= 2, got " +
                            std::to_string(dims[a]));
    if (!(spacing[a] > 0.0))
      throw ValidationError("GridSpec: spacing must be positive");
  }
  for (int a = ndim; a < 3; ++a) {
    if (dims[a] != 1) throw ValidationError("GridSpec: unused axis must have dims = 1");
  }
}

double GridSpec::min_step() const {
  double h = step(0);
  for (int a = 1; a < ndim; ++a) h = std::min(h, step(a));
  return h;
}

Vec3 node_coordinates(const GridSpec& grid, const std::array<int, 3>& index) {
  Vec3 p = Vec3::Zero();
  for (int a = 0; a < grid.ndim; ++a) {
    if (index[a] < 0 || index[a] >= grid.dims[a])
      throw ValidationError("node_coordinates: index out of range on axis " + std::to_string(a));
    p[a] = static_cast<double>(index[a]) / (grid.dims[a] - 1);
  }
  return p;
}

std::array<int, 3> nearest_node(const GridSpec& grid, const Vec3& p) {
  std::array<int, 3> idx = {0, 0, 0};
  for (int a = 0; a < grid.ndim; ++a) {
    const double t = std::clamp(p[a], 0.0, 1.0) * (grid.dims[a] - 1);
    idx[a] = std::clamp(static_cast<int>(std::lround(t)), 0, grid.dims[a] - 1);
  }
  return idx;
}

void ScalarField::validate() const {
  grid.validate();
  if (static_cast<std::int64_t>(values.size()) != grid.num_nodes())
    throw ValidationError("ScalarField: value count does not match grid");
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError("ScalarField: non-finite value");
}

std::int64_t BinaryMask::count_true() const {
  std::int64_t n = 0;
  for (std::uint8_t b : bits) n += (b != 0);
  return n;
}

void DisplacementField::validate() const {
  grid.validate();
  if (static_cast<std::int64_t>(nodal.size()) != grid.num_nodes() * grid.ndim)
    throw ValidationError("DisplacementField: component count does not match grid");
  for (double v : nodal)
    if (!std::isfinite(v)) throw ValidationError("DisplacementField: non-finite value");
}

CellLocation locate_cell(const GridSpec& grid, const Vec3& p) {
  CellLocation loc;
  for (int a = 0; a < grid.ndim; ++a) {
    const double t = std::clamp(p[a], 0.0, 1.0) * (grid.dims[a] - 1);
    int i = static_cast<int>(std::floor(t));
    double f = t - i;
    // Ties (f == 0) go to the lower cell; also folds t == dims-1 inward.
    if (f == 0.0 && i > 0) {
      i -= 1;
      f = 1.0;
    }
    i = std::min(i, grid.dims[a] - 2);
    loc.cell[a] = i;
    loc.frac[a] = f;
  }
  loc.base = grid.linear_index(loc.cell[0], loc.cell[1], grid.ndim == 3 ? loc.cell[2] : 0);
  return loc;
}

double corner_weight(const GridSpec& grid, const CellLocation& loc, int corner) {
  double w = 1.0;
  for (int a = 0; a < grid.ndim; ++a)
    w *= ((corner >> a) & 1) ? loc.frac[a] : 1.0 - loc.frac[a];
  return w;
}

double sample_multilinear(const GridSpec& grid, const double* values, const Vec3& p) {
  const CellLocation loc = locate_cell(grid, p);
  const int corners = 1 << grid.ndim;
  double acc = 0.0;
  for (int c = 0; c < corners; ++c) {
    std::int64_t off = loc.base;
    for (int a = 0; a < grid.ndim; ++a)
      if ((c >> a) & 1) off += grid.stride(a);
    acc += corner_weight(grid, loc, c) * values[off];
  }
  return acc;
}

Vec3 gradient_multilinear(const GridSpec& grid, const double* values, const Vec3& p) {
  const CellLocation loc = locate_cell(grid, p);
  const int corners = 1 << grid.ndim;
  Vec3 g = Vec3::Zero();
  for (int c = 0; c < corners; ++c) {
    std::int64_t off = loc.base;
    for (int a = 0; a < grid.ndim; ++a)
      if ((c >> a) & 1) off += grid.stride(a);
    const double v = values[off];
    for (int d = 0; d < grid.ndim; ++d) {
      double w = ((c >> d) & 1) ? 1.0 : -1.0;
      for (int a = 0; a < grid.ndim; ++a) {
        if (a == d) continue;
        w *= ((c >> a) & 1) ? loc.frac[a] : 1.0 - loc.frac[a];
      }
      // d/dx of the reference-cell interpolant, scaled to normalized coords.
      g[d] += w * v * (grid.dims[d] - 1);
    }
  }
  return g;
}

Vec3 sample_displacement(const DisplacementField& u, const Vec3& p) {
  Vec3 d = Vec3::Zero();
  for (int c = 0; c < u.grid.ndim; ++c)
    d[c] = sample_multilinear(u.grid, u.component(c), p);
  return d;
}

}  // namespace m2r
