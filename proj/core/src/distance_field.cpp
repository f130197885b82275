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

#include "m2r/distance_field.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace m2r {

namespace {

constexpr double kFar = 1e30;

// Lower envelope of parabolas (x - x_q)^2 + f[q] over sample positions
// x_q = q*h. Felzenszwalb & Huttenlocher, run once per grid line.
void envelope_1d(const double* f, double* out, int n, double h, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -kFar;
  z[1] = kFar;
  for (int q = 1; q < n; ++q) {
    const double xq = q * h;
    double s;
    for (;;) {
      const double xv = v[k] * h;
      s = (f[q] + xq * xq - (f[v[k]] + xv * xv)) / (2.0 * (xq - xv));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kFar;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    const double xq = q * h;
    while (z[k + 1] < xq) ++k;
    const double dx = xq - v[k] * h;
    out[q] = dx * dx + f[v[k]];
  }
}

}  // namespace

std::vector<double> squared_distance_to_set(const GridSpec& grid,
                                            const std::vector<std::uint8_t>& seed) {
  const std::int64_t n = grid.num_nodes();
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) d2[i] = seed[i] ? 0.0 : kFar;

  int max_dim = 0;
  for (int a = 0; a < grid.ndim; ++a) max_dim = std::max(max_dim, grid.dims[a]);
  std::vector<double> line(max_dim), lout(max_dim), z(max_dim + 1);
  std::vector<int> v(max_dim);

  for (int axis = 0; axis < grid.ndim; ++axis) {
    const int len = grid.dims[axis];
    const std::int64_t stride = grid.stride(axis);
    const double h = grid.step(axis);
    // Iterate over all grid lines along `axis`.
    std::array<int, 3> other = {0, 0, 0};
    int nother = 0;
    for (int a = 0; a < grid.ndim; ++a)
      if (a != axis) other[nother++] = a;
    const int o0 = nother > 0 ? grid.dims[other[0]] : 1;
    const int o1 = nother > 1 ? grid.dims[other[1]] : 1;
    for (int j1 = 0; j1 < o1; ++j1) {
      for (int j0 = 0; j0 < o0; ++j0) {
        std::int64_t base = 0;
        if (nother > 0) base += static_cast<std::int64_t>(j0) * grid.stride(other[0]);
        if (nother > 1) base += static_cast<std::int64_t>(j1) * grid.stride(other[1]);
        for (int q = 0; q < len; ++q) line[q] = d2[base + q * stride];
        envelope_1d(line.data(), lout.data(), len, h, v.data(), z.data());
        for (int q = 0; q < len; ++q) d2[base + q * stride] = lout[q];
      }
    }
  }
  return d2;
}

SignedDistanceField signed_distance_transform(const BinaryMask& mask) {
  mask.grid.validate();
  const std::int64_t n = mask.grid.num_nodes();
  const std::int64_t inside = mask.count_true();
  if (inside == 0) throw ValidationError("signed_distance_transform: mask is all false");
  if (inside == n) throw ValidationError("signed_distance_transform: mask is all true");

  std::vector<std::uint8_t> complement(mask.bits.size());
  for (std::size_t i = 0; i < mask.bits.size(); ++i) complement[i] = mask.bits[i] ? 0 : 1;

  // Distance of every node to the nearest node of the opposite sign.
  const std::vector<double> d2_to_inside = squared_distance_to_set(mask.grid, mask.bits);
  const std::vector<double> d2_to_outside = squared_distance_to_set(mask.grid, complement);

  // Half-cell correction places the boundary midway between opposite-sign
  // node pairs; nodes hugging the boundary then get |d| of about h/2.
  const double half_cell = 0.5 * mask.grid.min_step();

  SignedDistanceField sdf;
  sdf.field = ScalarField(mask.grid);
  sdf.source = mask;
  for (std::int64_t i = 0; i < n; ++i) {
    if (mask.bits[i])
      sdf.field.values[i] = -(std::sqrt(d2_to_outside[i]) - half_cell);
    else
      sdf.field.values[i] = std::sqrt(d2_to_inside[i]) - half_cell;
  }
  return sdf;
}

double sample_value(const SignedDistanceField& sdf, const Vec3& p) {
  return sample_multilinear(sdf.field.grid, sdf.field.values.data(), p);
}

Vec3 sample_gradient(const SignedDistanceField& sdf, const Vec3& p) {
  return gradient_multilinear(sdf.field.grid, sdf.field.values.data(), p);
}

}  // namespace m2r
