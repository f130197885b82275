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

#include "m2r/warp.hpp"

namespace m2r {

namespace {

template <typename DeformT>
ScalarField warp_impl(const ScalarField& image, const DeformT& deform, const GridSpec& grid) {
  ScalarField out(grid);
  const int nz = grid.ndim == 3 ? grid.dims[2] : 1;
  std::int64_t idx = 0;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int i = 0; i < grid.dims[0]; ++i) {
        const Vec3 x = node_coordinates(grid, {i, j, k});
        Vec3 phi;
        if constexpr (std::is_same_v<DeformT, DisplacementField>)
          phi = deform_point(deform, x);
        else
          phi = deform.apply(x);
        out.values[idx++] = sample_multilinear(image.grid, image.values.data(), phi);
      }
  return out;
}

}  // namespace

ScalarField pullback_warp(const ScalarField& image, const DisplacementField& deform) {
  if (!image.grid.same_lattice(deform.grid))
    throw ValidationError("pullback_warp: image and field grids differ");
  return warp_impl(image, deform, image.grid);
}

ScalarField pullback_warp(const ScalarField& image, const AffineMap& deform) {
  if (image.grid.ndim != deform.ndim)
    throw ValidationError("pullback_warp: image dimension and map dimension differ");
  return warp_impl(image, deform, image.grid);
}

ScalarField blend(const ScalarField& a, const ScalarField& b, double alpha) {
  if (!a.grid.same_lattice(b.grid)) throw ValidationError("blend: images on different grids");
  if (alpha < 0.0 || alpha > 1.0) throw ValidationError("blend: alpha must be in [0,1]");
  ScalarField out(a.grid);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = alpha * a.values[i] + (1.0 - alpha) * b.values[i];
  return out;
}

}  // namespace m2r
