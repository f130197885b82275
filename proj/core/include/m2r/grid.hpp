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
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "m2r/errors.hpp"

namespace m2r {

using Vec3 = Eigen::Vector3d;

/// Uniform node lattice on the unit square/cube.
///
/// Nodes along an axis with D nodes sit at k/(D-1), k = 0..D-1, so the lattice
/// spans exactly [0,1]^n. Values are stored one per node, x-fastest. The
/// physical `spacing` (length per cell) is metadata used only when reporting
/// metrics in physical units; all computations run in normalized coordinates.
struct GridSpec {
  int ndim = 2;
  std::array<int, 3> dims = {2, 2, 1};          // node counts; unused axes = 1
  std::array<double, 3> spacing = {1.0, 1.0, 1.0};

  GridSpec() = default;
  GridSpec(int nx, int ny) : ndim(2), dims{nx, ny, 1} { validate(); }
  GridSpec(int nx, int ny, int nz) : ndim(3), dims{nx, ny, nz} { validate(); }

  void validate() const;

  std::int64_t num_nodes() const {
    std::int64_t n = 1;
    for (int a = 0; a < ndim; ++a) n *= dims[a];
    return n;
  }

  /// Normalized distance between adjacent nodes along `axis`.
  double step(int axis) const { return 1.0 / (dims[axis] - 1); }

  /// Smallest per-axis step; the "cell width" used in tolerances.
  double min_step() const;

  /// Linear index strides, x-fastest.
  std::int64_t stride(int axis) const {
    std::int64_t s = 1;
    for (int a = 0; a < axis; ++a) s *= dims[a];
    return s;
  }

  std::int64_t linear_index(int i, int j, int k = 0) const {
    return i + static_cast<std::int64_t>(dims[0]) * (j + static_cast<std::int64_t>(dims[1]) * k);
  }

  bool same_lattice(const GridSpec& o) const {
    return ndim == o.ndim && dims == o.dims;
  }
};

/// Normalized coordinates of the node with the given multi-index.
/// Throws ValidationError on an out-of-range index.
Vec3 node_coordinates(const GridSpec& grid, const std::array<int, 3>& index);

/// Multi-index of the node nearest to a point (clamped to the lattice).
std::array<int, 3> nearest_node(const GridSpec& grid, const Vec3& p);

/// Raster of real values on a GridSpec, x-fastest. Houses images and
/// signed distance values.
struct ScalarField {
  GridSpec grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& g, double fill = 0.0)
      : grid(g), values(static_cast<std::size_t>(g.num_nodes()), fill) {}

  void validate() const;  // size match + all finite

  double& at(int i, int j, int k = 0) { return values[static_cast<std::size_t>(grid.linear_index(i, j, k))]; }
  double at(int i, int j, int k = 0) const { return values[static_cast<std::size_t>(grid.linear_index(i, j, k))]; }
};

/// One boolean per node; true marks the region of interest.
struct BinaryMask {
  GridSpec grid;
  std::vector<std::uint8_t> bits;

  BinaryMask() = default;
  explicit BinaryMask(const GridSpec& g, bool fill = false)
      : grid(g), bits(static_cast<std::size_t>(g.num_nodes()), fill ? 1 : 0) {}

  bool at(int i, int j, int k = 0) const { return bits[static_cast<std::size_t>(grid.linear_index(i, j, k))] != 0; }
  void set(int i, int j, int k, bool v) { bits[static_cast<std::size_t>(grid.linear_index(i, j, k))] = v ? 1 : 0; }

  std::int64_t count_true() const;
};

/// Nodal finite-element displacement, component-major: nodal[c*N + i] is
/// component c at node i. Component c corresponds to the vector U_{c+1}.
struct DisplacementField {
  GridSpec grid;
  std::vector<double> nodal;

  DisplacementField() = default;
  explicit DisplacementField(const GridSpec& g)
      : grid(g), nodal(static_cast<std::size_t>(g.num_nodes()) * g.ndim, 0.0) {}

  void validate() const;

  double* component(int c) { return nodal.data() + static_cast<std::size_t>(c) * grid.num_nodes(); }
  const double* component(int c) const { return nodal.data() + static_cast<std::size_t>(c) * grid.num_nodes(); }
};

// ---------------------------------------------------------------------------
// Multilinear sampling on the node lattice.
// ---------------------------------------------------------------------------

/// Cell containing a point after componentwise clamping to [0,1].
/// Points exactly on an interior cell face are assigned to the lower cell,
/// which fixes the one-sided gradient convention there.
struct CellLocation {
  std::array<int, 3> cell = {0, 0, 0};    // low-corner node index per axis
  std::array<double, 3> frac = {0, 0, 0}; // in [0,1] within the cell
  std::int64_t base = 0;                  // linear index of the low corner
};

CellLocation locate_cell(const GridSpec& grid, const Vec3& p);

/// Interpolation weight of each cell corner; corner bit a of `corner`
/// selects the high node along axis a.
double corner_weight(const GridSpec& grid, const CellLocation& loc, int corner);

/// Multilinear interpolation of nodal `values` at p (clamped).
double sample_multilinear(const GridSpec& grid, const double* values, const Vec3& p);

/// Gradient of the multilinear interpolant at p, in normalized coordinates.
Vec3 gradient_multilinear(const GridSpec& grid, const double* values, const Vec3& p);

/// Displacement vector u(p) by per-component multilinear interpolation.
Vec3 sample_displacement(const DisplacementField& u, const Vec3& p);

/// Deformed position phi(p) = p + u(p).
inline Vec3 deform_point(const DisplacementField& u, const Vec3& p) {
  return p + sample_displacement(u, p);
}

}  // namespace m2r
