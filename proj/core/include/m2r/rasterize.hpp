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

#include "m2r/geometry.hpp"
#include "m2r/grid.hpp"

namespace m2r {

/// Even-odd fill of a closed contour sampled at the grid nodes.
BinaryMask rasterize_contour(const Contour& contour, const GridSpec& grid);

/// Even-odd fill of a closed triangle mesh: parity of ray crossings along
/// x-direction node lines. The rays carry a fixed sub-voxel offset so that
/// edge-on hits cannot flip parity.
BinaryMask rasterize_mesh(const TriMesh& mesh, const GridSpec& grid);

/// Foreground nodes with at least one face-adjacent background node,
/// as normalized coordinates.
std::vector<Vec3> mask_boundary_nodes(const BinaryMask& mask);

}  // namespace m2r
