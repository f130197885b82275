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

#include <string>
#include <vector>

#include "m2r/geometry.hpp"
#include "m2r/grid.hpp"
#include "m2r/nonrigid.hpp"
#include "m2r/parametric.hpp"

namespace m2r {

enum class ThresholdPolarity { Above, Below };

/// Boolean mask by comparing every node against the threshold. Throws if the
/// result is uniform (no boundary to register against).
BinaryMask threshold_mask(const ScalarField& image, double threshold, ThresholdPolarity polarity);

/// Closed counter-clockwise circle polygon with n equally spaced points,
/// starting on the +x axis. Throws if the circle leaves [0,1]^2.
Contour make_circle_contour(const Eigen::Vector2d& center, double radius, int n_points);

struct SegmentationResult {
  Contour contour;               // deformed init: every point mapped by phi
  DisplacementField field;
  AffineMap affine;              // parametric stage result
  NonrigidResult nonrigid;
  std::vector<std::string> warnings;
  std::vector<std::pair<int, int>> self_intersections;  // empty <=> simple output
};

/// Topology-preserving ROI extraction: registers `init` (typically a centered
/// circle) against the signed distance field of `mask`, parametric stage
/// first, then the lambda cascade. An init that is not strictly inside the
/// mask foreground only produces a warning.
SegmentationResult segment_roi(const Contour& init, const BinaryMask& mask,
                               const RegistrationParams& params);

}  // namespace m2r
