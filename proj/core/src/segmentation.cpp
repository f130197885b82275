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

#include "m2r/segmentation.hpp"

#include <cmath>

#include "m2r/distance_field.hpp"

namespace m2r {

BinaryMask threshold_mask(const ScalarField& image, double threshold,
                          ThresholdPolarity polarity) {
  image.validate();
  BinaryMask mask(image.grid);
  for (std::size_t i = 0; i < image.values.size(); ++i) {
    const bool above = image.values[i] >= threshold;
    mask.bits[i] = (polarity == ThresholdPolarity::Above) == above ? 1 : 0;
  }
  const std::int64_t n = mask.count_true();
  if (n == 0 || n == mask.grid.num_nodes())
    throw ValidationError("threshold_mask: threshold produces a uniform mask");
  return mask;
}

Contour make_circle_contour(const Eigen::Vector2d& center, double radius, int n_points) {
  if (n_points < 3)
    throw ValidationError("make_circle_contour: need at least 3 points");
  if (!(radius > 0.0)) throw ValidationError("make_circle_contour: radius must be positive");
  if (center.x() - radius < 0.0 || center.x() + radius > 1.0 || center.y() - radius < 0.0 ||
      center.y() + radius > 1.0)
    throw ValidationError("make_circle_contour: circle exits the unit square");
  Contour c;
  c.closed = true;
  for (int k = 0; k < n_points; ++k) {
    const double a = 2.0 * M_PI * k / n_points;
    c.points.emplace_back(center.x() + radius * std::cos(a), center.y() + radius * std::sin(a));
  }
  return c;
}

SegmentationResult segment_roi(const Contour& init, const BinaryMask& mask,
                               const RegistrationParams& params) {
  init.validate();
  const SignedDistanceField sdf = signed_distance_transform(mask);

  SegmentationResult res;
  for (const auto& p : init.points) {
    if (sample_value(sdf, Vec3(p.x(), p.y(), 0)) >= 0.0) {
      res.warnings.push_back("init contour is not strictly inside the mask foreground");
      break;
    }
  }

  const auto parametric = register_parametric(init, sdf, params);
  res.affine = parametric.map;

  const DisplacementField warm = affine_to_displacement(parametric.map, mask.grid);
  res.nonrigid = register_nonrigid(init, sdf, warm, params);
  res.field = res.nonrigid.u;

  res.contour = init;
  for (auto& p : res.contour.points) {
    const Vec3 q = deform_point(res.field, Vec3(p.x(), p.y(), 0));
    p = q.head<2>();
  }
  res.self_intersections = contour_self_intersections(res.contour);
  if (!res.self_intersections.empty())
    res.warnings.push_back("output contour self-intersects at " +
                           std::to_string(res.self_intersections.size()) + " segment pair(s)");
  return res;
}

}  // namespace m2r
