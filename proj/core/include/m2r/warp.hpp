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

/// Pull-back resampling: out(x) = image(phi(x)) with multilinear sampling and
/// clamped coordinates. No field inversion: phi maps the output (template)
/// frame into the image frame.
ScalarField pullback_warp(const ScalarField& image, const DisplacementField& deform);
ScalarField pullback_warp(const ScalarField& image, const AffineMap& deform);

/// alpha * a + (1 - alpha) * b on a common grid.
ScalarField blend(const ScalarField& a, const ScalarField& b, double alpha);

}  // namespace m2r
