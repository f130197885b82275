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

#include <vector>

#include "m2r/grid.hpp"

namespace m2r {

/// Binary decisions of J raters on a common grid.
struct RaterStack {
  GridSpec grid;
  std::vector<BinaryMask> decisions;

  void validate() const;
  int num_raters() const { return static_cast<int>(decisions.size()); }
};

struct StapleResult {
  std::vector<double> weights;       // posterior foreground probability per node
  std::vector<double> sensitivity;   // p_j
  std::vector<double> specificity;   // q_j
  BinaryMask gt_mask;                // weights >= 0.5
  int iterations = 0;
  bool converged = true;
  std::vector<double> log_likelihood;  // one entry per EM iteration
};

/// Binary STAPLE: EM estimation of a ground-truth segmentation and per-rater
/// sensitivity/specificity. `prior` < 0 selects the automatic prior (mean
/// foreground fraction over raters). Per-node rater sums are accumulated in
/// value order, so permuting the raters permutes (p, q) and leaves the
/// weights bit-identical.
StapleResult staple_estimate(const RaterStack& stack, double prior = -1.0, int max_iters = 100,
                             double tol = 1e-7);

}  // namespace m2r
