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

#include "m2r/errors.hpp"

namespace m2r {

enum class SolveBackend { Auto, DirectNormal, Iterative, DenseNormal };

/// Knobs of the linear solves inside Gauss-Newton.
struct SolverOptions {
  SolveBackend backend = SolveBackend::Auto;  // Auto: 2D direct, 3D iterative
  double lsmr_atol = 1e-8;
  double lsmr_btol = 1e-8;
  std::int64_t lsmr_max_inner = -1;  // -1: 10 * unknown count
  double tikhonov = 1e-12;           // diagonal shift factor for the direct path
};

/// Weights and schedule of the two registration stages.
struct RegistrationParams {
  double alpha = 1e-3;  // parametric Dirichlet weight
  double mu = 1e-3;     // parametric isotropy weight
  std::vector<double> lambda_schedule = {1e-4, 1e-5, 1e-6, 1e-7};
  int max_gn_iters = 50;        // per lambda stage (and for the parametric stage)
  double energy_rel_tol = 1e-8;
  SolverOptions solver;

  void validate() const;
};

/// Named parameter sets from the use cases this framework ships with.
/// Throws ValidationError for an unknown name.
RegistrationParams preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace m2r
