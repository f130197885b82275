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

#include "m2r/params.hpp"

#include <cmath>

namespace m2r {

void RegistrationParams::validate() const {
  if (!(alpha >= 0.0) || !(mu >= 0.0))
    throw ValidationError("RegistrationParams: alpha and mu must be nonnegative");
  if (lambda_schedule.empty())
    throw ValidationError("RegistrationParams: empty lambda schedule");
  for (std::size_t i = 0; i < lambda_schedule.size(); ++i) {
    if (!(lambda_schedule[i] > 0.0) || !std::isfinite(lambda_schedule[i]))
      throw ValidationError("RegistrationParams: lambda values must be positive");
    if (i > 0 && !(lambda_schedule[i] < lambda_schedule[i - 1]))
      throw ValidationError("RegistrationParams: lambda schedule must be strictly decreasing");
  }
  if (max_gn_iters <= 0)
    throw ValidationError("RegistrationParams: max_gn_iters must be positive");
  if (!(energy_rel_tol > 0.0))
    throw ValidationError("RegistrationParams: energy_rel_tol must be positive");
}

namespace {

std::vector<double> decades(int from_exp, int to_exp) {
  std::vector<double> v;
  for (int e = from_exp; e >= to_exp; --e) v.push_back(std::pow(10.0, e));
  return v;
}

}  // namespace

RegistrationParams preset(const std::string& name) {
  RegistrationParams p;
  if (name == "qlf") {
    p.alpha = 1e-3;
    p.mu = 1e-3;
    p.lambda_schedule = decades(-4, -7);
  } else if (name == "dp") {
    p.alpha = 1e-3;
    p.mu = 1e-1;
    p.lambda_schedule = decades(-4, -6);
  } else if (name == "hips") {
    p.alpha = 1.0;
    p.mu = 1.0;
    p.lambda_schedule = decades(0, -4);
  } else if (name == "shapes") {
    p.alpha = 1.0;
    p.mu = 1.0;
    p.lambda_schedule = decades(-2, -7);
  } else if (name == "brain") {
    p.alpha = 1e2;
    p.mu = 1e2;
    p.lambda_schedule = decades(1, -5);
  } else {
    throw ValidationError("unknown preset '" + name + "'");
  }
  return p;
}

std::vector<std::string> preset_names() { return {"qlf", "dp", "hips", "shapes", "brain"}; }

}  // namespace m2r
