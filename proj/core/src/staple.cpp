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

#include "m2r/staple.hpp"

#include <algorithm>
#include <cmath>

namespace m2r {

void RaterStack::validate() const {
  if (decisions.empty()) throw ValidationError("RaterStack: need at least one rater");
  for (const auto& d : decisions)
    if (!d.grid.same_lattice(grid))
      throw ValidationError("RaterStack: rater masks must share the common grid");
}

namespace {

constexpr double kProbEps = 1e-7;

double clamp_prob(double p) { return std::clamp(p, kProbEps, 1.0 - kProbEps); }

// Sum of a handful of addends ordered by value; invariant to input order.
double ordered_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

}  // namespace

StapleResult staple_estimate(const RaterStack& stack, double prior, int max_iters, double tol) {
  stack.validate();
  const int num_raters = stack.num_raters();
  const std::int64_t n = stack.grid.num_nodes();

  double pi = prior;
  if (pi < 0.0) {
    double fg = 0.0;
    for (const auto& d : stack.decisions) fg += static_cast<double>(d.count_true()) / n;
    pi = fg / num_raters;
  }
  pi = clamp_prob(pi);
  const double log_pi = std::log(pi), log_1mpi = std::log1p(-pi);

  StapleResult res;
  res.sensitivity.assign(num_raters, clamp_prob(0.9999));
  res.specificity.assign(num_raters, clamp_prob(0.9999));
  res.weights.assign(static_cast<std::size_t>(n), 0.0);

  std::vector<double> terms_a(num_raters), terms_b(num_raters);
  for (int iter = 1; iter <= max_iters; ++iter) {
    // E-step in the log domain.
    double loglik = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      for (int j = 0; j < num_raters; ++j) {
        const bool dij = stack.decisions[j].bits[i] != 0;
        const double p = res.sensitivity[j], q = res.specificity[j];
        terms_a[j] = dij ? std::log(p) : std::log1p(-p);
        terms_b[j] = dij ? std::log1p(-q) : std::log(q);
      }
      const double la = log_pi + ordered_sum(terms_a);
      const double lb = log_1mpi + ordered_sum(terms_b);
      const double m = std::max(la, lb);
      res.weights[i] = 1.0 / (1.0 + std::exp(lb - la));
      loglik += m + std::log(std::exp(la - m) + std::exp(lb - m));
    }
    res.log_likelihood.push_back(loglik);

    // M-step.
    double max_change = 0.0;
    for (int j = 0; j < num_raters; ++j) {
      double wd = 0.0, w = 0.0, cwnd = 0.0, cw = 0.0;
      for (std::int64_t i = 0; i < n; ++i) {
        const bool dij = stack.decisions[j].bits[i] != 0;
        w += res.weights[i];
        cw += 1.0 - res.weights[i];
        if (dij)
          wd += res.weights[i];
        else
          cwnd += 1.0 - res.weights[i];
      }
      const double p_new = clamp_prob(w > 0.0 ? wd / w : kProbEps);
      const double q_new = clamp_prob(cw > 0.0 ? cwnd / cw : kProbEps);
      max_change = std::max(max_change, std::abs(p_new - res.sensitivity[j]) +
                                            std::abs(q_new - res.specificity[j]));
      res.sensitivity[j] = p_new;
      res.specificity[j] = q_new;
    }
    res.iterations = iter;
    if (max_change < tol) {
      res.converged = true;
      break;
    }
    res.converged = false;
  }

  res.gt_mask = BinaryMask(stack.grid);
  for (std::int64_t i = 0; i < n; ++i) res.gt_mask.bits[i] = res.weights[i] >= 0.5 ? 1 : 0;
  return res;
}

}  // namespace m2r
