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

#include "m2r/lsmr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace m2r {

LsmrResult lsmr_solve(const LinearOperator& A, const Eigen::VectorXd& b, const LsmrOptions& opt) {
  const std::int64_t m = A.rows();
  const std::int64_t n = A.cols();
  const std::int64_t max_iters = opt.max_iters > 0 ? opt.max_iters : 10 * n;

  LsmrResult res;
  res.x = Eigen::VectorXd::Zero(n);

  Eigen::VectorXd u = b;
  double beta = u.norm();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  double alpha = 0.0;
  if (beta > 0.0) {
    u /= beta;
    A.apply_transpose(u, v);
    alpha = v.norm();
    if (alpha > 0.0) v /= alpha;
  }
  if (alpha * beta == 0.0) {
    res.stop = LsmrStop::TrivialSolution;
    res.norm_residual = beta;
    return res;
  }

  // Golub-Kahan state and the two plane-rotation chains.
  double zetabar = alpha * beta;
  double alphabar = alpha;
  double rho = 1.0, rhobar = 1.0, cbar = 1.0, sbar = 0.0;
  Eigen::VectorXd h = v;
  Eigen::VectorXd hbar = Eigen::VectorXd::Zero(n);

  // Residual-norm estimation recurrences.
  double betadd = beta, betad = 0.0;
  double rhodold = 1.0, tautildeold = 0.0, thetatilde = 0.0, zeta = 0.0;

  double norm_a2 = alpha * alpha;
  const double normb = beta;

  Eigen::VectorXd tmp_m(m), tmp_n(n);

  for (int iter = 1; iter <= max_iters; ++iter) {
    // Next bidiagonalization step.
    A.apply(v, tmp_m);
    u = tmp_m - alpha * u;
    beta = u.norm();
    if (beta > 0.0) {
      u /= beta;
      A.apply_transpose(u, tmp_n);
      v = tmp_n - beta * v;
      alpha = v.norm();
      if (alpha > 0.0) v /= alpha;
    } else {
      alpha = 0.0;
    }

    // Rotation P: eliminate beta.
    const double rhoold = rho;
    rho = std::hypot(alphabar, beta);
    const double c = alphabar / rho;
    const double s = beta / rho;
    const double thetanew = s * alpha;
    alphabar = c * alpha;

    // Rotation Pbar: eliminate thetanew.
    const double rhobarold = rhobar;
    const double zetaold = zeta;
    const double thetabar = sbar * rho;
    const double rhotemp = cbar * rho;
    rhobar = std::hypot(cbar * rho, thetanew);
    cbar = cbar * rho / rhobar;
    sbar = thetanew / rhobar;
    zeta = cbar * zetabar;
    zetabar = -sbar * zetabar;

    // Update the search directions and the solution.
    hbar = h - (thetabar * rho / (rhoold * rhobarold)) * hbar;
    res.x += (zeta / (rho * rhobar)) * hbar;
    h = v - (thetanew / rho) * h;

    // ||r|| estimate.
    const double betahat = c * betadd;
    betadd = -s * betadd;
    const double thetatildeold = thetatilde;
    const double rhotildeold = std::hypot(rhodold, thetabar);
    const double ctildeold = rhodold / rhotildeold;
    const double stildeold = thetabar / rhotildeold;
    thetatilde = stildeold * rhobar;
    rhodold = ctildeold * rhobar;
    betad = -stildeold * betad + ctildeold * betahat;
    tautildeold = (zetaold - thetatildeold * tautildeold) / rhotildeold;
    const double taud = (zeta - thetatilde * tautildeold) / rhodold;
    const double normr = std::hypot(betad - taud, betadd);

    norm_a2 += beta * beta;
    const double norma = std::sqrt(norm_a2);
    norm_a2 += alpha * alpha;

    const double normar = std::abs(zetabar);
    const double normx = res.x.norm();

    res.iterations = iter;
    res.norm_residual = normr;
    res.norm_gradient = normar;

    // Stopping tests (Fong & Saunders S1/S2 style, conlim test omitted).
    const double test1 = normr / normb;
    const double test2 =
        (norma * normr) > 0.0 ? normar / (norma * normr) : std::numeric_limits<double>::infinity();
    const double rtol = opt.btol + opt.atol * norma * normx / normb;
    if (test1 <= rtol || 1.0 + test1 <= 1.0) {
      res.stop = LsmrStop::ResidualTol;
      return res;
    }
    if (test2 <= opt.atol || 1.0 + test2 <= 1.0) {
      res.stop = LsmrStop::GradientTol;
      return res;
    }
  }
  res.stop = LsmrStop::MaxIterations;
  return res;
}

}  // namespace m2r
