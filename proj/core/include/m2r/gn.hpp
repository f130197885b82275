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

#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "m2r/lsmr.hpp"
#include "m2r/params.hpp"

namespace m2r {

/// Nonlinear least-squares problem E(x) = 0.5 ||r(x)||^2 with Jacobian access
/// in whatever forms the problem supports. `set_point` caches state at x;
/// residual and Jacobian queries refer to the cached point.
class LeastSquaresProblem {
 public:
  virtual ~LeastSquaresProblem() = default;

  virtual std::int64_t num_unknowns() const = 0;
  virtual std::int64_t num_residuals() const = 0;

  virtual void set_point(const Eigen::VectorXd& x) = 0;
  virtual Eigen::VectorXd residuals() const = 0;

  virtual void apply_jacobian(const Eigen::VectorXd& v, Eigen::VectorXd& out) const = 0;
  virtual void apply_jacobian_transpose(const Eigen::VectorXd& w, Eigen::VectorXd& out) const = 0;

  virtual bool has_sparse_jacobian() const { return false; }
  virtual Eigen::SparseMatrix<double> sparse_jacobian() const;

  virtual bool has_dense_jacobian() const { return false; }
  virtual Eigen::MatrixXd dense_jacobian() const;

  /// Specialized normal-equation assembly with call-to-call fixed sparsity;
  /// lets the direct backend analyze the pattern once and refactorize.
  virtual bool has_normal_equations() const { return false; }
  virtual void normal_equations(double shift, Eigen::SparseMatrix<double>& jtj,
                                Eigen::VectorXd& jtr) const;

  /// (E_match, E_reg) at the cached point, for traces. Defaults to putting
  /// the whole energy into E_match.
  virtual std::pair<double, double> energy_split() const;

  /// Line-search admissibility (e.g. keep affine diagonals away from zero).
  virtual bool admissible(const Eigen::VectorXd& x) const {
    (void)x;
    return true;
  }
};

enum class GnStatus { Converged, MaxIterations, LineSearchFailed, StalledDirection };

struct GnIterate {
  int iteration = 0;
  double lambda = 0.0;
  double energy = 0.0;
  double e_match = 0.0;
  double e_reg = 0.0;
  double step = 0.0;
};

struct GnResult {
  Eigen::VectorXd x;
  double energy = 0.0;
  GnStatus status = GnStatus::Converged;
  int iterations = 0;
  std::vector<GnIterate> trace;  // entry 0 records the initial energies
};

struct GnOptions {
  int max_iters = 50;
  double energy_rel_tol = 1e-8;
  int max_halvings = 30;
  double armijo_c = 1e-4;
  double stage_lambda = 0.0;  // copied into trace rows
  SolverOptions solver;
};

/// Gauss-Newton with backtracking line search. Accepted energies are strictly
/// decreasing; on line-search exhaustion the best iterate is returned with
/// status LineSearchFailed.
GnResult gn_minimize(LeastSquaresProblem& problem, const Eigen::VectorXd& x0,
                     const GnOptions& opt = {});

/// delta = argmin ||J delta + r|| via sparse Cholesky of J^T J (with a tiny
/// relative diagonal shift). Falls back to the iterative solver with a
/// warning if the factorization fails.
Eigen::VectorXd solve_normal_direct(const Eigen::SparseMatrix<double>& jacobian,
                                    const Eigen::VectorXd& residual, double tikhonov = 1e-12);

/// delta = argmin ||J delta + r|| through operator access only (LSMR).
LsmrResult solve_lsq_iterative(const LinearOperator& jacobian, const Eigen::VectorXd& residual,
                               double atol = 1e-8, double btol = 1e-8,
                               std::int64_t max_inner = -1);

}  // namespace m2r
