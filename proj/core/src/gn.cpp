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

#include "m2r/gn.hpp"

#include <cmath>
#include <iostream>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "m2r/errors.hpp"

namespace m2r {

Eigen::SparseMatrix<double> LeastSquaresProblem::sparse_jacobian() const {
  throw SolverError("problem does not provide a sparse Jacobian");
}

Eigen::MatrixXd LeastSquaresProblem::dense_jacobian() const {
  throw SolverError("problem does not provide a dense Jacobian");
}

void LeastSquaresProblem::normal_equations(double, Eigen::SparseMatrix<double>&,
                                           Eigen::VectorXd&) const {
  throw SolverError("problem does not provide specialized normal equations");
}

std::pair<double, double> LeastSquaresProblem::energy_split() const {
  const Eigen::VectorXd r = residuals();
  return {0.5 * r.squaredNorm(), 0.0};
}

Eigen::VectorXd solve_normal_direct(const Eigen::SparseMatrix<double>& jacobian,
                                    const Eigen::VectorXd& residual, double tikhonov) {
  Eigen::SparseMatrix<double> jtj = jacobian.transpose() * jacobian;
  const double shift = tikhonov * jtj.diagonal().sum() / static_cast<double>(jtj.rows());
  Eigen::SparseMatrix<double> eye(jtj.rows(), jtj.cols());
  eye.setIdentity();
  jtj += shift * eye;

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
  llt.compute(jtj);
  if (llt.info() == Eigen::Success) {
    const Eigen::VectorXd jtr = jacobian.transpose() * residual;
    return llt.solve(-jtr);
  }
  std::cerr << "m2r: warning: normal-equation factorization failed, "
               "falling back to the iterative solver\n";
  SparseOperator op(jacobian);
  return solve_lsq_iterative(op, residual, 1e-10, 1e-10).x;
}

LsmrResult solve_lsq_iterative(const LinearOperator& jacobian, const Eigen::VectorXd& residual,
                               double atol, double btol, std::int64_t max_inner) {
  LsmrOptions opt;
  opt.atol = atol;
  opt.btol = btol;
  opt.max_iters = max_inner;
  return lsmr_solve(jacobian, -residual, opt);
}

namespace {

class ProblemJacobianOperator final : public LinearOperator {
 public:
  explicit ProblemJacobianOperator(const LeastSquaresProblem& p) : p_(p) {}
  std::int64_t rows() const override { return p_.num_residuals(); }
  std::int64_t cols() const override { return p_.num_unknowns(); }
  void apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const override {
    p_.apply_jacobian(v, out);
  }
  void apply_transpose(const Eigen::VectorXd& u, Eigen::VectorXd& out) const override {
    p_.apply_jacobian_transpose(u, out);
  }

 private:
  const LeastSquaresProblem& p_;
};

// Persistent direct-path state: the normal-equation sparsity is fixed across
// Gauss-Newton iterations, so the symbolic analysis runs once.
class DirectNormalState {
 public:
  Eigen::VectorXd solve_step(LeastSquaresProblem& problem, const Eigen::VectorXd& r,
                             double tikhonov, bool& ok) {
    Eigen::VectorXd jtr;
    if (problem.has_normal_equations()) {
      problem.normal_equations(tikhonov, jtj_, jtr);
    } else {
      const Eigen::SparseMatrix<double> j = problem.sparse_jacobian();
      jtj_ = j.transpose() * j;
      const double shift = tikhonov * jtj_.diagonal().sum() / static_cast<double>(jtj_.rows());
      Eigen::SparseMatrix<double> eye(jtj_.rows(), jtj_.cols());
      eye.setIdentity();
      jtj_ += shift * eye;
      jtr = j.transpose() * r;
    }
    if (!analyzed_) {
      llt_.analyzePattern(jtj_);
      analyzed_ = true;
    }
    llt_.factorize(jtj_);
    if (llt_.info() != Eigen::Success) {
      ok = false;
      return Eigen::VectorXd();
    }
    ok = true;
    return llt_.solve(-jtr);
  }

 private:
  Eigen::SparseMatrix<double> jtj_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt_;
  bool analyzed_ = false;
};

SolveBackend resolve_backend(const LeastSquaresProblem& p, SolveBackend want) {
  if (want != SolveBackend::Auto) return want;
  if (p.has_dense_jacobian()) return SolveBackend::DenseNormal;
  if (p.has_normal_equations() || p.has_sparse_jacobian()) return SolveBackend::DirectNormal;
  return SolveBackend::Iterative;
}

}  // namespace

GnResult gn_minimize(LeastSquaresProblem& problem, const Eigen::VectorXd& x0,
                     const GnOptions& opt) {
  GnResult res;
  res.x = x0;
  problem.set_point(res.x);
  Eigen::VectorXd r = problem.residuals();
  double energy = 0.5 * r.squaredNorm();

  const auto push_trace = [&](int it, double step) {
    auto [em, er] = problem.energy_split();
    res.trace.push_back({it, opt.stage_lambda, 0.5 * r.squaredNorm(), em, er, step});
  };
  push_trace(0, 0.0);

  res.energy = energy;
  if (energy == 0.0) {
    res.status = GnStatus::Converged;
    return res;
  }

  const SolveBackend backend = resolve_backend(problem, opt.solver.backend);
  DirectNormalState direct;

  Eigen::VectorXd g(problem.num_unknowns());
  for (int iter = 1; iter <= opt.max_iters; ++iter) {
    problem.apply_jacobian_transpose(r, g);
    if (g.norm() == 0.0) {
      res.status = GnStatus::Converged;
      return res;
    }

    // Step: delta = argmin ||J delta + r||.
    Eigen::VectorXd delta;
    if (backend == SolveBackend::DenseNormal) {
      const Eigen::MatrixXd j = problem.dense_jacobian();
      Eigen::MatrixXd jtj = j.transpose() * j;
      const double shift =
          opt.solver.tikhonov * jtj.trace() / static_cast<double>(jtj.rows());
      jtj.diagonal().array() += shift;
      delta = jtj.ldlt().solve(-(j.transpose() * r));
    } else if (backend == SolveBackend::DirectNormal) {
      bool ok = false;
      delta = direct.solve_step(problem, r, opt.solver.tikhonov, ok);
      if (!ok) {
        std::cerr << "m2r: warning: sparse factorization failed at iteration " << iter
                  << ", falling back to the iterative solver\n";
        ProblemJacobianOperator op(problem);
        delta = solve_lsq_iterative(op, r, opt.solver.lsmr_atol, opt.solver.lsmr_btol,
                                    opt.solver.lsmr_max_inner)
                    .x;
      }
    } else {
      ProblemJacobianOperator op(problem);
      delta = solve_lsq_iterative(op, r, opt.solver.lsmr_atol, opt.solver.lsmr_btol,
                                  opt.solver.lsmr_max_inner)
                  .x;
    }

    const double dd = g.dot(delta);  // directional derivative of 0.5||r||^2
    if (!(dd < 0.0)) {
      res.status = GnStatus::StalledDirection;
      return res;
    }
    // An exact Gauss-Newton step reduces the model by -dd/2; once that falls
    // below the relative tolerance the iterate is converged.
    if (-0.5 * dd <= energy * opt.energy_rel_tol) {
      res.status = GnStatus::Converged;
      return res;
    }

    // Backtracking (halving) with the Armijo condition.
    double step = 1.0;
    bool accepted = false;
    double new_energy = energy;
    Eigen::VectorXd x_trial;
    for (int h = 0; h <= opt.max_halvings; ++h) {
      x_trial = res.x + step * delta;
      if (problem.admissible(x_trial)) {
        problem.set_point(x_trial);
        const Eigen::VectorXd r_trial = problem.residuals();
        new_energy = 0.5 * r_trial.squaredNorm();
        if (new_energy <= energy + opt.armijo_c * step * dd) {
          accepted = true;
          r = r_trial;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      problem.set_point(res.x);  // restore cached state at the best iterate
      res.status = GnStatus::LineSearchFailed;
      return res;
    }

    res.x = x_trial;
    res.iterations = iter;
    push_trace(iter, step);

    const double decrease = (energy - new_energy) / std::max(energy, 1e-300);
    energy = new_energy;
    res.energy = energy;
    if (decrease < opt.energy_rel_tol) {
      res.status = GnStatus::Converged;
      return res;
    }
  }
  res.status = GnStatus::MaxIterations;
  return res;
}

}  // namespace m2r
