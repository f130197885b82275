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

#include <cstdint>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace m2r {

/// Abstract matrix access: products with A and A^T only. The iterative
/// least-squares path sees nothing else, so A^T A is never formed there.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual std::int64_t rows() const = 0;
  virtual std::int64_t cols() const = 0;
  virtual void apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const = 0;            // A v
  virtual void apply_transpose(const Eigen::VectorXd& u, Eigen::VectorXd& out) const = 0;  // A^T u
};

/// LinearOperator view of an explicit sparse matrix.
class SparseOperator final : public LinearOperator {
 public:
  explicit SparseOperator(const Eigen::SparseMatrix<double>& m) : m_(m) {}
  std::int64_t rows() const override { return m_.rows(); }
  std::int64_t cols() const override { return m_.cols(); }
  void apply(const Eigen::VectorXd& v, Eigen::VectorXd& out) const override { out.noalias() = m_ * v; }
  void apply_transpose(const Eigen::VectorXd& u, Eigen::VectorXd& out) const override {
    out.noalias() = m_.transpose() * u;
  }

 private:
  const Eigen::SparseMatrix<double>& m_;
};

struct LsmrOptions {
  double atol = 1e-8;
  double btol = 1e-8;
  std::int64_t max_iters = -1;  // -1: 10 * cols
};

enum class LsmrStop {
  TrivialSolution,  // b (numerically) zero, x = 0
  ResidualTol,      // ||A x - b|| small relative to btol/atol
  GradientTol,      // ||A^T (A x - b)|| <= atol ||A|| ||A x - b||
  MaxIterations,
};

struct LsmrResult {
  Eigen::VectorXd x;
  int iterations = 0;
  LsmrStop stop = LsmrStop::TrivialSolution;
  double norm_residual = 0.0;   // estimated ||A x - b||
  double norm_gradient = 0.0;   // estimated ||A^T (A x - b)||
};

/// Minimizes ||A x - b|| without forming A^T A (Golub-Kahan bidiagonalization
/// with a QR-of-QR update, the LSMR recurrences). Started from x = 0, so the
/// returned x lies in range(A^T): on rank-deficient problems this is the
/// minimum-norm least-squares solution.
LsmrResult lsmr_solve(const LinearOperator& A, const Eigen::VectorXd& b,
                      const LsmrOptions& opt = {});

}  // namespace m2r
