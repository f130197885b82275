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

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "m2r/grid.hpp"

namespace m2r {

using SparseMat = Eigen::SparseMatrix<double>;

/// Lumped mass matrix of multilinear elements on the uniform grid, as its
/// diagonal. Entry j is the sum over cells incident to node j of
/// cell volume / 2^n; the diagonal sums to |Omega| = 1.
Eigen::VectorXd assemble_lumped_mass(const GridSpec& grid);

/// Stiffness matrix of multilinear elements, assembled from closed-form
/// tensor-product element integrals. Symmetric positive semidefinite with the
/// constant vector in its kernel; row sums vanish by construction (each
/// diagonal entry is the negated sum of its off-diagonal row).
SparseMat assemble_stiffness(const GridSpec& grid);

/// Regularizer residual lambda * M^{-1/2} L U_c, concatenated over the
/// displacement components. `mass` is the lumped mass diagonal.
Eigen::VectorXd regularizer_residual(double lambda, const Eigen::VectorXd& mass,
                                     const SparseMat& stiffness, const DisplacementField& u);

/// Per-grid cached element tables with matrix-free application of L and of
/// the mass-scaled regularizer. This is what the 3D solver path uses; the
/// normal matrix is never formed there.
class GridFem {
 public:
  explicit GridFem(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  const Eigen::VectorXd& lumped_mass() const { return mass_; }
  const Eigen::VectorXd& inv_sqrt_mass() const { return inv_sqrt_mass_; }

  /// out = L in, one scalar nodal vector.
  void apply_stiffness(const double* in, double* out) const;

  /// out = lambda * M^{-1/2} (L in).
  void apply_regularizer(double lambda, const double* in, double* out) const;

  /// out = lambda * L (M^{-1/2} in); transpose of apply_regularizer.
  void apply_regularizer_transpose(double lambda, const double* in, double* out) const;

  /// Energy seminorm 0.5 * sum_c |M^{-1/2} L U_c|^2 of a displacement
  /// (the regularizer at lambda = 1).
  double roughness(const DisplacementField& u) const;

 private:
  struct Stencil {
    // Coefficient per offset, index ((dz+1)*3 + (dy+1))*3 + (dx+1) in 3D and
    // (dy+1)*3 + (dx+1) in 2D. Offsets leaving the lattice hold zero.
    std::array<double, 27> c{};
  };

  void apply2d(const double* in, double* out) const;
  void apply3d(const double* in, double* out) const;

  GridSpec grid_;
  Eigen::VectorXd mass_;
  Eigen::VectorXd inv_sqrt_mass_;
  std::vector<Stencil> combos_;  // 3^n row-type combinations
  mutable std::vector<double> scratch_;
};

}  // namespace m2r
