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

#include "m2r/fem.hpp"

#include <cmath>
#include <vector>

namespace m2r {

namespace {

// 1D factor matrices of the tensor-product multilinear element, per row type
// (0 = first node, 1 = interior, 2 = last) and offset (index delta+1).
struct AxisTables {
  double stiff[3][3];  // int psi_i' psi_j'
  double cmass[3][3];  // int psi_i psi_j (consistent)
  double lmass[3];     // lumped: row sum of cmass
};

AxisTables axis_tables(double h) {
  AxisTables t{};
  const double ih = 1.0 / h;
  // stiffness: tridiag(-1/h, 2/h, -1/h), endpoints 1/h
  t.stiff[0][1] = ih;
  t.stiff[0][2] = -ih;
  t.stiff[1][0] = -ih;
  t.stiff[1][1] = 2.0 * ih;
  t.stiff[1][2] = -ih;
  t.stiff[2][0] = -ih;
  t.stiff[2][1] = ih;
  // consistent mass: tridiag(h/6, 2h/3, h/6), endpoint diagonal h/3
  t.cmass[0][1] = h / 3.0;
  t.cmass[0][2] = h / 6.0;
  t.cmass[1][0] = h / 6.0;
  t.cmass[1][1] = 2.0 * h / 3.0;
  t.cmass[1][2] = h / 6.0;
  t.cmass[2][0] = h / 6.0;
  t.cmass[2][1] = h / 3.0;
  t.lmass[0] = h / 2.0;
  t.lmass[1] = h;
  t.lmass[2] = h / 2.0;
  return t;
}

inline int row_type(int i, int n) { return i == 0 ? 0 : (i == n - 1 ? 2 : 1); }

}  // namespace

Eigen::VectorXd assemble_lumped_mass(const GridSpec& grid) {
  grid.validate();
  std::array<AxisTables, 3> ax;
  for (int a = 0; a < grid.ndim; ++a) ax[a] = axis_tables(grid.step(a));

  Eigen::VectorXd m(grid.num_nodes());
  const int nx = grid.dims[0], ny = grid.dims[1], nz = grid.ndim == 3 ? grid.dims[2] : 1;
  std::int64_t idx = 0;
  for (int z = 0; z < nz; ++z) {
    const double mz = grid.ndim == 3 ? ax[2].lmass[row_type(z, nz)] : 1.0;
    for (int y = 0; y < ny; ++y) {
      const double myz = mz * ax[1].lmass[row_type(y, ny)];
      for (int x = 0; x < nx; ++x) m[idx++] = myz * ax[0].lmass[row_type(x, nx)];
    }
  }
  return m;
}

GridFem::GridFem(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  mass_ = assemble_lumped_mass(grid_);
  inv_sqrt_mass_ = mass_.array().rsqrt();

  std::array<AxisTables, 3> ax;
  for (int a = 0; a < grid_.ndim; ++a) ax[a] = axis_tables(grid_.step(a));

  const int ncombo = grid_.ndim == 3 ? 27 : 9;
  combos_.assign(ncombo, Stencil{});
  if (grid_.ndim == 2) {
    for (int ry = 0; ry < 3; ++ry)
      for (int rx = 0; rx < 3; ++rx) {
        Stencil& st = combos_[ry * 3 + rx];
        double offsum = 0.0, comp = 0.0;  // Neumaier-compensated off-diagonal sum
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const double c = ax[0].stiff[rx][dx + 1] * ax[1].cmass[ry][dy + 1] +
                             ax[0].cmass[rx][dx + 1] * ax[1].stiff[ry][dy + 1];
            st.c[(dy + 1) * 3 + (dx + 1)] = c;
            if (dx != 0 || dy != 0) {
              const double s = offsum + c;
              comp += std::abs(offsum) >= std::abs(c) ? (offsum - s) + c : (c - s) + offsum;
              offsum = s;
            }
          }
        st.c[4] = -(offsum + comp);  // exact zero row sums up to one rounding
      }
  } else {
    for (int rz = 0; rz < 3; ++rz)
      for (int ry = 0; ry < 3; ++ry)
        for (int rx = 0; rx < 3; ++rx) {
          Stencil& st = combos_[(rz * 3 + ry) * 3 + rx];
          double offsum = 0.0, comp = 0.0;
          for (int dz = -1; dz <= 1; ++dz)
            for (int dy = -1; dy <= 1; ++dy)
              for (int dx = -1; dx <= 1; ++dx) {
                const double sx = ax[0].stiff[rx][dx + 1], mx = ax[0].cmass[rx][dx + 1];
                const double sy = ax[1].stiff[ry][dy + 1], my = ax[1].cmass[ry][dy + 1];
                const double sz = ax[2].stiff[rz][dz + 1], mz = ax[2].cmass[rz][dz + 1];
                const double c = sx * my * mz + mx * sy * mz + mx * my * sz;
                st.c[((dz + 1) * 3 + (dy + 1)) * 3 + (dx + 1)] = c;
                if (dx != 0 || dy != 0 || dz != 0) {
                  const double s = offsum + c;
                  comp += std::abs(offsum) >= std::abs(c) ? (offsum - s) + c : (c - s) + offsum;
                  offsum = s;
                }
              }
          st.c[13] = -(offsum + comp);
        }
  }
  scratch_.resize(static_cast<std::size_t>(grid_.num_nodes()));
}

void GridFem::apply2d(const double* in, double* out) const {
  const int nx = grid_.dims[0], ny = grid_.dims[1];
  for (int y = 0; y < ny; ++y) {
    const int ry = row_type(y, ny);
    const int ylo = y > 0 ? -1 : 0, yhi = y < ny - 1 ? 1 : 0;
    const Stencil* srow = &combos_[ry * 3];
    const std::int64_t rowbase = static_cast<std::int64_t>(y) * nx;

    // x = 0 and x = nx-1 handled with their own stencils.
    for (int x : {0, nx - 1}) {
      const Stencil& st = srow[row_type(x, nx)];
      const int xlo = x > 0 ? -1 : 0, xhi = x < nx - 1 ? 1 : 0;
      double acc = 0.0;
      for (int dy = ylo; dy <= yhi; ++dy)
        for (int dx = xlo; dx <= xhi; ++dx)
          acc += st.c[(dy + 1) * 3 + (dx + 1)] * in[rowbase + dy * nx + x + dx];
      out[rowbase + x] = acc;
    }
    // interior sweep
    const Stencil& st = srow[1];
    for (int x = 1; x < nx - 1; ++x) {
      double acc = 0.0;
      for (int dy = ylo; dy <= yhi; ++dy) {
        const double* p = in + rowbase + static_cast<std::int64_t>(dy) * nx + x;
        const double* cc = st.c.data() + (dy + 1) * 3;
        acc += cc[0] * p[-1] + cc[1] * p[0] + cc[2] * p[1];
      }
      out[rowbase + x] = acc;
    }
  }
}

void GridFem::apply3d(const double* in, double* out) const {
  const int nx = grid_.dims[0], ny = grid_.dims[1], nz = grid_.dims[2];
  const std::int64_t sy = nx, sz = static_cast<std::int64_t>(nx) * ny;
  for (int z = 0; z < nz; ++z) {
    const int rz = row_type(z, nz);
    const int zlo = z > 0 ? -1 : 0, zhi = z < nz - 1 ? 1 : 0;
    for (int y = 0; y < ny; ++y) {
      const int ry = row_type(y, ny);
      const int ylo = y > 0 ? -1 : 0, yhi = y < ny - 1 ? 1 : 0;
      const Stencil* srow = &combos_[(rz * 3 + ry) * 3];
      const std::int64_t rowbase = static_cast<std::int64_t>(y) * sy + static_cast<std::int64_t>(z) * sz;

      for (int x : {0, nx - 1}) {
        const Stencil& st = srow[row_type(x, nx)];
        const int xlo = x > 0 ? -1 : 0, xhi = x < nx - 1 ? 1 : 0;
        double acc = 0.0;
        for (int dz = zlo; dz <= zhi; ++dz)
          for (int dy = ylo; dy <= yhi; ++dy)
            for (int dx = xlo; dx <= xhi; ++dx)
              acc += st.c[((dz + 1) * 3 + (dy + 1)) * 3 + (dx + 1)] *
                     in[rowbase + dz * sz + dy * sy + x + dx];
        out[rowbase + x] = acc;
      }

      // interior sweep along x; up to nine (dz,dy) contributions per node
      const Stencil& st = srow[1];
      struct Tap {
        const double* p;
        const double* cc;
      };
      Tap taps[9];
      int ntap = 0;
      for (int dz = zlo; dz <= zhi; ++dz)
        for (int dy = ylo; dy <= yhi; ++dy) {
          taps[ntap].p = in + rowbase + static_cast<std::int64_t>(dz) * sz +
                         static_cast<std::int64_t>(dy) * sy;
          taps[ntap].cc = st.c.data() + ((dz + 1) * 3 + (dy + 1)) * 3;
          ++ntap;
        }
      double* o = out + rowbase;
      for (int x = 1; x < nx - 1; ++x) {
        double acc = 0.0;
        for (int k = 0; k < ntap; ++k) {
          const double* p = taps[k].p + x;
          const double* cc = taps[k].cc;
          acc += cc[0] * p[-1] + cc[1] * p[0] + cc[2] * p[1];
        }
        o[x] = acc;
      }
    }
  }
}

void GridFem::apply_stiffness(const double* in, double* out) const {
  if (grid_.ndim == 2)
    apply2d(in, out);
  else
    apply3d(in, out);
}

void GridFem::apply_regularizer(double lambda, const double* in, double* out) const {
  apply_stiffness(in, out);
  const std::int64_t n = grid_.num_nodes();
  for (std::int64_t i = 0; i < n; ++i) out[i] = lambda * inv_sqrt_mass_[i] * out[i];
}

void GridFem::apply_regularizer_transpose(double lambda, const double* in, double* out) const {
  const std::int64_t n = grid_.num_nodes();
  for (std::int64_t i = 0; i < n; ++i) scratch_[i] = inv_sqrt_mass_[i] * in[i];
  apply_stiffness(scratch_.data(), out);
  for (std::int64_t i = 0; i < n; ++i) out[i] *= lambda;
}

double GridFem::roughness(const DisplacementField& u) const {
  if (!u.grid.same_lattice(grid_))
    throw ValidationError("GridFem::roughness: displacement on a different grid");
  const std::int64_t n = grid_.num_nodes();
  std::vector<double> tmp(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (int c = 0; c < grid_.ndim; ++c) {
    apply_regularizer(1.0, u.component(c), tmp.data());
    for (std::int64_t i = 0; i < n; ++i) acc += tmp[i] * tmp[i];
  }
  return 0.5 * acc;
}

SparseMat assemble_stiffness(const GridSpec& grid) {
  grid.validate();
  std::array<AxisTables, 3> ax;
  for (int a = 0; a < grid.ndim; ++a) ax[a] = axis_tables(grid.step(a));

  const std::int64_t n = grid.num_nodes();
  const int nx = grid.dims[0], ny = grid.dims[1], nz = grid.ndim == 3 ? grid.dims[2] : 1;
  const std::int64_t sy = nx, sz = static_cast<std::int64_t>(nx) * ny;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * (grid.ndim == 3 ? 27 : 9));
  for (int z = 0; z < nz; ++z) {
    const int rz = grid.ndim == 3 ? row_type(z, nz) : 0;
    const int zlo = (grid.ndim == 3 && z > 0) ? -1 : 0;
    const int zhi = (grid.ndim == 3 && z < nz - 1) ? 1 : 0;
    for (int y = 0; y < ny; ++y) {
      const int ry = row_type(y, ny);
      const int ylo = y > 0 ? -1 : 0, yhi = y < ny - 1 ? 1 : 0;
      for (int x = 0; x < nx; ++x) {
        const int rx = row_type(x, nx);
        const int xlo = x > 0 ? -1 : 0, xhi = x < nx - 1 ? 1 : 0;
        const std::int64_t row = x + y * sy + z * sz;
        double offsum = 0.0, comp = 0.0;
        for (int dz = zlo; dz <= zhi; ++dz)
          for (int dy = ylo; dy <= yhi; ++dy)
            for (int dx = xlo; dx <= xhi; ++dx) {
              if (dx == 0 && dy == 0 && dz == 0) continue;
              double c;
              if (grid.ndim == 2) {
                c = ax[0].stiff[rx][dx + 1] * ax[1].cmass[ry][dy + 1] +
                    ax[0].cmass[rx][dx + 1] * ax[1].stiff[ry][dy + 1];
              } else {
                c = ax[0].stiff[rx][dx + 1] * ax[1].cmass[ry][dy + 1] * ax[2].cmass[rz][dz + 1] +
                    ax[0].cmass[rx][dx + 1] * ax[1].stiff[ry][dy + 1] * ax[2].cmass[rz][dz + 1] +
                    ax[0].cmass[rx][dx + 1] * ax[1].cmass[ry][dy + 1] * ax[2].stiff[rz][dz + 1];
              }
              trip.emplace_back(row, row + dx + dy * sy + dz * sz, c);
              const double s = offsum + c;
              comp += std::abs(offsum) >= std::abs(c) ? (offsum - s) + c : (c - s) + offsum;
              offsum = s;
            }
        trip.emplace_back(row, row, -(offsum + comp));
      }
    }
  }
  SparseMat L(n, n);
  L.setFromTriplets(trip.begin(), trip.end());
  L.makeCompressed();
  return L;
}

Eigen::VectorXd regularizer_residual(double lambda, const Eigen::VectorXd& mass,
                                     const SparseMat& stiffness, const DisplacementField& u) {
  const std::int64_t n = u.grid.num_nodes();
  if (mass.size() != n || stiffness.rows() != n || stiffness.cols() != n)
    throw ValidationError("regularizer_residual: matrix dimensions do not match the grid");
  const Eigen::VectorXd inv_sqrt_mass = mass.array().rsqrt();
  Eigen::VectorXd out(n * u.grid.ndim);
  for (int c = 0; c < u.grid.ndim; ++c) {
    Eigen::Map<const Eigen::VectorXd> uc(u.component(c), n);
    out.segment(c * n, n) = lambda * (inv_sqrt_mass.array() * (stiffness * uc).array()).matrix();
  }
  return out;
}

}  // namespace m2r
