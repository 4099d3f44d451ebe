// Copyright 2026 hubcd contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Slater determinant preparation. The hopping ground state factorizes per
// spin into a determinant of the lowest single-particle orbitals; each
// determinant becomes X gates plus a ladder of adjacent-mode Givens
// rotations obtained by reducing the orbital matrix.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hubcd/lattice.hpp"
#include "hubcd/statevec.hpp"

namespace hubcd {

// Single-particle hopping matrix: -tau on every lattice edge.
inline Eigen::MatrixXd single_particle_hopping(const HoneycombLattice& lat,
                                               double tau) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(lat.n_sites, lat.n_sites);
  for (const Edge& e : lat.edges) {
    h(e.a, e.b) = -tau;
    h(e.b, e.a) = -tau;
  }
  return h;
}

struct SlaterRotation {
  int mode_lo = 0;  // acts on modes (mode_lo, mode_lo + 1)
  double theta = 0;
};

// One spin species' preparation plan: occupy the last n_occ modes, then
// apply `rotations` in reverse order as two-mode rotations.
struct SlaterPlan {
  int n_modes = 0;
  int n_occ = 0;
  Eigen::MatrixXd orbitals;  // n_modes x n_occ, columns orthonormal
  double orbital_energy_sum = 0;
  std::vector<SlaterRotation> rotations;  // elimination order
};

// Reduces the orbital matrix B (n_modes x n_occ) to columns supported on
// single modes using a column gauge (free orbital mixing) plus adjacent-row
// rotations; each row rotation becomes one circuit gate. The rotation count
// is exactly n_occ * (n_modes - n_occ).
inline SlaterPlan slater_plan(const Eigen::MatrixXd& h_sp, int n_occ) {
  const int n = static_cast<int>(h_sp.rows());
  if (h_sp.cols() != n) throw std::invalid_argument("slater_plan: not square");
  if (n_occ < 0 || n_occ > n)
    throw std::invalid_argument("slater_plan: bad occupation");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_sp);
  SlaterPlan plan;
  plan.n_modes = n;
  plan.n_occ = n_occ;
  plan.orbitals = es.eigenvectors().leftCols(n_occ);
  for (int k = 0; k < n_occ; ++k)
    plan.orbital_energy_sum += es.eigenvalues()(k);
  if (n_occ == 0 || n_occ == n) return plan;

  Eigen::MatrixXd b = plan.orbitals;
  // Column gauge: make the top n_occ x n_occ block lower triangular. Mixing
  // occupied orbitals changes the state only by a global sign.
  for (int r = 0; r < n_occ - 1; ++r)
    for (int c = r + 1; c < n_occ; ++c) {
      const double x = b(r, r), y = b(r, c);
      const double hyp = std::hypot(x, y);
      if (hyp < 1e-300) continue;
      const double co = x / hyp, si = y / hyp;
      const Eigen::VectorXd vr = b.col(r), vc = b.col(c);
      b.col(r) = co * vr + si * vc;
      b.col(c) = -si * vr + co * vc;
    }

  // Push each column's weight down to its target mode n - n_occ + c with
  // adjacent-row rotations, rightmost column first. Orthonormality keeps
  // rows below the target clear, and every touched row pair lies inside the
  // already-cleared region of later columns.
  for (int c = n_occ - 1; c >= 0; --c)
    for (int r = c; r < n - n_occ + c; ++r) {
      const double x = b(r, c), y = b(r + 1, c);
      double theta = 0;
      if (std::abs(x) > 1e-300 || std::abs(y) > 1e-300)
        theta = std::atan2(-x, y);
      const double co = std::cos(theta), si = std::sin(theta);
      const Eigen::RowVectorXd br = b.row(r), bn = b.row(r + 1);
      b.row(r) = co * br + si * bn;
      b.row(r + 1) = -si * br + co * bn;
      plan.rotations.push_back(SlaterRotation{r, theta});
    }
  return plan;
}

// Full two-spin preparation circuit on 2 * n_sites qubits. Site i's up mode
// is qubit 2i, down mode qubit 2i+1; a rotation on modes (r, r+1) of spin s
// is a Givens gate on qubits (2r+s, 2r+2+s) whose interior qubit carries
// the parity string.
inline Circuit prep_circuit(const HoneycombLattice& lat, double tau, int n_up,
                            int n_dn) {
  const Eigen::MatrixXd h_sp = single_particle_hopping(lat, tau);
  const SlaterPlan up = slater_plan(h_sp, n_up);
  const SlaterPlan dn = slater_plan(h_sp, n_dn);
  Circuit c(2 * lat.n_sites);
  for (int k = lat.n_sites - n_up; k < lat.n_sites; ++k) c.x(2 * k);
  for (int k = lat.n_sites - n_dn; k < lat.n_sites; ++k) c.x(2 * k + 1);
  for (auto it = up.rotations.rbegin(); it != up.rotations.rend(); ++it)
    c.givens(2 * it->mode_lo, 2 * it->mode_lo + 2, it->theta);
  for (auto it = dn.rotations.rbegin(); it != dn.rotations.rend(); ++it)
    c.givens(2 * it->mode_lo + 1, 2 * it->mode_lo + 3, it->theta);
  return c;
}

// Reference energy of the prepared state under the hopping Hamiltonian:
// the sum of the occupied single-particle eigenvalues of both spins.
inline double prep_reference_energy(const HoneycombLattice& lat, double tau,
                                    int n_up, int n_dn) {
  const Eigen::MatrixXd h_sp = single_particle_hopping(lat, tau);
  return slater_plan(h_sp, n_up).orbital_energy_sum +
         slater_plan(h_sp, n_dn).orbital_energy_sum;
}

}  // namespace hubcd
