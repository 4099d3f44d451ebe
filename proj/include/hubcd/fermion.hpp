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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hubcd/lattice.hpp"
#include "hubcd/pauli.hpp"

namespace hubcd {

enum class LadderKind { create, annihilate };

// Jordan-Wigner ladder operator on qubit j of an n-qubit register:
//   create:      (X_j - i Y_j)/2 * Z_0 ... Z_{j-1}
//   annihilate:  (X_j + i Y_j)/2 * Z_0 ... Z_{j-1}
inline PauliSum jw_ladder(int j, int n, LadderKind kind) {
  if (j < 0 || j >= n) throw std::out_of_range("jw_ladder: index out of range");
  const std::uint64_t bit = std::uint64_t{1} << j;
  const std::uint64_t parity = bit - 1;  // Z string on qubits 0..j-1
  const double sign = (kind == LadderKind::create) ? -1.0 : 1.0;
  PauliSum out(n);
  out.add_pattern(bit, parity, cplx{0.5, 0.0});
  out.add_pattern(bit, parity | bit, cplx{0.0, sign * 0.5});
  return out;
}

// The JW image of -tau * (c_p^dag c_q + c_q^dag c_p) for qubits p < q:
// -(tau/2) * (X_p X_q + Y_p Y_q) * Z_{p+1} ... Z_{q-1}.
inline PauliSum hop_term(int n, int p, int q, double tau) {
  if (p < 0 || q <= p || q >= n)
    throw std::out_of_range("hop_term: bad qubit pair");
  const std::uint64_t bp = std::uint64_t{1} << p;
  const std::uint64_t bq = std::uint64_t{1} << q;
  const std::uint64_t interior = (bq - 1) & ~(2 * bp - 1);  // p < i < q
  PauliSum out(n);
  out.add_pattern(bp | bq, interior, cplx{-tau / 2, 0});
  out.add_pattern(bp | bq, interior | bp | bq, cplx{-tau / 2, 0});
  return out;
}

// U * n_up n_dn on one site, kept with its identity part so that measured
// energies are absolute: (U/4) * (I - Z_up - Z_dn + Z_up Z_dn).
inline PauliSum coulomb_term(int n, int q_up, int q_dn, double u) {
  const std::uint64_t bu = std::uint64_t{1} << q_up;
  const std::uint64_t bd = std::uint64_t{1} << q_dn;
  PauliSum out(n);
  out.add_pattern(0, 0, cplx{u / 4, 0});
  out.add_pattern(0, bu, cplx{-u / 4, 0});
  out.add_pattern(0, bd, cplx{-u / 4, 0});
  out.add_pattern(0, bu | bd, cplx{u / 4, 0});
  return out;
}

struct HamiltonianSet {
  PauliSum h_hop;
  PauliSum h_coul;
  PauliSum h_fh;
  double tau = 1.0;
  double u = 1.5;
};

// Fermi-Hubbard Hamiltonian for an arbitrary site graph under the standard
// (up, down) = (2i, 2i+1) qubit map. Spin-up and spin-down hopping images of
// each edge are added back to back.
inline HamiltonianSet build_hamiltonians(int n_sites,
                                         const std::vector<Edge>& edges,
                                         double tau, double u) {
  if (tau <= 0) throw std::invalid_argument("build_hamiltonians: tau must be > 0");
  if (n_sites < 1 || 2 * n_sites > kMaxQubits)
    throw std::invalid_argument("build_hamiltonians: bad site count");
  const int n = 2 * n_sites;
  HamiltonianSet set;
  set.tau = tau;
  set.u = u;
  set.h_hop = PauliSum(n);
  set.h_coul = PauliSum(n);
  for (const auto& e : edges) {
    if (e.a < 0 || e.b >= n_sites || e.a >= e.b)
      throw std::invalid_argument("build_hamiltonians: bad edge");
    set.h_hop += hop_term(n, 2 * e.a, 2 * e.b, tau);
    set.h_hop += hop_term(n, 2 * e.a + 1, 2 * e.b + 1, tau);
  }
  for (int i = 0; i < n_sites; ++i)
    set.h_coul += coulomb_term(n, 2 * i, 2 * i + 1, u);
  set.h_fh = set.h_hop + set.h_coul;
  return set;
}

inline HamiltonianSet build_hamiltonians(const HoneycombLattice& lat,
                                         double tau, double u) {
  return build_hamiltonians(lat.n_sites, lat.edges, tau, u);
}

// Total particle number for one spin species: sum over sites of (I - Z)/2.
inline PauliSum number_operator(int n_sites, Spin s) {
  const int n = 2 * n_sites;
  PauliSum out(n);
  for (int i = 0; i < n_sites; ++i) {
    const int q = 2 * i + (s == Spin::down ? 1 : 0);
    out.add_pattern(0, 0, cplx{0.5, 0});
    out.add_pattern(0, std::uint64_t{1} << q, cplx{-0.5, 0});
  }
  return out;
}

}  // namespace hubcd
