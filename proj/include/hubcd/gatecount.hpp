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

// Basic-gate accounting over the set {X, H, RX, RZ, CNOT, sqrt-iSWAP}.
// Conventions (fixed and documented, totals depend on them):
//   exp(-i theta P), P of weight w with nx X letters and ny Y letters:
//     2*nx H + 2*ny RX + 2*(w-1) CNOT + 1 RZ   (CNOT-ladder compilation)
//   FSWAP: 2 RZ + 2 sqrt-iSWAP
//   Givens over gap g: two exponential strings of weight g + 2
//   bond basis rotation: the weight-2 exponential footprint (7)

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "hubcd/cdsynth.hpp"
#include "hubcd/evolve.hpp"
#include "hubcd/fermion.hpp"
#include "hubcd/lattice.hpp"
#include "hubcd/measure.hpp"
#include "hubcd/pauli.hpp"
#include "hubcd/statevec.hpp"

namespace hubcd {

struct BasicGateCount {
  long long x = 0;
  long long h = 0;
  long long rx = 0;
  long long rz = 0;
  long long cnot = 0;
  long long sqrt_iswap = 0;

  long long total() const { return x + h + rx + rz + cnot + sqrt_iswap; }

  BasicGateCount& operator+=(const BasicGateCount& o) {
    x += o.x;
    h += o.h;
    rx += o.rx;
    rz += o.rz;
    cnot += o.cnot;
    sqrt_iswap += o.sqrt_iswap;
    return *this;
  }
};

inline BasicGateCount count_exp_pauli(std::uint64_t px, std::uint64_t pz) {
  if ((px | pz) == 0)
    throw std::invalid_argument("count_exp_pauli: identity string");
  const int w = std::popcount(px | pz);
  const int nx = std::popcount(px & ~pz);
  const int ny = std::popcount(px & pz);
  BasicGateCount c;
  c.h = 2 * nx;
  c.rx = 2 * ny;
  c.cnot = 2 * (w - 1);
  c.rz = 1;
  return c;
}

inline BasicGateCount count_gate(const Gate& g) {
  BasicGateCount c;
  switch (g.kind) {
    case GateKind::X: c.x = 1; break;
    case GateKind::H: c.h = 1; break;
    case GateKind::RX: c.rx = 1; break;
    case GateKind::RZ: c.rz = 1; break;
    case GateKind::CNOT: c.cnot = 1; break;
    case GateKind::SqrtISwap: c.sqrt_iswap = 1; break;
    case GateKind::FSWAP:
      c.rz = 2;
      c.sqrt_iswap = 2;
      break;
    case GateKind::ExpPauli: return count_exp_pauli(g.px, g.pz);
    case GateKind::Givens: {
      // Two boundary-X/Y exponential strings spanning the full gap.
      const int lo = g.q0 < g.q1 ? g.q0 : g.q1;
      const int hi = g.q0 < g.q1 ? g.q1 : g.q0;
      const int w = hi - lo + 1;
      BasicGateCount one;
      one.h = 2;
      one.rx = 2;
      one.cnot = 2 * (w - 1);
      one.rz = 1;
      c += one;
      c += one;
      break;
    }
    case GateKind::BasisChangeHop:
      c.h = 2;
      c.rx = 2;
      c.cnot = 2;
      c.rz = 1;
      break;
  }
  return c;
}

inline BasicGateCount count_circuit(const Circuit& circuit) {
  BasicGateCount c;
  for (const Gate& g : circuit.gates) c += count_gate(g);
  return c;
}

// Basic gates of one digitized ramp step (exponential strings of the
// families the variant applies; the correction string set is taken at the
// representative mid-ramp coupling, where it is maximal for first order).
inline BasicGateCount count_trotter_step(const HamiltonianSet& ham,
                                         EvolveVariant variant, int cd_order) {
  BasicGateCount c;
  auto add_op = [&c](const PauliSum& op) {
    for (const PauliString& t : op.ordered_terms())
      if ((t.x | t.z) != 0) c += count_exp_pauli(t.x, t.z);
  };
  if (variant != EvolveVariant::cd_only) {
    add_op(ham.h_hop);
    add_op(ham.h_coul);
  }
  if (variant != EvolveVariant::adiabatic) {
    PauliSum h_half = ham.h_hop;
    h_half += cplx{0.5, 0} * ham.h_coul;
    add_op(solve_alpha(h_half, ham.h_coul, cd_order).gauge_potential());
  }
  return c;
}

// Term- and network-level structure of one lattice.
struct StructuralCounts {
  int n_sites = 0;
  int n_edges = 0;
  int n_coulomb_terms = 0;      // one per site
  int n_hopping_terms = 0;      // spin-resolved bonds, 2 per edge
  int pool_size = 0;            // 2 * n_sites - 4 on the supported patches
  int basic_per_pool_term = 7;  // fused two-level rotation rate
  int fswaps_per_hv_layer = 0;  // route-in plus route-out, all three families
};

inline StructuralCounts structural_counts(const HoneycombLattice& lat) {
  StructuralCounts s;
  s.n_sites = lat.n_sites;
  s.n_edges = static_cast<int>(lat.edges.size());
  s.n_coulomb_terms = lat.n_sites;
  s.n_hopping_terms = 2 * s.n_edges;
  s.pool_size = static_cast<int>(cd_pool(lat).size());
  for (MeasurementGroup g :
       {MeasurementGroup::horiz_a, MeasurementGroup::horiz_b,
        MeasurementGroup::vertical})
    s.fswaps_per_hv_layer +=
        2 * static_cast<int>(route_hopping_group(lat, g).swaps.size());
  return s;
}

// Row-formula swap estimate 2 * sum_i N_i * (N_i/2 + (N_i-2)/2) under the
// site-rows reading (N_i sites per row, integer division). Informational
// only; the routed networks report their actual counts.
inline long long row_formula_swaps(const HoneycombLattice& lat) {
  long long total = 0;
  for (const int n : {lat.n_top, lat.n_sites - lat.n_top})
    total += static_cast<long long>(n) * (n / 2 + (n - 2) / 2);
  return 2 * total;
}

}  // namespace hubcd
