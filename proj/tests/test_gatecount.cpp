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

#include <algorithm>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "hubcd/gatecount.hpp"
#include "hubcd/vqa.hpp"

using namespace hubcd;

namespace {

// Independent per-edge tally of the digitized hopping sweep: two exponential
// strings per spin bond, each with two boundary letters and a CNOT ladder
// across the Jordan-Wigner span.
long long expected_hopping_basic(const HoneycombLattice& lat) {
  long long total = 0;
  for (const Edge& e : lat.edges)
    for (int s = 0; s < 2; ++s) {
      const int lo = 2 * std::min(e.a, e.b) + s;
      const int hi = 2 * std::max(e.a, e.b) + s;
      const int w = hi - lo + 1;
      total += 2 * (2 * 2 + 2 * (w - 1) + 1);
    }
  return total;
}

}  // namespace

TEST_CASE("exponential string footprints follow the ladder rule") {
  const BasicGateCount xy = count_exp_pauli(0b11, 0b10);
  CHECK(xy.h == 2);
  CHECK(xy.rx == 2);
  CHECK(xy.cnot == 2);
  CHECK(xy.rz == 1);
  CHECK(xy.total() == 7);

  const BasicGateCount z1 = count_exp_pauli(0, 0b100);
  CHECK(z1.total() == 1);
  CHECK(z1.rz == 1);

  const BasicGateCount zz = count_exp_pauli(0, 0b101);
  CHECK(zz.cnot == 2);
  CHECK(zz.total() == 3);

  const BasicGateCount xzx = count_exp_pauli(0b101, 0b010);
  CHECK(xzx.h == 4);
  CHECK(xzx.rx == 0);
  CHECK(xzx.cnot == 4);
  CHECK(xzx.total() == 9);

  CHECK_THROWS_AS(count_exp_pauli(0, 0), std::invalid_argument);
}

TEST_CASE("per-gate counts match the documented conventions") {
  Circuit c(4);
  c.x(0);
  c.h(1);
  c.rx(2, 0.3);
  c.rz(3, 0.4);
  c.cnot(0, 1);
  c.sqrt_iswap(1, 2);
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    CHECK(count_gate(c.gates[i]).total() == 1);

  Circuit f(4);
  f.fswap(1, 2);
  const BasicGateCount fc = count_gate(f.gates[0]);
  CHECK(fc.rz == 2);
  CHECK(fc.sqrt_iswap == 2);
  CHECK(fc.total() == 4);

  Circuit b(4);
  b.hop_basis(1, 2);
  CHECK(count_gate(b.gates[0]).total() == 7);

  Circuit g(6);
  g.givens(1, 2, 0.5);
  g.givens(1, 4, 0.5);
  CHECK(count_gate(g.gates[0]).total() == 14);   // adjacent: two weight-2 strings
  CHECK(count_gate(g.gates[1]).total() == 22);   // span 4: two weight-4 strings

  BasicGateCount sum;
  for (const Gate& gate : g.gates) sum += count_gate(gate);
  const BasicGateCount whole = count_circuit(g);
  CHECK(whole.total() == sum.total());
  CHECK(whole.cnot == sum.cnot);
  CHECK(whole.total() == 36);
}

TEST_CASE("digitized step totals on the smallest cell") {
  const HoneycombLattice lat = HoneycombLattice::build(1, 1);
  const HamiltonianSet ham = build_hamiltonians(lat, 1.0, 1.5);

  const BasicGateCount plain =
      count_trotter_step(ham, EvolveVariant::adiabatic, 1);
  const BasicGateCount with_cd =
      count_trotter_step(ham, EvolveVariant::adiabatic_cd, 1);
  const BasicGateCount corr_only =
      count_trotter_step(ham, EvolveVariant::cd_only, 1);

  CHECK(plain.total() == 310);
  CHECK(plain.h == 48);
  CHECK(plain.rx == 48);
  CHECK(plain.rz == 42);
  CHECK(plain.cnot == 172);
  CHECK(with_cd.total() == 870);
  CHECK(corr_only.total() == 560);

  // The corrected step is the plain step plus the correction sweep.
  CHECK(plain.total() + corr_only.total() == with_cd.total());
  CHECK(plain.cnot + corr_only.cnot == with_cd.cnot);
  CHECK(plain.rz + corr_only.rz == with_cd.rz);

  // Independent tally: hopping sweep from edge spans, one single-Z pair and
  // one ZZ string per site for the interaction sweep.
  CHECK(plain.total() == expected_hopping_basic(lat) + 5LL * lat.n_sites);
}

TEST_CASE("step tally matches the edge-span derivation on larger cells") {
  for (auto [nx, ny] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}}) {
    const HoneycombLattice lat = HoneycombLattice::build(nx, ny);
    const HamiltonianSet ham = build_hamiltonians(lat, 1.0, 1.5);
    const BasicGateCount plain =
        count_trotter_step(ham, EvolveVariant::adiabatic, 1);
    CHECK(plain.total() == expected_hopping_basic(lat) + 5LL * lat.n_sites);
  }
}

TEST_CASE("structural counts scale with the lattice") {
  struct Row {
    int nx, ny, sites, edges, pool, fswaps;
    long long formula;
  };
  const std::vector<Row> rows = {
      {1, 1, 6, 6, 8, 44, 12},
      {1, 2, 10, 11, 16, 118, 60},
      {2, 1, 13, 14, 22, 124, 130},
  };
  for (const Row& r : rows) {
    const HoneycombLattice lat = HoneycombLattice::build(r.nx, r.ny);
    const StructuralCounts s = structural_counts(lat);
    CHECK(s.n_sites == r.sites);
    CHECK(s.n_edges == r.edges);
    CHECK(s.n_coulomb_terms == r.sites);
    CHECK(s.n_hopping_terms == 2 * r.edges);
    CHECK(s.pool_size == r.pool);
    CHECK(s.pool_size == 2 * r.sites - 4);
    CHECK(s.basic_per_pool_term == 7);
    CHECK(s.fswaps_per_hv_layer == r.fswaps);
    CHECK(row_formula_swaps(lat) == r.formula);
  }
}

TEST_CASE("ansatz layer totals") {
  const HoneycombLattice lat = HoneycombLattice::build(1, 1);
  const AnsatzInfo hv = build_ansatz(lat, 1.0, AnsatzKind::hv, 1);
  const AnsatzInfo cd = build_ansatz(lat, 1.0, AnsatzKind::cd, 1);

  auto layer_count = [&](const AnsatzInfo& info) {
    Circuit layer(lat.qubit_count());
    for (std::size_t i = info.prep_gates; i < info.circuit.gates.size(); ++i)
      layer.gates.push_back(info.circuit.gates[i]);
    return count_circuit(layer);
  };

  const BasicGateCount hv_layer = layer_count(hv);
  const BasicGateCount cd_layer = layer_count(cd);
  const StructuralCounts s = structural_counts(lat);

  // 5 per site (two single-Z, one ZZ), 14 per routed spin bond, 4 per FSWAP.
  CHECK(hv_layer.total() ==
        5LL * s.n_sites + 14LL * s.n_hopping_terms + 4LL * s.fswaps_per_hv_layer);
  CHECK(hv_layer.total() == 374);
  CHECK(hv_layer.sqrt_iswap == 2LL * s.fswaps_per_hv_layer);

  // Naive two-string compilation vs the fused two-level rotation figure.
  CHECK(cd_layer.total() == 14LL * s.pool_size);
  CHECK(cd_layer.total() == 112);
  CHECK(7LL * s.pool_size == 56);

  // State preparation: six X gates plus eighteen span-3 mode rotations (18
  // basic gates each under the two-string compilation).
  const Circuit prep = prep_circuit(lat, 1.0, 3, 3);
  const BasicGateCount pc = count_circuit(prep);
  CHECK(pc.x == 6);
  CHECK(pc.total() == 6 + 18LL * 18);
  CHECK(pc.total() == 330);
}
