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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "dense_oracle.hpp"
#include "hubcd/fermion.hpp"
#include "hubcd/lattice.hpp"
#include "hubcd/measure.hpp"
#include "hubcd/pauli.hpp"
#include "hubcd/rng.hpp"
#include "hubcd/stateprep.hpp"
#include "hubcd/statevec.hpp"

namespace {

// Family operator assembled from the independently tested string builders,
// bypassing the routed-measurement path entirely.
hubcd::PauliSum family_operator(const hubcd::HoneycombLattice& lat,
                                hubcd::MeasurementGroup g, double tau,
                                double u) {
  const int n = lat.qubit_count();
  hubcd::PauliSum op(n);
  if (g == hubcd::MeasurementGroup::coulomb) {
    for (int i = 0; i < lat.n_sites; ++i)
      op += hubcd::coulomb_term(n, 2 * i, 2 * i + 1, u);
    return op;
  }
  const hubcd::GroupedEdges ge = hubcd::grouped_edges(lat);
  const std::vector<int>& ids = g == hubcd::MeasurementGroup::horiz_a
                                    ? ge.horiz_a
                                : g == hubcd::MeasurementGroup::horiz_b
                                    ? ge.horiz_b
                                    : ge.vertical;
  for (int e : ids) {
    const hubcd::Edge& edge = lat.edges[e];
    op += hubcd::hop_term(n, 2 * edge.a, 2 * edge.b, tau);
    op += hubcd::hop_term(n, 2 * edge.a + 1, 2 * edge.b + 1, tau);
  }
  return op;
}

int brute_inversions(const std::vector<int>& order) {
  int inv = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) ++inv;
  return inv;
}

hubcd::StateVector prep_state(const hubcd::HoneycombLattice& lat) {
  const hubcd::Circuit prep = hubcd::prep_circuit(lat, 1.0, 3, 3);
  return hubcd::run(prep, {}, hubcd::StateVector::zero_state(prep.n_qubits));
}

const std::array<hubcd::MeasurementGroup, 3> kHoppingGroups = {
    hubcd::MeasurementGroup::horiz_a, hubcd::MeasurementGroup::horiz_b,
    hubcd::MeasurementGroup::vertical};

}  // namespace

TEST_CASE("routing brings every bond pair adjacent with minimal swaps") {
  for (const auto [nx, ny] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
    const auto lat = hubcd::HoneycombLattice::build(nx, ny);
    const int n = lat.qubit_count();
    for (hubcd::MeasurementGroup g : kHoppingGroups) {
      const hubcd::RoutedGroup r = hubcd::route_hopping_group(lat, g);

      std::set<int> seen(r.order.begin(), r.order.end());
      REQUIRE(static_cast<int>(seen.size()) == n);
      REQUIRE(*seen.begin() == 0);
      REQUIRE(*seen.rbegin() == n - 1);

      REQUIRE(static_cast<int>(r.swaps.size()) == brute_inversions(r.order));
      for (const auto& sw : r.swaps) {
        REQUIRE(sw[1] == sw[0] + 1);
        REQUIRE(sw[0] >= 0);
        REQUIRE(sw[1] < n);
      }

      std::set<int> used_wires;
      for (const auto& pw : r.pair_wires) {
        REQUIRE(pw[1] == pw[0] + 1);
        REQUIRE(used_wires.insert(pw[0]).second);
        REQUIRE(used_wires.insert(pw[1]).second);
      }
    }
  }

  const auto lat = hubcd::HoneycombLattice::build(1, 1);
  REQUIRE(hubcd::route_hopping_group(lat, hubcd::MeasurementGroup::horiz_a)
              .swaps.size() == 2);
  REQUIRE(hubcd::route_hopping_group(lat, hubcd::MeasurementGroup::horiz_b)
              .swaps.size() == 2);
  REQUIRE(hubcd::route_hopping_group(lat, hubcd::MeasurementGroup::vertical)
              .swaps.size() == 18);
  REQUIRE_THROWS_AS(
      hubcd::route_hopping_group(lat, hubcd::MeasurementGroup::coulomb),
      std::invalid_argument);
}

TEST_CASE("routed expectations match the string-built family operators") {
  const auto lat = hubcd::HoneycombLattice::build(1, 1);
  const double tau = 1.0, u = 1.5;

  std::vector<hubcd::StateVector> states;
  std::mt19937 mt(61519);
  for (int k = 0; k < 5; ++k) {
    hubcd::StateVector s;
    s.n_qubits = 12;
    s.amps = dense::to_amplitudes(dense::random_state(12, mt));
    states.push_back(s);
  }
  states.push_back(prep_state(lat));

  const hubcd::HamiltonianSet ham = hubcd::build_hamiltonians(lat, tau, u);
  for (const auto& s : states) {
    double total = 0;
    for (hubcd::MeasurementGroup g : hubcd::kMeasurementGroups) {
      const double routed = hubcd::exact_group_mean(lat, g, tau, u, s);
      const double direct =
          hubcd::expectation_value(family_operator(lat, g, tau, u), s.amps)
              .real();
      REQUIRE(routed == Catch::Approx(direct).margin(1e-10));
      total += routed;
    }
    const double e_direct =
        hubcd::expectation_value(ham.h_fh, s.amps).real();
    REQUIRE(hubcd::estimate_energy_exact(lat, tau, u, s) ==
            Catch::Approx(e_direct).margin(1e-10));
    REQUIRE(total == Catch::Approx(e_direct).margin(1e-10));
  }
}

TEST_CASE("basis-state outcomes read off doublons exactly") {
  const auto lat = hubcd::HoneycombLattice::build(1, 1);
  hubcd::StateVector s = hubcd::StateVector::zero_state(12);
  s.amps[0] = {0, 0};
  s.amps[3] = {1, 0};  // site 0 doubly occupied, all other sites empty

  REQUIRE(hubcd::exact_group_mean(lat, hubcd::MeasurementGroup::coulomb, 1.0,
                                  1.5, s) == Catch::Approx(1.5));
  for (hubcd::MeasurementGroup g : kHoppingGroups)
    REQUIRE(hubcd::exact_group_mean(lat, g, 1.0, 1.5, s) ==
            Catch::Approx(0.0).margin(1e-12));

  hubcd::Rng rng(7);
  const hubcd::EnergyEstimate est =
      hubcd::estimate_energy(lat, 1.0, 1.5, s, 64, rng);
  REQUIRE(est.groups.size() == 4);
  REQUIRE(est.groups[0].group == hubcd::MeasurementGroup::coulomb);
  REQUIRE(est.groups[0].mean == 1.5);
  REQUIRE(est.groups[0].se == 0.0);
  REQUIRE(est.groups[0].shots == 64);
}

TEST_CASE("shot estimates cover the exact energy at the stated rate") {
  const auto lat = hubcd::HoneycombLattice::build(1, 1);
  const hubcd::StateVector psi = prep_state(lat);
  const double exact = hubcd::estimate_energy_exact(lat, 1.0, 1.5, psi);

  int covered = 0;
  double mean_est = 0;
  const int n_trials = 40;
  for (int t = 0; t < n_trials; ++t) {
    hubcd::Rng rng = hubcd::Rng::stream(20250825, static_cast<std::uint64_t>(t));
    const hubcd::EnergyEstimate est =
        hubcd::estimate_energy(lat, 1.0, 1.5, psi, 2000, rng);
    REQUIRE(est.se > 0);
    mean_est += est.energy;
    if (std::abs(est.energy - exact) <= 3 * est.se) ++covered;
  }
  mean_est /= n_trials;
  // Three-sigma misses occur at the few-per-thousand level; allow a small
  // number out of 40 trials, and require the trial mean to be unbiased.
  REQUIRE(covered >= 37);
  REQUIRE(std::abs(mean_est - exact) < 0.05);
}

TEST_CASE("shot estimates are reproducible per seed") {
  const auto lat = hubcd::HoneycombLattice::build(1, 1);
  const hubcd::StateVector psi = prep_state(lat);

  const hubcd::EnergyEstimate a =
      hubcd::estimate_energy(lat, 1.0, 1.5, psi, 500, std::uint64_t{99});
  const hubcd::EnergyEstimate b =
      hubcd::estimate_energy(lat, 1.0, 1.5, psi, 500, std::uint64_t{99});
  const hubcd::EnergyEstimate c =
      hubcd::estimate_energy(lat, 1.0, 1.5, psi, 500, std::uint64_t{100});

  REQUIRE(a.energy == b.energy);
  REQUIRE(a.se == b.se);
  for (int g = 0; g < 4; ++g) {
    REQUIRE(a.groups[g].mean == b.groups[g].mean);
    REQUIRE(a.groups[g].se == b.groups[g].se);
  }
  REQUIRE(a.energy != c.energy);

  hubcd::Rng rng(1);
  REQUIRE_THROWS_AS(hubcd::estimate_energy(lat, 1.0, 1.5, psi, 0, rng),
                    std::invalid_argument);
}
