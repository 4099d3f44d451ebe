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

// Grouped energy measurement. The interaction family is diagonal and read
// out directly; each hopping family is first routed with fermionic swaps so
// that both spin images of every edge sit on adjacent wires, where the
// two-mode basis rotation turns the bond operator into a diagonal one.
// Families are qubit-disjoint, so one routed circuit measures every bond of
// the family in a single shot.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubcd/lattice.hpp"
#include "hubcd/rng.hpp"
#include "hubcd/statevec.hpp"

namespace hubcd {

enum class MeasurementGroup { coulomb, horiz_a, horiz_b, vertical };

constexpr std::array<MeasurementGroup, 4> kMeasurementGroups = {
    MeasurementGroup::coulomb, MeasurementGroup::horiz_a,
    MeasurementGroup::horiz_b, MeasurementGroup::vertical};

inline const char* measurement_group_name(MeasurementGroup g) {
  switch (g) {
    case MeasurementGroup::coulomb: return "coulomb";
    case MeasurementGroup::horiz_a: return "horiz_a";
    case MeasurementGroup::horiz_b: return "horiz_b";
    case MeasurementGroup::vertical: return "vertical";
  }
  return "coulomb";
}

// Wire plan for one hopping family. `order[w]` is the mode occupying wire w
// after the swap network ran; `swaps` are adjacent wire transpositions in
// application order (one FSWAP each, inversion-minimal); `pair_wires` holds
// the adjacent (lo, lo+1) wire pair of each spin-resolved bond, edge-major
// with the up image first.
struct RoutedGroup {
  std::vector<int> order;
  std::vector<std::array<int, 2>> swaps;
  std::vector<std::array<int, 2>> pair_wires;
};

inline RoutedGroup route_hopping_group(const HoneycombLattice& lat,
                                       MeasurementGroup g) {
  if (g == MeasurementGroup::coulomb)
    throw std::invalid_argument(
        "route_hopping_group: interaction family needs no routing");
  const GroupedEdges ge = grouped_edges(lat);
  const std::vector<int>& ids = g == MeasurementGroup::horiz_a ? ge.horiz_a
                                : g == MeasurementGroup::horiz_b
                                    ? ge.horiz_b
                                    : ge.vertical;
  const int n = lat.qubit_count();

  RoutedGroup out;
  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), 0);
  auto move_after = [&out](int mode, int anchor) {
    auto it = std::find(out.order.begin(), out.order.end(), mode);
    out.order.erase(it);
    auto at = std::find(out.order.begin(), out.order.end(), anchor);
    out.order.insert(at + 1, mode);
  };
  // Both spin images of edge (a, b) become adjacent: the b modes are pulled
  // next to their a partners. Families are site matchings, so the moves for
  // different edges never interfere.
  for (int e : ids) {
    const Edge& edge = lat.edges[e];
    move_after(2 * edge.b, 2 * edge.a);
    move_after(2 * edge.b + 1, 2 * edge.a + 1);
  }

  std::vector<int> tpos(n);
  for (int w = 0; w < n; ++w) tpos[out.order[w]] = w;

  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  for (int end = n - 1; end > 0; --end)
    for (int w = 0; w < end; ++w)
      if (tpos[cur[w]] > tpos[cur[w + 1]]) {
        std::swap(cur[w], cur[w + 1]);
        out.swaps.push_back({w, w + 1});
      }

  for (int e : ids) {
    const Edge& edge = lat.edges[e];
    for (int s = 0; s < 2; ++s) {
      const int wa = tpos[2 * edge.a + s];
      const int wb = tpos[2 * edge.b + s];
      if (wb != wa + 1)
        throw std::logic_error("route_hopping_group: pair not adjacent");
      out.pair_wires.push_back({wa, wb});
    }
  }
  return out;
}

// Pre-measurement circuit of one family: the swap network, then one bond
// basis rotation per adjacent pair. Empty for the interaction family.
inline Circuit measurement_circuit(const HoneycombLattice& lat,
                                   MeasurementGroup g) {
  Circuit c(lat.qubit_count());
  if (g == MeasurementGroup::coulomb) return c;
  const RoutedGroup routed = route_hopping_group(lat, g);
  for (const auto& sw : routed.swaps) c.fswap(sw[0], sw[1]);
  for (const auto& pw : routed.pair_wires) c.hop_basis(pw[0], pw[1]);
  return c;
}

namespace detail {

// Post-rotation outcome value of one family for a single computational
// basis outcome. Interaction: +U per doubly occupied site. Bond families:
// each adjacent pair reads +1 on (lo, hi) = (0, 1) and -1 on (1, 0) for the
// normalized bond operator, scaled by -tau.
inline double group_outcome_value(const std::vector<std::array<int, 2>>& pairs,
                                  bool interaction, double tau, double u,
                                  std::uint64_t outcome) {
  double v = 0;
  for (const auto& p : pairs) {
    const int b_lo = static_cast<int>((outcome >> p[0]) & 1);
    const int b_hi = static_cast<int>((outcome >> p[1]) & 1);
    if (interaction) {
      if (b_lo && b_hi) v += u;
    } else {
      if (!b_lo && b_hi)
        v -= tau;
      else if (b_lo && !b_hi)
        v += tau;
    }
  }
  return v;
}

inline std::vector<std::array<int, 2>> group_pairs(const HoneycombLattice& lat,
                                                   MeasurementGroup g) {
  if (g == MeasurementGroup::coulomb) {
    std::vector<std::array<int, 2>> pairs;
    for (int i = 0; i < lat.n_sites; ++i) pairs.push_back({2 * i, 2 * i + 1});
    return pairs;
  }
  return route_hopping_group(lat, g).pair_wires;
}

}  // namespace detail

struct GroupEstimate {
  MeasurementGroup group = MeasurementGroup::coulomb;
  double mean = 0;
  double se = 0;
  std::int64_t shots = 0;
};

struct EnergyEstimate {
  double energy = 0;
  double se = 0;
  std::vector<GroupEstimate> groups;
};

// Exact expectation of one family, through the same routed circuit the shot
// path uses (the state is copied; the input is untouched).
inline double exact_group_mean(const HoneycombLattice& lat,
                               MeasurementGroup g, double tau, double u,
                               const StateVector& psi) {
  StateVector s = psi;
  const Circuit c = measurement_circuit(lat, g);
  if (s.n_qubits != c.n_qubits)
    throw std::invalid_argument("exact_group_mean: qubit count mismatch");
  for (const Gate& gate : c.gates) apply_gate(s, gate);
  const auto pairs = detail::group_pairs(lat, g);
  const bool interaction = g == MeasurementGroup::coulomb;
  double mean = 0;
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    const double p = std::norm(s.amps[i]);
    if (p > 0)
      mean += p * detail::group_outcome_value(pairs, interaction, tau, u, i);
  }
  return mean;
}

// Sum of all four family expectations; equals the full-model energy.
inline double estimate_energy_exact(const HoneycombLattice& lat, double tau,
                                    double u, const StateVector& psi) {
  double e = 0;
  for (MeasurementGroup g : kMeasurementGroups)
    e += exact_group_mean(lat, g, tau, u, psi);
  return e;
}

// Shot-based estimate: every family draws `shots_per_group` samples from its
// routed circuit. Group standard errors use the Bessel-corrected per-shot
// variance; the total combines them in quadrature.
inline EnergyEstimate estimate_energy(const HoneycombLattice& lat, double tau,
                                      double u, const StateVector& psi,
                                      std::int64_t shots_per_group, Rng& rng) {
  EnergyEstimate out;
  double var_total = 0;
  for (MeasurementGroup g : kMeasurementGroups) {
    StateVector s = psi;
    const Circuit c = measurement_circuit(lat, g);
    if (s.n_qubits != c.n_qubits)
      throw std::invalid_argument("estimate_energy: qubit count mismatch");
    for (const Gate& gate : c.gates) apply_gate(s, gate);
    const auto counts = sample(s, shots_per_group, rng);

    const auto pairs = detail::group_pairs(lat, g);
    const bool interaction = g == MeasurementGroup::coulomb;
    double sum = 0, sum_sq = 0;
    for (const auto& [bits, n] : counts) {
      std::uint64_t outcome = 0;
      for (std::size_t q = 0; q < bits.size(); ++q)
        if (bits[q] == '1') outcome |= std::uint64_t{1} << q;
      const double v =
          detail::group_outcome_value(pairs, interaction, tau, u, outcome);
      sum += v * static_cast<double>(n);
      sum_sq += v * v * static_cast<double>(n);
    }
    GroupEstimate ge;
    ge.group = g;
    ge.shots = shots_per_group;
    const double ns = static_cast<double>(shots_per_group);
    ge.mean = sum / ns;
    if (shots_per_group > 1) {
      const double var =
          std::max(0.0, (sum_sq / ns - ge.mean * ge.mean) * ns / (ns - 1));
      ge.se = std::sqrt(var / ns);
    }
    out.energy += ge.mean;
    var_total += ge.se * ge.se;
    out.groups.push_back(ge);
  }
  out.se = std::sqrt(var_total);
  return out;
}

inline EnergyEstimate estimate_energy(const HoneycombLattice& lat, double tau,
                                      double u, const StateVector& psi,
                                      std::int64_t shots_per_group,
                                      std::uint64_t seed) {
  Rng rng(seed);
  return estimate_energy(lat, tau, u, psi, shots_per_group, rng);
}

}  // namespace hubcd
