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

// Digitized interaction ramp. The instantaneous Hamiltonian interpolates
// from the hopping term to the full model, H(l) = H_hop + l * H_coul, with
// the nested-sine schedule; each step is a first-order product formula at
// the step midpoint, optionally augmented (or replaced) by the variational
// counterdiabatic correction scaled by the schedule velocity.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubcd/cdsynth.hpp"
#include "hubcd/fermion.hpp"
#include "hubcd/lattice.hpp"
#include "hubcd/oracle.hpp"
#include "hubcd/pauli.hpp"
#include "hubcd/schedule.hpp"
#include "hubcd/stateprep.hpp"
#include "hubcd/statevec.hpp"

namespace hubcd {

enum class EvolveVariant { adiabatic, adiabatic_cd, cd_only };

inline const char* evolve_variant_name(EvolveVariant v) {
  switch (v) {
    case EvolveVariant::adiabatic: return "adiabatic";
    case EvolveVariant::adiabatic_cd: return "adiabatic_cd";
    case EvolveVariant::cd_only: return "cd_only";
  }
  return "adiabatic";
}

inline EvolveVariant parse_evolve_variant(const std::string& name) {
  if (name == "adiabatic") return EvolveVariant::adiabatic;
  if (name == "adiabatic_cd") return EvolveVariant::adiabatic_cd;
  if (name == "cd_only") return EvolveVariant::cd_only;
  throw std::invalid_argument("unknown evolve variant: " + name);
}

struct EvolveOptions {
  EvolveVariant variant = EvolveVariant::adiabatic;
  double total_time = 1.0;
  double dt = 0.02;
  int cd_order = 1;
  int record_every = 1;  // energy recorded every this many steps
};

struct EvolveRecord {
  int step = 0;  // 0 is the prepared state before any evolution
  double t = 0;
  double energy = 0;
  double delta_e_pct = 0;
};

struct EvolveResult {
  std::vector<EvolveRecord> records;
  double e_ground = 0;   // sector ground energy of the full model
  double e_initial = 0;  // prepared-state energy under the full model
  double e_final = 0;
  double delta_e_pct = 0;
  int n_steps = 0;
  StateVector state;
};

// Residual-energy percentage relative to the initial gap to the target.
inline double residual_energy_pct(double e_ground, double e_initial,
                                  double e) {
  const double denom = e_ground - e_initial;
  if (std::abs(denom) < 1e-300) return 0.0;
  return std::abs((e_ground - e) / denom) * 100.0;
}

// One product-formula step applied in place. Ordering: hopping strings,
// interaction strings, then counterdiabatic strings, each in canonical
// term order; identity strings only shift the global phase and are skipped.
inline void trotter_step(StateVector& state, const HamiltonianSet& ham,
                         double lam, double lam_dot, double dt,
                         EvolveVariant variant, int cd_order) {
  auto apply_terms = [&state](const PauliSum& op, double angle_scale) {
    for (const PauliString& term : op.ordered_terms()) {
      if ((term.x | term.z) == 0) continue;
      Gate g;
      g.kind = GateKind::ExpPauli;
      g.px = term.x;
      g.pz = term.z;
      g.theta = angle_scale * term.coeff.real();
      apply_gate(state, g);
    }
  };

  if (variant != EvolveVariant::cd_only) {
    apply_terms(ham.h_hop, dt);
    apply_terms(ham.h_coul, dt * lam);
  }
  if (variant != EvolveVariant::adiabatic) {
    PauliSum h_lam = ham.h_hop;
    h_lam += cplx{lam, 0} * ham.h_coul;
    const CdExpansion ex = solve_alpha(h_lam, ham.h_coul, cd_order);
    apply_terms(ex.gauge_potential(), dt * lam_dot);
  }
}

// Number of exponential gates one step applies, split by family.
struct StepTermCounts {
  int hopping = 0;
  int interaction = 0;
  int cd = 0;
};

inline StepTermCounts step_term_counts(const HamiltonianSet& ham,
                                       EvolveVariant variant, int cd_order) {
  StepTermCounts counts;
  auto nonidentity = [](const PauliSum& op) {
    int n = 0;
    for (const auto& t : op.ordered_terms())
      if ((t.x | t.z) != 0) ++n;
    return n;
  };
  if (variant != EvolveVariant::cd_only) {
    counts.hopping = nonidentity(ham.h_hop);
    counts.interaction = nonidentity(ham.h_coul);
  }
  if (variant != EvolveVariant::adiabatic) {
    PauliSum h_half = ham.h_hop;
    h_half += cplx{0.5, 0} * ham.h_coul;
    counts.cd = nonidentity(
        solve_alpha(h_half, ham.h_coul, cd_order).gauge_potential());
  }
  return counts;
}

// Runs the full ramp from a caller-supplied initial state. e_ground is the
// target energy the residual percentages are measured against.
inline EvolveResult evolve_core(const HamiltonianSet& ham,
                                const StateVector& initial, double e_ground,
                                const EvolveOptions& opt) {
  const Schedule sch(opt.total_time, opt.dt);
  if (opt.record_every < 1)
    throw std::invalid_argument("evolve: record_every must be >= 1");

  EvolveResult res;
  res.n_steps = sch.n_steps;
  res.e_ground = e_ground;

  StateVector state = initial;
  res.e_initial = expectation_value(ham.h_fh, state.amps).real();
  res.records.push_back(
      {0, 0.0, res.e_initial,
       residual_energy_pct(res.e_ground, res.e_initial, res.e_initial)});

  for (int j = 1; j <= sch.n_steps; ++j) {
    const double t_mid = sch.midpoint(j);
    trotter_step(state, ham, sch.lambda(t_mid), sch.lambda_dot(t_mid), opt.dt,
                 opt.variant, opt.cd_order);
    if (j % opt.record_every == 0 || j == sch.n_steps) {
      const double e = expectation_value(ham.h_fh, state.amps).real();
      res.records.push_back(
          {j, j * opt.dt, e,
           residual_energy_pct(res.e_ground, res.e_initial, e)});
    }
  }
  res.e_final = res.records.back().energy;
  res.delta_e_pct =
      residual_energy_pct(res.e_ground, res.e_initial, res.e_final);
  res.state = std::move(state);
  return res;
}

// Lattice entry point: starts from the hopping-ground preparation circuit at
// half filling and targets the half-filling sector ground energy.
inline EvolveResult evolve(const HoneycombLattice& lat, double tau, double u,
                           const EvolveOptions& opt) {
  const HamiltonianSet ham = build_hamiltonians(lat, tau, u);
  const auto [n_up, n_dn] = half_filling(lat.n_sites);

  const SectorBasis basis = SectorBasis::build(lat.n_sites, n_up, n_dn);
  const SectorHamiltonian hs(basis, site_edge_list(lat), tau, u);
  const double e_ground = sector_ground_state(hs).energy;

  const Circuit prep = prep_circuit(lat, tau, n_up, n_dn);
  const StateVector initial =
      run(prep, {}, StateVector::zero_state(prep.n_qubits));
  return evolve_core(ham, initial, e_ground, opt);
}

}  // namespace hubcd
