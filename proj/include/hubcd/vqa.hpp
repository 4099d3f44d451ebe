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

// Variational ground-state search. Two ansatz families share the
// hopping-ground preparation prefix:
//   hv: per layer, one interaction angle per site followed by the three
//       routed bond blocks, with separate XX and YY angles per spin bond;
//   cd: per layer, one angle per pool generator (the two-string
//       current-like generators on horizontal bonds).
// Cost modes: exact statevector expectation (adjoint-differentiated),
// shot-based group measurement, and trajectory-averaged noisy execution;
// the stochastic modes use central differences with common random numbers.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubcd/cdsynth.hpp"
#include "hubcd/fermion.hpp"
#include "hubcd/lattice.hpp"
#include "hubcd/measure.hpp"
#include "hubcd/oracle.hpp"
#include "hubcd/parallel.hpp"
#include "hubcd/pauli.hpp"
#include "hubcd/rng.hpp"
#include "hubcd/stateprep.hpp"
#include "hubcd/statevec.hpp"

namespace hubcd {

enum class AnsatzKind { hv, cd };

inline const char* ansatz_name(AnsatzKind k) {
  return k == AnsatzKind::hv ? "hv" : "cd";
}

inline AnsatzKind parse_ansatz(const std::string& name) {
  if (name == "hv") return AnsatzKind::hv;
  if (name == "cd") return AnsatzKind::cd;
  throw std::invalid_argument("unknown ansatz: " + name);
}

inline int hv_params_per_layer(const HoneycombLattice& lat) {
  return lat.n_sites + 4 * static_cast<int>(lat.edges.size());
}

inline int cd_params_per_layer(const HoneycombLattice& lat) {
  return static_cast<int>(cd_pool(lat).size());
}

namespace detail {

inline void append_hv_layer(Circuit& c, const HoneycombLattice& lat,
                            int& slot) {
  // exp(-i theta n_up n_dn) per site, identity component dropped.
  for (int i = 0; i < lat.n_sites; ++i) {
    const std::uint64_t bu = std::uint64_t{1} << (2 * i);
    const std::uint64_t bd = std::uint64_t{1} << (2 * i + 1);
    c.exp_pauli_slot(0, bu, slot, -0.25);
    c.exp_pauli_slot(0, bd, slot, -0.25);
    c.exp_pauli_slot(0, bu | bd, slot, 0.25);
    ++slot;
  }
  // Routed bond blocks: exp(-i theta XX / 2) and exp(-i theta' YY / 2) per
  // adjacent spin bond, each with its own angle.
  for (MeasurementGroup g :
       {MeasurementGroup::horiz_a, MeasurementGroup::horiz_b,
        MeasurementGroup::vertical}) {
    const RoutedGroup routed = route_hopping_group(lat, g);
    for (const auto& sw : routed.swaps) c.fswap(sw[0], sw[1]);
    for (const auto& pw : routed.pair_wires) {
      const std::uint64_t bits =
          (std::uint64_t{1} << pw[0]) | (std::uint64_t{1} << pw[1]);
      c.exp_pauli_slot(bits, 0, slot++, 0.5);
      c.exp_pauli_slot(bits, bits, slot++, 0.5);
    }
    for (auto it = routed.swaps.rbegin(); it != routed.swaps.rend(); ++it)
      c.fswap((*it)[0], (*it)[1]);
  }
}

inline void append_cd_layer(Circuit& c, const HoneycombLattice& lat,
                            int& slot) {
  for (const PauliSum& gen : cd_pool(lat)) {
    // The generator's two strings commute, so the split is exact.
    for (const PauliString& t : gen.ordered_terms())
      c.exp_pauli_slot(t.x, t.z, slot, t.coeff.real());
    ++slot;
  }
}

}  // namespace detail

struct AnsatzInfo {
  Circuit circuit;  // preparation prefix plus the parameterized layers
  AnsatzKind kind = AnsatzKind::hv;
  int n_layers = 1;
  int params_per_layer = 0;
  int prep_gates = 0;
};

inline AnsatzInfo build_ansatz(const HoneycombLattice& lat, double tau,
                               AnsatzKind kind, int n_layers) {
  if (n_layers < 1)
    throw std::invalid_argument("build_ansatz: n_layers must be >= 1");
  const auto [n_up, n_dn] = half_filling(lat.n_sites);
  AnsatzInfo info;
  info.kind = kind;
  info.n_layers = n_layers;
  info.circuit = prep_circuit(lat, tau, n_up, n_dn);
  info.prep_gates = static_cast<int>(info.circuit.gates.size());
  info.params_per_layer = kind == AnsatzKind::hv ? hv_params_per_layer(lat)
                                                 : cd_params_per_layer(lat);
  int slot = 0;
  for (int l = 0; l < n_layers; ++l) {
    if (kind == AnsatzKind::hv)
      detail::append_hv_layer(info.circuit, lat, slot);
    else
      detail::append_cd_layer(info.circuit, lat, slot);
  }
  return info;
}

struct EnergyGradient {
  double energy = 0;
  std::vector<double> grad;
};

// Reverse-mode derivative of <psi(theta)|H|psi(theta)> in one backward
// sweep: for each parameterized exponential-string gate, the contribution is
// 2 * scale * Im <b|P|psi> with b the back-propagated H|psi_final>.
inline EnergyGradient adjoint_energy_gradient(const Circuit& c,
                                              const std::vector<double>& params,
                                              const PauliSum& h) {
  StateVector psi = run(c, params, StateVector::zero_state(c.n_qubits));
  StateVector b;
  b.n_qubits = c.n_qubits;
  b.amps = hubcd::apply(h, psi.amps);

  EnergyGradient out;
  out.grad.assign(static_cast<std::size_t>(c.n_params), 0.0);
  {
    cplx e{0, 0};
    for (std::size_t i = 0; i < psi.dim(); ++i)
      e += std::conj(psi.amps[i]) * b.amps[i];
    out.energy = e.real();
  }

  for (int k = static_cast<int>(c.gates.size()) - 1; k >= 0; --k) {
    const Gate& g = c.gates[k];
    if (g.slot >= 0) {
      if (g.kind != GateKind::ExpPauli)
        throw std::invalid_argument(
            "adjoint_energy_gradient: only exponential-string parameters "
            "are supported");
      const cplx base = i_power(std::popcount(g.px & g.pz));
      cplx dot{0, 0};
      for (std::size_t i = 0; i < psi.dim(); ++i) {
        const cplx amp = (std::popcount(g.pz & i) & 1) ? -base * psi.amps[i]
                                                       : base * psi.amps[i];
        dot += std::conj(b.amps[i ^ g.px]) * amp;
      }
      out.grad[static_cast<std::size_t>(g.slot)] += 2 * g.scale * dot.imag();
    }
    apply_gate(psi, g, params, true);
    apply_gate(b, g, params, true);
  }
  return out;
}

enum class CostMode { exact, sampled, noisy };

inline const char* cost_mode_name(CostMode m) {
  switch (m) {
    case CostMode::exact: return "exact";
    case CostMode::sampled: return "sampled";
    case CostMode::noisy: return "noisy";
  }
  return "exact";
}

inline CostMode parse_cost_mode(const std::string& name) {
  if (name == "exact") return CostMode::exact;
  if (name == "sampled") return CostMode::sampled;
  if (name == "noisy") return CostMode::noisy;
  throw std::invalid_argument("unknown cost mode: " + name);
}

struct VqaOptions {
  AnsatzKind ansatz = AnsatzKind::hv;
  int n_layers = 1;
  CostMode mode = CostMode::exact;
  NoiseModel noise;                       // noisy mode only
  int n_trajectories = 100;               // noisy mode only
  std::int64_t shots_per_group = 30000;   // sampled mode only
  int iterations = 300;
  double learning_rate = 0.05;
  double epsilon = 1e-8;  // Adagrad stability constant
  double fd_step = 0.01;  // central-difference half step, radians
  std::uint64_t seed = 1;
};

// Stream ids under the run seed: 0 seeds the parameter init, 1 the sampled
// readout, 1 + t the t-th noise trajectory. Every cost call re-derives the
// same streams, which is what makes central differences common-random.
namespace detail {

constexpr std::uint64_t kParamStream = 0;
constexpr std::uint64_t kReadoutStream = 1;
constexpr std::uint64_t kTrajectoryStreamBase = 1;

struct ChannelSite {
  int gate = 0;
  int qubit = 0;
};

inline std::vector<ChannelSite> channel_sites(const Circuit& c) {
  std::vector<ChannelSite> out;
  for (int k = 0; k < static_cast<int>(c.gates.size()); ++k)
    for (int q : touched_qubits(c.gates[k])) out.push_back({k, q});
  return out;
}

inline void apply_flip(StateVector& s, int q, bool phase) {
  const std::uint64_t b = std::uint64_t{1} << q;
  auto* a = s.amps.data();
  if (phase) {
    for (std::uint64_t i = 0; i < s.dim(); ++i)
      if (i & b) a[i] = -a[i];
  } else {
    for_each_pair_1q(s.dim(), b, [&](std::uint64_t i0) {
      std::swap(a[i0], a[i0 | b]);
    });
  }
}

}  // namespace detail

// Cost of one parameter vector under the configured mode. Stateless across
// calls: identical parameters always give identical values.
class VqaCost {
 public:
  VqaCost(const HoneycombLattice& lat, const HamiltonianSet& ham,
          const Circuit& circuit, const VqaOptions& opt)
      : lat_(lat), ham_(ham), circuit_(circuit), opt_(opt) {
    if (opt.mode == CostMode::noisy && opt.n_trajectories < 1)
      throw std::invalid_argument("VqaCost: n_trajectories must be >= 1");
  }

  double operator()(const std::vector<double>& params) const {
    switch (opt_.mode) {
      case CostMode::exact: return exact_cost(params);
      case CostMode::sampled: return sampled_cost(params);
      case CostMode::noisy: return noisy_cost(params);
    }
    return exact_cost(params);
  }

  StateVector noiseless_state(const std::vector<double>& params) const {
    return run(circuit_, params, StateVector::zero_state(circuit_.n_qubits));
  }

 private:
  double exact_cost(const std::vector<double>& params) const {
    const StateVector s = noiseless_state(params);
    return expectation_value(ham_.h_fh, s.amps).real();
  }

  double sampled_cost(const std::vector<double>& params) const {
    const StateVector s = noiseless_state(params);
    Rng rng = Rng::stream(opt_.seed, detail::kReadoutStream);
    return estimate_energy(lat_, ham_.tau, ham_.u, s, opt_.shots_per_group,
                           rng)
        .energy;
  }

  double noisy_cost(const std::vector<double>& params) const {
    const bool flip_kind = opt_.noise.channel == NoiseChannel::bit_flip ||
                           opt_.noise.channel == NoiseChannel::phase_flip;
    const std::size_t dim = std::size_t{1} << circuit_.n_qubits;
    const std::size_t cache_bytes =
        (circuit_.gates.size() + 1) * dim * sizeof(cplx);
    if (flip_kind && opt_.noise.p > 0 && cache_bytes <= kMaxCacheBytes)
      return flip_cached_cost(params);

    return parallel_mean(opt_.n_trajectories, [&](std::int64_t t) {
      Rng rng = Rng::stream(opt_.seed, detail::kTrajectoryStreamBase +
                                           static_cast<std::uint64_t>(t));
      const StateVector s =
          run(circuit_, params, StateVector::zero_state(circuit_.n_qubits),
              opt_.noise, rng);
      return expectation_value(ham_.h_fh, s.amps).real();
    });
  }

  // Flip channels leave the state untouched until the first triggered event,
  // so each trajectory replays from the cached noiseless prefix at its first
  // flip. Draw-for-draw identical to the direct trajectory loop.
  double flip_cached_cost(const std::vector<double>& params) const {
    const bool phase = opt_.noise.channel == NoiseChannel::phase_flip;
    const int n_gates = static_cast<int>(circuit_.gates.size());

    std::vector<StateVector> cache;
    cache.reserve(static_cast<std::size_t>(n_gates) + 1);
    cache.push_back(StateVector::zero_state(circuit_.n_qubits));
    for (const Gate& g : circuit_.gates) {
      cache.push_back(cache.back());
      apply_gate(cache.back(), g, params);
    }
    const double e_clean =
        expectation_value(ham_.h_fh, cache.back().amps).real();
    const std::vector<detail::ChannelSite> sites =
        detail::channel_sites(circuit_);

    return parallel_mean(opt_.n_trajectories, [&](std::int64_t t) -> double {
      Rng rng = Rng::stream(opt_.seed, detail::kTrajectoryStreamBase +
                                           static_cast<std::uint64_t>(t));
      std::size_t d = 0;
      bool flipped = false;
      for (; d < sites.size(); ++d) {
        if (rng.uniform() < opt_.noise.p) {
          flipped = true;
          break;
        }
      }
      if (!flipped) return e_clean;
      StateVector s = cache[static_cast<std::size_t>(sites[d].gate) + 1];
      detail::apply_flip(s, sites[d].qubit, phase);
      std::size_t e = d + 1;
      while (e < sites.size() && sites[e].gate == sites[d].gate) {
        if (rng.uniform() < opt_.noise.p)
          detail::apply_flip(s, sites[e].qubit, phase);
        ++e;
      }
      for (int k = sites[d].gate + 1; k < n_gates; ++k) {
        apply_gate(s, circuit_.gates[k], params);
        while (e < sites.size() && sites[e].gate == k) {
          if (rng.uniform() < opt_.noise.p)
            detail::apply_flip(s, sites[e].qubit, phase);
          ++e;
        }
      }
      return expectation_value(ham_.h_fh, s.amps).real();
    });
  }

  static constexpr std::size_t kMaxCacheBytes = 256u << 20;

  const HoneycombLattice& lat_;
  const HamiltonianSet& ham_;
  const Circuit& circuit_;
  VqaOptions opt_;
};

// Both finite-difference probes of one coordinate reuse the cost's fixed
// readout/trajectory streams (common random numbers), so the evaluations
// are independent tasks and run through the shared thread pool.
template <typename F>
inline std::vector<double> central_difference_gradient(
    F&& cost, const std::vector<double>& params, double h) {
  const std::size_t m = params.size();
  std::vector<double> probes(2 * m, 0.0);
  parallel_for(static_cast<std::int64_t>(2 * m), [&](std::int64_t k) {
    std::vector<double> shifted = params;
    const std::size_t i = static_cast<std::size_t>(k) / 2;
    shifted[i] += (k % 2 == 0) ? h : -h;
    probes[static_cast<std::size_t>(k)] = cost(shifted);
  });
  std::vector<double> grad(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    grad[i] = (probes[2 * i] - probes[2 * i + 1]) / (2 * h);
  return grad;
}

// Per-parameter adaptive gradient accumulator. g_accum is nonnegative and
// nondecreasing per coordinate for the life of the state.
struct AdagradState {
  double learning_rate = 0.05;
  double epsilon = 1e-8;
  std::vector<double> g_accum;
  int iteration = 0;
};

inline void adagrad_step(AdagradState& state, std::vector<double>& params,
                         const std::vector<double>& grad) {
  if (!(state.learning_rate > 0))
    throw std::invalid_argument("adagrad_step: learning rate must be > 0");
  if (params.size() != grad.size() || params.size() != state.g_accum.size())
    throw std::invalid_argument("adagrad_step: size mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.g_accum[i] += grad[i] * grad[i];
    params[i] -=
        state.learning_rate * grad[i] / std::sqrt(state.g_accum[i] + state.epsilon);
  }
  ++state.iteration;
}

inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t param_hash(const std::vector<double>& params) {
  return fnv1a64(params.data(), params.size() * sizeof(double));
}

struct VqaRecord {
  int iteration = 0;
  double energy = 0;
  double grad_norm = 0;
  std::uint64_t params_hash = 0;  // snapshot before the update at iteration
};

struct VqaResult {
  std::vector<VqaRecord> records;  // iterations + 1 entries; last has grad 0
  std::vector<double> params;
  double initial_energy = 0;
  double final_energy = 0;
  int n_params = 0;
};

// Adagrad descent from a uniform(0, 1) start. Exact mode uses the adjoint
// derivative; the stochastic modes use central differences.
inline VqaResult run_vqa(const HoneycombLattice& lat, double tau, double u,
                         const VqaOptions& opt) {
  if (opt.iterations < 0)
    throw std::invalid_argument("run_vqa: iterations must be >= 0");
  const AnsatzInfo ansatz = build_ansatz(lat, tau, opt.ansatz, opt.n_layers);
  const HamiltonianSet ham = build_hamiltonians(lat, tau, u);
  const VqaCost cost(lat, ham, ansatz.circuit, opt);

  VqaResult res;
  res.n_params = ansatz.circuit.n_params;
  res.params.resize(static_cast<std::size_t>(res.n_params));
  {
    Rng init = Rng::stream(opt.seed, detail::kParamStream);
    for (double& p : res.params) p = init.uniform();
  }

  AdagradState opt_state;
  opt_state.learning_rate = opt.learning_rate;
  opt_state.epsilon = opt.epsilon;
  opt_state.g_accum.assign(res.params.size(), 0.0);

  for (int it = 0; it < opt.iterations; ++it) {
    double energy;
    std::vector<double> grad;
    if (opt.mode == CostMode::exact) {
      EnergyGradient eg =
          adjoint_energy_gradient(ansatz.circuit, res.params, ham.h_fh);
      energy = eg.energy;
      grad = std::move(eg.grad);
    } else {
      energy = cost(res.params);
      grad = central_difference_gradient(cost, res.params, opt.fd_step);
    }
    double norm_sq = 0;
    for (double g : grad) norm_sq += g * g;
    res.records.push_back(
        {it, energy, std::sqrt(norm_sq), param_hash(res.params)});
    adagrad_step(opt_state, res.params, grad);
  }
  res.records.push_back(
      {opt.iterations, cost(res.params), 0.0, param_hash(res.params)});
  res.initial_energy = res.records.front().energy;
  res.final_energy = res.records.back().energy;
  return res;
}

}  // namespace hubcd
