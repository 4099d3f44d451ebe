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

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubcd/pauli.hpp"
#include "hubcd/rng.hpp"

namespace hubcd {

// Qubit 0 is the least significant bit of the amplitude index. Bitstrings
// render little-endian: character k of the string is qubit k.
struct StateVector {
  int n_qubits = 0;
  std::vector<cplx> amps;

  static StateVector zero_state(int n) {
    if (n < 1 || n > 30)
      throw std::invalid_argument("StateVector: n_qubits out of range");
    StateVector s;
    s.n_qubits = n;
    s.amps.assign(std::size_t{1} << n, cplx{0, 0});
    s.amps[0] = cplx{1, 0};
    return s;
  }

  std::size_t dim() const { return amps.size(); }

  double norm_sq() const {
    double acc = 0;
    for (const cplx& a : amps) acc += std::norm(a);
    return acc;
  }
};

inline std::string bitstring_of(std::uint64_t index, int n_qubits) {
  std::string s(n_qubits, '0');
  for (int q = 0; q < n_qubits; ++q)
    if ((index >> q) & 1) s[q] = '1';
  return s;
}

enum class GateKind {
  X,
  H,
  RX,
  RZ,
  CNOT,
  SqrtISwap,
  FSWAP,
  Givens,
  ExpPauli,
  BasisChangeHop,
};

// One gate. Parameterized kinds (RX, RZ, Givens, ExpPauli) read their angle
// from `theta` when slot < 0, else from scale * params[slot]. Givens is the
// fermionic two-mode rotation exp[theta (c_q1^dag c_q0 - c_q0^dag c_q1)]
// under Jordan-Wigner, including the parity string on every qubit strictly
// between q0 and q1.
struct Gate {
  GateKind kind = GateKind::X;
  int q0 = -1;
  int q1 = -1;
  double theta = 0.0;
  int slot = -1;
  double scale = 1.0;
  std::uint64_t px = 0;  // ExpPauli pattern
  std::uint64_t pz = 0;
};

inline bool is_parameterized_kind(GateKind k) {
  return k == GateKind::RX || k == GateKind::RZ || k == GateKind::Givens ||
         k == GateKind::ExpPauli;
}

inline bool is_two_qubit_kind(GateKind k) {
  return k == GateKind::CNOT || k == GateKind::SqrtISwap ||
         k == GateKind::FSWAP || k == GateKind::Givens ||
         k == GateKind::BasisChangeHop;
}

// Qubits the gate acts on nontrivially, ascending. For ExpPauli this is the
// letter support; for Givens it includes the interior parity qubits. The
// noise model inserts one channel application per entry.
inline std::vector<int> touched_qubits(const Gate& g) {
  std::vector<int> out;
  switch (g.kind) {
    case GateKind::ExpPauli: {
      std::uint64_t support = g.px | g.pz;
      while (support) {
        out.push_back(std::countr_zero(support));
        support &= support - 1;
      }
      break;
    }
    case GateKind::Givens:
      for (int q = std::min(g.q0, g.q1); q <= std::max(g.q0, g.q1); ++q)
        out.push_back(q);
      break;
    default:
      out.push_back(g.q0);
      if (is_two_qubit_kind(g.kind)) out.push_back(g.q1);
      std::sort(out.begin(), out.end());
      break;
  }
  return out;
}

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  int n_params = 0;

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(n) {
    if (n < 1 || n > 30)
      throw std::invalid_argument("Circuit: n_qubits out of range");
  }

  void x(int q) { push_1q(GateKind::X, q); }
  void h(int q) { push_1q(GateKind::H, q); }
  void rx(int q, double theta) { push_1q(GateKind::RX, q).theta = theta; }
  void rz(int q, double theta) { push_1q(GateKind::RZ, q).theta = theta; }
  void cnot(int control, int target) { push_2q(GateKind::CNOT, control, target); }
  void sqrt_iswap(int a, int b) { push_2q(GateKind::SqrtISwap, a, b); }
  void fswap(int a, int b) { push_2q(GateKind::FSWAP, a, b); }
  void hop_basis(int a, int b) { push_2q(GateKind::BasisChangeHop, a, b); }

  void givens(int a, int b, double theta) {
    if (a >= b) throw std::invalid_argument("Circuit: Givens requires q0 < q1");
    push_2q(GateKind::Givens, a, b).theta = theta;
  }

  void exp_pauli(std::uint64_t px, std::uint64_t pz, double theta) {
    push_pauli(px, pz).theta = theta;
  }

  void exp_pauli_slot(std::uint64_t px, std::uint64_t pz, int slot,
                      double scale) {
    Gate& g = push_pauli(px, pz);
    bind(g, slot, scale);
  }

  void givens_slot(int a, int b, int slot, double scale) {
    if (a >= b) throw std::invalid_argument("Circuit: Givens requires q0 < q1");
    Gate& g = push_2q(GateKind::Givens, a, b);
    bind(g, slot, scale);
  }

  void append(const Circuit& other) {
    if (other.n_qubits != n_qubits)
      throw std::invalid_argument("Circuit::append: qubit count mismatch");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    n_params = std::max(n_params, other.n_params);
  }

 private:
  void check(int q) const {
    if (q < 0 || q >= n_qubits)
      throw std::out_of_range("Circuit: qubit index out of range");
  }

  Gate& push_1q(GateKind k, int q) {
    check(q);
    gates.push_back(Gate{k, q, -1});
    return gates.back();
  }

  Gate& push_2q(GateKind k, int a, int b) {
    check(a);
    check(b);
    if (a == b) throw std::invalid_argument("Circuit: duplicate target qubit");
    gates.push_back(Gate{k, a, b});
    return gates.back();
  }

  Gate& push_pauli(std::uint64_t px, std::uint64_t pz) {
    if ((px | pz) == 0)
      throw std::invalid_argument("Circuit: ExpPauli needs a nonidentity string");
    const std::uint64_t mask = (n_qubits == 64)
                                   ? ~std::uint64_t{0}
                                   : ((std::uint64_t{1} << n_qubits) - 1);
    if ((px | pz) & ~mask)
      throw std::out_of_range("Circuit: ExpPauli support out of range");
    Gate g;
    g.kind = GateKind::ExpPauli;
    g.px = px;
    g.pz = pz;
    gates.push_back(g);
    return gates.back();
  }

  void bind(Gate& g, int slot, double scale) {
    if (slot < 0) throw std::invalid_argument("Circuit: negative slot");
    g.slot = slot;
    g.scale = scale;
    n_params = std::max(n_params, slot + 1);
  }
};

namespace detail {

inline int parity64(std::uint64_t v) { return std::popcount(v) & 1; }

template <typename Body>
inline void for_each_pair_1q(std::size_t dim, std::uint64_t bit, Body body) {
  for (std::uint64_t base = 0; base < dim; base += 2 * bit)
    for (std::uint64_t lo = 0; lo < bit; ++lo) body(base | lo);
}

// Enumerates indices with both qubit bits clear.
template <typename Body>
inline void for_each_pair_2q(std::size_t dim, std::uint64_t ba,
                             std::uint64_t bb, Body body) {
  if (ba > bb) std::swap(ba, bb);
  for (std::uint64_t hi = 0; hi < dim; hi += 2 * bb)
    for (std::uint64_t mid = hi; mid < hi + bb; mid += 2 * ba)
      for (std::uint64_t lo = mid; lo < mid + ba; ++lo) body(lo);
}

}  // namespace detail

inline double bound_angle(const Gate& g, const std::vector<double>& params) {
  if (g.slot < 0) return g.theta;
  if (g.slot >= static_cast<int>(params.size()))
    throw std::invalid_argument("apply_gate: unbound parameter slot");
  return g.scale * params[g.slot];
}

// Applies the gate (or its inverse) in place.
inline void apply_gate(StateVector& s, const Gate& g,
                       const std::vector<double>& params = {},
                       bool inverse = false) {
  const std::size_t dim = s.dim();
  auto* a = s.amps.data();
  const double inv = inverse ? -1.0 : 1.0;
  switch (g.kind) {
    case GateKind::X: {
      const std::uint64_t b = std::uint64_t{1} << g.q0;
      detail::for_each_pair_1q(dim, b, [&](std::uint64_t i0) {
        std::swap(a[i0], a[i0 | b]);
      });
      break;
    }
    case GateKind::H: {
      const std::uint64_t b = std::uint64_t{1} << g.q0;
      const double r = 1.0 / std::sqrt(2.0);
      detail::for_each_pair_1q(dim, b, [&](std::uint64_t i0) {
        const cplx a0 = a[i0], a1 = a[i0 | b];
        a[i0] = r * (a0 + a1);
        a[i0 | b] = r * (a0 - a1);
      });
      break;
    }
    case GateKind::RX: {
      const double th = inv * bound_angle(g, params);
      const std::uint64_t b = std::uint64_t{1} << g.q0;
      const double c = std::cos(th / 2), sn = std::sin(th / 2);
      const cplx mis{0, -sn};
      detail::for_each_pair_1q(dim, b, [&](std::uint64_t i0) {
        const cplx a0 = a[i0], a1 = a[i0 | b];
        a[i0] = c * a0 + mis * a1;
        a[i0 | b] = mis * a0 + c * a1;
      });
      break;
    }
    case GateKind::RZ: {
      const double th = inv * bound_angle(g, params);
      const std::uint64_t b = std::uint64_t{1} << g.q0;
      const cplx p0 = std::polar(1.0, -th / 2), p1 = std::polar(1.0, th / 2);
      detail::for_each_pair_1q(dim, b, [&](std::uint64_t i0) {
        a[i0] *= p0;
        a[i0 | b] *= p1;
      });
      break;
    }
    case GateKind::CNOT: {
      const std::uint64_t bc = std::uint64_t{1} << g.q0;
      const std::uint64_t bt = std::uint64_t{1} << g.q1;
      detail::for_each_pair_2q(dim, bc, bt, [&](std::uint64_t i00) {
        std::swap(a[i00 | bc], a[i00 | bc | bt]);
      });
      break;
    }
    case GateKind::SqrtISwap: {
      const std::uint64_t b0 = std::uint64_t{1} << g.q0;
      const std::uint64_t b1 = std::uint64_t{1} << g.q1;
      const double r = 1.0 / std::sqrt(2.0);
      const cplx ir = inverse ? cplx{0, -r} : cplx{0, r};
      detail::for_each_pair_2q(dim, b0, b1, [&](std::uint64_t i00) {
        const cplx a01 = a[i00 | b1], a10 = a[i00 | b0];
        a[i00 | b1] = r * a01 + ir * a10;
        a[i00 | b0] = ir * a01 + r * a10;
      });
      break;
    }
    case GateKind::FSWAP: {
      const std::uint64_t b0 = std::uint64_t{1} << g.q0;
      const std::uint64_t b1 = std::uint64_t{1} << g.q1;
      detail::for_each_pair_2q(dim, b0, b1, [&](std::uint64_t i00) {
        std::swap(a[i00 | b0], a[i00 | b1]);
        a[i00 | b0 | b1] = -a[i00 | b0 | b1];
      });
      break;
    }
    case GateKind::BasisChangeHop: {
      const std::uint64_t b0 = std::uint64_t{1} << g.q0;
      const std::uint64_t b1 = std::uint64_t{1} << g.q1;
      const double r = 1.0 / std::sqrt(2.0);
      detail::for_each_pair_2q(dim, b0, b1, [&](std::uint64_t i00) {
        const cplx a01 = a[i00 | b1], a10 = a[i00 | b0];
        a[i00 | b1] = r * (a01 + a10);
        a[i00 | b0] = r * (a01 - a10);
      });
      break;
    }
    case GateKind::Givens: {
      const double th = inv * bound_angle(g, params);
      const int qa = std::min(g.q0, g.q1), qb = std::max(g.q0, g.q1);
      const std::uint64_t bA = std::uint64_t{1} << g.q0;  // "from" mode
      const std::uint64_t bB = std::uint64_t{1} << g.q1;
      const std::uint64_t interior =
          ((std::uint64_t{1} << qb) - 1) & ~((std::uint64_t{2} << qa) - 1);
      const double c = std::cos(th), sn = std::sin(th);
      detail::for_each_pair_2q(dim, bA, bB, [&](std::uint64_t i00) {
        const double sgn = detail::parity64(interior & i00) ? -1.0 : 1.0;
        const cplx aA = a[i00 | bA], aB = a[i00 | bB];
        a[i00 | bA] = c * aA - sgn * sn * aB;
        a[i00 | bB] = sgn * sn * aA + c * aB;
      });
      break;
    }
    case GateKind::ExpPauli: {
      const double th = inv * bound_angle(g, params);
      if (g.px == 0) {
        const cplx peven = std::polar(1.0, -th), podd = std::polar(1.0, th);
        for (std::uint64_t ci = 0; ci < dim; ++ci)
          a[ci] *= detail::parity64(g.pz & ci) ? podd : peven;
        break;
      }
      const std::uint64_t pivot = g.px & (~g.px + 1);
      const int d = std::popcount(g.px & g.pz);
      const cplx id_phase = i_power(d);
      const double c = std::cos(th), sn = std::sin(th);
      detail::for_each_pair_1q(dim, pivot, [&](std::uint64_t head) {
        // head runs over all indices with the pivot bit clear.
        const std::uint64_t mate = head ^ g.px;
        const cplx phi_head =
            detail::parity64(g.pz & head) ? -id_phase : id_phase;
        const cplx phi_mate = std::conj(phi_head);
        const cplx ah = a[head], am = a[mate];
        a[head] = c * ah - cplx{0, sn} * phi_mate * am;
        a[mate] = c * am - cplx{0, sn} * phi_head * ah;
      });
      break;
    }
  }
}

enum class NoiseChannel { none, amplitude_damping, bit_flip, phase_flip };

inline const char* noise_channel_name(NoiseChannel c) {
  switch (c) {
    case NoiseChannel::none: return "none";
    case NoiseChannel::amplitude_damping: return "amplitude_damping";
    case NoiseChannel::bit_flip: return "bit_flip";
    case NoiseChannel::phase_flip: return "phase_flip";
  }
  return "none";
}

inline NoiseChannel parse_noise_channel(const std::string& name) {
  if (name == "none") return NoiseChannel::none;
  if (name == "amplitude_damping") return NoiseChannel::amplitude_damping;
  if (name == "bit_flip") return NoiseChannel::bit_flip;
  if (name == "phase_flip") return NoiseChannel::phase_flip;
  throw std::invalid_argument("unknown noise channel: " + name);
}

struct NoiseModel {
  NoiseChannel channel = NoiseChannel::none;
  double p = 0.01;
};

// One stochastic Kraus event on one qubit. Every call consumes exactly one
// uniform draw, so trajectory replay from a recorded decision sequence stays
// aligned with a full run.
inline void apply_channel(StateVector& s, int q, const NoiseModel& noise,
                          Rng& rng) {
  if (noise.channel == NoiseChannel::none || noise.p <= 0) return;
  const double u = rng.uniform();
  const std::size_t dim = s.dim();
  auto* a = s.amps.data();
  const std::uint64_t b = std::uint64_t{1} << q;
  switch (noise.channel) {
    case NoiseChannel::bit_flip:
      if (u < noise.p)
        detail::for_each_pair_1q(dim, b, [&](std::uint64_t i0) {
          std::swap(a[i0], a[i0 | b]);
        });
      break;
    case NoiseChannel::phase_flip:
      if (u < noise.p)
        detail::for_each_pair_1q(dim, b, [&](std::uint64_t i0) {
          a[i0 | b] = -a[i0 | b];
        });
      break;
    case NoiseChannel::amplitude_damping: {
      double n1 = 0;
      detail::for_each_pair_1q(dim, b, [&](std::uint64_t i0) {
        n1 += std::norm(a[i0 | b]);
      });
      if (u < noise.p * n1) {
        // Jump: |1> decays to |0>, renormalized.
        const double r = 1.0 / std::sqrt(n1);
        detail::for_each_pair_1q(dim, b, [&](std::uint64_t i0) {
          a[i0] = r * a[i0 | b];
          a[i0 | b] = cplx{0, 0};
        });
      } else {
        // No-jump backaction: scale the excited component, renormalize.
        const double keep = 1.0 / std::sqrt(1.0 - noise.p * n1);
        const double damp = keep * std::sqrt(1.0 - noise.p);
        detail::for_each_pair_1q(dim, b, [&](std::uint64_t i0) {
          a[i0] *= keep;
          a[i0 | b] *= damp;
        });
      }
      break;
    }
    case NoiseChannel::none:
      break;
  }
}

// Noiseless execution.
inline StateVector run(const Circuit& c, const std::vector<double>& params,
                       const StateVector& initial) {
  if (initial.n_qubits != c.n_qubits)
    throw std::invalid_argument("run: dimension mismatch");
  StateVector s = initial;
  for (const Gate& g : c.gates) apply_gate(s, g, params);
  return s;
}

// One Monte Carlo noise trajectory: after every gate, one channel
// application per touched qubit, ascending.
inline StateVector run(const Circuit& c, const std::vector<double>& params,
                       const StateVector& initial, const NoiseModel& noise,
                       Rng& rng) {
  if (initial.n_qubits != c.n_qubits)
    throw std::invalid_argument("run: dimension mismatch");
  StateVector s = initial;
  for (const Gate& g : c.gates) {
    apply_gate(s, g, params);
    if (noise.channel != NoiseChannel::none && noise.p > 0)
      for (int q : touched_qubits(g)) apply_channel(s, q, noise, rng);
  }
  return s;
}

inline StateVector run(const Circuit& c, const std::vector<double>& params,
                       const StateVector& initial, const NoiseModel& noise,
                       std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return run(c, params, initial, noise, rng);
}

// Multinomial sample of |amplitude|^2 via sorted uniforms and one cumulative
// sweep. Deterministic per rng state; counts sum to shots.
inline std::map<std::string, std::int64_t> sample(const StateVector& s,
                                                  std::int64_t shots,
                                                  Rng& rng) {
  if (shots < 1) throw std::invalid_argument("sample: shots must be >= 1");
  std::vector<double> u(static_cast<std::size_t>(shots));
  for (double& v : u) v = rng.uniform();
  std::sort(u.begin(), u.end());
  std::map<std::string, std::int64_t> counts;
  double cum = 0;
  std::size_t next = 0;
  const std::size_t dim = s.dim();
  for (std::size_t idx = 0; idx < dim && next < u.size(); ++idx) {
    cum += std::norm(s.amps[idx]);
    std::size_t start = next;
    while (next < u.size() && u[next] < cum) ++next;
    if (next > start)
      counts[bitstring_of(idx, s.n_qubits)] +=
          static_cast<std::int64_t>(next - start);
  }
  // Float round-off can leave trailing draws past the accumulated total;
  // they belong to the last populated outcome.
  if (next < u.size()) {
    std::size_t last = dim - 1;
    while (last > 0 && std::norm(s.amps[last]) == 0.0) --last;
    counts[bitstring_of(last, s.n_qubits)] +=
        static_cast<std::int64_t>(u.size() - next);
  }
  return counts;
}

inline std::map<std::string, std::int64_t> sample(const StateVector& s,
                                                  std::int64_t shots,
                                                  std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return sample(s, shots, rng);
}

}  // namespace hubcd
