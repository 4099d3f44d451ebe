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
#include <complex>
#include <random>
#include <vector>

#include "dense_oracle.hpp"
#include "hubcd/fermion.hpp"
#include "hubcd/statevec.hpp"

using hubcd::Circuit;
using hubcd::cplx;
using hubcd::Gate;
using hubcd::GateKind;
using hubcd::NoiseChannel;
using hubcd::NoiseModel;
using hubcd::Rng;
using hubcd::StateVector;

namespace {

constexpr double kR = 0.70710678118654752440;  // 1/sqrt(2)

StateVector from_vec(const dense::Vec& v, int n) {
  StateVector s;
  s.n_qubits = n;
  s.amps = dense::to_amplitudes(v);
  return s;
}

double max_diff(const StateVector& s, const dense::Vec& v) {
  return (dense::from_amplitudes(s.amps) - v).cwiseAbs().maxCoeff();
}

// Local 4x4 matrices in the (bit q0, bit q1) basis, q0 the high local bit.
dense::Mat cnot4() {
  dense::Mat m(4, 4);
  m << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  return m;
}

dense::Mat sqrt_iswap4() {
  dense::Mat m = dense::Mat::Zero(4, 4);
  const cplx ir{0, kR};
  m(0, 0) = 1;
  m(1, 1) = kR;
  m(1, 2) = ir;
  m(2, 1) = ir;
  m(2, 2) = kR;
  m(3, 3) = 1;
  return m;
}

dense::Mat fswap4() {
  dense::Mat m(4, 4);
  m << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, -1;
  return m;
}

dense::Mat hop_basis4() {
  dense::Mat m(4, 4);
  m << 1, 0, 0, 0, 0, kR, kR, 0, 0, kR, -kR, 0, 0, 0, 0, 1;
  return m;
}

dense::Mat rx2(double th) {
  dense::Mat m(2, 2);
  const cplx mis{0, -std::sin(th / 2)};
  m << std::cos(th / 2), mis, mis, std::cos(th / 2);
  return m;
}

dense::Mat rz2(double th) {
  dense::Mat m = dense::Mat::Zero(2, 2);
  m(0, 0) = std::polar(1.0, -th / 2);
  m(1, 1) = std::polar(1.0, th / 2);
  return m;
}

dense::Mat h2() {
  dense::Mat m(2, 2);
  m << kR, kR, kR, -kR;
  return m;
}

// Dense unitary of one gate by embedding or matrix exponential, independent
// of the kernel implementations.
dense::Mat gate_unitary(const Gate& g, int n, const std::vector<double>& par) {
  const double th = hubcd::bound_angle(g, par);
  switch (g.kind) {
    case GateKind::X: return dense::embed1(dense::letter('X'), g.q0, n);
    case GateKind::H: return dense::embed1(h2(), g.q0, n);
    case GateKind::RX: return dense::embed1(rx2(th), g.q0, n);
    case GateKind::RZ: return dense::embed1(rz2(th), g.q0, n);
    case GateKind::CNOT: return dense::embed2(cnot4(), g.q0, g.q1, n);
    case GateKind::SqrtISwap: return dense::embed2(sqrt_iswap4(), g.q0, g.q1, n);
    case GateKind::FSWAP: return dense::embed2(fswap4(), g.q0, g.q1, n);
    case GateKind::BasisChangeHop:
      return dense::embed2(hop_basis4(), g.q0, g.q1, n);
    case GateKind::ExpPauli: {
      hubcd::PauliString p;
      p.n_qubits = n;
      p.x = g.px;
      p.z = g.pz;
      p.coeff = cplx{1, 0};
      const dense::Mat pd = dense::of_string(p);
      return (cplx{0, -th} * pd).exp();
    }
    case GateKind::Givens: {
      // exp[th (c_q1^dag c_q0 - c_q0^dag c_q1)] under Jordan-Wigner.
      using hubcd::jw_ladder;
      using hubcd::LadderKind;
      hubcd::PauliSum gen =
          jw_ladder(g.q1, n, LadderKind::create) *
          jw_ladder(g.q0, n, LadderKind::annihilate);
      gen -= jw_ladder(g.q0, n, LadderKind::create) *
             jw_ladder(g.q1, n, LadderKind::annihilate);
      return (th * dense::of_sum(gen)).exp();
    }
  }
  throw std::logic_error("unreachable");
}

Gate random_gate(int n, std::mt19937& mt) {
  std::uniform_int_distribution<int> kind_pick(0, 9);
  std::uniform_int_distribution<int> qubit_pick(0, n - 1);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  Gate g;
  g.kind = static_cast<GateKind>(kind_pick(mt));
  g.q0 = qubit_pick(mt);
  g.theta = angle(mt);
  if (hubcd::is_two_qubit_kind(g.kind)) {
    do {
      g.q1 = qubit_pick(mt);
    } while (g.q1 == g.q0);
    if (g.kind == GateKind::Givens && g.q0 > g.q1) std::swap(g.q0, g.q1);
  }
  if (g.kind == GateKind::ExpPauli) {
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    do {
      g.px = mt() & mask;
      g.pz = mt() & mask;
    } while ((g.px | g.pz) == 0);
    g.q0 = -1;
    g.q1 = -1;
  }
  return g;
}

}  // namespace

TEST_CASE("zero state and bitstrings") {
  StateVector s = StateVector::zero_state(3);
  REQUIRE(s.dim() == 8);
  REQUIRE(s.amps[0] == cplx{1, 0});
  REQUIRE(s.norm_sq() == Catch::Approx(1.0).margin(1e-15));
  REQUIRE(hubcd::bitstring_of(0, 3) == "000");
  REQUIRE(hubcd::bitstring_of(1, 3) == "100");  // qubit 0 is character 0
  REQUIRE(hubcd::bitstring_of(6, 3) == "011");
  REQUIRE_THROWS_AS(StateVector::zero_state(0), std::invalid_argument);
}

TEST_CASE("every gate kind matches its dense unitary on random states") {
  std::mt19937 mt(2024);
  const int n = 5;
  for (int trial = 0; trial < 300; ++trial) {
    const Gate g = random_gate(n, mt);
    const dense::Vec v = dense::random_state(n, mt);
    StateVector s = from_vec(v, n);
    hubcd::apply_gate(s, g);
    const dense::Vec want = gate_unitary(g, n, {}) * v;
    INFO("kind=" << static_cast<int>(g.kind) << " q0=" << g.q0
                 << " q1=" << g.q1);
    REQUIRE(max_diff(s, want) < 1e-12);
  }
}

TEST_CASE("inverse application undoes every gate kind") {
  std::mt19937 mt(77);
  const int n = 5;
  for (int trial = 0; trial < 200; ++trial) {
    const Gate g = random_gate(n, mt);
    const dense::Vec v = dense::random_state(n, mt);
    StateVector s = from_vec(v, n);
    hubcd::apply_gate(s, g);
    hubcd::apply_gate(s, g, {}, true);
    REQUIRE(max_diff(s, v) < 1e-12);
  }
}

TEST_CASE("sqrt-iswap squares to iswap and fswap signs the doublon") {
  // Two applications on |01> give i|10>.
  StateVector s = StateVector::zero_state(2);
  s.amps.assign(4, cplx{0, 0});
  s.amps[2] = cplx{1, 0};  // qubit 1 set
  Circuit c(2);
  c.sqrt_iswap(0, 1);
  c.sqrt_iswap(0, 1);
  s = hubcd::run(c, {}, s);
  REQUIRE(std::abs(s.amps[1] - cplx{0, 1}) < 1e-14);
  REQUIRE(std::abs(s.amps[2]) < 1e-14);

  StateVector d = StateVector::zero_state(2);
  d.amps.assign(4, cplx{0, 0});
  d.amps[3] = cplx{1, 0};
  Gate fs;
  fs.kind = GateKind::FSWAP;
  fs.q0 = 0;
  fs.q1 = 1;
  hubcd::apply_gate(d, fs);
  REQUIRE(std::abs(d.amps[3] + cplx{1, 0}) < 1e-14);
  hubcd::apply_gate(d, fs);  // self-inverse
  REQUIRE(std::abs(d.amps[3] - cplx{1, 0}) < 1e-14);
}

TEST_CASE("hop basis change diagonalizes the two-qubit hop term") {
  // B (XX + YY)/2 B = diag(0, +1, -1, 0) and B is self-inverse.
  const dense::Mat b = hop_basis4();
  REQUIRE(dense::max_abs_diff(b * b, dense::Mat::Identity(4, 4)) < 1e-14);
  hubcd::PauliSum hop(2);
  hop.add(hubcd::PauliString::from_letters(2, "X0 X1", cplx{0.5, 0}));
  hop.add(hubcd::PauliString::from_letters(2, "Y0 Y1", cplx{0.5, 0}));
  // embed2 on (q0=1, q1=0): local basis (b1, b0) so that "qubit 0 is the
  // low local bit" matches the kron layout of of_sum.
  const dense::Mat hd = dense::of_sum(hop);
  const dense::Mat conj = dense::embed2(b, 1, 0, 2) * hd *
                          dense::embed2(b, 1, 0, 2);
  dense::Mat want = dense::Mat::Zero(4, 4);
  want(1, 1) = 1;
  want(2, 2) = -1;
  REQUIRE(dense::max_abs_diff(conj, want) < 1e-13);
}

TEST_CASE("exp-pauli matches matrix exponential across random strings") {
  std::mt19937 mt(11);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(mt() % 3);  // 2..4 qubits
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    Gate g;
    g.kind = GateKind::ExpPauli;
    do {
      g.px = mt() & mask;
      g.pz = mt() & mask;
    } while ((g.px | g.pz) == 0);
    g.theta = angle(mt);
    const dense::Vec v = dense::random_state(n, mt);
    StateVector s = from_vec(v, n);
    hubcd::apply_gate(s, g);
    REQUIRE(max_diff(s, gate_unitary(g, n, {}) * v) < 1e-12);
  }
}

TEST_CASE("givens rotation carries the interior parity string") {
  // Non-adjacent rotations pick up a sign from occupied interior modes.
  std::mt19937 mt(5);
  for (auto [qa, qb] : {std::pair{0, 1}, {0, 2}, {0, 3}, {1, 3}, {0, 4}}) {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 5;
      Gate g;
      g.kind = GateKind::Givens;
      g.q0 = qa;
      g.q1 = qb;
      g.theta = 0.37 + 0.1 * trial;
      const dense::Vec v = dense::random_state(n, mt);
      StateVector s = from_vec(v, n);
      hubcd::apply_gate(s, g);
      REQUIRE(max_diff(s, gate_unitary(g, n, {}) * v) < 1e-12);
    }
  }
}

TEST_CASE("parameter slots bind scale times params") {
  Circuit c(2);
  c.exp_pauli_slot(0b11, 0, 3, -0.25);
  REQUIRE(c.n_params == 4);
  std::vector<double> params{0, 0, 0, 1.2};
  StateVector a = StateVector::zero_state(2);
  a = hubcd::run(c, params, a);

  Circuit fixed(2);
  fixed.exp_pauli(0b11, 0, -0.3);
  StateVector b = StateVector::zero_state(2);
  b = hubcd::run(fixed, {}, b);
  for (std::size_t i = 0; i < a.dim(); ++i)
    REQUIRE(std::abs(a.amps[i] - b.amps[i]) < 1e-15);

  StateVector z = StateVector::zero_state(2);
  REQUIRE_THROWS_AS(hubcd::run(c, {0.0}, z), std::invalid_argument);
}

TEST_CASE("circuit validates targets and patterns") {
  Circuit c(3);
  REQUIRE_THROWS_AS(c.h(3), std::out_of_range);
  REQUIRE_THROWS_AS(c.cnot(1, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(c.givens(2, 1, 0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(c.exp_pauli(0, 0, 0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(c.exp_pauli(0b1000, 0, 0.1), std::out_of_range);
}

TEST_CASE("touched qubits follow gate support") {
  Gate h;
  h.kind = GateKind::H;
  h.q0 = 2;
  REQUIRE(hubcd::touched_qubits(h) == std::vector<int>{2});

  Gate cx;
  cx.kind = GateKind::CNOT;
  cx.q0 = 3;
  cx.q1 = 1;
  REQUIRE(hubcd::touched_qubits(cx) == std::vector<int>{1, 3});

  Gate ep;
  ep.kind = GateKind::ExpPauli;
  ep.px = 0b101;
  ep.pz = 0b010;
  REQUIRE(hubcd::touched_qubits(ep) == std::vector<int>{0, 1, 2});

  Gate gv;
  gv.kind = GateKind::Givens;
  gv.q0 = 1;
  gv.q1 = 4;
  REQUIRE(hubcd::touched_qubits(gv) == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("long random circuits preserve the norm") {
  std::mt19937 mt(99);
  const int n = 8;
  dense::Vec v = dense::random_state(n, mt);
  StateVector s = from_vec(v, n);
  for (int i = 0; i < 10000; ++i) hubcd::apply_gate(s, random_gate(n, mt));
  REQUIRE(std::abs(s.norm_sq() - 1.0) < 1e-10);
}

TEST_CASE("noiseless run composes gate unitaries in order") {
  std::mt19937 mt(42);
  const int n = 4;
  Circuit c(n);
  c.h(0);
  c.cnot(0, 2);
  c.rx(1, 0.7);
  c.givens(1, 3, 0.4);
  c.exp_pauli(0b1010, 0b0110, -0.9);
  c.rz(3, 1.1);
  const dense::Vec v = dense::random_state(n, mt);
  dense::Mat u = dense::Mat::Identity(16, 16);
  for (const Gate& g : c.gates) u = gate_unitary(g, n, {}) * u;
  StateVector s = from_vec(v, n);
  s = hubcd::run(c, {}, s);
  REQUIRE(max_diff(s, u * v) < 1e-12);

  // Empty circuit is the identity.
  Circuit empty(n);
  StateVector e = from_vec(v, n);
  e = hubcd::run(empty, {}, e);
  REQUIRE(max_diff(e, v) < 1e-15);
}

TEST_CASE("zero noise probability reproduces the noiseless state exactly") {
  std::mt19937 mt(13);
  const int n = 4;
  Circuit c(n);
  c.h(0);
  c.givens(0, 3, 0.8);
  c.exp_pauli(0b0110, 0b0011, 0.5);
  StateVector base = StateVector::zero_state(n);
  const StateVector clean = hubcd::run(c, {}, base);
  for (NoiseChannel ch : {NoiseChannel::bit_flip, NoiseChannel::phase_flip,
                          NoiseChannel::amplitude_damping}) {
    NoiseModel nm{ch, 0.0};
    Rng rng(555);
    const StateVector s = hubcd::run(c, {}, base, nm, rng);
    for (std::size_t i = 0; i < s.dim(); ++i)
      REQUIRE(s.amps[i] == clean.amps[i]);  // bit-identical
  }
}

TEST_CASE("unit probability channels act deterministically") {
  // bit_flip at p=1 flips the touched qubit after every gate.
  Circuit c(2);
  c.x(0);
  NoiseModel flip{NoiseChannel::bit_flip, 1.0};
  Rng r1(1);
  StateVector s = hubcd::run(c, {}, StateVector::zero_state(2), flip, r1);
  REQUIRE(std::abs(s.amps[0] - cplx{1, 0}) < 1e-14);

  // amplitude_damping at p=1 forces every touched qubit to |0>.
  Circuit c2(3);
  c2.h(0);
  c2.cnot(0, 1);
  c2.rx(2, 2.2);
  NoiseModel damp{NoiseChannel::amplitude_damping, 1.0};
  Rng r2(2);
  StateVector t = hubcd::run(c2, {}, StateVector::zero_state(3), damp, r2);
  // Up to a trajectory-dependent global phase the result is |000>.
  REQUIRE(std::abs(std::abs(t.amps[0]) - 1.0) < 1e-12);
  for (std::size_t i = 1; i < t.dim(); ++i)
    REQUIRE(std::abs(t.amps[i]) < 1e-12);
}

TEST_CASE("trajectory average converges to the Kraus channel") {
  // Reference: exact density-matrix propagation with one single-qubit
  // channel application per touched qubit after each gate.
  const int n = 2;
  Circuit c(n);
  c.h(0);
  c.sqrt_iswap(0, 1);
  c.rx(1, 0.9);
  const double p = 0.3;

  auto kraus_ops = [&](NoiseChannel ch) {
    std::vector<dense::Mat> ks;
    dense::Mat k0(2, 2), k1(2, 2);
    switch (ch) {
      case NoiseChannel::bit_flip:
        ks.push_back(std::sqrt(1 - p) * dense::letter('I'));
        ks.push_back(std::sqrt(p) * dense::letter('X'));
        break;
      case NoiseChannel::phase_flip:
        ks.push_back(std::sqrt(1 - p) * dense::letter('I'));
        ks.push_back(std::sqrt(p) * dense::letter('Z'));
        break;
      case NoiseChannel::amplitude_damping:
        k0 << 1, 0, 0, std::sqrt(1 - p);
        k1 << 0, std::sqrt(p), 0, 0;
        ks.push_back(k0);
        ks.push_back(k1);
        break;
      case NoiseChannel::none:
        break;
    }
    return ks;
  };

  for (NoiseChannel ch : {NoiseChannel::bit_flip, NoiseChannel::phase_flip,
                          NoiseChannel::amplitude_damping}) {
    dense::Mat rho = dense::Mat::Zero(4, 4);
    rho(0, 0) = 1;
    for (const Gate& g : c.gates) {
      const dense::Mat u = gate_unitary(g, n, {});
      rho = u * rho * u.adjoint();
      for (int q : hubcd::touched_qubits(g)) {
        dense::Mat next = dense::Mat::Zero(4, 4);
        for (const dense::Mat& k : kraus_ops(ch)) {
          const dense::Mat ke = dense::embed1(k, q, n);
          next += ke * rho * ke.adjoint();
        }
        rho = next;
      }
    }

    const int n_traj = 4000;
    dense::Mat avg = dense::Mat::Zero(4, 4);
    NoiseModel nm{ch, p};
    for (int t = 0; t < n_traj; ++t) {
      Rng rng = Rng::stream(909, static_cast<std::uint64_t>(t));
      const StateVector s =
          hubcd::run(c, {}, StateVector::zero_state(n), nm, rng);
      const dense::Vec v = dense::from_amplitudes(s.amps);
      avg += v * v.adjoint();
    }
    avg /= n_traj;
    // Element-wise Monte Carlo error is below ~1/sqrt(n_traj); 5 sigma.
    INFO("channel " << hubcd::noise_channel_name(ch));
    REQUIRE(dense::max_abs_diff(avg, rho) < 5.0 / std::sqrt(double(n_traj)));
  }
}

TEST_CASE("sampling is deterministic, complete, and unbiased") {
  // Deterministic per seed, counts sum to shots.
  Circuit c(2);
  c.h(0);
  StateVector s = hubcd::run(c, {}, StateVector::zero_state(2));
  auto counts1 = hubcd::sample(s, 100000, 321);
  auto counts2 = hubcd::sample(s, 100000, 321);
  REQUIRE(counts1 == counts2);
  std::int64_t total = 0;
  for (const auto& [k, v] : counts1) total += v;
  REQUIRE(total == 100000);
  REQUIRE(counts1.size() == 2);
  REQUIRE(counts1.at("00") > 48500);
  REQUIRE(counts1.at("10") > 48500);  // qubit 0 is character 0

  // A basis state samples to a single outcome.
  StateVector basis = StateVector::zero_state(2);
  basis.amps.assign(4, cplx{0, 0});
  basis.amps[1] = cplx{1, 0};
  auto counts3 = hubcd::sample(basis, 500, 9);
  REQUIRE(counts3.size() == 1);
  REQUIRE(counts3.at("10") == 500);

  REQUIRE_THROWS_AS(hubcd::sample(basis, 0, 1), std::invalid_argument);
}
