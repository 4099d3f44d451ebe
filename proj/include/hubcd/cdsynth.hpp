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

// Variational counterdiabatic driving. The gauge potential is expanded in
// odd nested commutators O_k of the instantaneous Hamiltonian with its
// lambda derivative; the coefficients minimize the Frobenius action of
// G(alpha) = dH - sum_k alpha_k i[H, O_k].

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hubcd/lattice.hpp"
#include "hubcd/pauli.hpp"

namespace hubcd {

// O_k = i * (2k-1)-fold nested commutator of h with dlam_h:
// O_1 = i[h, d], O_2 = i[h,[h,[h, d]]], ...
inline std::vector<PauliSum> nested_odd_commutators(const PauliSum& h,
                                                    const PauliSum& dlam_h,
                                                    int order) {
  if (order < 1) throw std::invalid_argument("nested_odd_commutators: order");
  std::vector<PauliSum> out;
  out.reserve(order);
  PauliSum a = dlam_h;  // running nesting depth 2k-2 on loop entry
  for (int k = 1; k <= order; ++k) {
    a = commutator(h, a);              // depth 2k-1
    out.push_back(cplx{0, 1} * a);
    if (k < order) a = commutator(h, a);  // depth 2k for the next round
  }
  return out;
}

struct CdExpansion {
  std::vector<PauliSum> o_ops;  // expansion operators O_k
  std::vector<PauliSum> c_ops;  // C_k = i[h, O_k]
  Eigen::MatrixXd gram;         // gram_{kj} = <C_k, C_j>
  Eigen::VectorXd rhs;          // rhs_k = <dlam_h, C_k>
  std::vector<double> alpha;
  bool degenerate = false;

  PauliSum gauge_potential() const {
    if (o_ops.empty()) throw std::logic_error("CdExpansion: empty");
    PauliSum a(o_ops.front().n_qubits());
    for (std::size_t k = 0; k < o_ops.size(); ++k)
      a += cplx{alpha[k], 0} * o_ops[k];
    return a;
  }

  // Frobenius action of the residual at the given coefficients. The solved
  // alpha is its global minimum, so action(alpha) <= action(zeros).
  double action(const std::vector<double>& at, const PauliSum& dlam_h) const {
    PauliSum g = dlam_h;
    for (std::size_t k = 0; k < c_ops.size(); ++k)
      g -= cplx{at[k], 0} * c_ops[k];
    return trace_product(g, g).real();
  }
};

// Least-squares coefficients for the gauge-potential expansion at one value
// of the schedule parameter (h must already be evaluated there). A rank
// deficient Gram matrix marks the expansion degenerate; the minimum-norm
// solution is used, which collapses to alpha = 0 when no commutator
// direction overlaps the derivative.
inline CdExpansion solve_alpha(const PauliSum& h, const PauliSum& dlam_h,
                               int order = 1) {
  CdExpansion ex;
  ex.o_ops = nested_odd_commutators(h, dlam_h, order);
  ex.c_ops.reserve(order);
  for (const PauliSum& o : ex.o_ops)
    ex.c_ops.push_back(cplx{0, 1} * commutator(h, o));

  ex.gram.resize(order, order);
  ex.rhs.resize(order);
  for (int k = 0; k < order; ++k) {
    ex.rhs(k) = trace_product(dlam_h, ex.c_ops[k]).real();
    for (int j = 0; j <= k; ++j) {
      const double g = trace_product(ex.c_ops[k], ex.c_ops[j]).real();
      ex.gram(k, j) = g;
      ex.gram(j, k) = g;
    }
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(ex.gram);
  cod.setThreshold(1e-12);
  ex.degenerate = cod.rank() < order;
  const Eigen::VectorXd sol = cod.solve(ex.rhs);
  ex.alpha.assign(order, 0.0);
  for (int k = 0; k < order; ++k)
    ex.alpha[k] = std::isfinite(sol(k)) ? sol(k) : 0.0;
  return ex;
}

// Pool of two-body generators inspired by the leading commutator structure:
// one X_p Y_q - Y_p X_q pair per horizontal edge and spin species. These are
// exactly the identity-free doublon contributions to O_1, with the interior
// parity Z cancelled. Order: lattice edge order, spin up before down; size
// is 2 * n_sites - 4 on the supported lattices.
inline std::vector<PauliSum> cd_pool(const HoneycombLattice& lat) {
  std::vector<PauliSum> pool;
  const int n = lat.qubit_count();
  for (const Edge& e : lat.edges) {
    if (e.orientation != Orientation::horizontal) continue;
    for (int s = 0; s < 2; ++s) {
      const int p = 2 * e.a + s, q = 2 * e.b + s;
      PauliSum g(n);
      PauliString xy = PauliString::identity(n);
      xy.x = (std::uint64_t{1} << p) | (std::uint64_t{1} << q);
      xy.z = std::uint64_t{1} << q;
      xy.coeff = cplx{1, 0};
      PauliString yx = xy;
      yx.z = std::uint64_t{1} << p;
      yx.coeff = cplx{-1, 0};
      g.add(xy);
      g.add(yx);
      pool.push_back(std::move(g));
    }
  }
  return pool;
}

}  // namespace hubcd
