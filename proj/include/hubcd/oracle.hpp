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

// Exact ground states in a fixed particle-number sector. The Hamiltonian
// action is derived directly from fermionic ladder-operator algebra on
// occupation words, independently of the Pauli-operator pipeline, so the
// two routes cross-check each other.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hubcd/lattice.hpp"
#include "hubcd/pauli.hpp"
#include "hubcd/rng.hpp"
#include "hubcd/statevec.hpp"

namespace hubcd {

namespace detail {

inline const std::uint64_t* binomial_row(int n) {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 40>, 40> c{};
    for (int i = 0; i < 40; ++i) {
      c[i][0] = 1;
      for (int j = 1; j <= i; ++j)
        c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
    }
    return c;
  }();
  return table[n].data();
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return binomial_row(n)[k];
}

// All n-bit words with k bits set, in increasing numeric (colex) order.
inline std::vector<std::uint64_t> combinations(int n, int k) {
  std::vector<std::uint64_t> out;
  out.reserve(binomial(n, k));
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t v = (std::uint64_t{1} << k) - 1;
  while (v < limit) {
    out.push_back(v);
    const std::uint64_t u = v & (~v + 1);
    const std::uint64_t w = v + u;
    if (w >= limit) break;
    v = w | (((v ^ w) / u) >> 2);
  }
  return out;
}

// Colex rank of a k-subset given as a bitmask.
inline std::uint64_t colex_rank(std::uint64_t mask) {
  std::uint64_t rank = 0;
  int k = 0;
  while (mask) {
    const int p = std::countr_zero(mask);
    ++k;
    rank += binomial(p, k);
    mask &= mask - 1;
  }
  return rank;
}

}  // namespace detail

// Occupation basis of the (n_up, n_dn) sector. Site i's up mode is qubit 2i
// and its down mode is qubit 2i+1; basis words interleave both spins. Order
// is up-major: all down configurations of the first up configuration, then
// the next up configuration, matching rank().
struct SectorBasis {
  int n_sites = 0;
  int n_up = 0;
  int n_dn = 0;
  std::vector<std::uint64_t> states;

  static SectorBasis build(int n_sites, int n_up, int n_dn) {
    if (n_sites < 1 || n_sites > 32)
      throw std::invalid_argument("SectorBasis: n_sites out of range");
    if (n_up < 0 || n_up > n_sites || n_dn < 0 || n_dn > n_sites)
      throw std::invalid_argument("SectorBasis: bad particle numbers");
    SectorBasis b;
    b.n_sites = n_sites;
    b.n_up = n_up;
    b.n_dn = n_dn;
    const auto ups = detail::combinations(n_sites, n_up);
    const auto dns = detail::combinations(n_sites, n_dn);
    b.states.reserve(ups.size() * dns.size());
    for (std::uint64_t u : ups)
      for (std::uint64_t d : dns) b.states.push_back(interleave(u, d));
    return b;
  }

  std::size_t dim() const { return states.size(); }

  static std::uint64_t interleave(std::uint64_t up, std::uint64_t dn) {
    std::uint64_t w = 0;
    while (up | dn) {
      const int s = std::countr_zero(up | dn);
      if ((up >> s) & 1) w |= std::uint64_t{1} << (2 * s);
      if ((dn >> s) & 1) w |= std::uint64_t{1} << (2 * s + 1);
      up &= ~(std::uint64_t{1} << s);
      dn &= ~(std::uint64_t{1} << s);
    }
    return w;
  }

  std::uint64_t up_part(std::uint64_t word) const {
    std::uint64_t u = 0;
    for (int i = 0; i < n_sites; ++i)
      if ((word >> (2 * i)) & 1) u |= std::uint64_t{1} << i;
    return u;
  }

  std::uint64_t dn_part(std::uint64_t word) const {
    std::uint64_t d = 0;
    for (int i = 0; i < n_sites; ++i)
      if ((word >> (2 * i + 1)) & 1) d |= std::uint64_t{1} << i;
    return d;
  }

  std::size_t rank(std::uint64_t word) const {
    const std::uint64_t ru = detail::colex_rank(up_part(word));
    const std::uint64_t rd = detail::colex_rank(dn_part(word));
    return ru * detail::binomial(n_sites, n_dn) + rd;
  }
};

// Sector-restricted Fermi-Hubbard action with precomputed sparse structure.
// Hopping matrix elements carry the Jordan-Wigner parity of all occupied
// modes strictly between the two mode indices.
class SectorHamiltonian {
 public:
  SectorHamiltonian(const SectorBasis& basis,
                    const std::vector<std::array<int, 2>>& site_edges,
                    double tau, double u)
      : basis_(basis), tau_(tau), u_(u) {
    if (tau <= 0) throw std::invalid_argument("SectorHamiltonian: tau <= 0");
    const std::size_t dim = basis_.dim();
    diag_.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const std::uint64_t w = basis_.states[i];
      diag_[i] =
          u_ * std::popcount(basis_.up_part(w) & basis_.dn_part(w));
    }

    struct Hop {
      std::uint64_t flip;
      std::uint64_t interior;
    };
    std::vector<Hop> hops;
    for (const auto& e : site_edges) {
      const int a = std::min(e[0], e[1]), b = std::max(e[0], e[1]);
      if (a < 0 || b >= basis_.n_sites || a == b)
        throw std::invalid_argument("SectorHamiltonian: bad edge");
      for (int s = 0; s < 2; ++s) {
        const int p = 2 * a + s, q = 2 * b + s;
        const std::uint64_t bp = std::uint64_t{1} << p;
        const std::uint64_t bq = std::uint64_t{1} << q;
        hops.push_back(Hop{bp | bq, (bq - 1) & ~(2 * bp - 1)});
      }
    }

    offsets_.assign(dim + 1, 0);
    std::vector<std::uint32_t> tgt;
    std::vector<std::int8_t> sgn;
    tgt.reserve(dim * hops.size() / 2);
    sgn.reserve(dim * hops.size() / 2);
    for (std::size_t i = 0; i < dim; ++i) {
      const std::uint64_t w = basis_.states[i];
      for (const Hop& h : hops) {
        const std::uint64_t occ = w & h.flip;
        if (occ == 0 || occ == h.flip) continue;
        const std::uint64_t w2 = w ^ h.flip;
        const int par = std::popcount(w & h.interior) & 1;
        tgt.push_back(static_cast<std::uint32_t>(basis_.rank(w2)));
        sgn.push_back(par ? -1 : 1);
      }
      offsets_[i + 1] = tgt.size();
    }
    targets_ = std::move(tgt);
    signs_ = std::move(sgn);
  }

  const SectorBasis& basis() const { return basis_; }
  std::size_t dim() const { return basis_.dim(); }

  // out = H in
  void apply(const std::vector<double>& in, std::vector<double>& out) const {
    const std::size_t dim = basis_.dim();
    if (in.size() != dim) throw std::invalid_argument("apply: bad size");
    out.assign(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      out[i] += diag_[i] * in[i];
      const double amp = in[i];
      for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k)
        out[targets_[k]] += -tau_ * signs_[k] * amp;
    }
  }

  // Dense sector matrix, for small dimensions and cross-checks.
  Eigen::MatrixXd dense() const {
    const std::size_t dim = basis_.dim();
    if (dim > 5000)
      throw std::length_error("SectorHamiltonian::dense: sector too large");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<double> in(dim, 0.0), out;
    for (std::size_t j = 0; j < dim; ++j) {
      in[j] = 1.0;
      apply(in, out);
      for (std::size_t i = 0; i < dim; ++i) m(i, j) = out[i];
      in[j] = 0.0;
    }
    return m;
  }

 private:
  SectorBasis basis_;
  double tau_;
  double u_;
  std::vector<double> diag_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> targets_;
  std::vector<std::int8_t> signs_;
};

struct LanczosOptions {
  int max_vecs = 200;
  int max_restarts = 80;
  double tol = 1e-8;
  std::uint64_t seed = 987654321;
};

struct LanczosResult {
  double energy = 0;
  std::vector<double> vec;
  double residual = 0;
  int matvecs = 0;
  bool converged = false;
};

// Restarted Lanczos with full reorthogonalization for the lowest eigenpair
// of a real symmetric operator. Restart keeps the current Ritz vector. The
// basis size is capped by available memory at large dimensions.
template <typename ApplyFn>
LanczosResult lanczos_lowest(std::size_t dim, ApplyFn&& apply,
                             LanczosOptions opt = {}) {
  if (dim == 0) throw std::invalid_argument("lanczos_lowest: empty space");
  // Keep the stored basis under ~1.2 GB of doubles; the Krylov space also
  // cannot usefully exceed the problem dimension.
  const int mem_cap = static_cast<int>(
      std::max<std::size_t>(8, (std::size_t{150'000'000} / (dim + 1))));
  const int m_max = std::min({opt.max_vecs, std::max(2, mem_cap),
                              static_cast<int>(std::min<std::size_t>(
                                  dim, std::size_t{100000}))});

  LanczosResult res;
  std::vector<double> v0(dim);
  Rng rng(opt.seed);
  for (double& x : v0) x = rng.uniform() - 0.5;
  double nrm = 0;
  for (double x : v0) nrm += x * x;
  nrm = std::sqrt(nrm);
  for (double& x : v0) x /= nrm;

  std::vector<std::vector<double>> V;
  std::vector<double> w(dim), alpha, beta;

  auto dot = [dim](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < dim; ++i) s += a[i] * b[i];
    return s;
  };

  for (int restart = 0; restart < opt.max_restarts; ++restart) {
    V.clear();
    alpha.clear();
    beta.clear();
    V.push_back(v0);
    bool happy = false;
    for (int k = 0; k < m_max; ++k) {
      apply(V[k], w);
      ++res.matvecs;
      alpha.push_back(dot(w, V[k]));
      // Two-pass full reorthogonalization against every stored vector; this
      // subsumes the explicit alpha/beta recurrence subtraction.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& vj : V) {
          const double c = dot(w, vj);
          for (std::size_t i = 0; i < dim; ++i) w[i] -= c * vj[i];
        }
      double b = std::sqrt(dot(w, w));
      if (b < 1e-13) {
        happy = true;
        break;
      }
      beta.push_back(b);
      if (k + 1 < m_max) {
        std::vector<double> next(dim);
        for (std::size_t i = 0; i < dim; ++i) next[i] = w[i] / b;
        V.push_back(std::move(next));
      }
      // Periodic early exit: the Ritz residual of the current tridiagonal
      // is cheap compared to a matvec.
      if ((k + 1) % 8 == 0 && k + 1 >= 4) {
        const int mk = k + 1;
        Eigen::MatrixXd Tk = Eigen::MatrixXd::Zero(mk, mk);
        for (int i = 0; i < mk; ++i) {
          Tk(i, i) = alpha[i];
          if (i + 1 < mk) Tk(i, i + 1) = Tk(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esk(Tk);
        if (std::abs(beta[mk - 1] * esk.eigenvectors().col(0)(mk - 1)) <
            opt.tol)
          break;
      }
    }

    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::VectorXd s = es.eigenvectors().col(0);
    res.energy = es.eigenvalues()(0);
    const double beta_tail =
        (static_cast<int>(beta.size()) >= m && m > 0) ? beta[m - 1] : 0.0;
    res.residual = happy ? 0.0 : std::abs(beta_tail * s(m - 1));

    std::vector<double> x(dim, 0.0);
    for (int k = 0; k < m; ++k) {
      const double c = s(k);
      const auto& vk = V[k];
      for (std::size_t i = 0; i < dim; ++i) x[i] += c * vk[i];
    }
    double xn = 0;
    for (double xi : x) xn += xi * xi;
    xn = std::sqrt(xn);
    for (double& xi : x) xi /= xn;

    if (happy || res.residual < opt.tol) {
      res.vec = std::move(x);
      res.converged = true;
      return res;
    }
    v0 = std::move(x);
  }
  res.vec = std::move(v0);
  return res;
}

inline LanczosResult sector_ground_state(const SectorHamiltonian& h,
                                         LanczosOptions opt = {}) {
  return lanczos_lowest(
      h.dim(),
      [&h](const std::vector<double>& in, std::vector<double>& out) {
        h.apply(in, out);
      },
      opt);
}

// Convenience: ground energy at half filling for a lattice. Half filling
// puts ceil(n/2) up and floor(n/2) down fermions.
inline std::array<int, 2> half_filling(int n_sites) {
  return {(n_sites + 1) / 2, n_sites / 2};
}

inline std::vector<std::array<int, 2>> site_edge_list(
    const HoneycombLattice& lat) {
  std::vector<std::array<int, 2>> out;
  out.reserve(lat.edges.size());
  for (const Edge& e : lat.edges) out.push_back({e.a, e.b});
  return out;
}

// Dense ground energy of an arbitrary Pauli operator (dimension-guarded).
// Falls to a real-symmetric solve when every entry is real, which all the
// local operators here are.
inline double ground_energy_dense(const PauliSum& h) {
  if (h.n_qubits() > 12)
    throw std::length_error("ground_energy_dense: too many qubits");
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  Eigen::MatrixXd mr;
  Eigen::MatrixXcd mc;
  bool real_matrix = true;
  {
    const auto raw = to_dense(h);
    double max_abs = 0, max_imag = 0;
    for (const cplx& v : raw) {
      max_abs = std::max(max_abs, std::abs(v));
      max_imag = std::max(max_imag, std::abs(v.imag()));
    }
    real_matrix = max_imag <= 1e-12 * (1.0 + max_abs);
    if (real_matrix) {
      mr.resize(dim, dim);
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) mr(r, c) = raw[r * dim + c].real();
    } else {
      mc.resize(dim, dim);
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) mc(r, c) = raw[r * dim + c];
    }
  }
  if (real_matrix) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mr,
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mc, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Embeds a sector eigenvector into the full 2^(2 n_sites) state vector.
inline StateVector embed_sector_vector(const SectorBasis& basis,
                                       const std::vector<double>& vec) {
  if (vec.size() != basis.dim())
    throw std::invalid_argument("embed_sector_vector: size mismatch");
  StateVector s = StateVector::zero_state(2 * basis.n_sites);
  s.amps[0] = cplx{0, 0};
  for (std::size_t i = 0; i < basis.dim(); ++i)
    s.amps[basis.states[i]] = cplx{vec[i], 0};
  return s;
}

// Weight of the state outside the (n_up, n_dn) sector.
inline double sector_leakage(const StateVector& s, int n_sites, int n_up,
                             int n_dn) {
  if (s.n_qubits != 2 * n_sites)
    throw std::invalid_argument("sector_leakage: qubit count mismatch");
  double out = 0;
  const std::uint64_t even = 0x5555555555555555ULL;
  for (std::size_t w = 0; w < s.dim(); ++w) {
    const int up = std::popcount(w & even);
    const int dn = std::popcount(w & (even << 1));
    if (up != n_up || dn != n_dn) out += std::norm(s.amps[w]);
  }
  return out;
}

}  // namespace hubcd
