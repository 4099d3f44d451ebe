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
#include <complex>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hubcd {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 64;
inline constexpr double kPruneTol = 1e-12;

// Powers of the imaginary unit, i^e for e in 0..3.
inline cplx i_power(int e) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[e & 3];
}

// One Pauli string c * P_0 P_1 ... P_{n-1} in the symplectic (x, z)
// representation: per qubit, (x,z) = (0,0) -> I, (1,0) -> X, (1,1) -> Y,
// (0,1) -> Z. The letter pattern is canonical (each letter Hermitian); all
// phase information lives in the coefficient.
struct PauliString {
  int n_qubits = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  cplx coeff{1.0, 0.0};

  PauliString() = default;

  PauliString(int n, std::uint64_t x_bits, std::uint64_t z_bits, cplx c)
      : n_qubits(n), x(x_bits), z(z_bits), coeff(c) {
    if (n < 1 || n > kMaxQubits)
      throw std::invalid_argument("PauliString: n_qubits must be in [1, 64]");
    const std::uint64_t mask =
        (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    if ((x & ~mask) || (z & ~mask))
      throw std::out_of_range("PauliString: letter index exceeds n_qubits");
  }

  static PauliString identity(int n, cplx c = cplx{1.0, 0.0}) {
    return PauliString(n, 0, 0, c);
  }

  // Parses letter specs like "X0 Z1 Y4"; each qubit may appear at most once.
  static PauliString from_letters(int n, const std::string& spec,
                                  cplx c = cplx{1.0, 0.0}) {
    std::uint64_t xb = 0, zb = 0, seen = 0;
    std::istringstream in(spec);
    std::string tok;
    while (in >> tok) {
      if (tok.size() < 2)
        throw std::invalid_argument("PauliString: bad letter token '" + tok + "'");
      const char letter = tok[0];
      const int q = std::stoi(tok.substr(1));
      if (q < 0 || q >= n)
        throw std::out_of_range("PauliString: qubit index out of range");
      const std::uint64_t bit = std::uint64_t{1} << q;
      if (seen & bit)
        throw std::invalid_argument("PauliString: duplicate qubit in spec");
      seen |= bit;
      switch (letter) {
        case 'I': break;
        case 'X': xb |= bit; break;
        case 'Y': xb |= bit; zb |= bit; break;
        case 'Z': zb |= bit; break;
        default:
          throw std::invalid_argument("PauliString: unknown letter in spec");
      }
    }
    return PauliString(n, xb, zb, c);
  }

  char letter(int q) const {
    const bool xb = (x >> q) & 1, zb = (z >> q) & 1;
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }

  int weight() const { return std::popcount(x | z); }
};

// Phase exponent e such that P(x1,z1) * P(x2,z2) = i^e * P(x1^x2, z1^z2).
// Derived from Y = i*XZ and ZX = -XZ reordering.
inline int product_phase_exponent(std::uint64_t x1, std::uint64_t z1,
                                  std::uint64_t x2, std::uint64_t z2) {
  const std::uint64_t xr = x1 ^ x2, zr = z1 ^ z2;
  const int e = std::popcount(x1 & z1) + std::popcount(x2 & z2) -
                std::popcount(xr & zr) + 2 * std::popcount(z1 & x2);
  return ((e % 4) + 4) % 4;
}

inline PauliString operator*(const PauliString& a, const PauliString& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("PauliString multiply: qubit count mismatch");
  const int e = product_phase_exponent(a.x, a.z, b.x, b.z);
  return PauliString(a.n_qubits, a.x ^ b.x, a.z ^ b.z,
                     a.coeff * b.coeff * i_power(e));
}

struct PatternKey {
  std::uint64_t x = 0, z = 0;
  bool operator==(const PatternKey&) const = default;
};

struct PatternHash {
  std::size_t operator()(const PatternKey& k) const noexcept {
    std::uint64_t h = k.x * 0x9E3779B97F4A7C15ull;
    h ^= k.z + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 32;
    return static_cast<std::size_t>(h);
  }
};

// Complex-weighted linear combination of Pauli strings, keyed by letter
// pattern. Coefficients with magnitude <= kPruneTol are removed as they
// appear, so no two terms share a pattern and no dust accumulates.
class PauliSum {
 public:
  using TermMap = std::unordered_map<PatternKey, cplx, PatternHash>;

  PauliSum() = default;

  explicit PauliSum(int n) : n_qubits_(n) {
    if (n < 1 || n > kMaxQubits)
      throw std::invalid_argument("PauliSum: n_qubits must be in [1, 64]");
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  void add(const PauliString& t) {
    adopt(t.n_qubits);
    add_pattern(t.x, t.z, t.coeff);
  }

  void add_pattern(std::uint64_t x, std::uint64_t z, cplx c) {
    const PatternKey key{x, z};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (std::abs(c) > kPruneTol) terms_.emplace(key, c);
      return;
    }
    it->second += c;
    if (std::abs(it->second) <= kPruneTol) terms_.erase(it);
  }

  cplx coeff_of(std::uint64_t x, std::uint64_t z) const {
    auto it = terms_.find(PatternKey{x, z});
    return it == terms_.end() ? cplx{0, 0} : it->second;
  }

  PauliSum& operator+=(const PauliSum& o) {
    if (!o.empty() || o.n_qubits_ > 0) adopt(o.n_qubits_);
    for (const auto& [k, c] : o.terms_) add_pattern(k.x, k.z, c);
    return *this;
  }

  PauliSum& operator-=(const PauliSum& o) {
    if (!o.empty() || o.n_qubits_ > 0) adopt(o.n_qubits_);
    for (const auto& [k, c] : o.terms_) add_pattern(k.x, k.z, -c);
    return *this;
  }

  PauliSum& operator*=(cplx s) {
    if (std::abs(s) <= kPruneTol) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    prune();
    return *this;
  }

  void prune(double tol = kPruneTol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (std::abs(it->second) <= tol)
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  // Terms in canonical (x, z) order; the deterministic iteration order used
  // for circuit construction and golden files.
  std::vector<PauliString> ordered_terms() const {
    std::vector<PauliString> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_)
      out.push_back(PauliString(n_qubits_, k.x, k.z, c));
    std::sort(out.begin(), out.end(),
              [](const PauliString& a, const PauliString& b) {
                return a.x != b.x ? a.x < b.x : a.z < b.z;
              });
    return out;
  }

  // Canonical patterns are Hermitian operators, so the sum is Hermitian
  // exactly when every coefficient is real.
  bool is_hermitian(double tol = kPruneTol) const {
    for (const auto& [k, c] : terms_)
      if (std::abs(c.imag()) > tol) return false;
    return true;
  }

  std::string to_text() const {
    std::string out;
    char buf[96];
    for (const auto& t : ordered_terms()) {
      std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", t.coeff.real(),
                    t.coeff.imag());
      out += buf;
      for (int q = 0; q < n_qubits_; ++q) {
        const char l = t.letter(q);
        if (l == 'I') continue;
        std::snprintf(buf, sizeof buf, " %c%d", l, q);
        out += buf;
      }
      out += '\n';
    }
    return out;
  }

  // Parses the to_text format: one term per line, "(re+imi) X0 Z1"; identity
  // terms are a bare coefficient. n = 0 infers the count from the largest
  // index seen.
  static PauliSum from_text(const std::string& text, int n = 0) {
    struct Raw {
      std::string letters;
      cplx c;
    };
    std::vector<Raw> raws;
    int max_index = -1;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      if (line[first] != '(')
        throw std::invalid_argument("PauliSum: term must start with '('");
      const auto close = line.find(')', first);
      if (close == std::string::npos)
        throw std::invalid_argument("PauliSum: unterminated coefficient");
      const std::string num = line.substr(first + 1, close - first - 1);
      double re = 0, im = 0;
      if (std::sscanf(num.c_str(), "%lf%lf", &re, &im) < 1)
        throw std::invalid_argument("PauliSum: bad coefficient '" + num + "'");
      Raw raw{line.substr(close + 1), cplx{re, im}};
      std::istringstream toks(raw.letters);
      std::string tok;
      while (toks >> tok) {
        if (tok.size() < 2)
          throw std::invalid_argument("PauliSum: bad letter token");
        max_index = std::max(max_index, std::stoi(tok.substr(1)));
      }
      raws.push_back(std::move(raw));
    }
    const int inferred = (n > 0) ? n : std::max(max_index + 1, 1);
    PauliSum out(inferred);
    for (const auto& raw : raws)
      out.add(PauliString::from_letters(inferred, raw.letters, raw.c));
    return out;
  }

 private:
  void adopt(int n) {
    if (n_qubits_ == 0) {
      if (n < 1 || n > kMaxQubits)
        throw std::invalid_argument("PauliSum: n_qubits must be in [1, 64]");
      n_qubits_ = n;
    } else if (n != 0 && n != n_qubits_) {
      throw std::invalid_argument("PauliSum: qubit count mismatch");
    }
  }

  int n_qubits_ = 0;
  TermMap terms_;
};

inline PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
inline PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
inline PauliSum operator*(cplx s, PauliSum a) { return a *= s; }
inline PauliSum operator*(PauliSum a, cplx s) { return a *= s; }

inline void check_same_width(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits() && a.n_qubits() != 0 && b.n_qubits() != 0)
    throw std::invalid_argument("PauliSum: qubit count mismatch");
}

inline PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  check_same_width(a, b);
  PauliSum out(std::max(a.n_qubits(), b.n_qubits()));
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      const int e = product_phase_exponent(ka.x, ka.z, kb.x, kb.z);
      out.add_pattern(ka.x ^ kb.x, ka.z ^ kb.z, ca * cb * i_power(e));
    }
  }
  return out;
}

// ab - ba. Commuting term pairs are skipped; anticommuting pairs contribute
// 2 i^e times the product pattern.
inline PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  check_same_width(a, b);
  PauliSum out(std::max(a.n_qubits(), b.n_qubits()));
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      const int s1 = std::popcount(ka.z & kb.x) & 1;
      const int s2 = std::popcount(kb.z & ka.x) & 1;
      if (s1 == s2) continue;
      const int e = product_phase_exponent(ka.x, ka.z, kb.x, kb.z);
      out.add_pattern(ka.x ^ kb.x, ka.z ^ kb.z, 2.0 * ca * cb * i_power(e));
    }
  }
  return out;
}

// Tr(ab) / 2^n. Distinct patterns are trace-orthogonal and each pattern
// squares to the identity, so this is the sum of coefficient products over
// matching patterns.
inline cplx trace_product(const PauliSum& a, const PauliSum& b) {
  check_same_width(a, b);
  const PauliSum& small = a.size() <= b.size() ? a : b;
  const PauliSum& large = a.size() <= b.size() ? b : a;
  cplx out{0, 0};
  for (const auto& [k, c] : small.terms()) out += c * large.coeff_of(k.x, k.z);
  return out;
}

// Row-major 2^n x 2^n matrix. Column b of pattern (x,z) has its single entry
// at row b^x with value i^popcount(x&z) * (-1)^popcount(z&b).
inline std::vector<cplx> to_dense(const PauliSum& a) {
  const int n = a.n_qubits();
  if (n < 1) throw std::invalid_argument("to_dense: empty operator");
  if (n > 14) throw std::length_error("to_dense: capacity guard (n_qubits > 14)");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<cplx> m(dim * dim, cplx{0, 0});
  for (const auto& [k, c] : a.terms()) {
    const cplx base = c * i_power(std::popcount(k.x & k.z));
    for (std::size_t col = 0; col < dim; ++col) {
      const std::size_t row = col ^ k.x;
      const double sign = (std::popcount(k.z & col) & 1) ? -1.0 : 1.0;
      m[row * dim + col] += base * sign;
    }
  }
  return m;
}

// out = A|v>, by per-term amplitude traversal.
inline std::vector<cplx> apply(const PauliSum& a, const std::vector<cplx>& v) {
  const std::size_t dim = v.size();
  if (dim != (std::size_t{1} << a.n_qubits()))
    throw std::invalid_argument("apply: dimension mismatch");
  std::vector<cplx> out(dim, cplx{0, 0});
  for (const auto& [k, c] : a.terms()) {
    const cplx base = c * i_power(std::popcount(k.x & k.z));
    if (k.x == 0) {
      for (std::size_t b = 0; b < dim; ++b)
        out[b] += (std::popcount(k.z & b) & 1) ? -base * v[b] : base * v[b];
    } else {
      for (std::size_t b = 0; b < dim; ++b) {
        const cplx amp = (std::popcount(k.z & b) & 1) ? -base * v[b] : base * v[b];
        out[b ^ k.x] += amp;
      }
    }
  }
  return out;
}

// <v|A|v>. Diagonal terms accumulate over |v|^2 directly; off-diagonal terms
// traverse amplitude pairs.
inline cplx expectation_value(const PauliSum& a, const std::vector<cplx>& v) {
  const std::size_t dim = v.size();
  if (dim != (std::size_t{1} << a.n_qubits()))
    throw std::invalid_argument("expectation_value: dimension mismatch");
  cplx out{0, 0};
  for (const auto& [k, c] : a.terms()) {
    const cplx base = c * i_power(std::popcount(k.x & k.z));
    if (k.x == 0) {
      double acc = 0;
      for (std::size_t b = 0; b < dim; ++b) {
        const double p = std::norm(v[b]);
        acc += (std::popcount(k.z & b) & 1) ? -p : p;
      }
      out += base * acc;
    } else {
      cplx acc{0, 0};
      for (std::size_t b = 0; b < dim; ++b) {
        const cplx amp = (std::popcount(k.z & b) & 1) ? -v[b] : v[b];
        acc += std::conj(v[b ^ k.x]) * amp;
      }
      out += base * acc;
    }
  }
  return out;
}

}  // namespace hubcd
