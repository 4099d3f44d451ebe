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

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace hubcd {

enum class Spin { up, down };

enum class Orientation { horizontal, vertical };

struct Edge {
  int a = 0;  // site indices, a < b
  int b = 0;
  Orientation orientation = Orientation::horizontal;
};

// Honeycomb patch with boustrophedon (zig-zag) site ordering over two site
// rows: the top row runs left to right as sites 0..n_top-1 and the bottom row
// continues right to left, so horizontal neighbors are always consecutive
// site indices. Vertical rungs alternate along the rows, which produces the
// hexagonal tiling. Each site carries two spin orbitals mapped to qubits
// (up, down) = (2i, 2i+1).
//
// Supported patches and their fixed adjacency conventions:
//   1x1 -> rows 3+3  (6 sites,  one hexagon;      rungs (2,3), (0,5))
//   1x2 -> rows 5+5  (10 sites, two hexagons;     rungs (4,5), (2,7), (0,9))
//   2x1 -> rows 6+7  (13 sites, two hexagons plus
//          boundary tail sites 0, 11, 12;         rungs (5,6), (3,8), (1,10))
// The 13-site 2x1 patch is a documented convention (the hexagon counts alone
// do not determine it); all adjacency is exportable via to_text().
struct HoneycombLattice {
  int nx = 0;
  int ny = 0;
  int n_sites = 0;
  int n_top = 0;  // sites in the top row; bottom row holds n_sites - n_top
  std::vector<Edge> edges;

  int qubit_count() const { return 2 * n_sites; }

  int qubit_of(int site, Spin s) const {
    if (site < 0 || site >= n_sites)
      throw std::out_of_range("qubit_of: site index out of range");
    return 2 * site + (s == Spin::down ? 1 : 0);
  }

  std::vector<int> degrees() const {
    std::vector<int> deg(n_sites, 0);
    for (const auto& e : edges) {
      ++deg[e.a];
      ++deg[e.b];
    }
    return deg;
  }

  // One edge per line: "a b H|V".
  std::string to_text() const {
    std::string out;
    char buf[48];
    for (const auto& e : edges) {
      std::snprintf(buf, sizeof buf, "%d %d %c\n", e.a, e.b,
                    e.orientation == Orientation::horizontal ? 'H' : 'V');
      out += buf;
    }
    return out;
  }

  static HoneycombLattice build(int nx, int ny) {
    int n_top = 0, n_bot = 0;
    if (nx == 1 && ny == 1) {
      n_top = 3;
      n_bot = 3;
    } else if (nx == 1 && ny == 2) {
      n_top = 5;
      n_bot = 5;
    } else if (nx == 2 && ny == 1) {
      n_top = 6;
      n_bot = 7;
    } else {
      throw std::invalid_argument(
          "HoneycombLattice: unsupported geometry (nx, ny); supported: "
          "(1,1), (1,2), (2,1)");
    }
    HoneycombLattice lat;
    lat.nx = nx;
    lat.ny = ny;
    lat.n_top = n_top;
    lat.n_sites = n_top + n_bot;
    for (int i = 0; i + 1 < n_top; ++i)
      lat.edges.push_back({i, i + 1, Orientation::horizontal});
    for (int i = n_top; i + 1 < lat.n_sites; ++i)
      lat.edges.push_back({i, i + 1, Orientation::horizontal});
    // Alternating rungs: the top-row site n_top-1-2k meets the bottom-row
    // site n_top+2k (the rows run in opposite physical directions).
    for (int k = 0; n_top - 1 - 2 * k >= 0 && n_top + 2 * k < lat.n_sites; ++k)
      lat.edges.push_back({n_top - 1 - 2 * k, n_top + 2 * k,
                           Orientation::vertical});
    return lat;
  }
};

// The four simultaneous-measurement families as qubit-index pairs:
//   coulomb:  on-site pairs (2i, 2i+1)
//   horiz_a:  even-numbered horizontal edges within each row, both spins
//   horiz_b:  odd-numbered horizontal edges within each row, both spins
//   vertical: rung edges, listed with the crossed labels (2a, 2b+1) and
//             (2a+1, 2b) used by the measurement layout
// Pairs within a family are qubit-disjoint, so one basis rotation per family
// measures every pair at once.
struct EdgeGroups {
  std::vector<std::array<int, 2>> coulomb;
  std::vector<std::array<int, 2>> horiz_a;
  std::vector<std::array<int, 2>> horiz_b;
  std::vector<std::array<int, 2>> vertical;
};

// Edge indices backing the three hopping families, in the same order as the
// qubit pairs above (two pairs per edge).
struct GroupedEdges {
  std::vector<int> horiz_a;
  std::vector<int> horiz_b;
  std::vector<int> vertical;
};

inline GroupedEdges grouped_edges(const HoneycombLattice& lat) {
  GroupedEdges out;
  int parity = 0;  // alternates along each row, restarting per row
  int prev_row = -1;
  for (int e = 0; e < static_cast<int>(lat.edges.size()); ++e) {
    const Edge& edge = lat.edges[e];
    if (edge.orientation == Orientation::vertical) {
      out.vertical.push_back(e);
      continue;
    }
    const int row = edge.a < lat.n_top ? 0 : 1;
    if (row != prev_row) {
      prev_row = row;
      parity = 0;
    }
    if (parity == 0)
      out.horiz_a.push_back(e);
    else
      out.horiz_b.push_back(e);
    parity ^= 1;
  }
  return out;
}

inline EdgeGroups edge_groups(const HoneycombLattice& lat) {
  EdgeGroups g;
  for (int i = 0; i < lat.n_sites; ++i)
    g.coulomb.push_back({2 * i, 2 * i + 1});
  const GroupedEdges idx = grouped_edges(lat);
  auto spin_pairs = [&](const std::vector<int>& edge_ids,
                        std::vector<std::array<int, 2>>& dst) {
    for (int e : edge_ids) {
      const Edge& edge = lat.edges[e];
      dst.push_back({2 * edge.a, 2 * edge.b});
      dst.push_back({2 * edge.a + 1, 2 * edge.b + 1});
    }
  };
  spin_pairs(idx.horiz_a, g.horiz_a);
  spin_pairs(idx.horiz_b, g.horiz_b);
  for (int e : idx.vertical) {
    const Edge& edge = lat.edges[e];
    g.vertical.push_back({2 * edge.a, 2 * edge.b + 1});
    g.vertical.push_back({2 * edge.a + 1, 2 * edge.b});
  }
  return g;
}

}  // namespace hubcd
