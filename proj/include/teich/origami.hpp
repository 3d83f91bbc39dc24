#pragma once

// Square-tiled surfaces: n unit squares glued by a right-neighbor and an
// up-neighbor permutation. In the axis directions these are Jenkins–Strebel:
// the vertical (resp. horizontal) foliation decomposes into cylinders, which
// makes origamis the genus ≥ 2 source of exact RayDecompositions.
//
// Cells are 0-indexed here; the JSON layer converts the 1-indexed wire
// format.

#include "teich/decomposition.hpp"
#include "teich/pair_asymptotics.hpp"
#include "teich/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace teich {

class Origami {
 public:
  // images of cell i under "step right" and "step up"; both must be
  // permutations generating a transitive action (connected surface).
  Origami(std::vector<int> right, std::vector<int> up)
      : r_(std::move(right)), u_(std::move(up)) {
    const int n = static_cast<int>(r_.size());
    if (n == 0 || u_.size() != r_.size())
      throw std::invalid_argument("origami: r and u must be nonempty, equal length");
    rinv_.assign(n, -1);
    uinv_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      if (r_[i] < 0 || r_[i] >= n || u_[i] < 0 || u_[i] >= n)
        throw std::invalid_argument("origami: image out of range");
      if (rinv_[r_[i]] != -1 || uinv_[u_[i]] != -1)
        throw std::invalid_argument("origami: r and u must be permutations");
      rinv_[r_[i]] = i;
      uinv_[u_[i]] = i;
    }
    // connectivity: orbit of cell 0 under r, u must be everything
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (const int j : {r_[i], u_[i], rinv_[i], uinv_[i]})
        if (!seen[j]) {
          seen[j] = 1;
          ++reached;
          stack.push_back(j);
        }
    }
    if (reached != n)
      throw std::invalid_argument("origami: surface is disconnected");
  }

  int size() const { return static_cast<int>(r_.size()); }
  int right(int i) const { return r_.at(i); }
  int up(int i) const { return u_.at(i); }
  int right_inverse(int i) const { return rinv_.at(i); }
  int up_inverse(int i) const { return uinv_.at(i); }

  // cycle lengths of the corner permutation u∘r∘u⁻¹∘r⁻¹, ascending: each
  // cycle is a vertex of the tiling, of cone angle 2π·length.
  std::vector<int> cone_orders() const {
    const int n = size();
    std::vector<int> orders;
    std::vector<char> seen(n, 0);
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = u_[r_[uinv_[rinv_[j]]]]) {
        seen[j] = 1;
        ++len;
      }
      orders.push_back(len);
    }
    std::sort(orders.begin(), orders.end());
    return orders;
  }

  // from V − E + F with V = #vertices, E = 2n, F = n.
  int genus() const {
    const int vertices = static_cast<int>(cone_orders().size());
    return 1 + (size() - vertices) / 2;
  }

 private:
  std::vector<int> r_, u_, rinv_, uinv_;
};

struct Cylinder {
  Direction direction = Direction::vertical;
  std::vector<int> cells;      // ascending
  int width = 0;               // number of merged columns (resp. rows)
  int circumference = 0;       // common cycle length of those columns
  std::vector<int> core_cells; // the column/row containing the smallest cell
};

namespace detail {

struct CylinderScratch {
  std::vector<std::vector<int>> columns;  // cycles of the circumference perm
  std::vector<int> column_of;             // cell -> column index
  std::vector<int> parent;                // union-find over columns
};

inline int uf_find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace detail

// Cylinder decomposition in an axis direction. Columns (cycles of u for
// vertical; of r for horizontal) are merged exactly when the gluing map to
// the neighboring column is height-aligned along the whole circumference —
// the neighbor permutation maps the cycle onto one cycle and commutes with
// the circumference permutation there — which is precisely the absence of a
// cone point on the shared boundary. Output is ordered by smallest cell.
inline std::vector<Cylinder> cylinders(const Origami& o, Direction dir) {
  const int n = o.size();
  const auto cyc = [&](int i) { return dir == Direction::vertical ? o.up(i) : o.right(i); };
  const auto step = [&](int i) { return dir == Direction::vertical ? o.right(i) : o.up(i); };

  detail::CylinderScratch s;
  s.column_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (s.column_of[i] != -1) continue;
    const int id = static_cast<int>(s.columns.size());
    std::vector<int> cells;
    for (int j = i; s.column_of[j] == -1; j = cyc(j)) {
      s.column_of[j] = id;
      cells.push_back(j);
    }
    s.columns.push_back(std::move(cells));
  }

  s.parent.resize(s.columns.size());
  std::iota(s.parent.begin(), s.parent.end(), 0);
  for (std::size_t a = 0; a < s.columns.size(); ++a) {
    const std::vector<int>& cells = s.columns[a];
    const int b = s.column_of[step(cells.front())];
    bool aligned = true;
    for (const int x : cells)
      if (s.column_of[step(x)] != b || step(cyc(x)) != cyc(step(x))) {
        aligned = false;
        break;
      }
    if (aligned)
      s.parent[detail::uf_find(s.parent, static_cast<int>(a))] =
          detail::uf_find(s.parent, b);
  }

  std::vector<Cylinder> out;
  std::vector<int> cyl_of_root(s.columns.size(), -1);
  for (int i = 0; i < n; ++i) {  // ascending: cylinder order by smallest cell
    const int root = detail::uf_find(s.parent, s.column_of[i]);
    if (cyl_of_root[root] == -1) {
      cyl_of_root[root] = static_cast<int>(out.size());
      Cylinder c;
      c.direction = dir;
      c.circumference = static_cast<int>(s.columns[s.column_of[i]].size());
      c.core_cells = s.columns[s.column_of[i]];
      std::sort(c.core_cells.begin(), c.core_cells.end());
      out.push_back(std::move(c));
    }
    Cylinder& c = out[cyl_of_root[root]];
    c.cells.push_back(i);
  }
  for (Cylinder& c : out) {
    c.width = static_cast<int>(c.cells.size()) / c.circumference;
  }
  return out;
}

// One component per cylinder: a_j = width, h_j = circumference, so
// m_j = width/circumference and the area is exactly n.
inline RayDecomposition ray_data(const Origami& o, Direction dir) {
  const auto cyls = cylinders(o, dir);
  const char* prefix = dir == Direction::vertical ? "V" : "H";
  std::vector<Component> comps;
  comps.reserve(cyls.size());
  for (std::size_t j = 0; j < cyls.size(); ++j)
    comps.push_back({prefix + std::to_string(j), ComponentKind::cylinder,
                     rat(cyls[j].width), rat(cyls[j].circumference)});
  return RayDecomposition(std::move(comps));
}

// entry (j,k) = i(vertical core γ_j, horizontal core γ_k) = number of cells
// the two core lines share.
inline std::vector<std::vector<long>> core_intersections(const Origami& o) {
  const auto vert = cylinders(o, Direction::vertical);
  const auto horiz = cylinders(o, Direction::horizontal);
  std::vector<std::vector<long>> matrix(vert.size(),
                                        std::vector<long>(horiz.size(), 0));
  for (std::size_t j = 0; j < vert.size(); ++j)
    for (std::size_t k = 0; k < horiz.size(); ++k) {
      long shared = 0;
      for (const int cell : vert[j].core_cells)
        shared += std::binary_search(horiz[k].core_cells.begin(),
                                     horiz[k].core_cells.end(), cell);
      matrix[j][k] = shared;
    }
  return matrix;
}

// Sandwich for the core curve of cylinder j at time t along the ray:
//
//   e^{-2t}·circ²/n  ≤  Ext_{X_t}(γ_j)  ≤  e^{-2t}·circ/width
//
// (lower: Cauchy–Schwarz against H; upper: the embedded flowed cylinder).
// The e^{2t}-scaled bounds are exact rationals; the upper one is the grow
// limit 1/m_j itself.
struct CylinderBounds {
  double lower = 0, upper = 0;    // on Ext_{X_t}(γ_j)
  Rat scaled_lower, scaled_upper; // e^{2t}·(lower, upper): h²/n and 1/m
};

inline CylinderBounds finite_t_bounds(const Origami& o, std::size_t j, double t,
                                      Direction dir = Direction::vertical) {
  const auto cyls = cylinders(o, dir);
  if (j >= cyls.size())
    throw std::out_of_range("finite_t_bounds: cylinder index out of range");
  if (!std::isfinite(t))
    throw std::invalid_argument("finite_t_bounds: t must be finite");
  const Rat circ = rat(cyls[j].circumference);
  CylinderBounds b;
  b.scaled_lower = circ * circ / rat(o.size());
  b.scaled_upper = circ / rat(cyls[j].width);
  const double decay = std::exp(-2 * t);
  b.lower = decay * as_double(b.scaled_lower);
  b.upper = decay * as_double(b.scaled_upper);
  return b;
}

// Pair asymptotics of two origamis' rays under a caller-asserted matching
// of cylinders (a bijection between the two cylinder lists).
inline PairReport compare_rays(const Origami& o1, const Origami& o2,
                               const std::vector<std::pair<std::size_t, std::size_t>>& matching,
                               Direction dir = Direction::vertical) {
  const auto c1 = cylinders(o1, dir);
  const auto c2 = cylinders(o2, dir);
  if (matching.size() != c1.size() || c1.size() != c2.size())
    throw std::invalid_argument("compare_rays: matching must pair all cylinders");
  std::vector<char> used1(c1.size(), 0), used2(c2.size(), 0);
  std::vector<Component> comps1, comps2;
  for (std::size_t i = 0; i < matching.size(); ++i) {
    const auto [a, b] = matching[i];
    if (a >= c1.size() || b >= c2.size() || used1[a] || used2[b])
      throw std::invalid_argument("compare_rays: matching is not a bijection");
    used1[a] = used2[b] = 1;
    const std::string id = "M" + std::to_string(i);
    comps1.push_back({id, ComponentKind::cylinder, rat(c1[a].width),
                      rat(c1[a].circumference)});
    comps2.push_back({id, ComponentKind::cylinder, rat(c2[b].width),
                      rat(c2[b].circumference)});
  }
  return pair_report(RayDecomposition(std::move(comps1)),
                     RayDecomposition(std::move(comps2)));
}

}  // namespace teich
