#pragma once

// Tangent digraph of a tropical polyhedron at a point xi of the projective
// space (length n+1). Coordinate nodes are 0..n (n is the affine coordinate);
// hyperplane nodes are the rows i with W_i⁺ ⊙ xi = W_i⁻ ⊙ xi > -inf. Row i is
// linked to each coordinate attaining that maximum, by an arc coordinate->row
// for a positive entry and row->coordinate for a negative one.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "troplp/instance.hpp"

namespace troplp {

struct Arc {
  std::size_t row = 0;
  std::size_t coord = 0;
  bool into_row = false;  // coord -> row when true, row -> coord otherwise

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

class TangentDigraph {
 public:
  TangentDigraph() = default;
  TangentDigraph(std::size_t num_rows, std::size_t num_coords)
      : by_row_(num_rows), by_coord_(num_coords), is_node_(num_rows, 0),
        mark_row_(num_rows, 0), mark_coord_(num_coords, 0) {}

  std::size_t num_rows() const { return by_row_.size(); }
  std::size_t num_coords() const { return by_coord_.size(); }

  bool has_node(std::size_t i) const { return is_node_[i]; }
  // Hyperplane nodes in increasing order.
  std::vector<std::size_t> hyperplanes() const {
    std::vector<std::size_t> h = nodes_;
    std::sort(h.begin(), h.end());
    return h;
  }
  std::size_t num_hyperplanes() const { return nodes_.size(); }

  void add_node(std::size_t i) {
    if (is_node_[i]) return;
    is_node_[i] = 1;
    nodes_.push_back(i);
  }

  void remove_node(std::size_t i) {
    if (!is_node_[i]) return;
    while (!by_row_[i].empty()) {
      Arc a = by_row_[i].back();
      remove_arc(a);
    }
    is_node_[i] = 0;
    nodes_.erase(std::find(nodes_.begin(), nodes_.end(), i));
  }

  void add_arc(const Arc& a) {
    add_node(a.row);
    by_row_[a.row].push_back(a);
    by_coord_[a.coord].push_back(a.row);
  }

  void remove_arc(const Arc& a) {
    auto& r = by_row_[a.row];
    auto it = std::find(r.begin(), r.end(), a);
    ensure(it != r.end(), ErrorKind::Internal, "removing a missing arc");
    r.erase(it);
    auto& c = by_coord_[a.coord];
    c.erase(std::find(c.begin(), c.end(), a.row));
  }

  const std::vector<Arc>& arcs_of(std::size_t i) const { return by_row_[i]; }
  const std::vector<std::size_t>& rows_at(std::size_t j) const { return by_coord_[j]; }

  std::size_t in_degree(std::size_t i) const {
    return std::count_if(by_row_[i].begin(), by_row_[i].end(), [](const Arc& a) { return a.into_row; });
  }
  std::size_t out_degree(std::size_t i) const { return by_row_[i].size() - in_degree(i); }

  // All arcs, sorted.
  std::vector<Arc> arcs() const {
    std::vector<Arc> all;
    for (std::size_t i : nodes_) all.insert(all.end(), by_row_[i].begin(), by_row_[i].end());
    std::sort(all.begin(), all.end());
    return all;
  }

  // Coordinate nodes weakly connected to coordinate j (or to row i). The
  // search touches only nodes of the component; *steps counts visited nodes.
  std::vector<char> coords_connected_to_coord(std::size_t j, std::size_t* steps = nullptr) const {
    return component({}, {j}, steps);
  }
  std::vector<char> coords_connected_to_row(std::size_t i, std::size_t* steps = nullptr) const {
    return component({i}, {}, steps);
  }

  // Number of weak components, counting every coordinate node and every
  // hyperplane node.
  std::size_t num_components() const {
    std::vector<char> seen_c(num_coords(), 0), seen_r(num_rows(), 0);
    std::size_t count = 0;
    auto flood = [&](std::vector<std::size_t> rs, std::vector<std::size_t> cs) {
      while (!rs.empty() || !cs.empty()) {
        if (!cs.empty()) {
          std::size_t j = cs.back();
          cs.pop_back();
          for (std::size_t i : by_coord_[j])
            if (!seen_r[i]) seen_r[i] = 1, rs.push_back(i);
        } else {
          std::size_t i = rs.back();
          rs.pop_back();
          for (const Arc& a : by_row_[i])
            if (!seen_c[a.coord]) seen_c[a.coord] = 1, cs.push_back(a.coord);
        }
      }
    };
    for (std::size_t j = 0; j < num_coords(); ++j)
      if (!seen_c[j]) {
        seen_c[j] = 1;
        flood({}, {j});
        ++count;
      }
    for (std::size_t i : nodes_)
      if (!seen_r[i]) {
        seen_r[i] = 1;
        flood({i}, {});
        ++count;
      }
    return count;
  }

  friend bool operator==(const TangentDigraph& a, const TangentDigraph& b) {
    return a.hyperplanes() == b.hyperplanes() && a.arcs() == b.arcs();
  }

 private:
  std::vector<char> component(std::vector<std::size_t> rs, std::vector<std::size_t> cs,
                              std::size_t* steps) const {
    ++epoch_;
    for (std::size_t i : rs) mark_row_[i] = epoch_;
    for (std::size_t j : cs) mark_coord_[j] = epoch_;
    std::vector<std::size_t> found_c = cs;
    std::size_t visited = 0;
    while (!rs.empty() || !cs.empty()) {
      ++visited;
      if (!cs.empty()) {
        std::size_t j = cs.back();
        cs.pop_back();
        for (std::size_t i : by_coord_[j])
          if (mark_row_[i] != epoch_) mark_row_[i] = epoch_, rs.push_back(i);
      } else {
        std::size_t i = rs.back();
        rs.pop_back();
        for (const Arc& a : by_row_[i])
          if (mark_coord_[a.coord] != epoch_) {
            mark_coord_[a.coord] = epoch_;
            cs.push_back(a.coord);
            found_c.push_back(a.coord);
          }
      }
    }
    if (steps) *steps += visited;
    std::vector<char> in(num_coords(), 0);
    for (std::size_t j : found_c) in[j] = 1;
    return in;
  }

  std::vector<std::vector<Arc>> by_row_;
  std::vector<std::vector<std::size_t>> by_coord_;
  std::vector<char> is_node_;
  std::vector<std::size_t> nodes_;
  mutable std::vector<std::size_t> mark_row_, mark_coord_;
  mutable std::size_t epoch_ = 0;
};

// O(m (n+1)).
inline TangentDigraph build_tangent(const Matrix<SymTrop>& W, const Vec& xi) {
  ensure(xi.size() == W.cols(), ErrorKind::Shape, "point length must be n+1");
  TangentDigraph D(W.rows(), W.cols());
  for (std::size_t i = 0; i < W.rows(); ++i) {
    Trop plus = row_side(W, i, xi, Sign::Pos), minus = row_side(W, i, xi, Sign::Neg);
    if (plus != minus || plus.is_zero()) continue;
    for (std::size_t j = 0; j < W.cols(); ++j) {
      const SymTrop& w = W(i, j);
      if (w.is_zero() || w.modulus().value() + xi[j] != plus.value()) continue;
      D.add_arc(Arc{i, j, w.is_pos()});
    }
  }
  return D;
}

enum class PointKind { BasicPoint, Interior, Breakpoint, Unclassified };

inline const char* to_string(PointKind k) {
  switch (k) {
    case PointKind::BasicPoint: return "basic point";
    case PointKind::Interior: return "interior point";
    case PointKind::Breakpoint: return "breakpoint";
    case PointKind::Unclassified: return "unclassified";
  }
  return "?";
}

struct Classification {
  PointKind kind = PointKind::Unclassified;
  std::size_t special_row = 0;  // degree-3 node at a breakpoint
};

// Shape of the tangent digraph at a point of the edge E_K (|K| = n-1), or at
// a basic point (n hyperplane nodes).
inline Classification classify(const TangentDigraph& D) {
  const std::size_t n = D.num_coords() - 1;
  Classification c;
  std::size_t odd = 0, odd_row = 0;
  for (std::size_t i : D.hyperplanes()) {
    std::size_t in = D.in_degree(i), out = D.out_degree(i);
    if (in == 1 && out == 1) continue;
    if ((in == 2 && out == 1) || (in == 1 && out == 2)) {
      ++odd;
      odd_row = i;
      continue;
    }
    return c;
  }
  std::size_t h = D.num_hyperplanes(), comps = D.num_components();
  if (h == n && odd == 0 && comps == 1) c.kind = PointKind::BasicPoint;
  if (h + 1 == n && odd == 0 && comps == 2) c.kind = PointKind::Interior;
  if (h + 1 == n && odd == 1 && comps == 1) {
    c.kind = PointKind::Breakpoint;
    c.special_row = odd_row;
  }
  return c;
}

inline std::vector<std::size_t> members(const std::vector<char>& set) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < set.size(); ++j)
    if (set[j]) out.push_back(j);
  return out;
}

// Direction e^J leaving the basic point along the edge E_{I \ {i_lv}}: J is
// the set of coordinates weakly connected, once i_lv is removed, to the
// coordinate where the positive side of row i_lv is attained.
inline std::vector<char> direction_from_basic_point(const TangentDigraph& D, std::size_t i_lv) {
  ensure(D.has_node(i_lv), ErrorKind::Shape, "leaving row is not a hyperplane node");
  std::size_t source = D.num_coords(), count = 0;
  for (const Arc& a : D.arcs_of(i_lv))
    if (a.into_row) source = a.coord, ++count;
  ensure(count == 1, ErrorKind::DegenerateInput, "positive side of the leaving row is not unique");
  TangentDigraph rest = D;
  rest.remove_node(i_lv);
  return rest.coords_connected_to_coord(source);
}

// Direction of the next segment at a breakpoint: D is the tangent digraph at
// the breakpoint, k its degree-3 node and a_lv the arc to drop.
inline std::vector<char> direction_from_breakpoint(const TangentDigraph& D, std::size_t k,
                                                   const Arc& a_lv) {
  ensure(a_lv.row == k, ErrorKind::Shape, "arc is not incident to the breakpoint node");
  TangentDigraph rest = D;
  rest.remove_arc(a_lv);
  return rest.coords_connected_to_row(k);
}

// For a basic point: orient the spanning tree toward the affine coordinate
// node; each variable j has a unique outgoing tree arc to a hyperplane, which
// defines the matching j -> row.
inline std::vector<std::size_t> tangent_matching(const TangentDigraph& D) {
  const std::size_t n = D.num_coords() - 1;
  ensure(classify(D).kind == PointKind::BasicPoint, ErrorKind::Shape,
         "matching needs the tangent digraph of a basic point");
  std::vector<std::size_t> match(n, D.num_rows());
  std::vector<char> seen_c(n + 1, 0), seen_r(D.num_rows(), 0);
  std::vector<std::size_t> queue{n};
  seen_c[n] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    std::size_t j = queue[q];
    for (std::size_t i : D.rows_at(j)) {
      if (seen_r[i]) continue;
      seen_r[i] = 1;
      for (const Arc& a : D.arcs_of(i))
        if (!seen_c[a.coord]) {
          seen_c[a.coord] = 1;
          match[a.coord] = i;
          queue.push_back(a.coord);
        }
    }
  }
  return match;
}

// Graphviz rendering; labels are one-based (x1..x{n+1}, H1..Hm).
inline std::string to_dot(const TangentDigraph& D, const std::string& name = "tangent") {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (std::size_t j = 0; j < D.num_coords(); ++j)
    os << "  x" << j + 1 << " [shape=circle];\n";
  for (std::size_t i : D.hyperplanes()) os << "  H" << i + 1 << " [shape=box];\n";
  for (const Arc& a : D.arcs()) {
    if (a.into_row)
      os << "  x" << a.coord + 1 << " -> H" << a.row + 1 << ";\n";
    else
      os << "  H" << a.row + 1 << " -> x" << a.coord + 1 << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace troplp
