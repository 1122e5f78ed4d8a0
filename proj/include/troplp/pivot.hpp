#pragma once

// Pivoting along a tropical edge in O(n(m+n)).
//
// The edge E_K (K = I \ {i_lv}) leaving a basic point is a sequence of
// ordinary segments  [xi, xi + mu e^J]  with a strictly growing chain of
// direction sets J. Each segment ends at a breakpoint (some hyperplane node of
// K gets a third arc) or at the next basic point (a new row becomes tight).
// The bookkeeping below keeps, for the current segment, the rows that may
// stop it and their slacks lambda, and updates them at breakpoints in time
// O(n + m |J' \ J|).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "troplp/tangent.hpp"

namespace troplp {

// Non-negative step bound; `infinite` stands for +inf.
struct Len {
  bool infinite = true;
  Rational value;

  static Len inf() { return Len{}; }
  static Len of(const Rational& v) { return Len{false, v}; }

  friend bool operator==(const Len& a, const Len& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend bool operator<(const Len& a, const Len& b) {
    if (a.infinite) return false;
    return b.infinite || a.value < b.value;
  }
  friend bool operator<=(const Len& a, const Len& b) { return !(b < a); }
};

inline std::string to_string(const Len& l) { return l.infinite ? "+inf" : format_num(l.value); }

// Data attached to the ordinary segment starting at xi with direction e^J.
struct SegmentState {
  Vec xi;                       // homogeneous point, length n+1
  std::vector<char> in_J;       // direction set
  TangentDigraph D;             // tangent digraph in the open segment
  std::vector<std::size_t> K;   // hyperplanes of the edge, increasing
  std::vector<char> in_E, in_B; // entering and breaking candidates
  std::vector<std::size_t> E, B;
  std::vector<Rational> w_plus;  // W_i⁺ ⊙ xi, for i in E ∪ B
  std::vector<Len> lam_plus, lam_minus;
};

enum class StepKind { Break, Enter };

struct Step {
  Rational mu;
  StepKind kind = StepKind::Enter;
  std::size_t row = 0;
  int side = 0;  // for Break: +1 if lambda⁺ attains mu, -1 if lambda⁻ does
};

struct PivotStats {
  std::uint64_t ops = 0;  // elementary operations, for complexity measurements
  std::size_t segments = 0;
};

namespace detail {

// max_{j in J} (W^side_ij + xi_j), as a step bound relative to w_plus.
inline Len slack_over(const Matrix<SymTrop>& W, std::size_t i, const Vec& xi,
                      const std::vector<std::size_t>& cols, const Rational& w_plus, Sign side,
                      std::uint64_t& ops) {
  bool any = false;
  Rational best;
  for (std::size_t j : cols) {
    ++ops;
    const SymTrop& w = W(i, j);
    if (w.sign() != side) continue;
    Rational v = w.modulus().value() + xi[j];
    if (!any || v > best) best = v, any = true;
  }
  return any ? Len::of(w_plus - best) : Len::inf();
}

inline Len min_len(const Len& a, const Len& b) { return b < a ? b : a; }

inline Len minus(const Len& a, const Rational& mu) {
  return a.infinite ? a : Len::of(a.value - mu);
}

}  // namespace detail

// Computes E, B, W⁺⊙xi and lambda± directly from the definitions, given xi,
// J and K in `s`. O(m (n+1)).
inline void fill_segment_sets(const Matrix<SymTrop>& W, SegmentState& s, std::uint64_t* ops = nullptr) {
  std::uint64_t local = 0;
  const std::size_t m = W.rows(), n1 = W.cols();
  std::vector<char> in_K(m, 0);
  for (std::size_t i : s.K) in_K[i] = 1;
  std::vector<std::size_t> J = members(s.in_J);
  s.in_E.assign(m, 0);
  s.in_B.assign(m, 0);
  s.E.clear();
  s.B.clear();
  s.w_plus.assign(m, Rational());
  s.lam_plus.assign(m, Len::inf());
  s.lam_minus.assign(m, Len::inf());
  for (std::size_t i = 0; i < m; ++i) {
    Trop plus, minus;
    for (std::size_t j = 0; j < n1; ++j) {
      ++local;
      const SymTrop& w = W(i, j);
      if (w.is_pos()) plus += w.modulus() * Trop(s.xi[j]);
      if (w.is_neg()) minus += w.modulus() * Trop(s.xi[j]);
    }
    ensure(!plus.is_zero(), ErrorKind::NotStandard,
           "row " + std::to_string(i) + " has an empty positive side at a finite point");
    bool plus_hits_J = false, minus_hits_J = false;
    for (std::size_t j : J) {
      const SymTrop& w = W(i, j);
      if (w.is_zero()) continue;
      Rational v = w.modulus().value() + s.xi[j];
      if (w.is_pos() && v == plus.value()) plus_hits_J = true;
      if (w.is_neg() && !minus.is_zero() && v == minus.value()) minus_hits_J = true;
    }
    bool e = !in_K[i] && !plus_hits_J;
    bool b = in_K[i] && !plus_hits_J && !minus_hits_J;
    if (!e && !b) continue;
    (e ? s.in_E : s.in_B)[i] = 1;
    (e ? s.E : s.B).push_back(i);
    s.w_plus[i] = plus.value();
    s.lam_plus[i] = detail::slack_over(W, i, s.xi, J, s.w_plus[i], Sign::Pos, local);
    s.lam_minus[i] = detail::slack_over(W, i, s.xi, J, s.w_plus[i], Sign::Neg, local);
  }
  if (ops) *ops += local;
}

// Length of the ordinary segment and what ends it. O(|E| + |B|).
inline Step step_length(const SegmentState& s, std::uint64_t* ops = nullptr) {
  Len best = Len::inf();
  std::size_t ties = 0;
  Step st;
  auto offer = [&](const Len& l, StepKind kind, std::size_t row, int side) {
    if (l.infinite) return;
    if (l < best) {
      best = l;
      ties = 1;
      st.kind = kind;
      st.row = row;
      st.side = side;
    } else if (l == best) {
      ++ties;
    }
  };
  for (std::size_t i : s.B) {
    offer(s.lam_plus[i], StepKind::Break, i, +1);
    offer(s.lam_minus[i], StepKind::Break, i, -1);
  }
  for (std::size_t i : s.E)
    if (s.lam_minus[i] <= s.lam_plus[i]) offer(s.lam_minus[i], StepKind::Enter, i, -1);
  if (ops) *ops += s.B.size() + s.E.size();
  ensure(!best.infinite, ErrorKind::NotStandard, "unbounded edge: no row limits the segment");
  ensure(ties == 1, ErrorKind::DegenerateInput,
         "segment length " + format_num(best.value) + " attained by several rows");
  st.mu = best.value;
  return st;
}

struct Segment {
  Vec start;                        // homogeneous start point
  std::vector<std::size_t> J;       // direction set
  Rational mu;                      // length
  StepKind kind = StepKind::Enter;  // what ends it
  std::size_t row = 0;
  int side = 0;
  std::vector<Arc> interior_arcs;   // tangent digraph inside the segment
};

struct PivotResult {
  std::vector<std::size_t> basis;  // increasing
  Vec point;                       // affine chart, length n
  std::size_t leaving = 0, entering = 0;
  std::vector<Segment> trace;
  PivotStats stats;
};

// Called at every breakpoint with the state of the next segment and the
// tangent digraph at the breakpoint itself.
using BreakpointHook = std::function<void(const SegmentState&, const TangentDigraph&)>;

// A pivot that stopped on degenerate input, with the segments traced so far.
class PivotFailure : public Error {
 public:
  PivotFailure(const Error& e, std::vector<Segment> partial)
      : Error(e), partial_(std::move(partial)) {}
  const std::vector<Segment>& partial_trace() const { return partial_; }

 private:
  std::vector<Segment> partial_;
};

namespace detail {

inline void pivot_into(PivotResult& res, const Matrix<SymTrop>& W, const Vec& x,
                       std::vector<std::size_t> basis, std::size_t i_lv, const BreakpointHook& hook) {
  const std::size_t m = W.rows(), n = W.cols() - 1;
  ensure(x.size() == n, ErrorKind::Shape, "point must have n coordinates");
  std::sort(basis.begin(), basis.end());
  ensure(basis.size() == n, ErrorKind::Shape, "basis must have n rows");
  ensure(std::binary_search(basis.begin(), basis.end(), i_lv), ErrorKind::Shape,
         "leaving row not in basis");
  res.leaving = i_lv;
  std::uint64_t& ops = res.stats.ops;

  SegmentState s;
  s.xi = homogeneous(x);
  TangentDigraph Dx = build_tangent(W, s.xi);
  ops += m * (n + 1);
  ensure(classify(Dx).kind == PointKind::BasicPoint && Dx.hyperplanes() == basis,
         ErrorKind::DegenerateInput, "start point is not a non-degenerate basic point of the basis");
  s.in_J = direction_from_basic_point(Dx, i_lv);
  s.D = std::move(Dx);
  s.D.remove_node(i_lv);
  for (std::size_t i : basis)
    if (i != i_lv) s.K.push_back(i);
  fill_segment_sets(W, s, &ops);

  // Omega(i, j): j attains W_i⁺ ⊙ x at the basic point, for i in the initial E.
  Matrix<char> omega(m, n + 1, 0);
  for (std::size_t i : s.E)
    for (std::size_t j = 0; j <= n; ++j) {
      ++ops;
      const SymTrop& w = W(i, j);
      omega(i, j) = w.is_pos() && w.modulus().value() + s.xi[j] == s.w_plus[i];
    }

  for (std::size_t seg = 0;; ++seg) {
    ensure(seg <= n, ErrorKind::Internal, "more than n segments on one edge");
    Step st = step_length(s, &ops);
    Segment rec;
    rec.start = s.xi;
    rec.J = members(s.in_J);
    rec.mu = st.mu;
    rec.kind = st.kind;
    rec.row = st.row;
    rec.side = st.side;
    rec.interior_arcs = s.D.arcs();
    res.trace.push_back(rec);
    ++res.stats.segments;

    Vec old_xi = s.xi;
    for (std::size_t j = 0; j <= n; ++j)
      if (s.in_J[j]) s.xi[j] += st.mu;
    ops += n + 1;

    if (st.kind == StepKind::Enter) {
      res.entering = st.row;
      res.basis = s.K;
      res.basis.insert(std::lower_bound(res.basis.begin(), res.basis.end(), st.row), st.row);
      res.point = dehomogenize(s.xi);
      return;
    }

    // Breakpoint: row k gains an arc toward J.
    const std::size_t k = st.row;
    std::size_t ell = n + 1, count = 0;
    Rational best;
    for (std::size_t j = 0; j <= n; ++j) {
      ++ops;
      if (!s.in_J[j] || W(k, j).is_zero()) continue;
      Rational v = W(k, j).modulus().value() + old_xi[j];
      if (ell > n || v > best) {
        best = v;
        ell = j;
        count = 1;
      } else if (v == best) {
        ++count;
      }
    }
    ensure(ell <= n && count == 1, ErrorKind::DegenerateInput,
           "new arc at breakpoint row " + std::to_string(k) + " is not unique");
    Arc a_ent{k, ell, st.side > 0};
    s.D.add_arc(a_ent);
    TangentDigraph at_break;
    if (hook) at_break = s.D;
    Arc a_lv;
    std::size_t same = 0;
    for (const Arc& a : s.D.arcs_of(k))
      if (!(a == a_ent) && a.into_row == a_ent.into_row) a_lv = a, ++same;
    ensure(same == 1 && s.D.arcs_of(k).size() == 3, ErrorKind::Shape,
           "breakpoint node does not have degree (2,1) or (1,2)");
    s.D.remove_arc(a_lv);
    std::size_t visited = 0;
    std::vector<char> new_J = s.D.coords_connected_to_row(k, &visited);
    ops += visited;
    std::vector<std::size_t> diff;
    for (std::size_t j = 0; j <= n; ++j) {
      ++ops;
      ensure(!s.in_J[j] || new_J[j], ErrorKind::Internal, "direction sets must grow");
      if (new_J[j] && !s.in_J[j]) diff.push_back(j);
    }

    // B': rows of K whose neighbours at the breakpoint avoid J'.
    std::vector<std::size_t> new_B;
    for (std::size_t i : s.K) {
      bool touches = false;
      for (const Arc& a : s.D.arcs_of(i)) touches = touches || new_J[a.coord];
      if (i == k) touches = touches || new_J[a_lv.coord];
      ops += 3;
      if (!touches) new_B.push_back(i);
    }
    // E': rows of E not yet overtaken and whose positive argmax avoids J' \ J.
    std::vector<std::size_t> new_E;
    for (std::size_t i : s.E) {
      ++ops;
      if (!(Len::of(st.mu) < s.lam_plus[i])) continue;
      bool hit = false;
      for (std::size_t j : diff) {
        ++ops;
        hit = hit || omega(i, j);
      }
      if (!hit) new_E.push_back(i);
    }
    for (std::size_t i : s.E) s.in_E[i] = 0;
    for (std::size_t i : s.B) s.in_B[i] = 0;
    ops += s.E.size() + s.B.size();
    auto update = [&](std::size_t i) {
      Len lp = detail::slack_over(W, i, s.xi, diff, s.w_plus[i], Sign::Pos, ops);
      Len lm = detail::slack_over(W, i, s.xi, diff, s.w_plus[i], Sign::Neg, ops);
      s.lam_plus[i] = detail::min_len(detail::minus(s.lam_plus[i], st.mu), lp);
      s.lam_minus[i] = detail::min_len(detail::minus(s.lam_minus[i], st.mu), lm);
    };
    for (std::size_t i : new_E) s.in_E[i] = 1, update(i);
    for (std::size_t i : new_B) s.in_B[i] = 1, update(i);
    s.E = std::move(new_E);
    s.B = std::move(new_B);
    s.in_J = std::move(new_J);
    if (hook) hook(s, at_break);
  }
}

}  // namespace detail

// Pivot from the basic point x of `basis` by dropping row i_lv. Throws
// PivotFailure when a tie makes the next step ambiguous.
inline PivotResult pivot(const Matrix<SymTrop>& W, const Vec& x, std::vector<std::size_t> basis,
                         std::size_t i_lv, const BreakpointHook& hook = {}) {
  PivotResult res;
  try {
    detail::pivot_into(res, W, x, std::move(basis), i_lv, hook);
  } catch (const PivotFailure&) {
    throw;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateInput) throw;
    throw PivotFailure(e, res.trace);
  }
  return res;
}

// One-based rendering of a direction set; a set containing the affine
// coordinate is shown as the opposite direction on its complement.
inline std::string render_direction(const std::vector<std::size_t>& J, std::size_t n) {
  std::vector<char> in(n + 1, 0);
  for (std::size_t j : J) in[j] = 1;
  bool flip = in[n];
  std::string out = flip ? "-e{" : "e{";
  bool first = true;
  for (std::size_t j = 0; j < n; ++j)
    if (in[j] != flip) {
      out += (first ? "" : ",") + std::to_string(j + 1);
      first = false;
    }
  return out + "}";
}

}  // namespace troplp
