#pragma once

// Tropical simplex method: pivot along tropical edges, guided by the signs of
// the tropical reduced costs, until none is negative.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "troplp/cramer.hpp"
#include "troplp/pivot.hpp"

namespace troplp {

enum class PivotRule { Bland, MostNegative };

inline const char* to_string(PivotRule r) { return r == PivotRule::Bland ? "bland" : "most-negative"; }

// The point x with A_I ⊙ x ⊕ b_I ∇ -inf, if it is finite; empty otherwise
// (or when the system has no unique signed solution).
inline std::optional<Vec> basic_point(const Instance& inst, const std::vector<std::size_t>& basis) {
  const std::size_t n = inst.n;
  ensure(basis.size() == n, ErrorKind::Shape, "basis must have n rows");
  Matrix<SymTrop> M(n, n);
  std::vector<SymTrop> d(n);
  for (std::size_t p = 0; p < n; ++p) {
    ensure(basis[p] < inst.m, ErrorKind::Shape, "basis index out of range");
    for (std::size_t j = 0; j < n; ++j) M(p, j) = inst.A(basis[p], j);
    d[p] = -inst.b[basis[p]];
  }
  std::vector<SymTrop> y;
  try {
    y = cramer_solve(M, d);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Singular) return std::nullopt;
    throw;
  }
  Vec x(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!y[j].is_pos()) return std::nullopt;
    x[j] = y[j].modulus().value();
  }
  return x;
}

// Index (position in the basis) of the leaving row, or nullopt if optimal.
inline std::optional<std::size_t> choose_leaving(const std::vector<SymTrop>& y, PivotRule rule) {
  std::optional<std::size_t> pick;
  for (std::size_t p = 0; p < y.size(); ++p) {
    ensure(y[p].is_signed(), ErrorKind::DegenerateInput, "balanced reduced cost");
    if (!y[p].is_neg()) continue;
    if (!pick) {
      pick = p;
      if (rule == PivotRule::Bland) break;
    } else if (y[p].modulus() > y[*pick].modulus()) {
      pick = p;
    }
  }
  return pick;
}

struct Iteration {
  std::vector<std::size_t> basis;
  Vec point;
  Trop objective;
  std::vector<SymTrop> reduced_costs;
  std::optional<PivotResult> pivot;  // empty at the last iteration
};

struct SolveResult {
  std::vector<Iteration> iterations;
  const Iteration& final() const { return iterations.back(); }
};

struct SolveOptions {
  PivotRule rule = PivotRule::Bland;
  TieBreak tie = TieBreak::SmallestIndex;
  BreakpointHook on_breakpoint;
};

inline Vec start_point(const Instance& inst, std::vector<std::size_t>& basis) {
  std::sort(basis.begin(), basis.end());
  ensure(std::adjacent_find(basis.begin(), basis.end()) == basis.end(), ErrorKind::Shape,
         "basis has repeated rows");
  std::optional<Vec> x = basic_point(inst, basis);
  ensure(x.has_value(), ErrorKind::NotStandard, "basis has no finite basic point");
  ensure(feasible(inst, *x), ErrorKind::NotStandard, "basic point of the start basis is infeasible");
  return *x;
}

inline SolveResult solve(const Instance& inst, std::vector<std::size_t> basis,
                         const SolveOptions& opt = {}) {
  Vec x = start_point(inst, basis);
  const Matrix<SymTrop> W = inst.W();
  SolveResult res;
  for (;;) {
    Iteration it;
    it.basis = basis;
    it.point = x;
    it.objective = objective(inst, x);
    it.reduced_costs = reduced_costs(inst, basis, x, opt.tie);
    if (!res.iterations.empty())
      ensure(it.objective <= res.iterations.back().objective, ErrorKind::Internal,
             "objective increased along a pivot");
    std::optional<std::size_t> lv = choose_leaving(it.reduced_costs, opt.rule);
    if (!lv) {
      res.iterations.push_back(std::move(it));
      return res;
    }
    it.pivot = pivot(W, x, basis, basis[*lv], opt.on_breakpoint);
    basis = it.pivot->basis;
    x = it.pivot->point;
    res.iterations.push_back(std::move(it));
    for (std::size_t k = 0; k + 1 < res.iterations.size(); ++k)
      ensure(res.iterations[k].basis != basis, ErrorKind::Internal, "simplex revisited a basis");
  }
}

struct Certificate {
  Vec point;
  Trop objective;
  std::vector<SymTrop> reduced_costs;
  bool optimal = false;
  std::vector<std::size_t> improving;  // rows with negative reduced cost
};

inline Certificate certify(const Instance& inst, std::vector<std::size_t> basis) {
  Certificate c;
  c.point = start_point(inst, basis);
  c.objective = objective(inst, c.point);
  c.reduced_costs = reduced_costs(inst, basis, c.point);
  for (std::size_t p = 0; p < basis.size(); ++p)
    if (c.reduced_costs[p].is_neg()) c.improving.push_back(basis[p]);
  c.optimal = c.improving.empty();
  return c;
}

}  // namespace troplp
