#pragma once

// Signed tropical Cramer systems  M ⊙ y ∇ d  and tropical reduced costs.
//
// With a maximizing permutation sigma of tdet(M) and optimal dual variables
// (u, v) of the assignment problem, the system is rescaled so that every arc
// weight is non-positive; longest paths from the affine column in the Cramer
// digraph are then found by Dijkstra's algorithm and y is read off the
// resulting tree.

#include <cstddef>
#include <queue>
#include <vector>

#include "troplp/tangent.hpp"

namespace troplp {

enum class TieBreak { SmallestIndex, LargestIndex };

struct CramerTree {
  std::vector<SymTrop> y;
  // parent[i]: column whose value reaches row i on a longest path, or
  // M.cols() for the affine column (the right-hand side d); M.cols() + 1
  // when row i is unreachable.
  std::vector<std::size_t> parent;
};

inline void check_residual(const Matrix<SymTrop>& M, const std::vector<SymTrop>& y,
                           const std::vector<SymTrop>& d) {
  for (std::size_t i = 0; i < M.rows(); ++i) {
    SymTrop row;
    for (std::size_t j = 0; j < M.cols(); ++j) row += M(i, j) * y[j];
    ensure(balances(row, d[i]), ErrorKind::Internal,
           "Cramer solution does not balance row " + std::to_string(i));
  }
}

// Solves M ⊙ y ∇ d given sigma (row i -> column sigma[i]) and duals with
// |m_ij| <= u_i + v_j, equality on sigma. O(n^2 log n).
inline CramerTree cramer_solve_with(const Matrix<SymTrop>& M, const std::vector<SymTrop>& d,
                                    const std::vector<std::size_t>& sigma, const Vec& u,
                                    const Vec& v, TieBreak tie = TieBreak::SmallestIndex) {
  const std::size_t n = M.rows();
  ensure(M.cols() == n && d.size() == n && sigma.size() == n && u.size() == n && v.size() == n,
         ErrorKind::Shape, "Cramer system dimensions disagree");
  for (std::size_t i = 0; i < n; ++i) {
    ensure(d[i].is_signed(), ErrorKind::Balanced, "right-hand side must be signed");
    for (std::size_t j = 0; j < n; ++j) {
      const SymTrop& e = M(i, j);
      ensure(e.is_signed(), ErrorKind::Balanced, "matrix must be signed");
      if (e.is_zero()) continue;
      ensure(e.modulus().value() <= u[i] + v[j], ErrorKind::Internal, "infeasible duals");
    }
    const SymTrop& diag = M(i, sigma[i]);
    ensure(!diag.is_zero() && diag.modulus().value() == u[i] + v[sigma[i]], ErrorKind::Internal,
           "duals not tight on the permutation");
  }
  // Scaling: m'_ij = m_ij - mu - u_i - v_j, d'_i = d_i - mu - u_i.
  Rational mu = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!d[i].is_zero()) mu = std::max(mu, Rational(d[i].modulus().value() - u[i]));
  auto scaled = [&](std::size_t i, std::size_t j) -> Rational {
    return M(i, j).modulus().value() - mu - u[i] - v[j];
  };

  // key[i]: longest distance to row node i; val[i]: signed value carried to
  // row i, i.e. the dominant terms of d'_i ⊖ sum_{j != sigma(i)} m'_ij z_j.
  const std::size_t affine = n, none = n + 1;
  CramerTree out;
  out.parent.assign(n, none);
  std::vector<SymTrop> val(n);
  std::vector<char> done(n, 0), ambiguous(n, 0);
  std::vector<SymTrop> z(n);
  std::vector<std::size_t> col_row(n);
  for (std::size_t i = 0; i < n; ++i) col_row[sigma[i]] = i;

  auto better_index = [&](std::size_t a, std::size_t b) {
    return tie == TieBreak::SmallestIndex ? a < b : a > b;
  };
  auto offer = [&](std::size_t i, const SymTrop& cand, std::size_t from) {
    if (cand.is_zero()) return false;
    const SymTrop& cur = val[i];
    if (cur.is_zero() || cand.modulus() > cur.modulus()) {
      val[i] = cand;
      out.parent[i] = from;
      ambiguous[i] = 0;
      return true;
    }
    if (cand.modulus() == cur.modulus()) {
      if (cand.sign() != cur.sign()) ambiguous[i] = 1;
      if (better_index(from, out.parent[i])) out.parent[i] = from;
    }
    return false;
  };
  using Entry = std::pair<Rational, std::size_t>;
  auto cmp = [&](const Entry& a, const Entry& b) {
    if (a.first != b.first) return a.first < b.first;  // max-heap on distance
    return better_index(b.second, a.second);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i].is_zero()) continue;
    offer(i, SymTrop(d[i].sign(), Trop(Rational(d[i].modulus().value() - mu - u[i]))), affine);
    heap.push({val[i].modulus().value(), i});
  }
  while (!heap.empty()) {
    auto [dist, i] = heap.top();
    heap.pop();
    if (done[i] || dist != val[i].modulus().value()) continue;
    done[i] = 1;
    // Lazy check only: a tie reaching row i after it is settled goes unseen.
    ensure(!ambiguous[i], ErrorKind::Singular,
           "balanced determinant: opposite signs tie for row " + std::to_string(i));
    const std::size_t c = sigma[i];
    SymTrop diag(M(i, c).sign(), Trop(scaled(i, c)));
    z[c] = val[i] * diag.inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (done[r] || r == i || M(r, c).is_zero()) continue;
      SymTrop cand = -(SymTrop(M(r, c).sign(), Trop(scaled(r, c))) * z[c]);
      if (offer(r, cand, c)) heap.push({val[r].modulus().value(), r});
    }
  }
  // Undo the column scaling: y_j = z_j - v_j.
  out.y.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    out.y[j] = z[j].is_zero() ? SymTrop::zero()
                              : SymTrop(z[j].sign(), Trop(Rational(z[j].modulus().value() - v[j])));
  check_residual(M, out.y, d);
  return out;
}

// General entry point: computes sigma and the duals by the Hungarian method
// and rejects systems whose determinant or any Cramer numerator tdet(M_{j<-d})
// is -inf resp. balanced, i.e. systems without a unique signed solution.
inline std::vector<SymTrop> cramer_solve(const Matrix<SymTrop>& M, const std::vector<SymTrop>& d,
                                         TieBreak tie = TieBreak::SmallestIndex) {
  ensure(M.rows() == M.cols(), ErrorKind::Shape, "Cramer system needs a square matrix");
  Assignment a = optimal_assignment(moduli(M));
  ensure(!a.value.is_zero(), ErrorKind::Singular, "tdet(M) = -inf");
  ensure(!sign_singular(M), ErrorKind::Singular, "tdet(M) is balanced");
  std::vector<SymTrop> y = cramer_solve_with(M, d, a.sigma, a.u, a.v, tie).y;
  for (std::size_t j = 0; j < M.cols(); ++j) {
    if (y[j].is_zero()) continue;
    Matrix<SymTrop> Mj = M;
    for (std::size_t i = 0; i < M.rows(); ++i) Mj(i, j) = d[i];
    ensure(!sign_singular(Mj), ErrorKind::Singular,
           "Cramer numerator of column " + std::to_string(j) + " is balanced");
  }
  return y;
}

// Reduced costs at the basic point x of basis I (increasing): the signed
// solution of A_Iᵀ ⊙ y ∇ cᵀ, indexed like I. O(n(m+n)).
inline std::vector<SymTrop> reduced_costs(const Instance& inst, const std::vector<std::size_t>& basis,
                                          const Vec& x, TieBreak tie = TieBreak::SmallestIndex) {
  const std::size_t n = inst.n;
  ensure(basis.size() == n && x.size() == n, ErrorKind::Shape, "basis and point need n entries");
  TangentDigraph D = build_tangent(inst.W(), homogeneous(x));
  ensure(D.hyperplanes() == basis, ErrorKind::DegenerateInput, "point is not the basic point of the basis");
  std::vector<std::size_t> match = tangent_matching(D);
  Matrix<SymTrop> M(n, n);
  std::vector<SymTrop> d(n);
  std::vector<std::size_t> sigma(n);
  Vec u(n), v(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t p = 0; p < n; ++p) M(j, p) = inst.A(basis[p], j);
    d[j] = SymTrop(Sign::Pos, inst.c[j]);
    sigma[j] = std::lower_bound(basis.begin(), basis.end(), match[j]) - basis.begin();
    u[j] = -x[j];
  }
  for (std::size_t p = 0; p < n; ++p) {
    Trop best;
    for (std::size_t j = 0; j < n; ++j) best += inst.A(basis[p], j).modulus() * Trop(x[j]);
    v[p] = best.value();
  }
  return cramer_solve_with(M, d, sigma, u, v, tie).y;
}

}  // namespace troplp
