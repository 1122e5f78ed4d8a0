#pragma once

// Dense matrices over the tropical semirings, the optimal assignment problem,
// tropical permanent/determinant and genericity checks.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "troplp/semiring.hpp"

namespace troplp {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& r : init) {
      ensure(r.size() == cols_, ErrorKind::Shape, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix submatrix(const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) const {
    Matrix s(r.size(), c.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) s(i, j) = (*this)(r[i], c[j]);
    return s;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

inline Matrix<Trop> moduli(const Matrix<SymTrop>& m) {
  Matrix<Trop> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).modulus();
  return r;
}

// Result of the optimal assignment problem max_sigma sum_i |m_{i sigma(i)}|.
// When value is finite, sigma is the lexicographically smallest maximizer and
// (u, v) are dual variables: |m_ij| <= u_i + v_j with equality on sigma.
struct Assignment {
  Trop value;
  std::vector<std::size_t> sigma;
  std::vector<Rational> u, v;

  bool tight(const Matrix<Trop>& m, std::size_t i, std::size_t j) const {
    return m(i, j).finite() && m(i, j).value() == u[i] + v[j];
  }
};

// Hungarian method, O(n^3) arithmetic operations.
inline Assignment optimal_assignment(const Matrix<Trop>& m) {
  ensure(m.rows() == m.cols(), ErrorKind::Shape, "assignment needs a square matrix");
  const std::size_t n = m.rows();
  Assignment res;
  if (n == 0) {
    res.value = Trop::one();
    return res;
  }
  // Minimization on costs -|m_ij| with potentials pu, pv (1-based, column 0
  // is the usual sentinel).
  std::vector<Rational> pu(n + 1), pv(n + 1), minv(n + 1);
  std::vector<char> minv_fin(n + 1), used(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv_fin.begin(), minv_fin.end(), 0);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      std::size_t i0 = p[j0], j1 = 0;
      bool have_delta = false;
      Rational delta;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Trop& e = m(i0 - 1, j - 1);
        if (e.finite()) {
          Rational cur = -e.value() - pu[i0] - pv[j];
          if (!minv_fin[j] || cur < minv[j]) {
            minv[j] = cur;
            minv_fin[j] = 1;
            way[j] = j0;
          }
        }
        if (minv_fin[j] && (!have_delta || minv[j] < delta)) {
          delta = minv[j];
          have_delta = true;
          j1 = j;
        }
      }
      if (!have_delta) {
        res.value = Trop::zero();
        return res;
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          pu[p[j]] += delta;
          pv[j] -= delta;
        } else if (minv_fin[j]) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  res.sigma.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) res.sigma[p[j] - 1] = j - 1;
  res.u.resize(n);
  res.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.u[i] = -pu[i + 1];
  for (std::size_t j = 0; j < n; ++j) res.v[j] = -pv[j + 1];
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) total += m(i, res.sigma[i]).value();
  res.value = Trop(total);

  // Among maximizers (perfect matchings of tight entries), move to the
  // lexicographically smallest one, row by row, via alternating cycles.
  std::vector<std::size_t> row_of(n);
  for (std::size_t i = 0; i < n; ++i) row_of[res.sigma[i]] = i;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < res.sigma[i]; ++j) {
      std::size_t start = row_of[j];
      if (start < i || !res.tight(m, i, j)) continue;
      // Path start -> ... -> r with tight (r, sigma(i)), through rows > i.
      std::vector<std::size_t> prev(n, n);
      std::vector<char> seen(n, 0);
      std::vector<std::size_t> queue{start};
      seen[start] = 1;
      std::size_t last = n;
      for (std::size_t q = 0; q < queue.size() && last == n; ++q) {
        std::size_t r = queue[q];
        if (res.tight(m, r, res.sigma[i])) {
          last = r;
          break;
        }
        for (std::size_t r2 = i + 1; r2 < n; ++r2)
          if (!seen[r2] && res.tight(m, r, res.sigma[r2])) {
            seen[r2] = 1;
            prev[r2] = r;
            queue.push_back(r2);
          }
      }
      if (last == n) continue;
      std::vector<std::size_t> cycle;  // i, start, ..., last
      for (std::size_t r = last; r != n; r = prev[r]) cycle.push_back(r);
      cycle.push_back(i);
      std::reverse(cycle.begin(), cycle.end());
      std::vector<std::size_t> old(cycle.size());
      for (std::size_t t = 0; t < cycle.size(); ++t) old[t] = res.sigma[cycle[t]];
      for (std::size_t t = 0; t < cycle.size(); ++t) {
        res.sigma[cycle[t]] = old[(t + 1) % cycle.size()];
        row_of[res.sigma[cycle[t]]] = cycle[t];
      }
      break;
    }
  }
  return res;
}

inline Trop tper(const Matrix<Trop>& m) { return optimal_assignment(m).value; }
inline Trop tper(const Matrix<SymTrop>& m) { return tper(moduli(m)); }

// Sign of a permutation: Pos for even, Neg for odd.
inline Sign permutation_sign(const std::vector<std::size_t>& sigma) {
  std::vector<char> seen(sigma.size(), 0);
  bool odd = false;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = sigma[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) odd = !odd;
  }
  return odd ? Sign::Neg : Sign::Pos;
}

namespace detail {

// Exchange digraph of a maximizing permutation: arc r -> r2 when the entry
// (r, sigma(r2)) is tight. Maximizers other than sigma correspond to unions
// of disjoint cycles of this digraph.
struct ExchangeDigraph {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> out;

  ExchangeDigraph(const Matrix<Trop>& m, const Assignment& a) : n(m.rows()), out(n) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t r2 = 0; r2 < n; ++r2)
        if (r2 != r && a.tight(m, r, a.sigma[r2])) out[r].push_back(r2);
  }

  // Tarjan's strongly connected components; returns component id per node.
  std::vector<std::size_t> components() const {
    std::vector<std::size_t> comp(n, n), index(n, n), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    std::size_t counter = 0, ncomp = 0;
    auto visit = [&](auto&& self, std::size_t v) -> void {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = 1;
      for (std::size_t w : out[v]) {
        if (index[w] == n) {
          self(self, w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
    };
    for (std::size_t v = 0; v < n; ++v)
      if (index[v] == n) visit(visit, v);
    return comp;
  }

  bool has_cycle() const {
    auto comp = components();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t r2 : out[r])
        if (comp[r] == comp[r2]) return true;
    return false;
  }
};

}  // namespace detail

// The maximum in tper(|M|) is attained by a single permutation (or M has no
// finite permutation at all).
inline bool unique_maximizer(const Matrix<Trop>& m) {
  Assignment a = optimal_assignment(m);
  if (a.value.is_zero()) return true;
  return !detail::ExchangeDigraph(m, a).has_cycle();
}

// tdet(M) is balanced: either no finite permutation exists, some maximizing
// permutation uses a balanced entry, or two maximizing permutations carry
// opposite signs. The last case is an even-cycle search in the exchange
// digraph; it runs a DFS over simple cycles inside each strongly connected
// component, which is exponential only when many maximizers tie.
inline bool sign_singular(const Matrix<SymTrop>& m) {
  ensure(m.rows() == m.cols(), ErrorKind::Shape, "sign_singular needs a square matrix");
  const std::size_t n = m.rows();
  Matrix<Trop> mod = moduli(m);
  Assignment a = optimal_assignment(mod);
  if (a.value.is_zero()) return true;
  for (std::size_t i = 0; i < n; ++i)
    if (m(i, a.sigma[i]).is_balanced()) return true;
  detail::ExchangeDigraph g(mod, a);
  auto comp = g.components();
  // Arc label +1 when swapping that entry in flips the term sign, -1 otherwise;
  // a cycle flips the sign of the term iff the product of labels is +1.
  auto label = [&](std::size_t r, std::size_t r2) {
    Sign s = sign_mul(m(r, a.sigma[r2]).sign(), m(r, a.sigma[r]).sign());
    return s == Sign::Pos ? -1 : 1;
  };
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t r2 : g.out[r])
      if (comp[r] == comp[r2] && m(r, a.sigma[r2]).is_balanced()) return true;
  std::vector<char> on_path(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    auto dfs = [&](auto&& self, std::size_t v, int parity) -> bool {
      for (std::size_t w : g.out[v]) {
        if (comp[w] != comp[s] || w < s) continue;
        int p = parity * label(v, w);
        if (w == s) {
          if (p == 1) return true;
          continue;
        }
        if (on_path[w]) continue;
        on_path[w] = 1;
        bool found = self(self, w, p);
        on_path[w] = 0;
        if (found) return true;
      }
      return false;
    };
    on_path[s] = 1;
    bool found = dfs(dfs, s, 1);
    on_path[s] = 0;
    if (found) return true;
  }
  return false;
}

inline SymTrop tdet(const Matrix<SymTrop>& m) {
  Matrix<Trop> mod = moduli(m);
  Assignment a = optimal_assignment(mod);
  if (a.value.is_zero()) return SymTrop::zero();
  if (sign_singular(m)) return SymTrop(Sign::Bal, a.value);
  Sign s = permutation_sign(a.sigma);
  for (std::size_t i = 0; i < m.rows(); ++i) s = sign_mul(s, m(i, a.sigma[i]).sign());
  return SymTrop(s, a.value);
}

struct Submatrix {
  std::vector<std::size_t> rows, cols;
};

enum class GenericityMode { Exhaustive, Asserted };

struct GenericityReport {
  bool checked = false;  // false in asserted mode
  bool generic = true;
  bool sign_generic = true;
  std::optional<Submatrix> not_generic_witness;
  std::optional<Submatrix> not_sign_generic_witness;
  std::size_t submatrices = 0;
};

// Visits all square submatrices by order, then row subset, then column subset
// (lexicographic); the first violation of each kind is kept as witness.
inline GenericityReport check_generic(const Matrix<SymTrop>& m,
                                      GenericityMode mode = GenericityMode::Exhaustive,
                                      std::size_t bound = 8) {
  GenericityReport rep;
  if (mode == GenericityMode::Asserted) return rep;
  rep.checked = true;
  const std::size_t kmax = std::min(m.rows(), m.cols());
  if (kmax > bound)
    fail(ErrorKind::TooLarge, "exhaustive genericity check on order " + std::to_string(kmax) +
                                  " exceeds bound " + std::to_string(bound));
  auto next_subset = [](std::vector<std::size_t>& s, std::size_t total) {
    std::size_t k = s.size();
    for (std::size_t t = k; t-- > 0;) {
      if (s[t] < total - k + t) {
        ++s[t];
        for (std::size_t u = t + 1; u < k; ++u) s[u] = s[u - 1] + 1;
        return true;
      }
    }
    return false;
  };
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::size_t> r(k);
    for (std::size_t t = 0; t < k; ++t) r[t] = t;
    do {
      std::vector<std::size_t> c(k);
      for (std::size_t t = 0; t < k; ++t) c[t] = t;
      do {
        ++rep.submatrices;
        Matrix<SymTrop> sub = m.submatrix(r, c);
        Matrix<Trop> mod = moduli(sub);
        Assignment a = optimal_assignment(mod);
        if (a.value.is_zero()) continue;
        if (rep.generic && detail::ExchangeDigraph(mod, a).has_cycle()) {
          rep.generic = false;
          rep.not_generic_witness = Submatrix{r, c};
        }
        if (rep.sign_generic && sign_singular(sub)) {
          rep.sign_generic = false;
          rep.not_sign_generic_witness = Submatrix{r, c};
        }
        if (!rep.generic && !rep.sign_generic) return rep;
      } while (next_subset(c, m.cols()));
    } while (next_subset(r, m.rows()));
  }
  return rep;
}

}  // namespace troplp
