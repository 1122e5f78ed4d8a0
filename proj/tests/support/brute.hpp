#pragma once

// Exhaustive reference computations: permutation sums, Cramer's rule by
// determinants, genericity by listing all maximizing permutations. Only for
// small matrices.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "troplp/troplp.hpp"

namespace brute {

using namespace troplp;

struct PermStats {
  Trop best;
  std::size_t maximizers = 0;
  bool pos = false, neg = false;  // signs of the maximizing terms
};

inline PermStats permutations(const Matrix<SymTrop>& M) {
  const std::size_t n = M.rows();
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), 0);
  PermStats st;
  do {
    SymTrop term = SymTrop::one();
    for (std::size_t i = 0; i < n; ++i) term *= M(i, s[i]);
    if (term.is_zero()) continue;
    if (permutation_sign(s) == Sign::Neg) term = -term;
    if (st.maximizers == 0 || term.modulus() > st.best) {
      st = PermStats{term.modulus(), 0, false, false};
    }
    if (term.modulus() == st.best) {
      ++st.maximizers;
      (term.is_pos() ? st.pos : st.neg) = true;
    }
  } while (std::next_permutation(s.begin(), s.end()));
  return st;
}

inline Trop tper(const Matrix<SymTrop>& M) { return permutations(M).best; }

// Signed sum of all permutation terms.
inline SymTrop tdet(const Matrix<SymTrop>& M) {
  const std::size_t n = M.rows();
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), 0);
  SymTrop sum;
  do {
    SymTrop term = SymTrop::one();
    for (std::size_t i = 0; i < n; ++i) term *= M(i, s[i]);
    if (permutation_sign(s) == Sign::Neg) term = -term;
    sum += term;
  } while (std::next_permutation(s.begin(), s.end()));
  return sum;
}

// y_j = tdet(M)^{-1} ⊙ tdet(M with column j replaced by d); empty when some
// numerator is balanced.
inline std::optional<std::vector<SymTrop>> cramer(const Matrix<SymTrop>& M,
                                                  const std::vector<SymTrop>& d) {
  const std::size_t n = M.rows();
  SymTrop det = brute::tdet(M);
  std::vector<SymTrop> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<SymTrop> Mj = M;
    for (std::size_t i = 0; i < n; ++i) Mj(i, j) = d[i];
    SymTrop num = brute::tdet(Mj);
    if (num.is_balanced()) return std::nullopt;
    y[j] = num * det.inverse();
  }
  return y;
}

struct Genericity {
  bool generic = true, sign_generic = true;
};

inline Genericity genericity(const Matrix<SymTrop>& W) {
  Genericity g;
  const std::size_t R = W.rows(), C = W.cols();
  for (unsigned rm = 1; rm < (1u << R); ++rm)
    for (unsigned cm = 1; cm < (1u << C); ++cm) {
      if (__builtin_popcount(rm) != __builtin_popcount(cm)) continue;
      std::vector<std::size_t> r, c;
      for (std::size_t i = 0; i < R; ++i)
        if (rm >> i & 1) r.push_back(i);
      for (std::size_t j = 0; j < C; ++j)
        if (cm >> j & 1) c.push_back(j);
      PermStats st = permutations(W.submatrix(r, c));
      if (st.maximizers == 0) continue;
      if (st.maximizers > 1) g.generic = false;
      if (st.pos && st.neg) g.sign_generic = false;
    }
  return g;
}

}  // namespace brute
