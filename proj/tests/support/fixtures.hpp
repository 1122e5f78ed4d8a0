#pragma once

// Worked examples used across the test suites, written out entry by entry.
// Rows are 0-based; the docs call them H1..H5 for the running example.

#include <vector>

#include "troplp/troplp.hpp"

namespace fixtures {

using troplp::Instance;
using troplp::Matrix;
using troplp::SymTrop;
using troplp::Trop;

inline SymTrop p(long v) { return SymTrop::pos(v); }
inline SymTrop q(long v) { return SymTrop::neg(v); }
inline SymTrop z() { return SymTrop::zero(); }

// minimize max(x1-2, x2, x3-1) subject to
//   H1: max(x2-1, 0) >= max(x1-1, x3-1)
//   H2: x3 >= max(x2-2, 0)
//   H3: x2 >= 0
//   H4: x1 >= max(x2-3, 0)
//   H5: 0 >= x2-4
inline Instance running_example() {
  Instance inst;
  inst.n = 3;
  inst.m = 5;
  inst.A = Matrix<SymTrop>{{q(-1), p(-1), q(-1)},
                           {z(), q(-2), p(0)},
                           {z(), p(0), z()},
                           {p(0), q(-3), z()},
                           {z(), q(-4), z()}};
  inst.b = {p(0), q(0), q(0), q(0), p(0)};
  inst.c = {Trop(-2L), Trop(0L), Trop(-1L)};
  inst.initial_basis = std::vector<std::size_t>{0, 1, 4};
  return inst;
}

// The 4x3 signed matrix with a non-generic 2x2 block (rows 0,1 x cols 0,1)
// and a sign-singular block (rows 1,2 x cols 0,2).
inline Matrix<SymTrop> first_example_W() {
  return Matrix<SymTrop>{{p(-5), p(-3), q(0)},
                         {q(-7), p(-5), p(0)},
                         {p(-7), p(-2), q(0)},
                         {p(-2), q(-6), q(0)}};
}

// The planar instance whose homogenization is first_example_W, with the
// unit rows x1 >= -inf and x2 >= -inf appended, minimizing max(x1, x2).
// The point (7, -inf) is feasible.
inline Instance planar_example() {
  Matrix<SymTrop> W = first_example_W();
  Instance inst;
  inst.n = 2;
  inst.m = 6;
  inst.A = Matrix<SymTrop>(6, 2);
  inst.b.resize(6);
  for (std::size_t i = 0; i < 4; ++i) {
    inst.A(i, 0) = W(i, 0);
    inst.A(i, 1) = W(i, 1);
    inst.b[i] = W(i, 2);
  }
  inst.A(4, 0) = p(0);
  inst.A(5, 1) = p(0);
  inst.c = {Trop(0L), Trop(0L)};
  return inst;
}

// Cramer system M ⊙ y ∇ d with solution (⊖(-1), -1, 0).
inline Matrix<SymTrop> cramer_example_M() {
  return Matrix<SymTrop>{{q(-1), z(), z()}, {p(-1), q(-2), p(0)}, {q(-1), p(0), z()}};
}
inline std::vector<SymTrop> cramer_example_d() { return {p(-2), p(0), p(-1)}; }

}  // namespace fixtures
