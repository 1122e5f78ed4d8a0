#pragma once

// Independent oracles: a classical simplex method over generalized Puiseux
// series in t (t -> 0+) applied to a lift of the tropical program, and a
// brute-force enumeration of tropical basic points.
//
// A series here is a finite sum of rational multiples of t^q, q rational,
// kept as a map exponent -> coefficient. Its valuation is minus its smallest
// exponent and its sign is the sign of that leading coefficient.

#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "troplp/simplex.hpp"

namespace troplp {

class GenPoly {
 public:
  GenPoly() = default;
  GenPoly(const Rational& c) { if (c != 0) terms_[Rational(0)] = c; }
  static GenPoly monomial(const Rational& coef, const Rational& exponent) {
    GenPoly p;
    if (coef != 0) p.terms_[exponent] = coef;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  int sign() const { return is_zero() ? 0 : sgn(terms_.begin()->second); }
  const Rational& lead_exponent() const { return terms_.begin()->first; }
  const Rational& lead_coef() const { return terms_.begin()->second; }
  Trop valuation() const { return is_zero() ? Trop() : Trop(Rational(-lead_exponent())); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Rational, Rational>& terms() const { return terms_; }
  bool is_monomial() const { return terms_.size() == 1; }

  GenPoly& operator+=(const GenPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  GenPoly& operator-=(const GenPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend GenPoly operator+(GenPoly a, const GenPoly& b) { return a += b; }
  friend GenPoly operator-(GenPoly a, const GenPoly& b) { return a -= b; }
  friend GenPoly operator-(const GenPoly& a) { return GenPoly() - a; }
  friend GenPoly operator*(const GenPoly& a, const GenPoly& b) {
    GenPoly r;
    for (const auto& [e1, c1] : a.terms_)
      for (const auto& [e2, c2] : b.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
  }
  friend bool operator==(const GenPoly& a, const GenPoly& b) { return a.terms_ == b.terms_; }

  // Exact quotient a / b; fails if b does not divide a.
  friend GenPoly exact_div(GenPoly a, const GenPoly& b) {
    ensure(!b.is_zero(), ErrorKind::Internal, "division by zero series");
    GenPoly q;
    const Rational top = a.is_zero() ? Rational(0) : a.terms_.rbegin()->first;
    while (!a.is_zero()) {
      Rational e = a.lead_exponent() - b.lead_exponent();
      ensure(e + b.terms_.rbegin()->first <= top, ErrorKind::Internal, "inexact series division");
      GenPoly t = monomial(a.lead_coef() / b.lead_coef(), e);
      q += t;
      a -= t * b;
    }
    return q;
  }

 private:
  void add_term(const Rational& e, const Rational& c) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    } else if (c == 0) {
      terms_.erase(it);
    }
  }
  std::map<Rational, Rational> terms_;
};

std::string to_string(const GenPoly& p);

// Quotient of two series; the field operations used by the oracle.
class PuiseuxNum {
 public:
  PuiseuxNum() : den_(Rational(1)) {}
  PuiseuxNum(const GenPoly& p) : num_(p), den_(Rational(1)) {}
  PuiseuxNum(const GenPoly& n, const GenPoly& d) : num_(n), den_(d) {
    ensure(!d.is_zero(), ErrorKind::Internal, "zero denominator");
    normalize();
  }

  const GenPoly& num() const { return num_; }
  const GenPoly& den() const { return den_; }
  int sign() const { return num_.sign() * den_.sign(); }
  bool is_zero() const { return num_.is_zero(); }
  Trop valuation() const {
    if (num_.is_zero()) return Trop();
    return Trop(Rational(den_.lead_exponent() - num_.lead_exponent()));
  }

  friend PuiseuxNum operator+(const PuiseuxNum& a, const PuiseuxNum& b) {
    if (a.den_ == b.den_) return PuiseuxNum(a.num_ + b.num_, a.den_);
    return PuiseuxNum(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend PuiseuxNum operator-(const PuiseuxNum& a) { return PuiseuxNum(-a.num_, a.den_); }
  friend PuiseuxNum operator-(const PuiseuxNum& a, const PuiseuxNum& b) { return a + (-b); }
  friend PuiseuxNum operator*(const PuiseuxNum& a, const PuiseuxNum& b) {
    return PuiseuxNum(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend PuiseuxNum operator/(const PuiseuxNum& a, const PuiseuxNum& b) {
    ensure(!b.is_zero(), ErrorKind::Internal, "division by zero");
    return PuiseuxNum(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend int compare(const PuiseuxNum& a, const PuiseuxNum& b) { return (a - b).sign(); }
  friend bool operator<(const PuiseuxNum& a, const PuiseuxNum& b) { return compare(a, b) < 0; }
  friend bool operator==(const PuiseuxNum& a, const PuiseuxNum& b) { return compare(a, b) == 0; }

 private:
  void normalize() {
    if (den_.is_monomial()) {
      num_ = num_ * GenPoly::monomial(1 / den_.lead_coef(), -den_.lead_exponent());
      den_ = GenPoly(Rational(1));
    }
  }
  GenPoly num_, den_;
};

// Signed valuation: the valuation tagged with the sign of the leading term.
inline SymTrop sval(const PuiseuxNum& x) {
  if (x.is_zero()) return SymTrop::zero();
  return SymTrop(x.sign() > 0 ? Sign::Pos : Sign::Neg, x.valuation());
}

inline std::string to_string(const GenPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : p.terms()) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    Rational a = abs(c);
    bool unit = a == 1 && e != 0;
    if (!unit) s += format_num(a);
    if (e != 0) s += std::string(unit ? "" : "*") + "t^" + (e.get_den() == 1 ? format_num(e) : "(" + format_num(e) + ")");
  }
  return s;
}

inline std::string to_string(const PuiseuxNum& x) {
  if (x.den() == GenPoly(Rational(1))) return to_string(x.num());
  return "(" + to_string(x.num()) + ")/(" + to_string(x.den()) + ")";
}

// Classical LP  minimize c·x  subject to  A x + b >= 0  over Puiseux series.
struct LiftedLP {
  std::size_t n = 0, m = 0;
  Matrix<GenPoly> A;
  std::vector<GenPoly> b, c;
  // Row r of the lift comes from row origin[r] of the tropical instance, or
  // is a non-negativity row x_j >= 0 when origin[r] >= the instance's m.
  std::vector<std::size_t> origin;
};

// Lift with A⁺ -> (n+2) t^{-a}, A⁻ -> t^{-a} (same for b) and c_j -> t^{-c_j}.
// Rows x_j >= 0 are appended for the variables without a unit row, so that
// the lifted polyhedron sits in the non-negative orthant.
inline LiftedLP lift(const Instance& inst, bool attest_positive = false) {
  std::vector<Positivity> pos = positivity_certificate(inst);
  if (!attest_positive)
    for (std::size_t j = 0; j < inst.n; ++j)
      ensure(pos[j] != Positivity::Unknown, ErrorKind::AssumptionC,
             "no certificate that x" + std::to_string(j + 1) + " > -inf on the feasible set");
  const Rational alpha(static_cast<long>(inst.n + 2));
  auto entry = [&](const SymTrop& a) {
    if (a.is_zero()) return GenPoly();
    Rational e = -a.modulus().value();
    return a.is_pos() ? GenPoly::monomial(alpha, e) : GenPoly::monomial(Rational(-1), e);
  };
  LiftedLP lp;
  lp.n = inst.n;
  std::vector<std::size_t> extra;
  for (std::size_t j = 0; j < inst.n; ++j)
    if (pos[j] != Positivity::UnitRow) extra.push_back(j);
  lp.m = inst.m + extra.size();
  lp.A = Matrix<GenPoly>(lp.m, lp.n);
  lp.b.resize(lp.m);
  for (std::size_t i = 0; i < inst.m; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) lp.A(i, j) = entry(inst.A(i, j));
    lp.b[i] = entry(inst.b[i]);
    lp.origin.push_back(i);
  }
  for (std::size_t t = 0; t < extra.size(); ++t) {
    lp.A(inst.m + t, extra[t]) = GenPoly(Rational(1));
    lp.origin.push_back(inst.m + extra[t]);
  }
  for (std::size_t j = 0; j < inst.n; ++j)
    lp.c.push_back(inst.c[j].finite() ? GenPoly::monomial(Rational(1), -inst.c[j].value()) : GenPoly());
  return lp;
}

// Fraction-free (Bareiss) determinant.
inline GenPoly determinant(Matrix<GenPoly> a) {
  const std::size_t n = a.rows();
  if (n == 0) return GenPoly(Rational(1));
  GenPoly prev(Rational(1));
  bool flip = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a(r, k).is_zero()) ++r;
      if (r == n) return GenPoly();
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      flip = !flip;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
    prev = a(k, k);
  }
  return flip ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

// Adjugate: adj(j, k) = (-1)^{j+k} det(a without row k and column j).
inline Matrix<GenPoly> adjugate(const Matrix<GenPoly>& a) {
  const std::size_t n = a.rows();
  Matrix<GenPoly> adj(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t t = 0; t < n; ++t) {
        if (t != k) rows.push_back(t);
        if (t != j) cols.push_back(t);
      }
      GenPoly minor = determinant(a.submatrix(rows, cols));
      adj(j, k) = (j + k) % 2 ? -minor : minor;
    }
  return adj;
}

struct ClassicalStep {
  std::vector<std::size_t> basis;  // lifted row indices, increasing
  std::vector<PuiseuxNum> point;
  PuiseuxNum objective;
  std::vector<PuiseuxNum> reduced_costs;
  std::size_t leaving = 0, entering = 0;  // meaningful except at the last step
};

struct ClassicalResult {
  std::vector<ClassicalStep> path;
  bool optimal = false;
};

// Classical simplex from the basic point of I0 (rows of the lifted LP).
// The rule mirrors the tropical one: Bland takes the smallest row with a
// negative reduced cost, MostNegative the one of largest valuation.
inline ClassicalResult classical_simplex(const LiftedLP& lp, std::vector<std::size_t> basis,
                                         PivotRule rule = PivotRule::Bland,
                                         std::size_t max_steps = 10000) {
  const std::size_t n = lp.n;
  std::sort(basis.begin(), basis.end());
  ensure(basis.size() == n, ErrorKind::Shape, "basis must have n rows");
  ClassicalResult res;
  for (std::size_t step = 0; step < max_steps; ++step) {
    Matrix<GenPoly> AI(n, n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t j = 0; j < n; ++j) AI(p, j) = lp.A(basis[p], j);
    GenPoly det = determinant(AI);
    ensure(!det.is_zero(), ErrorKind::DegenerateLift, "singular basis in the lift");
    Matrix<GenPoly> adj = adjugate(AI);
    // x = -A_I^{-1} b_I = N / det.
    std::vector<GenPoly> N(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) N[j] -= adj(j, k) * lp.b[basis[k]];
    ClassicalStep cs;
    cs.basis = basis;
    for (std::size_t j = 0; j < n; ++j) cs.point.emplace_back(N[j], det);
    GenPoly obj;
    for (std::size_t j = 0; j < n; ++j) obj += lp.c[j] * N[j];
    cs.objective = PuiseuxNum(obj, det);
    std::vector<GenPoly> slack(lp.m);
    for (std::size_t i = 0; i < lp.m; ++i) {
      slack[i] = lp.b[i] * det;
      for (std::size_t j = 0; j < n; ++j) slack[i] += lp.A(i, j) * N[j];
      ensure(PuiseuxNum(slack[i], det).sign() >= 0, ErrorKind::NotStandard,
             "lifted basic point violates row " + std::to_string(i));
    }
    std::optional<std::size_t> lv;
    for (std::size_t k = 0; k < n; ++k) {
      GenPoly y;
      for (std::size_t j = 0; j < n; ++j) y += lp.c[j] * adj(j, k);
      cs.reduced_costs.emplace_back(y, det);
      const PuiseuxNum& yk = cs.reduced_costs.back();
      if (yk.sign() >= 0) continue;
      if (!lv || (rule == PivotRule::MostNegative &&
                  yk.valuation() > cs.reduced_costs[*lv].valuation()))
        lv = k;
    }
    if (!lv) {
      res.path.push_back(std::move(cs));
      res.optimal = true;
      return res;
    }
    // Move along d = A_I^{-1} e_k; row i limits the step when A_i d < 0.
    const std::size_t k = *lv;
    std::optional<std::size_t> ent;
    PuiseuxNum best;
    std::size_t ties = 0;
    for (std::size_t i = 0; i < lp.m; ++i) {
      if (std::binary_search(basis.begin(), basis.end(), i)) continue;
      GenPoly ad;
      for (std::size_t j = 0; j < n; ++j) ad += lp.A(i, j) * adj(j, k);
      if (PuiseuxNum(ad, det).sign() >= 0) continue;
      PuiseuxNum ratio(slack[i], -ad);
      int c = ent ? compare(ratio, best) : -1;
      if (c < 0) {
        ent = i;
        best = ratio;
        ties = 1;
      } else if (c == 0) {
        ++ties;
      }
    }
    ensure(ent.has_value(), ErrorKind::NotStandard, "lifted LP is unbounded");
    ensure(ties == 1, ErrorKind::DegenerateLift, "ratio test tie");
    cs.leaving = basis[k];
    cs.entering = *ent;
    res.path.push_back(std::move(cs));
    basis.erase(basis.begin() + k);
    basis.insert(std::lower_bound(basis.begin(), basis.end(), *ent), *ent);
  }
  fail(ErrorKind::Internal, "classical simplex exceeded its step limit");
}

// ---------------------------------------------------------------------------

struct BasicPointRecord {
  std::vector<std::size_t> basis;
  Vec point;
  Trop objective;
};

struct Enumeration {
  std::vector<BasicPointRecord> feasible;  // in lexicographic order of bases
  std::optional<std::size_t> best;         // index of a minimizer
};

inline std::size_t enumeration_bound() {
  if (const char* env = std::getenv("TROPLP_MAX_ENUM")) return std::stoull(env);
  return 100000;
}

inline double binomial(std::size_t m, std::size_t k) {
  double r = 1;
  for (std::size_t t = 1; t <= k; ++t) r = r * double(m - k + t) / double(t);
  return r;
}

// Every n-subset I whose system A_I ⊙ x ⊕ b_I ∇ -inf has a unique signed
// solution, kept when that solution is finite, positive and feasible.
inline Enumeration enumerate_basic_points(const Instance& inst, std::size_t bound = enumeration_bound()) {
  const std::size_t n = inst.n, m = inst.m;
  ensure(n <= m, ErrorKind::NotStandard, "fewer constraints than variables");
  ensure(binomial(m, n) <= double(bound), ErrorKind::TooLarge,
         "C(" + std::to_string(m) + "," + std::to_string(n) + ") subsets exceed bound " +
             std::to_string(bound));
  Enumeration out;
  std::vector<std::size_t> I(n);
  for (std::size_t t = 0; t < n; ++t) I[t] = t;
  for (;;) {
    if (std::optional<Vec> x = basic_point(inst, I); x && feasible(inst, *x)) {
      Trop obj = objective(inst, *x);
      out.feasible.push_back({I, *x, obj});
      if (!out.best || obj < out.feasible[*out.best].objective) out.best = out.feasible.size() - 1;
    }
    std::size_t t = n;
    while (t > 0 && I[t - 1] == m - n + t - 1) --t;
    if (t == 0) break;
    ++I[t - 1];
    for (std::size_t u = t; u < n; ++u) I[u] = I[u - 1] + 1;
  }
  return out;
}

}  // namespace troplp
