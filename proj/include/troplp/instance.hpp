#pragma once

// Tropical linear programs  minimize c ⊙ x  subject to  A⁺x ⊕ b⁺ ≥ A⁻x ⊕ b⁻.
//
// A and b are stored as signed matrices: a positive entry belongs to the
// "+" side, a negative entry to the "-" side, so each entry sits on at most
// one side. W = (A b) is the homogenized constraint matrix whose last column
// is the affine coordinate x_{n+1}.

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "troplp/linalg.hpp"

namespace troplp {

using Vec = std::vector<Rational>;

struct Instance {
  std::size_t n = 0;  // variables
  std::size_t m = 0;  // constraints
  Matrix<SymTrop> A;
  std::vector<SymTrop> b;
  std::vector<Trop> c;
  std::optional<std::vector<std::size_t>> initial_basis;

  Matrix<SymTrop> W() const {
    Matrix<SymTrop> w(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) w(i, j) = A(i, j);
      w(i, n) = b[i];
    }
    return w;
  }
};

// max_j over the entries of row i with the given sign of |W_ij| + xi_j.
inline Trop row_side(const Matrix<SymTrop>& W, std::size_t i, const Vec& xi, Sign side) {
  Trop best;
  for (std::size_t j = 0; j < W.cols(); ++j)
    if (W(i, j).sign() == side) best += W(i, j).modulus() * Trop(xi[j]);
  return best;
}

inline Vec homogeneous(const Vec& x) {
  Vec xi = x;
  xi.push_back(0);
  return xi;
}

inline Vec dehomogenize(const Vec& xi) {
  Vec x(xi.size() - 1);
  for (std::size_t j = 0; j + 1 < xi.size(); ++j) x[j] = xi[j] - xi.back();
  return x;
}

inline Trop objective(const Instance& inst, const std::vector<Trop>& x) {
  ensure(x.size() == inst.n, ErrorKind::Shape, "point has wrong length");
  Trop v;
  for (std::size_t j = 0; j < inst.n; ++j) v += inst.c[j] * x[j];
  return v;
}

inline Trop objective(const Instance& inst, const Vec& x) {
  return objective(inst, std::vector<Trop>(x.begin(), x.end()));
}

inline bool feasible(const Instance& inst, const std::vector<Trop>& x) {
  ensure(x.size() == inst.n, ErrorKind::Shape, "point has wrong length");
  for (std::size_t i = 0; i < inst.m; ++i) {
    Trop plus = inst.b[i].is_pos() ? inst.b[i].modulus() : Trop();
    Trop minus = inst.b[i].is_neg() ? inst.b[i].modulus() : Trop();
    for (std::size_t j = 0; j < inst.n; ++j) {
      const SymTrop& a = inst.A(i, j);
      if (a.is_pos()) plus += a.modulus() * x[j];
      if (a.is_neg()) minus += a.modulus() * x[j];
    }
    if (plus < minus) return false;
  }
  return true;
}

inline bool feasible(const Instance& inst, const Vec& x) {
  return feasible(inst, std::vector<Trop>(x.begin(), x.end()));
}

// Why x_j > -inf holds on the feasible set. A unit row is x_j >= -inf written
// as a row with a single positive entry in column j and b = -inf. A variable is
// derived positive when some row reads  x_j ⊙ a ≥ (terms in b⁻ or in variables
// already known positive), with a non-empty right-hand side.
enum class Positivity { UnitRow, Derived, Unknown };

inline std::vector<Positivity> positivity_certificate(const Instance& inst) {
  std::vector<Positivity> st(inst.n, Positivity::Unknown);
  for (std::size_t i = 0; i < inst.m; ++i) {
    if (!inst.b[i].is_zero()) continue;
    std::size_t finite = 0, col = 0;
    for (std::size_t j = 0; j < inst.n; ++j)
      if (!inst.A(i, j).is_zero()) {
        ++finite;
        col = j;
      }
    if (finite == 1 && inst.A(i, col).is_pos()) st[col] = Positivity::UnitRow;
  }
  Matrix<SymTrop> W = inst.W();
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < inst.m; ++i) {
      std::size_t npos = 0, col = 0;
      bool rhs_nonempty = false, rhs_known = true;
      for (std::size_t j = 0; j <= inst.n; ++j) {
        if (W(i, j).is_pos()) {
          ++npos;
          col = j;
        } else if (W(i, j).is_neg()) {
          rhs_nonempty = true;
          if (j < inst.n && st[j] == Positivity::Unknown) rhs_known = false;
        }
      }
      if (npos == 1 && col < inst.n && rhs_nonempty && rhs_known &&
          st[col] == Positivity::Unknown) {
        st[col] = Positivity::Derived;
        changed = true;
      }
    }
  }
  return st;
}

inline bool assumption_c_certified(const Instance& inst) {
  for (Positivity p : positivity_certificate(inst))
    if (p == Positivity::Unknown) return false;
  return true;
}

// ---------------------------------------------------------------------------
// JSON encoding. A number is a JSON integer, a decimal string or "p/q"; an
// entry is null (-inf) or {"s": "+"|"-", "v": number}; c holds numbers or null.

inline Rational num_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  if (j.is_string()) return parse_num(j.get<std::string>());
  fail(ErrorKind::Parse, "expected integer or numeric string, got " + j.dump());
}

inline nlohmann::json num_to_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return format_num(q);
}

inline SymTrop entry_from_json(const nlohmann::json& j) {
  if (j.is_null()) return SymTrop::zero();
  if (!j.is_object() || !j.contains("s") || !j.contains("v"))
    fail(ErrorKind::Parse, "entry must be null or {\"s\", \"v\"}: " + j.dump());
  std::string s = j.at("s").get<std::string>();
  Rational v = num_from_json(j.at("v"));
  if (s == "+") return SymTrop::pos(v);
  if (s == "-") return SymTrop::neg(v);
  fail(ErrorKind::Parse, "entry sign must be \"+\" or \"-\": " + j.dump());
}

inline nlohmann::json entry_to_json(const SymTrop& x) {
  ensure(x.is_signed(), ErrorKind::Balanced, "balanced entries have no JSON form");
  if (x.is_zero()) return nullptr;
  return {{"s", x.is_pos() ? "+" : "-"}, {"v", num_to_json(x.modulus().value())}};
}

inline Matrix<SymTrop> matrix_from_json(const nlohmann::json& j, std::size_t rows,
                                        std::size_t cols, const char* name) {
  if (!j.is_array() || j.size() != rows)
    fail(ErrorKind::Parse, std::string(name) + " must have " + std::to_string(rows) + " rows");
  Matrix<SymTrop> M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      fail(ErrorKind::Parse, std::string(name) + " row " + std::to_string(i) + " must have " +
                                 std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) M(i, k) = entry_from_json(j[i][k]);
  }
  return M;
}

inline std::vector<SymTrop> vector_from_json(const nlohmann::json& j, std::size_t len,
                                             const char* name) {
  if (!j.is_array() || j.size() != len)
    fail(ErrorKind::Parse, std::string(name) + " must have " + std::to_string(len) + " entries");
  std::vector<SymTrop> v;
  for (const auto& e : j) v.push_back(entry_from_json(e));
  return v;
}

inline nlohmann::json matrix_to_json(const Matrix<SymTrop>& M) {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < M.cols(); ++k) row.push_back(entry_to_json(M(i, k)));
    j.push_back(row);
  }
  return j;
}

inline void validate(const Instance& inst) {
  ensure(inst.A.rows() == inst.m && inst.A.cols() == inst.n && inst.b.size() == inst.m &&
             inst.c.size() == inst.n,
         ErrorKind::Shape, "instance dimensions disagree");
  for (std::size_t i = 0; i < inst.m; ++i) {
    bool any = !inst.b[i].is_zero();
    for (std::size_t j = 0; j < inst.n; ++j) {
      ensure(inst.A(i, j).is_signed(), ErrorKind::Parse, "balanced entry in A");
      any = any || !inst.A(i, j).is_zero();
    }
    ensure(inst.b[i].is_signed(), ErrorKind::Parse, "balanced entry in b");
    ensure(any, ErrorKind::NotStandard, "row " + std::to_string(i) + " of (A b) is identically -inf");
  }
  if (inst.initial_basis) {
    ensure(inst.initial_basis->size() == inst.n, ErrorKind::Parse,
           "initial_basis must have num_vars entries");
    for (std::size_t i : *inst.initial_basis)
      ensure(i < inst.m, ErrorKind::Parse, "initial_basis index out of range");
  }
}

inline Instance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorKind::Parse, "instance must be a JSON object");
  for (const char* key : {"num_vars", "num_constraints", "A", "b", "c"})
    if (!j.contains(key)) fail(ErrorKind::Parse, std::string("missing field ") + key);
  Instance inst;
  inst.n = j.at("num_vars").get<std::size_t>();
  inst.m = j.at("num_constraints").get<std::size_t>();
  inst.A = matrix_from_json(j.at("A"), inst.m, inst.n, "A");
  inst.b = vector_from_json(j.at("b"), inst.m, "b");
  const auto& jc = j.at("c");
  if (!jc.is_array() || jc.size() != inst.n)
    fail(ErrorKind::Parse, "c must have num_vars entries");
  for (const auto& e : jc) inst.c.push_back(e.is_null() ? Trop() : Trop(num_from_json(e)));
  if (j.contains("initial_basis") && !j.at("initial_basis").is_null())
    inst.initial_basis = j.at("initial_basis").get<std::vector<std::size_t>>();
  validate(inst);
  return inst;
}

inline nlohmann::json to_json(const Instance& inst) {
  nlohmann::json j;
  j["num_vars"] = inst.n;
  j["num_constraints"] = inst.m;
  j["A"] = matrix_to_json(inst.A);
  nlohmann::json b = nlohmann::json::array(), c = nlohmann::json::array();
  for (const auto& e : inst.b) b.push_back(entry_to_json(e));
  for (const auto& e : inst.c) c.push_back(e.finite() ? num_to_json(e.value()) : nullptr);
  j["b"] = b;
  j["c"] = c;
  if (inst.initial_basis) j["initial_basis"] = *inst.initial_basis;
  return j;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
}

inline Instance load_instance(const std::string& path) {
  try {
    return instance_from_json(read_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
}

}  // namespace troplp
