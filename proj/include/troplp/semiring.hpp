#pragma once

// Max-plus scalars and their signed/symmetrized extension.
//
// Trop is the max-plus semiring: a + b is max, a * b is ordinary sum, zero()
// is -inf and one() is 0. SymTrop adds a sign: positive, negative (written
// with a leading "⊖"), balanced (trailing "•") or the zero element. On SymTrop
// the operators read + for ⊕, * for ⊙ and unary - for ⊖.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "troplp/error.hpp"

namespace troplp {

using Rational = mpq_class;

std::string format_num(const Rational& q);
Rational parse_num(std::string_view s);

class Trop {
 public:
  Trop() = default;
  Trop(const Rational& v) : finite_(true), v_(v) { v_.canonicalize(); }
  Trop(long v) : finite_(true), v_(v) {}

  static Trop zero() { return Trop(); }
  static Trop one() { return Trop(0L); }

  bool is_zero() const { return !finite_; }
  bool finite() const { return finite_; }
  const Rational& value() const {
    ensure(finite_, ErrorKind::Internal, "value() of tropical zero");
    return v_;
  }

  friend Trop operator+(const Trop& a, const Trop& b) { return a < b ? b : a; }
  friend Trop operator*(const Trop& a, const Trop& b) {
    if (!a.finite_ || !b.finite_) return Trop();
    return Trop(Rational(a.v_ + b.v_));
  }
  Trop& operator+=(const Trop& o) { return *this = *this + o; }
  Trop& operator*=(const Trop& o) { return *this = *this * o; }

  // Multiplicative inverse; only for finite values.
  Trop inverse() const { return Trop(Rational(-value())); }

  friend bool operator==(const Trop& a, const Trop& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
  }
  friend std::strong_ordering operator<=>(const Trop& a, const Trop& b) {
    if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  bool finite_ = false;
  Rational v_;
};

enum class Sign : std::int8_t { Neg = -1, Zero = 0, Pos = 1, Bal = 2 };

inline Sign sign_mul(Sign a, Sign b) {
  if (a == Sign::Zero || b == Sign::Zero) return Sign::Zero;
  if (a == Sign::Bal || b == Sign::Bal) return Sign::Bal;
  return a == b ? Sign::Pos : Sign::Neg;
}

inline Sign sign_neg(Sign a) {
  if (a == Sign::Pos) return Sign::Neg;
  if (a == Sign::Neg) return Sign::Pos;
  return a;
}

class SymTrop {
 public:
  SymTrop() = default;
  SymTrop(Sign s, const Trop& m) : sign_(m.is_zero() ? Sign::Zero : s), mod_(m) {
    if (sign_ == Sign::Zero) mod_ = Trop();
  }

  static SymTrop zero() { return SymTrop(); }
  static SymTrop one() { return pos(Rational(0)); }
  static SymTrop pos(const Rational& v) { return SymTrop(Sign::Pos, Trop(v)); }
  static SymTrop neg(const Rational& v) { return SymTrop(Sign::Neg, Trop(v)); }
  static SymTrop bal(const Rational& v) { return SymTrop(Sign::Bal, Trop(v)); }

  Sign sign() const { return sign_; }
  const Trop& modulus() const { return mod_; }
  bool is_zero() const { return sign_ == Sign::Zero; }
  bool is_pos() const { return sign_ == Sign::Pos; }
  bool is_neg() const { return sign_ == Sign::Neg; }
  bool is_balanced() const { return sign_ == Sign::Bal; }
  // Signed means an element of the signed tropical numbers, zero included.
  bool is_signed() const { return sign_ != Sign::Bal; }

  friend SymTrop operator+(const SymTrop& a, const SymTrop& b) {
    if (a.mod_ > b.mod_) return a;
    if (b.mod_ > a.mod_) return b;
    if (a.sign_ == b.sign_) return a;
    return SymTrop(Sign::Bal, a.mod_);
  }
  friend SymTrop operator*(const SymTrop& a, const SymTrop& b) {
    return SymTrop(sign_mul(a.sign_, b.sign_), a.mod_ * b.mod_);
  }
  friend SymTrop operator-(const SymTrop& a) { return SymTrop(sign_neg(a.sign_), a.mod_); }
  SymTrop& operator+=(const SymTrop& o) { return *this = *this + o; }
  SymTrop& operator*=(const SymTrop& o) { return *this = *this * o; }

  // Inverse of a signed non-zero element: negated modulus, same sign.
  SymTrop inverse() const {
    ensure(!is_zero(), ErrorKind::Singular, "inverse of tropical zero");
    ensure(is_signed(), ErrorKind::Balanced, "inverse of balanced element");
    return SymTrop(sign_, mod_.inverse());
  }

  friend bool operator==(const SymTrop& a, const SymTrop& b) {
    return a.sign_ == b.sign_ && a.mod_ == b.mod_;
  }

 private:
  Sign sign_ = Sign::Zero;
  Trop mod_;
};

// Balance relation: a ⊖ b is balanced or zero.
inline bool balances(const SymTrop& a, const SymTrop& b) {
  SymTrop d = a + (-b);
  return d.is_zero() || d.is_balanced();
}

std::string to_string(const Trop& t);
std::string to_string(const SymTrop& x);
SymTrop parse_symtrop(std::string_view s);

inline std::ostream& operator<<(std::ostream& os, const Trop& t) { return os << to_string(t); }
inline std::ostream& operator<<(std::ostream& os, const SymTrop& x) { return os << to_string(x); }

// ---------------------------------------------------------------------------

inline std::string format_num(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

inline Rational parse_num(std::string_view s) {
  auto bad = [&] { fail(ErrorKind::Parse, "invalid number '" + std::string(s) + "'"); };
  if (s.empty()) bad();
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  auto digits = [&](std::string_view t) {
    if (t.empty()) return false;
    for (char ch : t)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  std::string_view body = s.substr(i);
  Rational q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view p = body.substr(0, slash), d = body.substr(slash + 1);
    if (!digits(p) || !digits(d)) bad();
    mpz_class num{std::string(p)}, den{std::string(d)};
    if (den == 0) bad();
    q = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !digits(ip)) || (!fp.empty() && !digits(fp)))
      bad();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    mpz_class whole{ip.empty() ? std::string("0") : std::string(ip)};
    mpz_class frac{fp.empty() ? std::string("0") : std::string(fp)};
    q = Rational(whole * scale + frac, scale);
  } else {
    if (!digits(body)) bad();
    q = Rational(mpz_class{std::string(body)});
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

inline std::string to_string(const Trop& t) { return t.finite() ? format_num(t.value()) : "-inf"; }

inline std::string to_string(const SymTrop& x) {
  switch (x.sign()) {
    case Sign::Zero: return "-inf";
    case Sign::Pos: return format_num(x.modulus().value());
    case Sign::Neg: return "⊖" + format_num(x.modulus().value());
    case Sign::Bal: return format_num(x.modulus().value()) + "•";
  }
  return "?";
}

inline SymTrop parse_symtrop(std::string_view s) {
  constexpr std::string_view kMinus = "⊖", kDot = "•";
  if (s == "-inf") return SymTrop::zero();
  if (s.starts_with(kMinus)) {
    std::string_view rest = s.substr(kMinus.size());
    if (rest.starts_with("(") && rest.ends_with(")")) rest = rest.substr(1, rest.size() - 2);
    return SymTrop::neg(parse_num(rest));
  }
  if (s.ends_with(kDot)) return SymTrop::bal(parse_num(s.substr(0, s.size() - kDot.size())));
  return SymTrop::pos(parse_num(s));
}

}  // namespace troplp
