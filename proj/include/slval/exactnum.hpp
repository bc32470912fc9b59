#pragma once

// Exact scalars: elements of Q or of a real quadratic field Q(sqrt(d)).

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "slval/error.hpp"

namespace slval {

namespace detail {

inline bool is_square_free(long d) {
  if (d < 2) return false;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// [-]digits[/digits]
inline mpq_class parse_rational(std::string_view s) {
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
    throw ParseError("malformed rational '" + std::string(s) + "'");
  }
  mpz_class p(std::string(num), 10);
  mpz_class q(1);
  if (slash != std::string_view::npos) q = mpz_class(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  mpq_class r(negative ? mpz_class(-p) : p, q);
  r.canonicalize();
  return r;
}

}  // namespace detail

/// Exact real number a + b*sqrt(d) with a, b rational.
///
/// The representation is canonical: fractions are reduced, and an element
/// with b = 0 always carries d = 0, so a rational value has exactly one
/// encoding no matter which field it was computed in. Equality is therefore
/// structural. Operands from two different fields Q(sqrt(d1)), Q(sqrt(d2))
/// with d1 != d2 cannot be combined.
class Scalar {
 public:
  Scalar() = default;

  template <std::signed_integral I>
  Scalar(I v) : a_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  template <std::unsigned_integral I>
  Scalar(I v) : a_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)

  explicit Scalar(mpq_class a) : a_(std::move(a)) { a_.canonicalize(); }

  /// a + b*sqrt(d); d must be square-free and >= 2 unless b == 0.
  Scalar(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    a_.canonicalize();
    b_.canonicalize();
    if (b_ == 0) {
      d_ = 0;
    } else if (!detail::is_square_free(d_)) {
      throw DomainError("field context d=" + std::to_string(d) + " is not a square-free integer >= 2");
    }
  }

  static Scalar fraction(long p, long q) {
    if (q == 0) throw DivisionByZero();
    return Scalar(mpq_class(p, q));
  }

  /// sqrt(d) as a field element.
  static Scalar root(long d) { return Scalar(mpq_class(0), mpq_class(1), d); }

  const mpq_class& rational_part() const noexcept { return a_; }
  const mpq_class& irrational_coeff() const noexcept { return b_; }
  long field() const noexcept { return d_; }
  bool is_rational() const noexcept { return d_ == 0; }
  bool is_zero() const noexcept { return d_ == 0 && a_ == 0; }

  /// Exact sign of the real number a + b*sqrt(d).
  int sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Mixed signs: the larger of a^2 and d*b^2 wins; equality is impossible
    // because d is not a perfect square.
    const mpq_class lhs = a_ * a_;
    const mpq_class rhs = b_ * b_ * d_;
    return cmp(lhs, rhs) > 0 ? sa : sb;
  }

  Scalar operator-() const { return Scalar(mpq_class(-a_), mpq_class(-b_), d_, Trusted{}); }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    if (x.d_ == 0 && y.d_ == 0) return Scalar(mpq_class(x.a_ + y.a_), Trusted{});
    const long d = common_field(x, y);
    return Scalar(mpq_class(x.a_ + y.a_), mpq_class(x.b_ + y.b_), d, Trusted{});
  }

  friend Scalar operator-(const Scalar& x, const Scalar& y) {
    if (x.d_ == 0 && y.d_ == 0) return Scalar(mpq_class(x.a_ - y.a_), Trusted{});
    const long d = common_field(x, y);
    return Scalar(mpq_class(x.a_ - y.a_), mpq_class(x.b_ - y.b_), d, Trusted{});
  }

  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    if (x.d_ == 0 && y.d_ == 0) return Scalar(mpq_class(x.a_ * y.a_), Trusted{});
    const long d = common_field(x, y);
    mpq_class a = x.a_ * y.a_ + x.b_ * y.b_ * d;
    mpq_class b = x.a_ * y.b_ + x.b_ * y.a_;
    return Scalar(std::move(a), std::move(b), d, Trusted{});
  }

  friend Scalar operator/(const Scalar& x, const Scalar& y) {
    if (y.a_ == 0 && y.b_ == 0) throw DivisionByZero();
    if (x.d_ == 0 && y.d_ == 0) return Scalar(mpq_class(x.a_ / y.a_), Trusted{});
    const long d = common_field(x, y);
    // x / y = x * conj(y) / N(y), N(y) = a^2 - d b^2 != 0.
    const mpq_class norm = y.a_ * y.a_ - y.b_ * y.b_ * d;
    mpq_class a = (x.a_ * y.a_ - x.b_ * y.b_ * d) / norm;
    mpq_class b = (x.b_ * y.a_ - x.a_ * y.b_) / norm;
    return Scalar(std::move(a), std::move(b), d, Trusted{});
  }

  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Canonical text: "p/q" or "p/q+r/s*sqrt(d)" (denominators 1 omitted,
  /// "-" replaces "+" when the irrational coefficient is negative).
  std::string str() const {
    std::string s = a_.get_str();
    if (d_ == 0) return s;
    s += sgn(b_) < 0 ? "-" : "+";
    s += mpq_class(abs(b_)).get_str();
    s += "*sqrt(" + std::to_string(d_) + ")";
    return s;
  }

  /// Accepts the canonical forms plus the shorthands "sqrt(d)", "r/s*sqrt(d)"
  /// and "p/q+sqrt(d)". Non-reduced fractions are reduced.
  static Scalar parse(std::string_view text) {
    const auto root_pos = text.rfind("sqrt(");
    if (root_pos == std::string_view::npos) return Scalar(detail::parse_rational(text));
    if (text.back() != ')') throw ParseError("malformed scalar '" + std::string(text) + "'");
    const std::string_view radicand = text.substr(root_pos + 5, text.size() - root_pos - 6);
    if (!detail::all_digits(radicand) || radicand.size() > 15) {
      throw ParseError("malformed radicand in '" + std::string(text) + "'");
    }
    const long d = std::strtol(std::string(radicand).c_str(), nullptr, 10);
    if (!detail::is_square_free(d)) {
      throw ParseError("radicand in '" + std::string(text) + "' is not square-free >= 2");
    }
    std::string_view head = text.substr(0, root_pos);
    bool explicit_coeff = false;
    if (!head.empty() && head.back() == '*') {
      head.remove_suffix(1);
      explicit_coeff = true;
    }
    // Split head into rational part and signed coefficient at the last +/- not in front.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = head.size(); i-- > 1;) {
      if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/') {
        split = i;
        break;
      }
    }
    mpq_class a(0);
    std::string_view coeff = head;
    if (split != std::string_view::npos) {
      a = detail::parse_rational(head.substr(0, split));
      coeff = head.substr(split);
    }
    bool negative = false;
    if (!coeff.empty() && (coeff.front() == '+' || coeff.front() == '-')) {
      negative = coeff.front() == '-';
      coeff.remove_prefix(1);
    }
    mpq_class b(1);
    if (explicit_coeff) {
      if (coeff.empty()) throw ParseError("missing coefficient in '" + std::string(text) + "'");
      b = detail::parse_rational(coeff);
    } else if (!coeff.empty()) {
      throw ParseError("malformed scalar '" + std::string(text) + "'");
    }
    if (negative) b = -b;
    // A root with zero coefficient is still a rational value.
    if (b == 0) return Scalar(std::move(a));
    return Scalar(std::move(a), std::move(b), d);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

 private:
  struct Trusted {};
  Scalar(mpq_class a, Trusted) : a_(std::move(a)) {}
  Scalar(mpq_class a, mpq_class b, long d, Trusted) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (b_ == 0) d_ = 0;
  }

  static long common_field(const Scalar& x, const Scalar& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
    throw FieldMismatch("cannot combine elements of Q(sqrt(" + std::to_string(x.d_) + ")) and Q(sqrt(" +
                        std::to_string(y.d_) + "))");
  }

  mpq_class a_{0};
  mpq_class b_{0};
  long d_ = 0;
};

inline int sign(const Scalar& x) { return x.sign(); }
inline Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

/// An additive map psi: [0, inf) -> field, psi(x + y) = psi(x) + psi(y).
///
/// `linear(lambda)` is x -> lambda*x. `rational_part()` maps a + b*sqrt(d)
/// to a; it is additive (indeed Q-linear) but not of the form lambda*x on
/// Q(sqrt(d)), which makes it a stand-in for the non-measurable solutions of
/// Cauchy's equation.
class CauchySolution {
 public:
  enum class Kind { linear, rational_part };

  CauchySolution() : CauchySolution(Kind::linear, Scalar(0)) {}
  static CauchySolution linear(Scalar lambda) { return {Kind::linear, std::move(lambda)}; }
  static CauchySolution rational_part() { return {Kind::rational_part, Scalar(0)}; }

  Kind kind() const noexcept { return kind_; }
  const Scalar& lambda() const noexcept { return lambda_; }
  bool is_zero() const { return kind_ == Kind::linear && lambda_.is_zero(); }

  Scalar operator()(const Scalar& x) const {
    if (x.sign() < 0) throw DomainError("Cauchy solution evaluated at negative argument " + x.str());
    if (kind_ == Kind::linear) return lambda_ * x;
    return Scalar(x.rational_part());
  }

  friend bool operator==(const CauchySolution&, const CauchySolution&) = default;

 private:
  CauchySolution(Kind kind, Scalar lambda) : kind_(kind), lambda_(std::move(lambda)) {}
  Kind kind_;
  Scalar lambda_;
};

inline Scalar cauchy_eval(const CauchySolution& f, const Scalar& x) { return f(x); }

}  // namespace slval
