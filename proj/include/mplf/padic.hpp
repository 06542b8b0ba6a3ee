#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "mplf/rational.hpp"

namespace mplf {

/// Element of Q_p with honest precision tracking.
///
/// A value is either exact (an exact rational, used for integers such as
/// s = -n and for exact binomials) or finite: u * p^v + O(p^{v+rel}) with
/// 0 <= u < p^rel and p not dividing u. A finite value with rel = 0 is an
/// inexact zero O(p^v). Absolute precision (precision()) is v + rel and is
/// never overstated: recomputing the same quantity from better inputs agrees
/// with this value modulo p^precision().
class PAdic {
 public:
  static constexpr long kInfinite = std::numeric_limits<long>::max() / 4;

  /// Exact zero.
  explicit PAdic(long p);

  /// Exact rational value.
  static PAdic exact(long p, const Rational& value);
  /// x known modulo p^{v_p(x) + N}: unit part reduced mod p^N.
  static PAdic from_rational(const Rational& x, long p, long N);
  /// u * p^v + O(p^{v+rel}); u is reduced and normalized.
  static PAdic from_parts(long p, long valuation, const Integer& unit, long relative_precision);
  /// O(p^k).
  static PAdic inexact_zero(long p, long absolute_precision);

  /// Parses "u * p^v + O(p^k)", "O(p^k)" or "exact(num/den; p=P)".
  static PAdic parse(std::string_view text);

  long prime() const { return p_; }
  bool is_exact() const { return exact_; }
  /// True for exact zero and for O(p^k).
  bool is_zero() const;
  /// Valuation; kInfinite for exact zero, k for O(p^k).
  long valuation() const;
  /// Absolute precision; kInfinite for exact values.
  long precision() const;
  /// Relative precision; kInfinite for exact values, 0 for O(p^k).
  long relative_precision() const;
  /// Unit part (mod p^rel for finite values).
  Integer unit() const;
  const Rational& exact_value() const { return value_; }

  /// Integer value when the element is an exact integer.
  std::optional<Integer> exact_integer() const;

  /// Lowers the absolute precision to at most k (exact values become finite).
  PAdic capped(long absolute_precision) const;

  /// Representative in [0, p^k) of a p-adic integer known mod p^k.
  Integer residue(long k) const;

  PAdic& operator+=(const PAdic& o);
  PAdic& operator-=(const PAdic& o);
  PAdic& operator*=(const PAdic& o);
  PAdic& operator/=(const PAdic& o);
  friend PAdic operator+(PAdic a, const PAdic& b) { return a += b; }
  friend PAdic operator-(PAdic a, const PAdic& b) { return a -= b; }
  friend PAdic operator*(PAdic a, const PAdic& b) { return a *= b; }
  friend PAdic operator/(PAdic a, const PAdic& b) { return a /= b; }
  PAdic operator-() const;

  PAdic& operator*=(const Rational& r) { return *this *= exact(p_, r); }
  PAdic& operator/=(const Rational& r) { return *this /= exact(p_, r); }
  friend PAdic operator*(PAdic a, const Rational& r) { return a *= r; }
  friend PAdic operator/(PAdic a, const Rational& r) { return a /= r; }

  /// Representation equality: same exactness, value and precision.
  friend bool operator==(const PAdic& a, const PAdic& b);

  /// True when a - b vanishes modulo p^k.
  friend bool congruent(const PAdic& a, const PAdic& b, long k);

  /// "u * p^v + O(p^k)" for finite values.
  std::string to_string() const;

 private:
  PAdic(long p, long valuation, Integer unit, long rel);
  void normalize();
  void check_prime(const PAdic& o) const;
  /// Finite approximation of an exact value to absolute precision k.
  PAdic approximate(long absolute_precision) const;

  long p_;
  bool exact_ = true;
  Rational value_;  // exact values
  long val_ = 0;    // finite values
  Integer unit_;
  long rel_ = 0;
};

/// Unique root of unity congruent to a: a (p-1)-th root for odd p, +-1 (mod 4) for p = 2.
PAdic teichmuller(long a, long p, long N);

/// <a> = a / teichmuller(a); congruent to 1 modulo q.
PAdic angle_bracket(long a, long p, long N);

/// log(x) = sum (-1)^{k+1} (x-1)^k / k for x = 1 (mod q).
PAdic padic_log(const PAdic& x);

/// exp(y) = sum y^k / k! for v_p(y) >= 1 (>= 2 when p = 2).
PAdic padic_exp(const PAdic& y);

/// b^s for b = 1 (mod q) and |s|_p <= 1. Exact integer exponents use
/// binary powering, everything else exp(s log b).
PAdic padic_pow(const PAdic& base, const PAdic& exponent);

/// x (x-1) ... (x-m+1) / m!. Exact for exact x (so zero for integers
/// 0 <= x < m).
PAdic padic_binomial(const PAdic& x, long m);

}  // namespace mplf
