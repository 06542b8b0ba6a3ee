#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mplf/rational.hpp"

namespace mplf {

/// Coefficients (low degree first) of the m-th cyclotomic polynomial.
/// Results are memoized; the cache is safe for concurrent use.
const std::vector<Integer>& cyclotomic_polynomial(unsigned m);

unsigned long euler_phi(unsigned long m);

/// Element of Q(zeta_m), stored as a rational vector of length deg(Phi_m) in
/// the power basis 1, zeta_m, ..., zeta_m^{d-1}.
///
/// Binary operations on elements of different orders lift both operands to
/// the lcm of the orders first, so zeta_m is identified with
/// zeta_M^{M/m} whenever m divides M.
class CycloNumber {
 public:
  /// Largest order an operation may lift into.
  static constexpr unsigned kMaxOrder = 4096;

  CycloNumber() : CycloNumber(Rational(0)) {}
  CycloNumber(const Rational& value, unsigned order = 1);  // NOLINT(google-explicit-constructor)
  CycloNumber(long value) : CycloNumber(Rational(value)) {}  // NOLINT(google-explicit-constructor)

  /// zeta_m^k for any integer k.
  static CycloNumber zeta(unsigned m, long k = 1);
  /// Reduces an arbitrary-length polynomial in zeta_m modulo Phi_m.
  static CycloNumber from_polynomial(unsigned m, std::vector<Rational> poly);

  unsigned order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// True when the element lies in Q (all non-constant coordinates vanish).
  bool is_rational() const;
  /// Constant coordinate; only meaningful when is_rational().
  const Rational& rational_part() const { return coeffs_.front(); }

  /// Same element expressed in Q(zeta_M); M must be a multiple of order().
  CycloNumber lift(unsigned target_order) const;
  /// Same element expressed in Q(zeta_m) for m | order(), if it lies there.
  std::optional<CycloNumber> restrict_to(unsigned target_order) const;
  /// Re-expresses the element in the smallest cyclotomic field (among the
  /// divisors of order()) containing it.
  CycloNumber simplified() const;

  CycloNumber& operator+=(const CycloNumber& o);
  CycloNumber& operator-=(const CycloNumber& o);
  CycloNumber& operator*=(const CycloNumber& o);
  CycloNumber& operator*=(const Rational& r);
  CycloNumber& operator/=(const Rational& r);

  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(CycloNumber a, const CycloNumber& b) { return a *= b; }
  friend CycloNumber operator*(CycloNumber a, const Rational& r) { return a *= r; }
  friend CycloNumber operator*(const Rational& r, CycloNumber a) { return a *= r; }
  friend CycloNumber operator/(CycloNumber a, const Rational& r) { return a /= r; }
  friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) { return a * b.inverse(); }
  CycloNumber operator-() const;

  /// Field inverse; throws DomainError for zero.
  CycloNumber inverse() const;
  CycloNumber pow(long exponent) const;

  friend bool operator==(const CycloNumber& a, const CycloNumber& b);

  /// Complex embedding sending zeta_m to exp(2 pi i / m).
  std::complex<double> to_complex() const;

  /// Human-readable form, e.g. "1/2 - 3*z4".
  std::string to_string() const;

 private:
  CycloNumber(unsigned order, std::vector<Rational> coeffs);

  unsigned order_ = 1;
  std::vector<Rational> coeffs_;
};

/// Solves A x = b exactly over Q; A is given column-major as a list of
/// columns. Returns nothing when the system is inconsistent or singular.
std::optional<std::vector<Rational>> solve_linear(const std::vector<std::vector<Rational>>& columns,
                                                  const std::vector<Rational>& rhs);

}  // namespace mplf
