#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mplf/cyclotomic.hpp"
#include "mplf/errors.hpp"
#include "mplf/rational.hpp"

namespace mplf {

template <typename Ring>
struct RingTraits;

template <>
struct RingTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool invertible(const Rational& x) { return !x.is_zero(); }
  static Rational inverse(const Rational& x) { return x.inverse(); }
};

template <>
struct RingTraits<CycloNumber> {
  static CycloNumber zero() { return CycloNumber(0); }
  static CycloNumber one() { return CycloNumber(1); }
  static bool invertible(const CycloNumber& x) { return !x.is_zero(); }
  static CycloNumber inverse(const CycloNumber& x) { return x.inverse(); }
};

/// Formal power series c_0 + c_1 t + ... + c_{K-1} t^{K-1} + O(t^K).
template <typename Ring>
class TruncSeries {
 public:
  using Traits = RingTraits<Ring>;

  explicit TruncSeries(std::size_t order) : c_(order, Traits::zero()) {
    if (order == 0) throw StructuralError("series order must be positive");
  }
  explicit TruncSeries(std::vector<Ring> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw StructuralError("series order must be positive");
  }

  static TruncSeries one(std::size_t order) {
    TruncSeries s(order);
    s.c_[0] = Traits::one();
    return s;
  }

  /// e^{c t} truncated to the given order.
  static TruncSeries exp_linear(const Ring& c, std::size_t order) {
    TruncSeries s(order);
    Ring term = Traits::one();
    s.c_[0] = term;
    for (std::size_t j = 1; j < order; ++j) {
      term = term * c;
      term = term / Rational(static_cast<long>(j));
      s.c_[j] = term;
    }
    return s;
  }

  std::size_t order() const { return c_.size(); }
  const Ring& operator[](std::size_t j) const { return c_[j]; }
  Ring& operator[](std::size_t j) { return c_[j]; }
  const std::vector<Ring>& coeffs() const { return c_; }

  TruncSeries& operator+=(const TruncSeries& o) {
    check_same_order(o);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    check_same_order(o);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
    return *this;
  }
  TruncSeries& operator*=(const Rational& r) {
    for (auto& c : c_) c *= r;
    return *this;
  }

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(TruncSeries a, const Rational& r) { return a *= r; }

  /// Cauchy product on the retained coefficients.
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_same_order(b);
    const std::size_t k = a.c_.size();
    TruncSeries out(k);
    for (std::size_t j = 0; j < k; ++j) {
      Ring acc = Traits::zero();
      for (std::size_t i = 0; i <= j; ++i) acc += a.c_[i] * b.c_[j - i];
      out.c_[j] = std::move(acc);
    }
    return out;
  }

  /// Multiplicative inverse; the constant term must be a unit.
  TruncSeries inverse() const {
    if (!Traits::invertible(c_[0])) {
      throw DomainError("series inverse needs an invertible constant term");
    }
    const std::size_t k = c_.size();
    const Ring inv0 = Traits::inverse(c_[0]);
    TruncSeries out(k);
    out.c_[0] = inv0;
    for (std::size_t j = 1; j < k; ++j) {
      Ring acc = Traits::zero();
      for (std::size_t i = 1; i <= j; ++i) acc += c_[i] * out.c_[j - i];
      out.c_[j] = -(acc * inv0);
    }
    return out;
  }

  TruncSeries pow(unsigned exponent) const {
    TruncSeries result = one(c_.size());
    for (unsigned i = 0; i < exponent; ++i) result = result * *this;
    return result;
  }

  /// Reinterprets the coefficients in a larger ring.
  template <typename Target>
  TruncSeries<Target> promote() const {
    std::vector<Target> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.emplace_back(c);
    return TruncSeries<Target>(std::move(out));
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }

 private:
  void check_same_order(const TruncSeries& o) const {
    if (o.c_.size() != c_.size()) {
      throw StructuralError("series order mismatch: " + std::to_string(c_.size()) + " vs " +
                            std::to_string(o.c_.size()));
    }
  }

  std::vector<Ring> c_;
};

using RationalSeries = TruncSeries<Rational>;
using CycloSeries = TruncSeries<CycloNumber>;

template <typename Ring>
TruncSeries<Ring> series_mul(const TruncSeries<Ring>& a, const TruncSeries<Ring>& b) {
  return a * b;
}

template <typename Ring>
TruncSeries<Ring> series_inv(const TruncSeries<Ring>& a) {
  return a.inverse();
}

template <typename Ring>
TruncSeries<Ring> exp_linear(const Ring& c, std::size_t order) {
  return TruncSeries<Ring>::exp_linear(c, order);
}

inline CycloNumber cyclo_mul(const CycloNumber& a, const CycloNumber& b) { return a * b; }

}  // namespace mplf
