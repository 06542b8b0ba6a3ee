#include "mplf/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "mplf/errors.hpp"

namespace mplf {

namespace {

std::mutex& phi_mutex() {
  static std::mutex m;
  return m;
}

// Node-based map: references stay valid while other orders are inserted.
std::map<unsigned, std::vector<Integer>>& phi_cache() {
  static std::map<unsigned, std::vector<Integer>> cache;
  return cache;
}

// Exact quotient of a by the monic polynomial b over Z.
std::vector<Integer> divide_monic(std::vector<Integer> a, const std::vector<Integer>& b) {
  const std::size_t db = b.size() - 1;
  const std::size_t da = a.size() - 1;
  std::vector<Integer> q(da - db + 1);
  for (std::size_t i = da + 1; i-- > db;) {
    const Integer c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

std::vector<Integer> compute_phi(unsigned m) {
  std::vector<Integer> poly(m + 1);
  poly[0] = -1;
  poly[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d == 0) poly = divide_monic(std::move(poly), cyclotomic_polynomial(d));
  }
  return poly;
}

unsigned lcm_orders(unsigned a, unsigned b) {
  const unsigned long l = std::lcm(static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  if (l > CycloNumber::kMaxOrder) {
    throw StructuralError("cyclotomic orders " + std::to_string(a) + " and " + std::to_string(b) +
                          " have no common field within the supported range");
  }
  return static_cast<unsigned>(l);
}

// In-place reduction of poly modulo Phi_m; returns exactly deg(Phi_m) coefficients.
std::vector<Rational> reduce(std::vector<Rational> poly, unsigned m) {
  const auto& phi = cyclotomic_polynomial(m);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > d;) {
    if (poly[i].is_zero()) continue;
    const Rational c = poly[i];
    for (std::size_t j = 0; j < d; ++j) {
      if (phi[j] != 0) poly[i - d + j] -= c * Rational(phi[j]);
    }
    poly[i] = Rational(0);
  }
  poly.resize(d);
  return poly;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw DomainError("cyclotomic polynomial of order 0");
  {
    std::lock_guard lock(phi_mutex());
    auto it = phi_cache().find(m);
    if (it != phi_cache().end()) return it->second;
  }
  // Computed outside the lock (recursion); concurrent duplicates are identical.
  auto poly = compute_phi(m);
  std::lock_guard lock(phi_mutex());
  return phi_cache().try_emplace(m, std::move(poly)).first->second;
}

unsigned long euler_phi(unsigned long m) {
  unsigned long result = m;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

CycloNumber::CycloNumber(unsigned order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {}

CycloNumber::CycloNumber(const Rational& value, unsigned order) : order_(order) {
  if (order == 0 || order > kMaxOrder) throw StructuralError("unsupported cyclotomic order");
  coeffs_.assign(cyclotomic_polynomial(order).size() - 1, Rational(0));
  coeffs_[0] = value;
}

CycloNumber CycloNumber::zeta(unsigned m, long k) {
  if (m == 0 || m > kMaxOrder) throw StructuralError("unsupported cyclotomic order");
  const long e = ((k % static_cast<long>(m)) + m) % m;
  std::vector<Rational> poly(static_cast<std::size_t>(e) + 1);
  poly[static_cast<std::size_t>(e)] = Rational(1);
  return from_polynomial(m, std::move(poly));
}

CycloNumber CycloNumber::from_polynomial(unsigned m, std::vector<Rational> poly) {
  if (m == 0 || m > kMaxOrder) throw StructuralError("unsupported cyclotomic order");
  const std::size_t d = cyclotomic_polynomial(m).size() - 1;
  if (poly.size() < d) poly.resize(d);
  return CycloNumber(m, reduce(std::move(poly), m));
}

bool CycloNumber::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool CycloNumber::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero()) return false;
  }
  return true;
}

CycloNumber CycloNumber::lift(unsigned target_order) const {
  if (target_order == order_) return *this;
  if (target_order == 0 || target_order % order_ != 0) {
    throw StructuralError("cannot lift order " + std::to_string(order_) + " to " +
                          std::to_string(target_order));
  }
  const std::size_t step = target_order / order_;
  std::vector<Rational> poly((coeffs_.size() - 1) * step + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) poly[i * step] = coeffs_[i];
  return from_polynomial(target_order, std::move(poly));
}

std::optional<CycloNumber> CycloNumber::restrict_to(unsigned target_order) const {
  if (target_order == order_) return *this;
  if (target_order == 0 || order_ % target_order != 0) return std::nullopt;
  const CycloNumber probe(Rational(0), target_order);
  std::vector<std::vector<Rational>> columns;
  for (std::size_t i = 0; i < probe.coeffs_.size(); ++i) {
    columns.push_back(zeta(target_order, static_cast<long>(i)).lift(order_).coeffs_);
  }
  auto solution = solve_linear(columns, coeffs_);
  if (!solution) return std::nullopt;
  return CycloNumber(target_order, std::move(*solution));
}

CycloNumber CycloNumber::simplified() const {
  if (is_rational()) return CycloNumber(coeffs_.front());
  for (unsigned d = 1; d < order_; ++d) {
    if (order_ % d != 0) continue;
    // Q(zeta_d) = Q(zeta_{2d}) for odd d; prefer the smaller label.
    if (auto r = restrict_to(d)) return *r;
  }
  return *this;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
  const unsigned m = lcm_orders(order_, o.order_);
  if (m != order_) *this = lift(m);
  const CycloNumber rhs = o.lift(m);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) {
  const unsigned m = lcm_orders(order_, o.order_);
  if (m != order_) *this = lift(m);
  const CycloNumber rhs = o.lift(m);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& o) {
  if (o.is_rational()) return *this *= o.coeffs_.front();
  if (is_rational()) {
    const Rational c = coeffs_.front();
    *this = o;
    return *this *= c;
  }
  const unsigned m = lcm_orders(order_, o.order_);
  const CycloNumber a = lift(m);
  const CycloNumber b = o.lift(m);
  std::vector<Rational> poly(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (!b.coeffs_[j].is_zero()) poly[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  *this = from_polynomial(m, std::move(poly));
  return *this;
}

CycloNumber& CycloNumber::operator*=(const Rational& r) {
  for (auto& c : coeffs_) c *= r;
  return *this;
}

CycloNumber& CycloNumber::operator/=(const Rational& r) {
  if (r.is_zero()) throw DomainError("cyclotomic division by zero");
  for (auto& c : coeffs_) c /= r;
  return *this;
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in a cyclotomic field");
  if (is_rational()) return CycloNumber(coeffs_.front().inverse(), order_);
  // Columns of the multiplication-by-this matrix.
  std::vector<std::vector<Rational>> columns;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    columns.push_back((*this * zeta(order_, static_cast<long>(j))).coeffs_);
  }
  std::vector<Rational> e0(coeffs_.size(), Rational(0));
  e0[0] = Rational(1);
  auto solution = solve_linear(columns, e0);
  if (!solution) throw DomainError("singular cyclotomic element");
  return CycloNumber(order_, std::move(*solution));
}

CycloNumber CycloNumber::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  CycloNumber result(Rational(1), order_);
  CycloNumber base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  const unsigned m = lcm_orders(a.order_, b.order_);
  return a.lift(m).coeffs_ == b.lift(m).coeffs_;
}

std::complex<double> CycloNumber::to_complex() const {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / order_;
    sum += coeffs_[i].to_double() * std::polar(1.0, angle);
  }
  return sum;
}

std::string CycloNumber::to_string() const {
  std::ostringstream out;
  bool first = true;
  const std::string z = "z" + std::to_string(order_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c.is_zero()) continue;
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out << "-";
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << mag.to_string();
      continue;
    }
    if (mag != Rational(1)) out << mag.to_string() << "*";
    out << z;
    if (i > 1) out << "^" << i;
  }
  if (first) out << "0";
  return out.str();
}

std::optional<std::vector<Rational>> solve_linear(const std::vector<std::vector<Rational>>& columns,
                                                  const std::vector<Rational>& rhs) {
  const std::size_t rows = rhs.size();
  const std::size_t cols = columns.size();
  // Augmented row-major matrix.
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
  for (std::size_t j = 0; j < cols; ++j) {
    if (columns[j].size() != rows) throw StructuralError("solve_linear: column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) a[i][j] = columns[j][i];
  }
  for (std::size_t i = 0; i < rows; ++i) a[i][cols] = rhs[i];

  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_of(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    std::size_t r = pivot_row;
    while (r < rows && a[r][j].is_zero()) ++r;
    if (r == rows) return std::nullopt;  // dependent columns
    std::swap(a[r], a[pivot_row]);
    const Rational inv = a[pivot_row][j].inverse();
    for (std::size_t k = j; k <= cols; ++k) a[pivot_row][k] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pivot_row || a[i][j].is_zero()) continue;
      const Rational f = a[i][j];
      for (std::size_t k = j; k <= cols; ++k) a[i][k] -= f * a[pivot_row][k];
    }
    pivot_of[j] = pivot_row++;
  }
  for (std::size_t i = pivot_row; i < rows; ++i) {
    if (!a[i][cols].is_zero()) return std::nullopt;
  }
  std::vector<Rational> x(cols);
  for (std::size_t j = 0; j < cols; ++j) x[j] = a[pivot_of[j]][cols];
  return x;
}

}  // namespace mplf
