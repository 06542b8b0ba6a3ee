#include "mplf/padic.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "mplf/errors.hpp"
#include "mplf/number_theory.hpp"

namespace mplf {

namespace {

Integer prime_power(long p, long k) { return ipow(Integer(p), static_cast<unsigned long>(k)); }

Integer reduce_mod(const Integer& x, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& x, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw DomainError("p-adic unit is not invertible");
  }
  return r;
}

Integer strip_prime(Integer x, long p) {
  while (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p)) != 0) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
  }
  return x;
}

// Unit part of a nonzero rational modulo p^rel.
Integer rational_unit(const Rational& x, long p, long rel) {
  if (rel <= 0) return 0;
  const Integer m = prime_power(p, rel);
  const Integer num = strip_prime(x.numerator(), p);
  const Integer den = strip_prime(x.denominator(), p);
  return reduce_mod(num * inverse_mod(den, m), m);
}

// Convergence threshold on v_p(x - 1) for log and on v_p(y) for exp.
long convergence_threshold(long p) { return p == 2 ? 2 : 1; }

// floor(log_p(k)) for k >= 1.
long floor_log(long k, long p) {
  long e = 0;
  while (k >= p) {
    k /= p;
    ++e;
  }
  return e;
}

}  // namespace

PAdic::PAdic(long p) : p_(p) {
  if (!is_prime(p)) throw InvalidPrimeError(std::to_string(p) + " is not prime");
}

PAdic::PAdic(long p, long valuation, Integer unit, long rel)
    : p_(p), exact_(false), val_(valuation), unit_(std::move(unit)), rel_(rel) {
  normalize();
}

PAdic PAdic::exact(long p, const Rational& value) {
  PAdic r(p);
  r.value_ = value;
  return r;
}

PAdic PAdic::from_rational(const Rational& x, long p, long N) {
  if (N < 1) throw DomainError("p-adic precision must be positive");
  PAdic zero(p);
  if (x.is_zero()) return zero;
  const long v = mplf::valuation(x, p);
  return PAdic(p, v, rational_unit(x, p, N), N);
}

PAdic PAdic::from_parts(long p, long valuation, const Integer& unit, long relative_precision) {
  if (!is_prime(p)) throw InvalidPrimeError(std::to_string(p) + " is not prime");
  if (relative_precision < 0) throw DomainError("negative relative precision");
  return PAdic(p, valuation, unit, relative_precision);
}

PAdic PAdic::inexact_zero(long p, long absolute_precision) {
  if (!is_prime(p)) throw InvalidPrimeError(std::to_string(p) + " is not prime");
  return PAdic(p, absolute_precision, Integer(0), 0);
}

void PAdic::normalize() {
  if (exact_) return;
  if (rel_ <= 0) {
    rel_ = 0;
    unit_ = 0;
    return;
  }
  unit_ = reduce_mod(unit_, prime_power(p_, rel_));
  if (unit_ == 0) {
    val_ += rel_;
    rel_ = 0;
    return;
  }
  while (mpz_divisible_ui_p(unit_.get_mpz_t(), static_cast<unsigned long>(p_)) != 0) {
    mpz_divexact_ui(unit_.get_mpz_t(), unit_.get_mpz_t(), static_cast<unsigned long>(p_));
    ++val_;
    --rel_;
  }
}

void PAdic::check_prime(const PAdic& o) const {
  if (o.p_ != p_) throw StructuralError("p-adic operands have different primes");
}

bool PAdic::is_zero() const { return exact_ ? value_.is_zero() : rel_ == 0; }

long PAdic::valuation() const {
  if (exact_) return value_.is_zero() ? kInfinite : mplf::valuation(value_, p_);
  return val_;
}

long PAdic::precision() const { return exact_ ? kInfinite : val_ + rel_; }

long PAdic::relative_precision() const { return exact_ ? kInfinite : rel_; }

Integer PAdic::unit() const {
  if (!exact_) return unit_;
  if (value_.is_zero()) return 0;
  return strip_prime(value_.numerator(), p_);  // sign and denominator kept exact elsewhere
}

std::optional<Integer> PAdic::exact_integer() const {
  if (exact_ && value_.is_integer()) return value_.numerator();
  return std::nullopt;
}

PAdic PAdic::approximate(long k) const {
  if (value_.is_zero()) return PAdic(p_, k, Integer(0), 0);
  const long v = mplf::valuation(value_, p_);
  if (v >= k) return PAdic(p_, k, Integer(0), 0);
  return PAdic(p_, v, rational_unit(value_, p_, k - v), k - v);
}

PAdic PAdic::capped(long k) const {
  if (exact_) return approximate(k);
  if (precision() <= k) return *this;
  if (k <= val_) return PAdic(p_, k, Integer(0), 0);
  return PAdic(p_, val_, unit_, k - val_);
}

Integer PAdic::residue(long k) const {
  if (precision() < k) throw DomainError("residue requested beyond known precision");
  if (valuation() < 0) throw DomainError("residue of a non-integral p-adic number");
  const PAdic approx = capped(k);
  if (approx.rel_ == 0) return 0;
  const Integer m = prime_power(p_, k);
  return reduce_mod(approx.unit_ * prime_power(p_, approx.val_), m);
}

PAdic& PAdic::operator+=(const PAdic& o) {
  check_prime(o);
  if (exact_ && o.exact_) {
    value_ += o.value_;
    return *this;
  }
  if (exact_) {
    *this = approximate(o.precision()) += o;
    return *this;
  }
  if (o.exact_) return *this += o.approximate(precision());
  const long abs = std::min(precision(), o.precision());
  const long v = std::min(val_, o.val_);
  if (v >= abs) {
    *this = PAdic(p_, abs, Integer(0), 0);
    return *this;
  }
  const long rel = abs - v;
  Integer u = 0;
  if (rel_ > 0 && val_ - v < rel) u += unit_ * prime_power(p_, val_ - v);
  if (o.rel_ > 0 && o.val_ - v < rel) u += o.unit_ * prime_power(p_, o.val_ - v);
  *this = PAdic(p_, v, std::move(u), rel);
  return *this;
}

PAdic PAdic::operator-() const {
  if (exact_) return exact(p_, -value_);
  if (rel_ == 0) return *this;
  return PAdic(p_, val_, prime_power(p_, rel_) - unit_, rel_);
}

PAdic& PAdic::operator-=(const PAdic& o) { return *this += -o; }

PAdic& PAdic::operator*=(const PAdic& o) {
  check_prime(o);
  if (exact_ && o.exact_) {
    value_ *= o.value_;
    return *this;
  }
  if ((exact_ && value_.is_zero()) || (o.exact_ && o.value_.is_zero())) {
    *this = PAdic(p_);
    return *this;
  }
  if (exact_ || o.exact_) {
    const PAdic& e = exact_ ? *this : o;
    const PAdic& f = exact_ ? o : *this;
    const long v = mplf::valuation(e.value_, p_) + f.val_;
    *this = PAdic(p_, v, rational_unit(e.value_, p_, f.rel_) * f.unit_, f.rel_);
    return *this;
  }
  *this = PAdic(p_, val_ + o.val_, unit_ * o.unit_, std::min(rel_, o.rel_));
  return *this;
}

PAdic& PAdic::operator/=(const PAdic& o) {
  check_prime(o);
  if (o.is_zero()) throw DomainError("p-adic division by zero");
  if (exact_ && o.exact_) {
    value_ /= o.value_;
    return *this;
  }
  if (exact_ && value_.is_zero()) return *this;
  if (o.exact_) {
    const long v = val_ - mplf::valuation(o.value_, p_);
    const Integer inv = rel_ > 0 ? inverse_mod(rational_unit(o.value_, p_, rel_), prime_power(p_, rel_))
                                 : Integer(0);
    *this = PAdic(p_, v, unit_ * inv, rel_);
    return *this;
  }
  const Integer m = prime_power(p_, o.rel_);
  const Integer inv = inverse_mod(o.unit_, m);
  if (exact_) {
    const long v = mplf::valuation(value_, p_) - o.val_;
    *this = PAdic(p_, v, rational_unit(value_, p_, o.rel_) * inv, o.rel_);
    return *this;
  }
  *this = PAdic(p_, val_ - o.val_, unit_ * inv, std::min(rel_, o.rel_));
  return *this;
}

bool operator==(const PAdic& a, const PAdic& b) {
  if (a.p_ != b.p_ || a.exact_ != b.exact_) return false;
  if (a.exact_) return a.value_ == b.value_;
  return a.val_ == b.val_ && a.rel_ == b.rel_ && a.unit_ == b.unit_;
}

bool congruent(const PAdic& a, const PAdic& b, long k) { return (a - b).valuation() >= k; }

std::string PAdic::to_string() const {
  std::ostringstream out;
  if (exact_) {
    out << "exact(" << value_.to_string() << "; p=" << p_ << ")";
  } else if (rel_ == 0) {
    out << "O(" << p_ << "^" << val_ << ")";
  } else {
    out << unit_.get_str() << " * " << p_ << "^" << val_ << " + O(" << p_ << "^" << (val_ + rel_)
        << ")";
  }
  return out.str();
}

PAdic PAdic::parse(std::string_view text) {
  static const std::regex finite_re(
      R"(^\s*(\d+)\s*\*\s*(\d+)\^(-?\d+)\s*\+\s*O\(\s*(\d+)\^(-?\d+)\s*\)\s*$)");
  static const std::regex zero_re(R"(^\s*O\(\s*(\d+)\^(-?\d+)\s*\)\s*$)");
  static const std::regex exact_re(R"(^\s*exact\(\s*(-?\d+(?:/\d+)?)\s*;\s*p\s*=\s*(\d+)\s*\)\s*$)");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, finite_re)) {
    const long p = std::stol(m[2]);
    if (std::stol(m[4]) != p) throw ParseError("mismatched primes in '" + s + "'");
    const long v = std::stol(m[3]);
    const long k = std::stol(m[5]);
    const Integer u(m[1].str(), 10);
    if (k <= v) throw ParseError("precision must exceed valuation in '" + s + "'");
    if (u % p == 0 || u >= prime_power(p, k - v)) throw ParseError("unit out of range in '" + s + "'");
    return from_parts(p, v, u, k - v);
  }
  if (std::regex_match(s, m, zero_re)) return inexact_zero(std::stol(m[1]), std::stol(m[2]));
  if (std::regex_match(s, m, exact_re)) return exact(std::stol(m[2]), Rational::parse(m[1].str()));
  throw ParseError("cannot parse p-adic number '" + s + "'");
}

PAdic teichmuller(long a, long p, long N) {
  if (!is_prime(p)) throw InvalidPrimeError(std::to_string(p) + " is not prime");
  if (N < 1) throw DomainError("p-adic precision must be positive");
  if (mod(a, p) == 0) throw DomainError("Teichmueller lift of a multiple of p");
  if (p == 2) return PAdic::from_rational(Rational(mod(a, 4) == 1 ? 1 : -1), 2, N);
  const Integer m = prime_power(p, N);
  Integer x = reduce_mod(Integer(a), m);
  // x -> x^p contracts toward the root of unity; N steps always suffice.
  for (long i = 0; i <= N; ++i) {
    Integer next;
    mpz_powm_ui(next.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p), m.get_mpz_t());
    if (next == x) break;
    x = std::move(next);
  }
  return PAdic::from_parts(p, 0, x, N);
}

PAdic angle_bracket(long a, long p, long N) {
  return PAdic::from_rational(Rational(a), p, N) / teichmuller(a, p, N);
}

PAdic padic_log(const PAdic& x) {
  const long p = x.prime();
  const PAdic one = PAdic::exact(p, Rational(1));
  const PAdic y = x - one;
  if (y.is_zero() && y.is_exact()) return PAdic(p);
  if (x.is_exact()) throw DomainError("padic_log needs a finite-precision argument (cap it first)");
  const long vy = y.valuation();
  if (vy < convergence_threshold(p)) throw DomainError("padic_log argument is not 1 mod q");
  const long target = y.precision();
  if (y.is_zero()) return PAdic::inexact_zero(p, target);
  // Terms k > K have valuation >= k*vy - floor(log_p k), which is non-decreasing in k.
  long K = 1;
  while ((K + 1) * vy - floor_log(K + 1, p) < target) ++K;
  PAdic sum(p);
  PAdic power = y;
  for (long k = 1; k <= K; ++k) {
    if (k > 1) power *= y;
    PAdic term = power / Rational(k);
    if (k % 2 == 0) term = -term;
    sum += term;
  }
  return sum.capped(target);
}

PAdic padic_exp(const PAdic& y) {
  const long p = y.prime();
  const PAdic one = PAdic::exact(p, Rational(1));
  if (y.is_exact() && y.is_zero()) return one;
  if (y.is_exact()) throw DomainError("padic_exp needs a finite-precision argument (cap it first)");
  const long vy = y.valuation();
  if (vy < convergence_threshold(p)) throw DomainError("padic_exp argument outside convergence disc");
  const long target = y.precision();
  if (y.is_zero()) return (one + y);
  // v(y^k/k!) >= k*vy - (k-1)/(p-1), increasing in k on the convergence disc.
  long K = 0;
  while ((K + 1) * vy * (p - 1) - K < target * (p - 1)) ++K;
  PAdic sum = one;
  PAdic term = one;
  for (long k = 1; k <= K; ++k) {
    term = term * y / Rational(k);
    sum += term;
  }
  return sum.capped(target);
}

PAdic padic_pow(const PAdic& base, const PAdic& exponent) {
  const long p = base.prime();
  if (exponent.prime() != p) throw StructuralError("p-adic operands have different primes");
  const PAdic one = PAdic::exact(p, Rational(1));
  if ((base - one).valuation() < convergence_threshold(p)) {
    throw DomainError("padic_pow base is not 1 mod q");
  }
  if (exponent.valuation() < 0) throw DomainError("padic_pow exponent must satisfy |s|_p <= 1");
  if (auto e = exponent.exact_integer()) {
    Integer n = abs(*e);
    PAdic result = one;
    PAdic square = base;
    while (n > 0) {
      if (mpz_odd_p(n.get_mpz_t()) != 0) result *= square;
      n >>= 1;
      if (n > 0) square *= square;
    }
    return *e < 0 ? one / result : result;
  }
  if (base.is_exact() && base.is_zero() == false && (base - one).is_zero()) return one;
  if (base.is_exact()) throw DomainError("padic_pow with an exact base needs a finite-precision base");
  return padic_exp(exponent * padic_log(base));
}

PAdic padic_binomial(const PAdic& x, long m) {
  if (m < 0) throw DomainError("binomial index must be nonnegative");
  const long p = x.prime();
  PAdic product = PAdic::exact(p, Rational(1));
  for (long j = 0; j < m; ++j) product *= x - PAdic::exact(p, Rational(j));
  return product / Rational(factorial(static_cast<unsigned long>(m)));
}

}  // namespace mplf
