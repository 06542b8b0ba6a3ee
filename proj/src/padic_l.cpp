#include "mplf/padic_l.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "mplf/bernoulli.hpp"
#include "mplf/classical.hpp"
#include "mplf/errors.hpp"
#include "mplf/number_theory.hpp"

namespace mplf {

namespace {

void check_prime(long p) {
  if (!is_prime(p)) throw InvalidPrimeError(std::to_string(p) + " is not prime");
}

void check_precision(long N) {
  if (N < 1) throw DomainError("p-adic precision must be positive");
}

long resolve_modulus(const DirichletCharacter& chi, long p, std::optional<long> F) {
  if (!F) return default_modulus(chi, p);
  const long q = teichmuller_modulus(p);
  if (*F < 1 || *F % q != 0 || *F % chi.modulus() != 0) {
    throw DomainError("F = " + std::to_string(*F) + " must be a positive multiple of q = " +
                      std::to_string(q) + " and of the modulus " + std::to_string(chi.modulus()));
  }
  return *F;
}

void check_summation_modulus(const DirichletCharacter& chi, long p, long F) {
  const long q = teichmuller_modulus(p);
  if (F < 1 || F % q != 0 || F % chi.modulus() != 0) {
    throw DomainError("F = " + std::to_string(F) + " must be a positive multiple of q = " +
                      std::to_string(q) + " and of the modulus " + std::to_string(chi.modulus()));
  }
}

CycloNumber from_exponent_sums(unsigned order, const std::vector<Rational>& c) {
  CycloNumber out(0);
  for (unsigned e = 0; e < order; ++e) {
    if (!c[e].is_zero()) out += CycloNumber::zeta(order, e) * c[e];
  }
  return out;
}

Rational rational_power(long base, long exponent) {
  const Integer b = ipow(Integer(base), static_cast<unsigned long>(std::abs(exponent)));
  return exponent >= 0 ? Rational(b) : Rational(Integer(1), b);
}

// Character values chi(x), x mod f, embedded at precision W (nullopt off the units).
std::vector<std::optional<PAdic>> embedded_values(const DirichletCharacter& chi, long p, long W) {
  std::vector<std::optional<PAdic>> out(static_cast<std::size_t>(chi.modulus()));
  for (long x = 0; x < chi.modulus(); ++x) {
    if (chi.exponent(x)) out[static_cast<std::size_t>(x)] = embed(chi.value(x), p, W);
  }
  return out;
}

struct Setup {
  long F;
  long vF;
  PAdic prefactor;  // prod_{j=1..r} (s - j)
  long target;      // absolute precision needed for the raw sum
  long unit_precision;
  long terms;       // number of m-terms kept when the series does not terminate
  PAdic exponent;   // r - s
  std::optional<long> terminating;  // r - s when it is a nonnegative exact integer
};

Setup prepare(const PAdic& s, const DirichletCharacter& chi, int r, long p, long N,
              std::optional<long> F) {
  check_prime(p);
  check_precision(N);
  if (r < 1) throw DomainError("order r must be positive");
  if (s.prime() != p) throw StructuralError("evaluation point uses a different prime");
  if (!is_embeddable(chi, p)) {
    throw UnsupportedCharacterError("character " + character_label(chi) + " of order " +
                                    std::to_string(chi.order()) + " does not embed into Q_" +
                                    std::to_string(p));
  }
  if (s.valuation() < 0) throw DomainError("p-adic L-function needs |s|_p <= 1");
  Setup st{resolve_modulus(chi, p, F), 0, PAdic::exact(p, Rational(1)), 0, 0, 0, PAdic(p), std::nullopt};
  st.vF = valuation(Integer(st.F), p);
  for (int j = 1; j <= r; ++j) {
    const PAdic factor = s - PAdic::exact(p, Rational(j));
    if (factor.is_zero()) {
      throw PoleError("s = " + s.to_string() + " is a pole (s in {1.." + std::to_string(r) + "})");
    }
    st.prefactor *= factor;
  }
  st.target = N + r * st.vF + std::max(0L, st.prefactor.valuation());
  st.unit_precision = st.target + r;
  // Terms m > M have valuation >= (M+1) v_p(F) - r, since C(r-s, m) is integral
  // and v_p(B_m^{(r)}) >= -r.
  long M = 0;
  while ((M + 1) * st.vF - r < st.target) ++M;
  st.terms = M + 1;
  st.exponent = PAdic::exact(p, Rational(r)) - s;
  if (auto e = st.exponent.exact_integer(); e && *e >= 0) st.terminating = e->get_si();
  return st;
}

// sum_m C(r-s, m) (F/sigma)^m B_m^{(r)}, known modulo p^target.
PAdic inner_series(const Setup& st, const std::vector<PAdic>& binomials, int r, long sigma, long p) {
  PAdic inner(p);
  const Rational ratio(Integer(st.F), Integer(sigma));
  Rational ratio_power(1);
  for (std::size_t m = 0; m < binomials.size(); ++m) {
    if (m > 0) ratio_power *= ratio;
    inner += binomials[m] * (ratio_power * multi_bernoulli(static_cast<int>(m), r));
  }
  return st.terminating ? inner : inner.capped(st.target);
}

std::vector<PAdic> binomial_table(const Setup& st) {
  const long count = st.terminating ? *st.terminating + 1 : st.terms;
  std::vector<PAdic> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long m = 0; m < count; ++m) out.push_back(padic_binomial(st.exponent, m));
  return out;
}

// Shared evaluation over a list of (sigma, weight) pairs, in the given order.
PAdic evaluate(const PAdic& s, const DirichletCharacter& chi, int r, long p, long N,
               std::optional<long> F, bool grouped) {
  const Setup st = prepare(s, chi, r, p, N, F);
  const auto chi_values = embedded_values(chi, p, st.unit_precision);
  const auto binomials = binomial_table(st);

  auto term_for = [&](long sigma) -> std::optional<PAdic> {
    if (sigma % p == 0) return std::nullopt;
    const auto& c = chi_values[static_cast<std::size_t>(mod(sigma, chi.modulus()))];
    if (!c) return std::nullopt;
    const PAdic bracket = padic_pow(angle_bracket(sigma, p, st.unit_precision), st.exponent);
    return *c * bracket * inner_series(st, binomials, r, sigma, p);
  };

  PAdic sum(p);
  if (grouped) {
    const auto w = composition_weights(st.F, r);
    for (std::size_t sigma = static_cast<std::size_t>(r); sigma < w.size(); ++sigma) {
      if (w[sigma] == 0) continue;
      if (auto t = term_for(static_cast<long>(sigma))) sum += *t * Rational(w[sigma]);
    }
  } else {
    std::vector<long> a(static_cast<std::size_t>(r), 1);
    while (true) {
      long sigma = 0;
      for (long v : a) sigma += v;
      if (auto t = term_for(sigma)) sum += *t;
      std::size_t i = 0;
      while (i < a.size() && a[i] == st.F) a[i++] = 1;
      if (i == a.size()) break;
      ++a[i];
    }
  }
  sum /= rational_power(st.F, r);
  sum /= st.prefactor;
  return sum.capped(N);
}

}  // namespace

long default_modulus(const DirichletCharacter& chi, long p) {
  check_prime(p);
  return std::lcm(teichmuller_modulus(p), chi.modulus());
}

bool is_embeddable(const DirichletCharacter& chi, long p) {
  const long roots = p == 2 ? 2 : p - 1;
  return roots % static_cast<long>(chi.order()) == 0;
}

PAdic embed(const CycloNumber& x, long p, long N) {
  check_prime(p);
  check_precision(N);
  const CycloNumber y = x.simplified();
  const unsigned m = y.order();
  if (m == 1) return PAdic::exact(p, y.rational_part());
  const long roots = p == 2 ? 2 : p - 1;
  if (roots % static_cast<long>(m) != 0) {
    throw UnsupportedCharacterError("cyclotomic order " + std::to_string(m) +
                                    " does not divide " + std::to_string(roots));
  }
  long min_val = 0;
  for (const auto& c : y.coeffs()) {
    if (!c.is_zero()) min_val = std::min(min_val, valuation(c, p));
  }
  const long W = N - min_val;
  // zeta_m = zeta_{p-1}^{(p-1)/m} and teichmuller is multiplicative.
  const PAdic root = p == 2 ? PAdic::exact(2, Rational(-1))
                            : teichmuller(powmod(teichmuller_generator(p), roots / m, p), p, W);
  PAdic sum(p);
  PAdic power = PAdic::exact(p, Rational(1));
  for (std::size_t k = 0; k < y.coeffs().size(); ++k) {
    if (k > 0) power *= root;
    if (!y.coeffs()[k].is_zero()) sum += power * y.coeffs()[k];
  }
  return sum;
}

PAdic washington_lp(const PAdic& s, const DirichletCharacter& chi, long p, long N,
                    std::optional<long> F) {
  const Setup st = prepare(s, chi, 1, p, N, F);
  const auto chi_values = embedded_values(chi, p, st.unit_precision);
  const long count = st.terminating ? *st.terminating + 1 : st.terms;
  std::vector<PAdic> binomials;
  for (long m = 0; m < count; ++m) binomials.push_back(padic_binomial(st.exponent, m));

  PAdic sum(p);
  for (long a = 1; a <= st.F; ++a) {
    if (a % p == 0) continue;
    const auto& c = chi_values[static_cast<std::size_t>(mod(a, chi.modulus()))];
    if (!c) continue;
    PAdic inner(p);
    const Rational ratio(Integer(st.F), Integer(a));
    Rational ratio_power(1);
    for (std::size_t m = 0; m < binomials.size(); ++m) {
      if (m > 0) ratio_power *= ratio;
      inner += binomials[m] * (ratio_power * bernoulli(static_cast<int>(m)));
    }
    if (!st.terminating) inner = inner.capped(st.target);
    sum += *c * padic_pow(angle_bracket(a, p, st.unit_precision), st.exponent) * inner;
  }
  sum /= Rational(st.F);
  sum /= st.prefactor;
  return sum.capped(N);
}

PAdic multivariate_lp(const PAdic& s, const DirichletCharacter& chi, int r, long p, long N,
                      std::optional<long> F) {
  return evaluate(s, chi, r, p, N, F, true);
}

PAdic multivariate_lp_literal(const PAdic& s, const DirichletCharacter& chi, int r, long p, long N,
                              std::optional<long> F) {
  return evaluate(s, chi, r, p, N, F, false);
}

namespace {

// F^n sum over sigma with the requested p-divisibility of w(sigma) chi(sigma) B_{n+r}^{(r)}(sigma/F).
CycloNumber partial_sum(int n, int r, const DirichletCharacter& chi, long p, long F, bool divisible) {
  if (n < 0 || r < 1) throw DomainError("partial Bernoulli sums need n >= 0 and r >= 1");
  check_prime(p);
  check_summation_modulus(chi, p, F);
  const auto w = composition_weights(F, r);
  std::vector<Rational> buckets(chi.order(), Rational(0));
  for (std::size_t sigma = static_cast<std::size_t>(r); sigma < w.size(); ++sigma) {
    const long x = static_cast<long>(sigma);
    if ((x % p == 0) != divisible) continue;
    const auto e = chi.exponent(x);
    if (!e) continue;
    buckets[static_cast<std::size_t>(*e)] +=
        Rational(w[sigma]) * multi_bernoulli_poly(n + r, r, Rational(Integer(x), Integer(F)));
  }
  return from_exponent_sums(chi.order(), buckets) * rational_power(F, n);
}

PadicCheckReport make_report(long p, long N, int r, int n, const DirichletCharacter& chi, long F,
                             PAdic lhs, PAdic rhs) {
  const PAdic diff = lhs - rhs;
  const long guaranteed = std::min(lhs.precision(), rhs.precision());
  const long diff_val = std::min(diff.valuation(), PAdic::kInfinite);
  return PadicCheckReport{p,   N,   r, n, character_label(chi), F, std::move(lhs), std::move(rhs),
                          diff_val, guaranteed, diff_val >= guaranteed};
}

}  // namespace

CycloNumber restricted_gen_bernoulli(int n, int r, const DirichletCharacter& chi, long p, long F) {
  return partial_sum(n, r, chi, p, F, false);
}

CycloNumber p_divisible_partial_sum(int n, int r, const DirichletCharacter& chi, long p, long F) {
  return partial_sum(n, r, chi, p, F, true);
}

CycloNumber second_gen_bernoulli(int n, int r, const DirichletCharacter& chi, long p, long F,
                                 SecondRoute route) {
  check_prime(p);
  check_summation_modulus(chi, p, F);
  const CycloNumber chi_p = chi.value(p);
  if (route == SecondRoute::Auto) route = chi_p.is_zero() ? SecondRoute::Literal : SecondRoute::Quotient;
  if (route == SecondRoute::Quotient) {
    if (chi_p.is_zero()) {
      throw DomainError("quotient route for B* needs chi(p) != 0 (chi = " + character_label(chi) + ")");
    }
    const CycloNumber unrestricted = gen_multi_bernoulli_at(n + r, r, chi, F);
    const CycloNumber difference = unrestricted - restricted_gen_bernoulli(n, r, chi, p, F);
    return (difference / chi_p / rational_power(p, n)).simplified();
  }
  // sigma = p beta with sigma/F = beta/(F/p).
  const long reduced = F / p;
  const auto w = composition_weights(F, r);
  std::vector<Rational> buckets(chi.order(), Rational(0));
  for (std::size_t sigma = static_cast<std::size_t>(r); sigma < w.size(); ++sigma) {
    const long x = static_cast<long>(sigma);
    if (x % p != 0) continue;
    const long beta = x / p;
    const auto e = chi.exponent(beta);
    if (!e) continue;
    buckets[static_cast<std::size_t>(*e)] +=
        Rational(w[sigma]) * multi_bernoulli_poly(n + r, r, Rational(Integer(beta), Integer(reduced)));
  }
  return (from_exponent_sums(chi.order(), buckets) * rational_power(reduced, n)).simplified();
}

PadicCheckReport verify_lemma3(int n, const DirichletCharacter& chi, long p, long N,
                               std::optional<long> F) {
  if (n < 1) throw DomainError("interpolation check needs n >= 1");
  check_prime(p);
  const long modulus = resolve_modulus(chi, p, F);
  PAdic lhs = washington_lp(PAdic::exact(p, Rational(1 - n)), chi, p, N, modulus);
  const DirichletCharacter chi_n = twist(chi, n, p);
  const CycloNumber euler = CycloNumber(1) - chi_n.value(p) * Rational(ipow(Integer(p), n - 1));
  const CycloNumber value = euler * gen_multi_bernoulli(n, 1, chi_n) * Rational(Integer(-1), Integer(n));
  return make_report(p, N, 1, n, chi, modulus, std::move(lhs), embed(value, p, N));
}

PadicCheckReport verify_theorem4(int n, int r, const DirichletCharacter& chi, long p, long N,
                                 std::optional<long> F) {
  if (n < 1) throw DomainError("interpolation check needs n >= 1");
  check_prime(p);
  const long modulus = resolve_modulus(chi, p, F);
  PAdic lhs = multivariate_lp(PAdic::exact(p, Rational(-n)), chi, r, p, N, modulus);
  const DirichletCharacter target = twist(chi, n + r, p);
  CycloNumber value = restricted_gen_bernoulli(n, r, target, p, modulus);
  value *= Rational(factorial(static_cast<unsigned long>(n)), factorial(static_cast<unsigned long>(n + r)));
  if (r % 2 != 0) value = -value;
  return make_report(p, N, r, n, chi, modulus, std::move(lhs), embed(value, p, N));
}

}  // namespace mplf
