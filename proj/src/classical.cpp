#include "mplf/classical.hpp"

#include <cmath>
#include <map>

#include "mplf/bernoulli.hpp"
#include "mplf/errors.hpp"
#include "mplf/number_theory.hpp"
#include "mplf/series.hpp"

namespace mplf {

namespace {

void check_modulus(const DirichletCharacter& chi, long F) {
  if (F < 1 || F % chi.modulus() != 0) {
    throw DomainError("F = " + std::to_string(F) + " is not a positive multiple of the modulus " +
                      std::to_string(chi.modulus()));
  }
}

// sum_e c[e] zeta_order^e
CycloNumber from_exponent_sums(unsigned order, const std::vector<Rational>& c) {
  CycloNumber out(0);
  for (unsigned e = 0; e < order; ++e) {
    if (!c[e].is_zero()) out += CycloNumber::zeta(order, e) * c[e];
  }
  return out;
}

Integer int_pow(long base, long exponent) {
  return ipow(Integer(base), static_cast<unsigned long>(exponent));
}

Rational power_of(long F, long exponent) {
  return exponent >= 0 ? Rational(int_pow(F, exponent)) : Rational(Integer(1), int_pow(F, -exponent));
}

}  // namespace

std::vector<Integer> composition_weights(long F, int r) {
  if (F < 1 || r < 1) throw DomainError("composition weights need F >= 1 and r >= 1");
  std::vector<Integer> w{1};
  for (int step = 0; step < r; ++step) {
    std::vector<Integer> next(w.size() + static_cast<std::size_t>(F), 0);
    // Running window sum: next[s] = sum_{a=1..F} w[s-a].
    Integer window = 0;
    for (std::size_t s = 1; s < next.size(); ++s) {
      if (s - 1 < w.size()) window += w[s - 1];
      if (s > static_cast<std::size_t>(F) && s - 1 - F < w.size()) window -= w[s - 1 - F];
      next[s] = window;
    }
    w = std::move(next);
  }
  return w;
}

Integer composition_count(long k, int r) {
  if (k < 0 || r < 1) throw DomainError("composition count needs k >= 0 and r >= 1");
  return binomial(k + r - 1, static_cast<unsigned long>(r - 1));
}

CycloNumber gen_multi_bernoulli_at(int n, int r, const DirichletCharacter& chi, long F) {
  if (n < 0 || r < 1) throw DomainError("gen_multi_bernoulli needs n >= 0 and r >= 1");
  check_modulus(chi, F);
  const auto w = composition_weights(F, r);
  std::vector<Rational> buckets(chi.order(), Rational(0));
  for (std::size_t sigma = static_cast<std::size_t>(r); sigma < w.size(); ++sigma) {
    const auto e = chi.exponent(static_cast<long>(sigma));
    if (!e) continue;
    buckets[static_cast<std::size_t>(*e)] +=
        Rational(w[sigma]) * multi_bernoulli_poly(n, r, Rational(Integer(static_cast<long>(sigma)), F));
  }
  return from_exponent_sums(chi.order(), buckets) * power_of(F, n - r);
}

CycloNumber gen_multi_bernoulli(int n, int r, const DirichletCharacter& chi) {
  return gen_multi_bernoulli_at(n, r, chi, chi.modulus());
}

CycloNumber gen_multi_bernoulli_oracle(int n, int r, const DirichletCharacter& chi) {
  if (n < 0 || r < 1) throw DomainError("gen_multi_bernoulli needs n >= 0 and r >= 1");
  const long f = chi.modulus();
  const std::size_t K = static_cast<std::size_t>(n + r + 1);

  // t / (e^{ft} - 1) = 1 / sum_j f^{j+1} t^j / (j+1)!
  RationalSeries denominator(K);
  Integer fact = 1;
  for (std::size_t j = 0; j < K; ++j) {
    fact *= static_cast<unsigned long>(j + 1);
    denominator[j] = Rational(int_pow(f, static_cast<long>(j + 1)), fact);
  }
  const CycloSeries kernel = denominator.inverse().pow(static_cast<unsigned>(r)).promote<CycloNumber>();

  // Literal r-fold enumeration of the tuples, collected by their sum.
  std::map<long, long> counts;
  std::vector<long> a(static_cast<std::size_t>(r), 1);
  while (true) {
    long sigma = 0;
    for (long v : a) sigma += v;
    ++counts[sigma];
    std::size_t i = 0;
    while (i < a.size() && a[i] == f) a[i++] = 1;
    if (i == a.size()) break;
    ++a[i];
  }
  CycloSeries numerator(K);
  for (const auto& [sigma, count] : counts) {
    const CycloNumber c = chi.value(sigma);
    if (c.is_zero()) continue;
    CycloSeries term = exp_linear(CycloNumber(Rational(sigma)), K);
    for (std::size_t j = 0; j < K; ++j) term[j] = term[j] * c * Rational(count);
    numerator += term;
  }
  const CycloSeries product = numerator * kernel;
  return product[static_cast<std::size_t>(n)] * Rational(factorial(static_cast<unsigned long>(n)));
}

Rational h_special(int n, const std::vector<long>& a, long F) {
  if (n < 1) throw DomainError("H_special needs n >= 1");
  if (a.empty()) throw DomainError("H_special needs at least one shift");
  if (F < 1) throw DomainError("H_special needs F >= 1");
  long sigma = 0;
  for (long v : a) {
    if (v < 1 || v > F) {
      throw DomainError("shift " + std::to_string(v) + " outside 1.." + std::to_string(F));
    }
    sigma += v;
  }
  const int r = static_cast<int>(a.size());
  Rational value = multi_bernoulli_poly(n + r, r, Rational(Integer(sigma), F));
  value *= Rational(int_pow(F, n));
  value *= Rational(factorial(static_cast<unsigned long>(n)), factorial(static_cast<unsigned long>(n + r)));
  return r % 2 == 0 ? value : -value;
}

LValueReport l_special_report(int n, int r, const DirichletCharacter& chi, long F) {
  if (n < 1 || r < 1) throw DomainError("L_special needs n >= 1 and r >= 1");
  check_modulus(chi, F);

  // Assembly from H values over every tuple of [1,F]^r, no grouping.
  std::vector<Rational> buckets(chi.order(), Rational(0));
  std::vector<long> a(static_cast<std::size_t>(r), 1);
  while (true) {
    long sigma = 0;
    for (long v : a) sigma += v;
    if (const auto e = chi.exponent(sigma)) buckets[static_cast<std::size_t>(*e)] += h_special(n, a, F);
    std::size_t i = 0;
    while (i < a.size() && a[i] == F) a[i++] = 1;
    if (i == a.size()) break;
    ++a[i];
  }
  const CycloNumber assembled = from_exponent_sums(chi.order(), buckets);

  CycloNumber closed = gen_multi_bernoulli_at(n + r, r, chi, F);
  closed *= Rational(factorial(static_cast<unsigned long>(n)), factorial(static_cast<unsigned long>(n + r)));
  if (r % 2 != 0) closed = -closed;

  if (!(assembled == closed)) {
    throw InvariantViolation("L_special routes disagree for n=" + std::to_string(n) +
                             " r=" + std::to_string(r) + " chi=" + character_label(chi) +
                             " F=" + std::to_string(F) + ": " + assembled.to_string() + " vs " +
                             closed.to_string());
  }
  LValueReport report;
  report.r = r;
  report.n = n;
  report.chi = character_label(chi);
  report.F = F;
  report.route = "closed-form";
  report.exact_value = closed.simplified();
  report.cross_checked = true;
  return report;
}

CycloNumber l_special(int n, int r, const DirichletCharacter& chi, long F) {
  return *l_special_report(n, r, chi, F).exact_value;
}

double l_numeric_tail_bound(double s, int r, long K) {
  // C(k+r-1, r-1) <= (k+r-1)^{r-1}/(r-1)! <= (1+(r-1)/K)^{r-1} k^{r-1}/(r-1)! for k > K,
  // and sum_{k>K} k^{r-1-s} <= K^{r-s}/(s-r).
  const double kk = static_cast<double>(K);
  const double growth = std::pow(1.0 + (r - 1) / kk, r - 1);
  return growth * std::pow(kk, r - s) / ((s - r) * std::tgamma(static_cast<double>(r)));
}

NumericSum l_numeric(double s, int r, const DirichletCharacter& chi, double tol, long max_terms) {
  if (r < 1) throw DomainError("L_numeric needs r >= 1");
  if (!(s > r)) throw DomainError("L_numeric diverges for s <= r");
  if (!(tol > 0)) throw DomainError("L_numeric needs a positive tolerance");
  const long f = chi.modulus();
  std::vector<std::complex<long double>> table(static_cast<std::size_t>(f));
  for (long x = 0; x < f; ++x) {
    const auto c = chi.complex_value(x);
    table[static_cast<std::size_t>(x)] = {c.real(), c.imag()};
  }
  long double re = 0;
  long double im = 0;
  long K = 0;
  double bound = 0;
  long residue = 0;
  while (true) {
    ++K;
    residue = residue + 1 == f ? 0 : residue + 1;
    const auto& c = table[static_cast<std::size_t>(residue)];
    if (c.real() != 0 || c.imag() != 0) {
      long double weight = 1;
      for (int j = 1; j < r; ++j) weight = weight * (K + j) / j;
      const long double term = weight * std::pow(static_cast<long double>(K), -static_cast<long double>(s));
      re += term * c.real();
      im += term * c.imag();
    }
    if (K % 64 == 0 || K < 64) {
      bound = l_numeric_tail_bound(s, r, K);
      if (bound < tol) break;
    }
    if (K >= max_terms) {
      throw DomainError("L_numeric: tolerance not reached within " + std::to_string(max_terms) +
                        " terms");
    }
  }
  return NumericSum{{static_cast<double>(re), static_cast<double>(im)}, bound, K};
}

}  // namespace mplf
