#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mplf/bernoulli.hpp"
#include "mplf/characters.hpp"
#include "mplf/classical.hpp"
#include "mplf/errors.hpp"
#include "mplf/series.hpp"
#include "properties.hpp"

using namespace mplf;

namespace {

Rational q(const char* text) { return Rational::parse(text); }

// Closed form with the shifts running over 0..f-1.
CycloNumber shifted_range_sum(int n, int r, const DirichletCharacter& chi) {
  const long f = chi.modulus();
  CycloNumber sum(0);
  std::vector<long> a(static_cast<std::size_t>(r), 0);
  while (true) {
    long sigma = 0;
    for (long v : a) sigma += v;
    sum += chi.value(sigma) * multi_bernoulli_poly(n, r, Rational(Integer(sigma), Integer(f)));
    std::size_t i = 0;
    while (i < a.size() && a[i] == f - 1) a[i++] = 0;
    if (i == a.size()) break;
    ++a[i];
  }
  return sum * Rational(ipow(Integer(f), static_cast<unsigned long>(std::max(0, n - r)))) /
         Rational(ipow(Integer(f), static_cast<unsigned long>(std::max(0, r - n))));
}

}  // namespace

TEST_CASE("frozen values: character mod 4") {
  const auto chi = char_enumerate(4)[1];
  CHECK(gen_multi_bernoulli(1, 1, chi) == CycloNumber(q("-1/2")));
  CHECK(gen_multi_bernoulli(2, 1, chi) == CycloNumber(0));
  CHECK(gen_multi_bernoulli(3, 1, chi) == CycloNumber(q("3/2")));
  CHECK(gen_multi_bernoulli(2, 2, chi) == CycloNumber(-1));
  CHECK(gen_multi_bernoulli(3, 2, chi) == CycloNumber(-3));
  CHECK(gen_multi_bernoulli(4, 2, chi) == CycloNumber(6));
  CHECK(gen_multi_bernoulli(3, 3, chi) == CycloNumber(q("-3/2")));
  CHECK(gen_multi_bernoulli(4, 3, chi) == CycloNumber(-18));
}

TEST_CASE("frozen values: quadratic character mod 3") {
  const auto chi = char_enumerate(3)[1];
  CHECK(gen_multi_bernoulli(1, 1, chi) == CycloNumber(q("-1/3")));
  CHECK(gen_multi_bernoulli(3, 1, chi) == CycloNumber(q("2/3")));
  CHECK(gen_multi_bernoulli(2, 2, chi) == CycloNumber(q("-2/3")));
  CHECK(gen_multi_bernoulli(3, 2, chi) == CycloNumber(q("-4/3")));
  CHECK(gen_multi_bernoulli(4, 2, chi) == CycloNumber(q("8/3")));
  CHECK(gen_multi_bernoulli(3, 3, chi) == CycloNumber(q("-4/3")));
  CHECK(gen_multi_bernoulli(4, 3, chi) == CycloNumber(-8));
}

TEST_CASE("frozen values: trivial and principal characters") {
  const auto triv = trivial_character();
  CHECK(gen_multi_bernoulli(1, 1, triv) == CycloNumber(q("1/2")));
  CHECK(gen_multi_bernoulli(2, 2, triv) == CycloNumber(q("5/6")));
  const char* r3[] = {"3/2", "2", "9/4", "19/10"};
  for (int n = 1; n <= 4; ++n) CHECK(gen_multi_bernoulli(n, 3, triv) == CycloNumber(q(r3[n - 1])));
  for (int n = 2; n <= 10; ++n) CHECK(gen_multi_bernoulli(n, 1, triv) == CycloNumber(bernoulli(n)));
  const auto principal = trivial_character(3);
  CHECK(gen_multi_bernoulli(0, 1, principal) == CycloNumber(q("2/3")));
  CHECK(gen_multi_bernoulli(2, 1, principal) == CycloNumber(q("-1/3")));
  CHECK(gen_multi_bernoulli(4, 1, principal) == CycloNumber(q("13/15")));
}

TEST_CASE("nontrivial characters have vanishing index-zero value") {
  for (long f : {3L, 4L, 5L, 7L}) {
    for (const auto& chi : char_enumerate(f)) {
      if (chi.is_trivial()) continue;
      CHECK(gen_multi_bernoulli_oracle(0, 1, chi).is_zero());
      CHECK(gen_multi_bernoulli(0, 1, chi).is_zero());
    }
  }
}

TEST_CASE("shift range 0..f-1 differs by the sign (-1)^n chi(-1)") {
  for (long f : {1L, 3L, 4L, 5L}) {
    for (const auto& chi : char_enumerate(f)) {
      for (int r = 1; r <= 3; ++r) {
        for (int n = 0; n <= 6; ++n) {
          const Rational sign((n % 2 == 0 ? 1 : -1) * chi.parity());
          CHECK(shifted_range_sum(n, r, chi) == gen_multi_bernoulli(n, r, chi) * sign);
        }
      }
    }
  }
}

TEST_CASE("generating function and closed form agree") {
  for (long f : {1L, 3L, 4L, 5L}) {
    for (const auto& chi : char_enumerate(f)) {
      for (int r = 1; r <= 3; ++r) {
        for (int n = 0; n <= 8; ++n) CHECK(gen_multi_bernoulli(n, r, chi) == gen_multi_bernoulli_oracle(n, r, chi));
      }
    }
  }
}

TEST_CASE("closed form is independent of the summation modulus") {
  for (const auto& chi : char_enumerate(5)) {
    for (int r = 1; r <= 2; ++r) {
      for (int n = 0; n <= 5; ++n) {
        CHECK(gen_multi_bernoulli_at(n, r, chi, 10) == gen_multi_bernoulli(n, r, chi));
      }
    }
  }
  CHECK_THROWS_AS(gen_multi_bernoulli_at(2, 1, char_enumerate(5)[1], 7), DomainError);
}

TEST_CASE("composition weights") {
  const auto w = composition_weights(3, 2);
  const std::vector<Integer> expected{0, 0, 1, 2, 3, 2, 1};
  CHECK(w == expected);
  auto rng = testing::make_rng(4004);
  for (int trial = 0; trial < 20; ++trial) {
    const long F = testing::uniform(rng, 1, 7);
    const int r = static_cast<int>(testing::uniform(rng, 1, 3));
    std::vector<Integer> literal(static_cast<std::size_t>(r * F + 1), 0);
    std::vector<long> a(static_cast<std::size_t>(r), 1);
    while (true) {
      long sigma = 0;
      for (long v : a) sigma += v;
      literal[static_cast<std::size_t>(sigma)] += 1;
      std::size_t i = 0;
      while (i < a.size() && a[i] == F) a[i++] = 1;
      if (i == a.size()) break;
      ++a[i];
    }
    CHECK(composition_weights(F, r) == literal);
  }
}

TEST_CASE("composition counts generate (1-x)^{-r}") {
  const std::size_t K = 20;
  RationalSeries one_minus_x(K);
  one_minus_x[0] = Rational(1);
  one_minus_x[1] = Rational(-1);
  for (int r = 1; r <= 4; ++r) {
    const RationalSeries target = one_minus_x.inverse().pow(static_cast<unsigned>(r));
    for (std::size_t k = 0; k < K; ++k) CHECK(Rational(composition_count(static_cast<long>(k), r)) == target[k]);
  }
}

TEST_CASE("H special values") {
  CHECK_THROWS_AS(h_special(1, {0, 2}, 3), DomainError);
  CHECK_THROWS_AS(h_special(1, {4}, 3), DomainError);
  CHECK_THROWS_AS(h_special(0, {1}, 3), DomainError);
  // r = 1: -F^n B_{n+1}(a/F)/(n+1)
  for (int n = 1; n <= 5; ++n) {
    for (long a = 1; a <= 4; ++a) {
      const Rational expected =
          -Rational(ipow(Integer(4), static_cast<unsigned long>(n))) *
          multi_bernoulli_poly(n + 1, 1, Rational(Integer(a), Integer(4))) / Rational(n + 1);
      CHECK(h_special(n, {a}, 4) == expected);
    }
  }
  // Dependence through the sum only, against the series route for the polynomial.
  auto rng = testing::make_rng(4005);
  for (int trial = 0; trial < 30; ++trial) {
    const long F = testing::uniform(rng, 2, 9);
    const int n = static_cast<int>(testing::uniform(rng, 1, 5));
    std::vector<long> a{testing::uniform(rng, 1, F), testing::uniform(rng, 1, F), testing::uniform(rng, 1, F)};
    std::vector<long> b{a[2], a[0], a[1]};
    CHECK(h_special(n, a, F) == h_special(n, b, F));
    if (a[0] > 1 && a[1] < F) {
      std::vector<long> c{a[0] - 1, a[1] + 1, a[2]};
      CHECK(h_special(n, a, F) == h_special(n, c, F));
    }
    const Rational sigma(Integer(a[0] + a[1] + a[2]), Integer(F));
    const Rational zeta_value = -Rational(factorial(static_cast<unsigned long>(n)),
                                          factorial(static_cast<unsigned long>(n + 3))) *
                                multi_bernoulli_poly_series(n + 3, 3, sigma);
    CHECK(h_special(n, a, F) == Rational(ipow(Integer(F), static_cast<unsigned long>(n))) * zeta_value);
  }
}

TEST_CASE("special values at negative integers") {
  const auto triv = trivial_character();
  CHECK(l_special(1, 1, triv, 1) == CycloNumber(q("-1/12")));
  CHECK(l_special(3, 1, triv, 1) == CycloNumber(q("1/120")));
  // Positive-composition convention: sum over k of (k-1) k^{-s} = zeta(s-1) - zeta(s) at s = -1.
  CHECK(l_special(1, 2, triv, 1) == CycloNumber(q("1/12")));
  CHECK(l_special(1, 2, triv, 1) == CycloNumber(multi_bernoulli_poly(3, 2, Rational(2)) / Rational(6)));
  for (const auto& chi : char_enumerate(4)) {
    for (int r = 1; r <= 3; ++r) {
      for (int n = 1; n <= 4; ++n) {
        const auto report = l_special_report(n, r, chi, 4);
        CHECK(report.cross_checked);
        CHECK(*report.exact_value == l_special(n, r, chi, 8));
      }
    }
  }
  CHECK_THROWS_AS(l_special(1, 1, char_enumerate(4)[1], 6), DomainError);
}

TEST_CASE("numeric series") {
  const auto triv = trivial_character();
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6;
  const NumericSum a = l_numeric(2.0, 1, triv, 1e-6);
  CHECK(std::abs(a.value.real() - zeta2) < 1e-6);
  CHECK(a.tail_bound < 1e-6);
  const NumericSum catalan = l_numeric(2.0, 1, char_enumerate(4)[1], 1e-6);
  CHECK(std::abs(catalan.value.real() - 0.915965594177219) < 1e-6);
  CHECK(std::abs(catalan.value.imag()) < 1e-12);
  // Two-fold sum counts k + 1 tuples with sum k: zeta(2) + zeta(3).
  const NumericSum two = l_numeric(3.0, 2, triv, 1e-5);
  CHECK(std::abs(two.value.real() - (zeta2 + 1.2020569031595942)) < 1e-5);
  CHECK_THROWS_AS(l_numeric(2.0, 2, triv, 1e-3), DomainError);
  CHECK_THROWS_AS(l_numeric(1.0, 1, triv, 1e-3), DomainError);
  CHECK_THROWS_AS(l_numeric(3.0, 1, triv, 1e-12, 1000), DomainError);
}

TEST_CASE("property: halving the tolerance moves the value by less than the tolerance") {
  auto rng = testing::make_rng(4006);
  for (int trial = 0; trial < 6; ++trial) {
    const int r = static_cast<int>(testing::uniform(rng, 1, 2));
    const double s = r + 1.5 + 0.25 * static_cast<double>(testing::uniform(rng, 0, 4));
    const long f = testing::uniform(rng, 1, 7);
    const auto chars = char_enumerate(f);
    const auto& chi = chars[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<long>(chars.size()) - 1))];
    const double tol = 1e-4;
    const auto coarse = l_numeric(s, r, chi, tol);
    const auto fine = l_numeric(s, r, chi, tol / 2);
    CHECK(std::abs(coarse.value - fine.value) < tol);
  }
}
