#include <doctest.h>

#include <algorithm>

#include "mplf/errors.hpp"
#include "mplf/number_theory.hpp"
#include "mplf/padic.hpp"
#include "properties.hpp"

using namespace mplf;

namespace {
Rational q(const char* text) { return Rational::parse(text); }
}  // namespace

TEST_CASE("construction and normalization") {
  const PAdic x = PAdic::from_rational(q("50/3"), 5, 4);
  CHECK(x.valuation() == 2);
  CHECK(x.precision() == 6);
  CHECK(x.relative_precision() == 4);
  CHECK((x.unit() * 3 - 2) % 625 == 0);
  CHECK(PAdic::from_rational(Rational(0), 5, 4).is_exact());
  CHECK(PAdic::from_parts(5, 0, Integer(25), 3).valuation() == 2);
  CHECK(PAdic::from_parts(5, 0, Integer(25), 3).relative_precision() == 1);
  CHECK(PAdic::from_parts(5, 1, Integer(125), 3) == PAdic::inexact_zero(5, 4));
  CHECK_THROWS_AS(PAdic(4), InvalidPrimeError);
  CHECK_THROWS_AS(PAdic::from_rational(Rational(1), 5, 0), DomainError);
}

TEST_CASE("precision rules") {
  const PAdic a = PAdic::from_rational(Rational(7), 5, 6);
  const PAdic b = PAdic::from_rational(Rational(10), 5, 3);  // known mod 5^4
  CHECK((a + b).precision() == 4);
  CHECK((a * b).relative_precision() == 3);
  CHECK((a * b).valuation() == 1);
  CHECK((b / a).precision() == 4);
  CHECK((a / b).valuation() == -1);
  // Exact operands never limit precision.
  const PAdic e = PAdic::exact(5, q("1/3"));
  CHECK((a + e).precision() == 6);
  CHECK((a * e).relative_precision() == 6);
  CHECK((e * e).is_exact());
  // Cancellation is reported, not hidden.
  const PAdic c = PAdic::from_rational(Rational(1), 5, 4);
  const PAdic d = PAdic::from_rational(Rational(626), 5, 4);
  const PAdic diff = d - c;
  CHECK(diff.is_zero());
  CHECK(diff.precision() == 4);
  CHECK_THROWS_AS(a / diff, DomainError);
  CHECK_THROWS_AS(a / PAdic(5), DomainError);
  CHECK_THROWS_AS(a + PAdic::exact(7, Rational(1)), StructuralError);
}

TEST_CASE("text round trip") {
  const PAdic x = PAdic::from_rational(q("-7/50"), 5, 5);
  CHECK(PAdic::parse(x.to_string()) == x);
  CHECK(PAdic::parse("O(7^3)") == PAdic::inexact_zero(7, 3));
  CHECK(PAdic::parse("exact(-2/3; p=5)") == PAdic::exact(5, q("-2/3")));
  CHECK(PAdic::parse("3 * 5^-1 + O(5^2)").precision() == 2);
  CHECK_THROWS_AS(PAdic::parse("5 * 5^0 + O(5^2)"), ParseError);
  CHECK_THROWS_AS(PAdic::parse("3 * 5^0 + O(7^2)"), ParseError);
  CHECK_THROWS_AS(PAdic::parse("garbage"), ParseError);
}

TEST_CASE("capping and residues") {
  const PAdic x = PAdic::exact(5, q("1/3"));
  CHECK(x.capped(3).precision() == 3);
  CHECK((x.capped(3).residue(3) * 3) % 125 == 1);
  CHECK(PAdic::from_rational(Rational(30), 5, 2).capped(1).is_zero());
  CHECK_THROWS_AS(PAdic::from_rational(Rational(1), 5, 2).residue(3), DomainError);
}

TEST_CASE("Teichmueller lifts") {
  CHECK(teichmuller(2, 5, 3).residue(3) == 57);
  CHECK(teichmuller(2, 7, 6).residue(6) == 34967);
  CHECK(teichmuller(3, 2, 5).residue(5) == 31);
  CHECK(teichmuller(5, 2, 5).residue(5) == 1);
  CHECK_THROWS_AS(teichmuller(10, 5, 3), DomainError);
  const PAdic t = teichmuller(3, 7, 8);
  PAdic power = PAdic::exact(7, Rational(1));
  for (int i = 0; i < 6; ++i) power *= t;
  CHECK(congruent(power, PAdic::exact(7, Rational(1)), 8));
}

TEST_CASE("log and exp against independent series values") {
  CHECK(padic_log(PAdic::from_rational(Rational(6), 5, 8)).residue(8) == 329930);
  CHECK(padic_log(PAdic::from_rational(Rational(11), 5, 8)).residue(8) == 293835);
  CHECK(padic_exp(PAdic::from_rational(Rational(5), 5, 8)).residue(8) == 349831);
  CHECK(padic_log(PAdic::exact(5, Rational(1))).is_zero());
  CHECK(padic_exp(PAdic(5)) == PAdic::exact(5, Rational(1)));
  CHECK_THROWS_AS(padic_log(PAdic::from_rational(Rational(2), 5, 8)), DomainError);
  CHECK_THROWS_AS(padic_exp(PAdic::from_rational(Rational(1), 5, 8)), DomainError);
  CHECK_THROWS_AS(padic_exp(PAdic::from_rational(Rational(2), 2, 8)), DomainError);
}

TEST_CASE("powers and binomials") {
  const PAdic b = PAdic::from_rational(Rational(6), 5, 10);
  CHECK(padic_pow(b, PAdic::exact(5, Rational(3))) == PAdic::from_rational(Rational(216), 5, 10));
  CHECK(congruent(padic_pow(b, PAdic::exact(5, Rational(-2))), PAdic::exact(5, q("1/36")), 10));
  CHECK_THROWS_AS(padic_pow(PAdic::from_rational(Rational(2), 5, 10), PAdic::exact(5, Rational(2))), DomainError);
  CHECK_THROWS_AS(padic_pow(b, PAdic::exact(5, q("1/5"))), DomainError);
  const PAdic five = PAdic::exact(5, Rational(5));
  CHECK(padic_binomial(five, 2) == PAdic::exact(5, Rational(10)));
  CHECK(padic_binomial(five, 6).is_zero());
  CHECK(padic_binomial(five, 6).is_exact());
  CHECK(padic_binomial(PAdic::exact(5, Rational(-3)), 2) == PAdic::exact(5, Rational(6)));
  CHECK_THROWS_AS(padic_binomial(five, -1), DomainError);
}

TEST_CASE("property: Teichmueller multiplicativity") {
  auto rng = testing::make_rng(5005);
  for (long p : {2L, 3L, 5L, 7L, 11L}) {
    for (int trial = 0; trial < 20; ++trial) {
      long a = testing::uniform(rng, 1, 500);
      long b = testing::uniform(rng, 1, 500);
      if (a % p == 0) ++a;
      if (b % p == 0) ++b;
      const long N = testing::uniform(rng, 1, 12);
      CHECK(congruent(teichmuller(a * b, p, N), teichmuller(a, p, N) * teichmuller(b, p, N), N));
      CHECK(congruent(angle_bracket(a * b, p, N), angle_bracket(a, p, N) * angle_bracket(b, p, N), N));
      CHECK((angle_bracket(a, p, N) - PAdic::exact(p, Rational(1))).valuation() >= std::min(N, p == 2 ? 2L : 1L));
    }
  }
}

TEST_CASE("property: precision honesty") {
  // Results computed from inputs of lower precision agree with the
  // high-precision results modulo their own stated precision.
  auto rng = testing::make_rng(5006);
  for (long p : {2L, 5L, 7L}) {
    for (int trial = 0; trial < 40; ++trial) {
      const long hi = 20;
      const PAdic a = testing::random_padic(rng, p, testing::uniform(rng, -2, 3), hi);
      const PAdic b = testing::random_padic(rng, p, testing::uniform(rng, -2, 3), hi);
      const long lo_a = testing::uniform(rng, 4, 12);
      const long lo_b = testing::uniform(rng, 4, 12);
      const PAdic la = a.capped(lo_a);
      const PAdic lb = b.capped(lo_b);
      for (const auto& [low, high] : {std::pair{la + lb, a + b}, std::pair{la - lb, a - b},
                                      std::pair{la * lb, a * b}, std::pair{la / lb, a / b}}) {
        CHECK(low.precision() <= high.precision());
        CHECK(congruent(low, high, low.precision()));
      }
      const long t = p == 2 ? 2 : 1;
      const PAdic y = testing::random_padic(rng, p, t + testing::uniform(rng, 0, 2), hi);
      const PAdic ly = y.capped(testing::uniform(rng, t + 3, 12));
      const PAdic x = PAdic::exact(p, Rational(1)) + y;
      const PAdic lx = PAdic::exact(p, Rational(1)) + ly;
      CHECK(congruent(padic_log(lx), padic_log(x), padic_log(lx).precision()));
      CHECK(congruent(padic_exp(ly), padic_exp(y), padic_exp(ly).precision()));
      CHECK(congruent(padic_exp(padic_log(x)), x, hi - 2));
    }
  }
}

TEST_CASE("property: power routes agree") {
  auto rng = testing::make_rng(5007);
  for (long p : {2L, 5L, 7L}) {
    const long N = 14;
    for (int trial = 0; trial < 20; ++trial) {
      const long t = p == 2 ? 4 : p;
      long a = testing::uniform(rng, 1, 300) * t + 1;
      const PAdic base = PAdic::from_rational(Rational(a), p, N);
      const long e = testing::uniform(rng, -40, 40);
      const PAdic binary = padic_pow(base, PAdic::exact(p, Rational(e)));
      const PAdic via_log = padic_pow(base, PAdic::exact(p, Rational(e)).capped(N + 4));
      CHECK(congruent(binary, via_log, N - 2));
      // Binomials: exact and finite routes agree.
      const Rational x = testing::random_p_integral(rng, p);
      const long m = testing::uniform(rng, 0, 8);
      const PAdic exact = padic_binomial(PAdic::exact(p, x), m);
      const PAdic approx = padic_binomial(PAdic::from_rational(x, p, N), m);
      CHECK(congruent(exact, approx, approx.precision()));
    }
  }
}
