#pragma once

#include <optional>
#include <string>

#include "mplf/characters.hpp"
#include "mplf/cyclotomic.hpp"
#include "mplf/padic.hpp"

namespace mplf {

/// lcm(q, f): the smallest admissible summation modulus.
long default_modulus(const DirichletCharacter& chi, long p);

/// True when the order of chi divides p - 1 (2 when p = 2), so its values
/// are Teichmueller roots of unity in Q_p.
bool is_embeddable(const DirichletCharacter& chi, long p);

/// Image in Q_p of a cyclotomic number whose minimal order divides p - 1,
/// sending zeta_{p-1} to the Teichmueller lift of the generator g with
/// omega(g) = zeta_{p-1}. The result is known at least modulo p^N.
/// Throws UnsupportedCharacterError for other orders.
PAdic embed(const CycloNumber& x, long p, long N);

/// One-variable p-adic L-function
///   1/(s-1) 1/F sum_{a<=F, p!|a} chi(a) <a>^{1-s} sum_m C(1-s,m) (F/a)^m B_m,
/// returned modulo p^N. F defaults to lcm(q, f).
PAdic washington_lp(const PAdic& s, const DirichletCharacter& chi, long p, long N,
                    std::optional<long> F = std::nullopt);

/// r-variable p-adic L-function, with the r-fold sum over [1,F]^r grouped by
/// sigma = a_1 + ... + a_r. Returned modulo p^N.
PAdic multivariate_lp(const PAdic& s, const DirichletCharacter& chi, int r, long p, long N,
                      std::optional<long> F = std::nullopt);

/// Same function evaluated with the literal r-fold loop (small F and r only).
PAdic multivariate_lp_literal(const PAdic& s, const DirichletCharacter& chi, int r, long p, long N,
                              std::optional<long> F = std::nullopt);

/// F^n sum over (a_i) in [1,F]^r with p !| sigma of chi(sigma) B_{n+r}^{(r)}(sigma/F).
CycloNumber restricted_gen_bernoulli(int n, int r, const DirichletCharacter& chi, long p, long F);

/// The complementary sum over p | sigma; unrestricted = restricted + this.
CycloNumber p_divisible_partial_sum(int n, int r, const DirichletCharacter& chi, long p, long F);

enum class SecondRoute { Auto, Quotient, Literal };

/// B*: (unrestricted - restricted) / (p^n chi(p)) by the quotient route, or
/// (F/p)^n sum_{p | sigma} chi(sigma/p) B_{n+r}^{(r)}(sigma/F) by the literal
/// route. Auto takes the quotient route when chi(p) != 0.
CycloNumber second_gen_bernoulli(int n, int r, const DirichletCharacter& chi, long p, long F,
                                 SecondRoute route = SecondRoute::Auto);

struct PadicCheckReport {
  long p;
  long N;
  int r;
  int n;
  std::string chi;
  long F;
  PAdic lhs;
  PAdic rhs;
  long diff_valuation;
  long guaranteed_precision;
  bool pass;
};

/// washington_lp(1-n, chi) against -(1/n)(1 - chi_n(p) p^{n-1}) B_{n,chi_n}.
PadicCheckReport verify_lemma3(int n, const DirichletCharacter& chi, long p, long N,
                               std::optional<long> F = std::nullopt);

/// multivariate_lp(-n, chi, r) against (-1)^r n!/(n+r)! times the restricted
/// sum for chi_{n+r} = twist(chi, n+r, p).
PadicCheckReport verify_theorem4(int n, int r, const DirichletCharacter& chi, long p, long N,
                                 std::optional<long> F = std::nullopt);

}  // namespace mplf
