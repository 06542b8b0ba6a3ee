#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "mplf/characters.hpp"
#include "mplf/cyclotomic.hpp"
#include "mplf/rational.hpp"

namespace mplf {

/// w[s] = #{(a_1..a_r) in [1,F]^r : a_1 + ... + a_r = s} for 0 <= s <= rF.
std::vector<Integer> composition_weights(long F, int r);

/// c_r(k) = #{(n_1..n_r) >= 0 : n_1 + ... + n_r = k} = C(k+r-1, r-1).
Integer composition_count(long k, int r);

/// B_{n,chi}^{(r)} = f^{n-r} sum_{a in [1,f]^r} chi(a_1+...+a_r) B_n^{(r)}((a_1+...+a_r)/f),
/// f the modulus of chi.
CycloNumber gen_multi_bernoulli(int n, int r, const DirichletCharacter& chi);

/// Same sum taken over [1,F]^r for a multiple F of the modulus.
CycloNumber gen_multi_bernoulli_at(int n, int r, const DirichletCharacter& chi, long F);

/// n! [t^n] sum_{a in [1,f]^r} chi(a_1+...+a_r) t^r e^{t(a_1+...+a_r)} / (e^{ft}-1)^r,
/// with cyclotomic power series truncated at order n + r + 1.
CycloNumber gen_multi_bernoulli_oracle(int n, int r, const DirichletCharacter& chi);

/// H_r(-n; a | F) = F^n (-1)^r n!/(n+r)! B_{n+r}^{(r)}((a_1+...+a_r)/F), 1 <= a_i <= F.
Rational h_special(int n, const std::vector<long>& a, long F);

struct LValueReport {
  int r = 1;
  std::optional<int> n;
  std::optional<double> s;
  std::string chi;
  long F = 1;
  std::string route;
  std::optional<CycloNumber> exact_value;
  std::optional<std::complex<double>> float_value;
  bool cross_checked = false;
  double tail_bound = 0.0;
  long terms = 0;
};

/// L_r(-n, chi) assembled from h_special over [1,F]^r and checked against
/// (-1)^r n!/(n+r)! gen_multi_bernoulli_at(n+r, r, chi, F). Throws
/// InvariantViolation when the routes disagree.
LValueReport l_special_report(int n, int r, const DirichletCharacter& chi, long F);
CycloNumber l_special(int n, int r, const DirichletCharacter& chi, long F);

struct NumericSum {
  std::complex<double> value;
  double tail_bound = 0.0;
  long terms = 0;
};

/// sum_{k>=1} C(k+r-1, r-1) chi(k) k^{-s} for real s > r, stopped once the
/// tail bound drops below tol.
NumericSum l_numeric(double s, int r, const DirichletCharacter& chi, double tol,
                     long max_terms = 400'000'000);

/// Upper bound for the tail of the l_numeric sum after K terms.
double l_numeric_tail_bound(double s, int r, long K);

}  // namespace mplf
