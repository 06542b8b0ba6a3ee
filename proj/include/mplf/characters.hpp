#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mplf/cyclotomic.hpp"

namespace mplf {

/// Dirichlet character modulo f, stored as a full table of exponents:
/// chi(a) = zeta_order^{exponent[a]} for gcd(a, f) = 1 and chi(a) = 0 otherwise.
/// The stored order is the exact multiplicative order of the character.
class DirichletCharacter {
 public:
  /// Exponents outside the unit group must be -1; the order is recomputed
  /// from the table, so any multiple of the true order is accepted.
  DirichletCharacter(long modulus, unsigned order, std::vector<int> exponents);

  long modulus() const { return modulus_; }
  unsigned order() const { return order_; }

  /// Exponent of chi(x) after reducing x mod f, or nothing when gcd(x, f) > 1.
  std::optional<int> exponent(long x) const;
  CycloNumber value(long x) const;
  CycloNumber operator()(long x) const { return value(x); }
  std::complex<double> complex_value(long x) const;

  bool is_trivial() const { return order_ == 1; }
  /// chi(-1) as +1 or -1.
  int parity() const;

  const std::vector<int>& exponents() const { return exponents_; }

  friend bool operator==(const DirichletCharacter&, const DirichletCharacter&) = default;

 private:
  long modulus_;
  unsigned order_;
  std::vector<int> exponents_;
};

/// All phi(f) characters modulo f.
///
/// The unit group is generated by a fixed generator list: for the 2-part
/// 2^e, -1 (when e >= 2) and 5 (when e >= 3); then one primitive root for
/// each odd prime power, primes ascending. Each generator is lifted by CRT
/// to be 1 modulo the other prime-power components. Characters are listed in
/// lexicographic order of their exponent vectors (c_1, ..., c_k), where
/// chi(g_i) = zeta_{ord g_i}^{c_i}; index 0 is the principal character.
std::vector<DirichletCharacter> char_enumerate(long f);

/// Principal character modulo f (f = 1 gives the conductor-1 character).
DirichletCharacter trivial_character(long f = 1);

long conductor(const DirichletCharacter& chi);
bool is_primitive(const DirichletCharacter& chi);
/// The primitive character modulo conductor(chi) inducing chi.
DirichletCharacter primitive_of(const DirichletCharacter& chi);
/// Same character viewed modulo a multiple F of its modulus.
DirichletCharacter induce(const DirichletCharacter& chi, long F);

/// Pointwise product on residues coprime to lcm of the moduli (modulus lcm).
DirichletCharacter char_mul(const DirichletCharacter& a, const DirichletCharacter& b);
DirichletCharacter char_conj(const DirichletCharacter& chi);
DirichletCharacter char_pow(const DirichletCharacter& chi, long k);

/// q = p for odd p and q = 4 for p = 2.
long teichmuller_modulus(long p);
/// Generator g of (Z/q)^* with omega(g) = zeta_{phi(q)}.
long teichmuller_generator(long p);
/// Teichmueller character omega modulo q, of order phi(q).
DirichletCharacter teichmuller_char(long p);

/// chi_n = chi * omega^{-n}, reduced to its conductor.
DirichletCharacter twist(const DirichletCharacter& chi, long n, long p);

/// Parses "triv" or "f.k" (k-th character mod f in char_enumerate order).
DirichletCharacter parse_character_label(std::string_view label);
/// Index k such that char_enumerate(chi.modulus())[k] == chi.
std::size_t character_index(const DirichletCharacter& chi);
std::string character_label(const DirichletCharacter& chi);

}  // namespace mplf
