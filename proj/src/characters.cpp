#include "mplf/characters.hpp"

#include <charconv>
#include <numbers>
#include <numeric>

#include "mplf/errors.hpp"
#include "mplf/number_theory.hpp"

namespace mplf {

namespace {

struct Generator {
  long value;  // residue mod f
  long order;
};

// Generators of (Z/f)^* in the documented enumeration order.
std::vector<Generator> unit_generators(long f) {
  std::vector<Generator> gens;
  if (f <= 2) return gens;
  const auto factors = factorize(f);
  auto crt_lift = [f](long residue, long component) {
    // x = residue mod component, x = 1 mod f/component.
    const long rest = f / component;
    for (long x = residue; x < f; x += component) {
      if (mod(x, rest) == 1 % rest) return x;
    }
    throw Error("CRT lift failed");
  };
  for (const auto& [p, e] : factors) {
    long pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e >= 2) gens.push_back({crt_lift(pe - 1, pe), 2});
      if (e >= 3) gens.push_back({crt_lift(5, pe), pe / 4});
    } else {
      const long g = primitive_root_prime_power(p, e);
      gens.push_back({crt_lift(mod(g, pe), pe), pe / p * (p - 1)});
    }
  }
  return gens;
}

// Discrete-log vectors of every unit mod f with respect to unit_generators(f).
std::vector<std::vector<long>> unit_logs(long f, const std::vector<Generator>& gens) {
  std::vector<std::vector<long>> logs(static_cast<std::size_t>(f));
  std::vector<long> digits(gens.size(), 0);
  while (true) {
    long a = 1 % f;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      a = static_cast<long>(static_cast<__int128>(a) * powmod(gens[i].value, digits[i], f) % f);
    }
    logs[static_cast<std::size_t>(a)] = digits;
    std::size_t i = gens.size();
    while (i > 0) {
      --i;
      if (++digits[i] < gens[i].order) break;
      digits[i] = 0;
      if (i == 0) return logs;
    }
    if (gens.empty()) return logs;
  }
}

DirichletCharacter from_generator_exponents(long f, const std::vector<Generator>& gens,
                                            const std::vector<std::vector<long>>& logs,
                                            const std::vector<long>& c) {
  long exponent = 1;
  for (const auto& g : gens) exponent = std::lcm(exponent, g.order);
  std::vector<int> table(static_cast<std::size_t>(f), -1);
  for (long a = 0; a < f; ++a) {
    if (std::gcd(a, f) != 1) continue;
    const auto& l = logs[static_cast<std::size_t>(a)];
    long e = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      e = (e + c[i] * l[i] % gens[i].order * (exponent / gens[i].order)) % exponent;
    }
    table[static_cast<std::size_t>(a)] = static_cast<int>(e);
  }
  return DirichletCharacter(f, static_cast<unsigned>(exponent), std::move(table));
}

}  // namespace

DirichletCharacter::DirichletCharacter(long modulus, unsigned order, std::vector<int> exponents)
    : modulus_(modulus), order_(order), exponents_(std::move(exponents)) {
  if (modulus < 1) throw DomainError("character modulus must be positive");
  if (order < 1) throw DomainError("character order must be positive");
  if (exponents_.size() != static_cast<std::size_t>(modulus)) {
    throw StructuralError("character table length must equal the modulus");
  }
  long g = order_;
  for (long a = 0; a < modulus_; ++a) {
    int& e = exponents_[static_cast<std::size_t>(a)];
    const bool unit = std::gcd(a, modulus_) == 1;
    if (!unit) {
      if (e != -1) throw DomainError("character must vanish off the unit group");
      continue;
    }
    if (e < 0) throw DomainError("character must be nonzero on units");
    e = static_cast<int>(e % static_cast<long>(order_));
    g = std::gcd(g, static_cast<long>(e));
  }
  // Reduce to the exact order.
  const auto shrink = static_cast<unsigned>(g);
  if (shrink > 1) {
    order_ /= shrink;
    for (int& e : exponents_) {
      if (e > 0) e /= static_cast<int>(shrink);
    }
  }
  if (order_ > CycloNumber::kMaxOrder) throw StructuralError("character order too large");
}

std::optional<int> DirichletCharacter::exponent(long x) const {
  const int e = exponents_[static_cast<std::size_t>(mod(x, modulus_))];
  if (e < 0) return std::nullopt;
  return e;
}

CycloNumber DirichletCharacter::value(long x) const {
  const auto e = exponent(x);
  if (!e) return CycloNumber(0);
  return CycloNumber::zeta(order_, *e);
}

std::complex<double> DirichletCharacter::complex_value(long x) const {
  const auto e = exponent(x);
  if (!e) return 0.0;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(*e) / order_);
}

int DirichletCharacter::parity() const {
  const auto e = exponent(-1);
  // chi(-1)^2 = 1, so the exponent is 0 or order/2.
  return (e && *e == 0) ? 1 : -1;
}

std::vector<DirichletCharacter> char_enumerate(long f) {
  if (f < 1) throw DomainError("character modulus must be positive");
  const auto gens = unit_generators(f);
  const auto logs = unit_logs(f, gens);
  std::vector<DirichletCharacter> out;
  std::vector<long> c(gens.size(), 0);
  while (true) {
    out.push_back(from_generator_exponents(f, gens, logs, c));
    std::size_t i = gens.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++c[i] < gens[i].order) {
        done = false;
        break;
      }
      c[i] = 0;
    }
    if (done) break;
  }
  return out;
}

DirichletCharacter trivial_character(long f) {
  if (f < 1) throw DomainError("character modulus must be positive");
  std::vector<int> table(static_cast<std::size_t>(f), -1);
  for (long a = 0; a < f; ++a) {
    if (std::gcd(a, f) == 1) table[static_cast<std::size_t>(a)] = 0;
  }
  return DirichletCharacter(f, 1, std::move(table));
}

long conductor(const DirichletCharacter& chi) {
  const long f = chi.modulus();
  for (long d : divisors(f)) {
    bool factors = true;
    for (long a = 1; a < f && factors; a += d) {
      // a = 1 (mod d)
      if (std::gcd(a, f) == 1 && *chi.exponent(a) != 0) factors = false;
    }
    if (factors) return d;
  }
  return f;
}

bool is_primitive(const DirichletCharacter& chi) { return conductor(chi) == chi.modulus(); }

DirichletCharacter primitive_of(const DirichletCharacter& chi) {
  const long f = chi.modulus();
  const long d = conductor(chi);
  if (d == f) return chi;
  std::vector<int> table(static_cast<std::size_t>(d), -1);
  for (long b = 0; b < d; ++b) {
    if (std::gcd(b, d) != 1) continue;
    for (long a = b; a < f; a += d) {
      if (std::gcd(a, f) == 1) {
        table[static_cast<std::size_t>(b)] = *chi.exponent(a);
        break;
      }
    }
  }
  return DirichletCharacter(d, chi.order(), std::move(table));
}

DirichletCharacter induce(const DirichletCharacter& chi, long F) {
  if (F < 1 || F % chi.modulus() != 0) throw DomainError("induced modulus must be a multiple");
  std::vector<int> table(static_cast<std::size_t>(F), -1);
  for (long a = 0; a < F; ++a) {
    if (std::gcd(a, F) == 1) table[static_cast<std::size_t>(a)] = *chi.exponent(a);
  }
  return DirichletCharacter(F, chi.order(), std::move(table));
}

DirichletCharacter char_mul(const DirichletCharacter& a, const DirichletCharacter& b) {
  const long L = std::lcm(a.modulus(), b.modulus());
  const long M = std::lcm(static_cast<long>(a.order()), static_cast<long>(b.order()));
  const long sa = M / a.order();
  const long sb = M / b.order();
  std::vector<int> table(static_cast<std::size_t>(L), -1);
  for (long x = 0; x < L; ++x) {
    if (std::gcd(x, L) != 1) continue;
    table[static_cast<std::size_t>(x)] =
        static_cast<int>((*a.exponent(x) * sa + *b.exponent(x) * sb) % M);
  }
  return DirichletCharacter(L, static_cast<unsigned>(M), std::move(table));
}

DirichletCharacter char_pow(const DirichletCharacter& chi, long k) {
  const long m = chi.order();
  const long kk = mod(k, m);
  std::vector<int> table = chi.exponents();
  for (int& e : table) {
    if (e >= 0) e = static_cast<int>(e * kk % m);
  }
  return DirichletCharacter(chi.modulus(), chi.order(), std::move(table));
}

DirichletCharacter char_conj(const DirichletCharacter& chi) { return char_pow(chi, -1); }

long teichmuller_modulus(long p) {
  if (!is_prime(p)) throw InvalidPrimeError(std::to_string(p) + " is not prime");
  return p == 2 ? 4 : p;
}

long teichmuller_generator(long p) {
  if (!is_prime(p)) throw InvalidPrimeError(std::to_string(p) + " is not prime");
  return p == 2 ? 3 : primitive_root_prime_power(p, 1);
}

DirichletCharacter teichmuller_char(long p) {
  const long q = teichmuller_modulus(p);
  const long g = teichmuller_generator(p);
  const long order = p == 2 ? 2 : p - 1;
  std::vector<int> table(static_cast<std::size_t>(q), -1);
  long a = 1;
  for (long k = 0; k < order; ++k) {
    table[static_cast<std::size_t>(a)] = static_cast<int>(k);
    a = a * g % q;
  }
  return DirichletCharacter(q, static_cast<unsigned>(order), std::move(table));
}

DirichletCharacter twist(const DirichletCharacter& chi, long n, long p) {
  return primitive_of(char_mul(chi, char_pow(teichmuller_char(p), -n)));
}

DirichletCharacter parse_character_label(std::string_view label) {
  if (label == "triv") return trivial_character(1);
  const auto dot = label.find('.');
  long f = 0;
  long k = 0;
  auto parse = [&](std::string_view text, long& out) {
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end && !text.empty();
  };
  if (dot == std::string_view::npos || !parse(label.substr(0, dot), f) ||
      !parse(label.substr(dot + 1), k) || f < 1 || k < 0) {
    throw UnknownCharacterError("unknown character label '" + std::string(label) + "'");
  }
  if (static_cast<unsigned long>(k) >= euler_phi(static_cast<unsigned long>(f))) {
    throw UnknownCharacterError("character label '" + std::string(label) + "': only " +
                                std::to_string(euler_phi(static_cast<unsigned long>(f))) +
                                " characters mod " + std::to_string(f));
  }
  return char_enumerate(f)[static_cast<std::size_t>(k)];
}

std::size_t character_index(const DirichletCharacter& chi) {
  const auto all = char_enumerate(chi.modulus());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] == chi) return i;
  }
  throw Error("character not found in its enumeration");
}

std::string character_label(const DirichletCharacter& chi) {
  if (chi.modulus() == 1) return "triv";
  return std::to_string(chi.modulus()) + "." + std::to_string(character_index(chi));
}

}  // namespace mplf
