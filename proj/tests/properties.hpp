#pragma once

#include <cstdint>
#include <random>

#include "mplf/cyclotomic.hpp"
#include "mplf/padic.hpp"
#include "mplf/rational.hpp"

namespace mplf::testing {

using Rng = std::mt19937_64;

/// Fixed-seed generator; every property test starts from its own seed.
inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

long uniform(Rng& rng, long lo, long hi);
Rational random_rational(Rng& rng, long max_num = 50, long max_den = 12);
/// Rational with denominator prime to p.
Rational random_p_integral(Rng& rng, long p, long max_num = 400, long max_den = 40);
CycloNumber random_cyclo(Rng& rng, unsigned order);
/// Finite p-adic number with the given valuation and absolute precision.
PAdic random_padic(Rng& rng, long p, long valuation, long precision);

}  // namespace mplf::testing
