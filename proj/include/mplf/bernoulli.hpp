#pragma once

#include <cstddef>
#include <filesystem>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "mplf/rational.hpp"

namespace mplf {

/// Memo table of order-r Bernoulli numbers B_n^{(r)}.
///
/// Misses are filled from the generating function (t/(e^t-1))^r, which yields
/// every B_k^{(r)} with k <= n in one pass. Lookups and inserts may run
/// concurrently; inserts are idempotent because every writer computes the
/// same exact value.
///
/// On-disk format: one record "r n num/den" per line, sorted by (r, n).
class BernoulliCache {
 public:
  BernoulliCache() = default;
  BernoulliCache(const BernoulliCache&) = delete;
  BernoulliCache& operator=(const BernoulliCache&) = delete;

  /// Process-wide instance used by the free functions below.
  static BernoulliCache& global();

  Rational get(int n, int r);

  std::size_t size() const;
  void clear();

  /// Merges records from a cache file; a missing file is not an error.
  void load(const std::filesystem::path& file);
  void save(const std::filesystem::path& file) const;

 private:
  struct Key {
    int n;
    int r;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, Rational, KeyHash> values_;
};

/// Classical Bernoulli number B_n (B_1 = -1/2).
Rational bernoulli(int n);

/// B_n^{(r)}: n! [t^n] (t/(e^t-1))^r, cached. Throws DomainError for r < 1.
Rational multi_bernoulli(int n, int r);

/// Uncached generating-function route: inverse of (e^t-1)/t raised to the
/// r-th power by repeated series multiplication.
Rational multi_bernoulli_series(int n, int r);

/// Uncached recurrence route: B_n from sum_{k<=n} C(n+1,k) B_k = 0, then the
/// order is raised with B_n^{(r+1)} = (1 - n/r) B_n^{(r)} - n B_{n-1}^{(r)}.
Rational multi_bernoulli_recurrence(int n, int r);

/// All B_0^{(r)}, ..., B_n^{(r)} by the recurrence route.
std::vector<Rational> multi_bernoulli_recurrence_table(int n, int r);

/// B_n^{(r)}(x) = sum_k C(n,k) B_k^{(r)} x^{n-k}.
Rational multi_bernoulli_poly(int n, int r, const Rational& x);

/// n! [t^n] (t/(e^t-1))^r e^{xt}, computed with truncated series.
Rational multi_bernoulli_poly_series(int n, int r, const Rational& x);

}  // namespace mplf
