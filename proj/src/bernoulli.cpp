#include "mplf/bernoulli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <tuple>

#include "mplf/errors.hpp"
#include "mplf/series.hpp"

namespace mplf {

namespace {

void check_args(int n, int r) {
  if (n < 0) throw DomainError("Bernoulli index must be nonnegative");
  if (r < 1) throw DomainError("Bernoulli order must be a positive integer");
}

// t/(e^t - 1) to the given order.
RationalSeries bernoulli_generating_function(std::size_t order) {
  RationalSeries shifted_exp(order);  // (e^t - 1)/t
  Integer fact = 1;
  for (std::size_t j = 0; j < order; ++j) {
    fact *= static_cast<unsigned long>(j + 1);
    shifted_exp[j] = Rational(Integer(1), fact);
  }
  return shifted_exp.inverse();
}

}  // namespace

std::size_t BernoulliCache::KeyHash::operator()(const Key& k) const noexcept {
  const auto packed = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.r)) << 32) |
                      static_cast<std::uint32_t>(k.n);
  return std::hash<std::uint64_t>{}(packed);
}

BernoulliCache& BernoulliCache::global() {
  static BernoulliCache cache;
  return cache;
}

Rational BernoulliCache::get(int n, int r) {
  check_args(n, r);
  {
    std::shared_lock lock(mutex_);
    auto it = values_.find(Key{n, r});
    if (it != values_.end()) return it->second;
  }
  // Fill every k <= K for orders 1..r in one series pass.
  const std::size_t order = (static_cast<std::size_t>(n) / 8 + 1) * 8;
  const RationalSeries base = bernoulli_generating_function(order);
  std::vector<std::pair<Key, Rational>> fresh;
  RationalSeries power = base;
  for (int rho = 1; rho <= r; ++rho) {
    if (rho > 1) power = series_mul(power, base);
    Integer fact = 1;
    for (std::size_t k = 0; k < order; ++k) {
      if (k > 0) fact *= static_cast<unsigned long>(k);
      fresh.emplace_back(Key{static_cast<int>(k), rho}, power[k] * Rational(fact));
    }
  }
  std::unique_lock lock(mutex_);
  for (auto& [key, value] : fresh) values_.try_emplace(key, std::move(value));
  return values_.at(Key{n, r});
}

std::size_t BernoulliCache::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

void BernoulliCache::clear() {
  std::unique_lock lock(mutex_);
  values_.clear();
}

void BernoulliCache::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return;
  std::vector<std::pair<Key, Rational>> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    int r = 0;
    int n = 0;
    std::string value;
    if (!(fields >> r >> n >> value) || r < 1 || n < 0) {
      throw ParseError(file.string() + ":" + std::to_string(line_no) + ": malformed cache record");
    }
    records.emplace_back(Key{n, r}, Rational::parse(value));
  }
  std::unique_lock lock(mutex_);
  for (auto& [key, value] : records) values_.try_emplace(key, std::move(value));
}

void BernoulliCache::save(const std::filesystem::path& file) const {
  std::vector<std::tuple<int, int, std::string>> rows;
  {
    std::shared_lock lock(mutex_);
    rows.reserve(values_.size());
    for (const auto& [key, value] : values_) rows.emplace_back(key.r, key.n, value.to_string());
  }
  std::sort(rows.begin(), rows.end());
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  const auto tmp = std::filesystem::path(file.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    for (const auto& [r, n, value] : rows) out << r << ' ' << n << ' ' << value << '\n';
  }
  std::filesystem::rename(tmp, file);
}

Rational bernoulli(int n) { return BernoulliCache::global().get(n, 1); }

Rational multi_bernoulli(int n, int r) { return BernoulliCache::global().get(n, r); }

Rational multi_bernoulli_series(int n, int r) {
  check_args(n, r);
  const auto order = static_cast<std::size_t>(n) + 1;
  const RationalSeries power = bernoulli_generating_function(order).pow(static_cast<unsigned>(r));
  return power[static_cast<std::size_t>(n)] * Rational(factorial(static_cast<unsigned long>(n)));
}

std::vector<Rational> multi_bernoulli_recurrence_table(int n, int r) {
  check_args(n, r);
  const auto size = static_cast<std::size_t>(n) + 1;
  std::vector<Rational> b(size);
  b[0] = Rational(1);
  for (std::size_t m = 1; m < size; ++m) {
    Rational acc;
    for (std::size_t k = 0; k < m; ++k) {
      acc += Rational(binomial(static_cast<long>(m + 1), k)) * b[k];
    }
    b[m] = -acc / Rational(static_cast<long>(m + 1));
  }
  for (int rho = 1; rho < r; ++rho) {
    std::vector<Rational> next(size);
    for (std::size_t k = 0; k < size; ++k) {
      const Rational kk(static_cast<long>(k));
      next[k] = (Rational(1) - kk / Rational(rho)) * b[k];
      if (k > 0) next[k] -= kk * b[k - 1];
    }
    b = std::move(next);
  }
  return b;
}

Rational multi_bernoulli_recurrence(int n, int r) {
  return multi_bernoulli_recurrence_table(n, r).back();
}

Rational multi_bernoulli_poly(int n, int r, const Rational& x) {
  check_args(n, r);
  Rational sum;
  Rational x_power(1);
  // k runs downward so the power of x grows with each step.
  for (int k = n; k >= 0; --k) {
    sum += Rational(binomial(n, static_cast<unsigned long>(k))) * multi_bernoulli(k, r) * x_power;
    x_power *= x;
  }
  return sum;
}

Rational multi_bernoulli_poly_series(int n, int r, const Rational& x) {
  check_args(n, r);
  const auto order = static_cast<std::size_t>(n) + static_cast<std::size_t>(r) + 1;
  const RationalSeries f = bernoulli_generating_function(order).pow(static_cast<unsigned>(r));
  const RationalSeries g = series_mul(f, exp_linear(x, order));
  return g[static_cast<std::size_t>(n)] * Rational(factorial(static_cast<unsigned long>(n)));
}

}  // namespace mplf
