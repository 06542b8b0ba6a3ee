#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <thread>
#include <vector>

#include "mplf/bernoulli.hpp"
#include "mplf/errors.hpp"
#include "properties.hpp"

using namespace mplf;

namespace {
Rational q(const char* text) { return Rational::parse(text); }
}  // namespace

TEST_CASE("classical Bernoulli numbers") {
  const char* expected[] = {"1", "-1/2", "1/6", "0", "-1/30", "0", "1/42", "0", "-1/30", "0", "5/66", "0",
                            "-691/2730"};
  for (int n = 0; n <= 12; ++n) CHECK(bernoulli(n) == q(expected[n]));
  CHECK(bernoulli(20) == q("-174611/330"));
}

TEST_CASE("order-2 and order-3 Bernoulli numbers") {
  const char* b2[] = {"1", "-1", "5/6", "-1/2", "1/10", "1/6", "-5/42", "-1/6"};
  const char* b3[] = {"1", "-3/2", "2", "-9/4", "19/10", "-3/4", "-16/21", "5/4"};
  for (int n = 0; n < 8; ++n) {
    CHECK(multi_bernoulli(n, 2) == q(b2[n]));
    CHECK(multi_bernoulli(n, 3) == q(b3[n]));
  }
  CHECK(multi_bernoulli(0, 5) == Rational(1));
}

TEST_CASE("Bernoulli polynomial values") {
  const char* expected[] = {"1", "-2/3", "5/18", "1/27", "-119/810", "7/243"};
  for (int n = 0; n < 6; ++n) CHECK(multi_bernoulli_poly(n, 2, q("1/3")) == q(expected[n]));
  CHECK(multi_bernoulli_poly(2, 1, q("1/2")) == q("-1/12"));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(multi_bernoulli(3, 0), DomainError);
  CHECK_THROWS_AS(multi_bernoulli(-1, 2), DomainError);
  CHECK_THROWS_AS(multi_bernoulli_recurrence(2, 0), DomainError);
}

TEST_CASE("property: series and recurrence routes agree") {
  for (int r = 1; r <= 5; ++r) {
    const auto table = multi_bernoulli_recurrence_table(30, r);
    for (int n = 0; n <= 30; ++n) {
      CHECK(table[static_cast<std::size_t>(n)] == multi_bernoulli_series(n, r));
      CHECK(multi_bernoulli(n, r) == table[static_cast<std::size_t>(n)]);
    }
  }
}

TEST_CASE("property: polynomial routes agree") {
  auto rng = testing::make_rng(2002);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(testing::uniform(rng, 0, 10));
    const int r = static_cast<int>(testing::uniform(rng, 1, 4));
    const Rational x = testing::random_rational(rng);
    CHECK(multi_bernoulli_poly(n, r, x) == multi_bernoulli_poly_series(n, r, x));
  }
}

TEST_CASE("property: difference and convolution identities") {
  auto rng = testing::make_rng(2003);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(testing::uniform(rng, 1, 9));
    const int r = static_cast<int>(testing::uniform(rng, 2, 4));
    const int s = static_cast<int>(testing::uniform(rng, 1, 3));
    const Rational x = testing::random_rational(rng);
    const Rational y = testing::random_rational(rng);
    // B_n^{(r)}(x+1) - B_n^{(r)}(x) = n B_{n-1}^{(r-1)}(x)
    CHECK(multi_bernoulli_poly(n, r, x + Rational(1)) - multi_bernoulli_poly(n, r, x) ==
          Rational(n) * multi_bernoulli_poly(n - 1, r - 1, x));
    // B_n^{(r+s)}(x+y) = sum_k C(n,k) B_k^{(r)}(x) B_{n-k}^{(s)}(y)
    Rational sum(0);
    for (int k = 0; k <= n; ++k) {
      sum += Rational(binomial(n, static_cast<unsigned long>(k))) * multi_bernoulli_poly(k, r, x) *
             multi_bernoulli_poly(n - k, s, y);
    }
    CHECK(multi_bernoulli_poly(n, r + s, x + y) == sum);
    // Reflection: B_n^{(r)}(r - x) = (-1)^n B_n^{(r)}(x)
    const Rational reflected = multi_bernoulli_poly(n, r, Rational(r) - x);
    CHECK(reflected == (n % 2 == 0 ? Rational(1) : Rational(-1)) * multi_bernoulli_poly(n, r, x));
  }
}

TEST_CASE("cache persistence") {
  BernoulliCache cache;
  CHECK(cache.get(6, 3) == q("-16/21"));
  CHECK(cache.size() > 0);
  const auto dir = std::filesystem::temp_directory_path() / "mplf_cache_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "bernoulli.cache";
  cache.save(file);

  BernoulliCache restored;
  restored.load(file);
  CHECK(restored.size() == cache.size());
  CHECK(restored.get(6, 3) == q("-16/21"));

  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  CHECK(line == "1 0 1");

  restored.load(dir / "missing.cache");
  std::filesystem::remove_all(dir);
}

TEST_CASE("corrupt cache files are rejected") {
  const auto file = std::filesystem::temp_directory_path() / "mplf_bad.cache";
  {
    std::ofstream out(file);
    out << "1 2 not-a-number\n";
  }
  BernoulliCache cache;
  CHECK_THROWS_AS(cache.load(file), ParseError);
  std::filesystem::remove(file);
}

TEST_CASE("concurrent cache fills agree") {
  BernoulliCache cache;
  std::vector<std::thread> threads;
  std::vector<Rational> seen(8);
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] { seen[static_cast<std::size_t>(t)] = cache.get(24 + t % 3, 2 + t % 2); });
  }
  for (auto& t : threads) t.join();
  for (int t = 0; t < 8; ++t) CHECK(seen[static_cast<std::size_t>(t)] == multi_bernoulli_series(24 + t % 3, 2 + t % 2));
}
