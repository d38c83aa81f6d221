#include <numeric>

#include "doctest.h"
#include "hyperpath/numtheory.hpp"
#include "hyperpath/util.hpp"

namespace hp = hyperpath;

TEST_SUITE("numtheory") {

TEST_CASE("primality by trial division") {
  const std::uint64_t primes[] = {2,  3,  5,  7,  11, 13,  101,
                                  499, 1373, 99991, 100003};
  for (auto p : primes) CHECK(hp::is_prime(p));
  const std::uint64_t comps[] = {0, 1, 4, 9, 91, 100001, 99991ull * 99991ull};
  for (auto m : comps) CHECK(!hp::is_prime(m));
}

TEST_CASE("factorize and divisors") {
  auto f = hp::factorize(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<std::uint64_t, unsigned>{2, 3});
  CHECK(f[1] == std::pair<std::uint64_t, unsigned>{3, 2});
  CHECK(f[2] == std::pair<std::uint64_t, unsigned>{5, 1});

  CHECK(hp::divisors(12) == std::vector<std::uint32_t>{1, 2, 3, 4, 6, 12});
  CHECK(hp::divisors(1) == std::vector<std::uint32_t>{1});
  // divisors multiply back and are ascending for a few random-ish inputs
  for (std::uint32_t m : {6u, 28u, 97u, 360u, 498u, 1372u}) {
    auto ds = hp::divisors(m);
    CHECK(std::is_sorted(ds.begin(), ds.end()));
    for (auto d : ds) CHECK(m % d == 0);
    // divisor count from the factorization
    std::size_t want = 1;
    for (auto [p, e] : hp::factorize(m)) want *= e + 1;
    CHECK(ds.size() == want);
  }
}

TEST_CASE("euler phi") {
  CHECK(hp::euler_phi(1) == 1);
  CHECK(hp::euler_phi(2) == 1);
  CHECK(hp::euler_phi(12) == 4);
  CHECK(hp::euler_phi(36) == 12);
  CHECK(hp::euler_phi(97) == 96);
  CHECK(hp::euler_phi(105) == 48);
  // phi(m) = #units, brute force
  for (std::uint64_t m = 1; m <= 200; ++m) {
    std::uint64_t cnt = 0;
    for (std::uint64_t a = 1; a <= m; ++a)
      if (std::gcd(a, m) == 1) ++cnt;
    CHECK(hp::euler_phi(m) == cnt);
  }
}

TEST_CASE("pow_mod and mul_mod") {
  CHECK(hp::pow_mod(2, 12, 13) == 1);
  CHECK(hp::pow_mod(2, 100, 101) == 1);
  CHECK(hp::mul_mod(1ull << 40, 1ull << 40, (1ull << 61) - 1) ==
        ((static_cast<unsigned __int128>(1) << 80) % ((1ull << 61) - 1)));
}

TEST_CASE("F_13 log/order golden table") {
  hp::PrimeModulus pm(13);
  CHECK(pm.n() == 13);
  CHECK(pm.lambda() == 2);
  const std::uint32_t xs[12] = {1, 2, 4, 8, 3, 6, 12, 11, 9, 5, 10, 7};
  const std::uint32_t os[12] = {1, 12, 6, 4, 3, 12, 2, 12, 3, 4, 6, 12};
  for (unsigned l = 0; l < 12; ++l) {
    CHECK(pm.exp(l) == xs[l]);
    CHECK(pm.log(xs[l]) == l);
    CHECK(pm.order(xs[l]) == os[l]);
  }
  CHECK(pm.exp(-1) == 7);   // lambda^{-1}
  CHECK(pm.exp(12) == 1);
  CHECK_THROWS_AS(pm.log(0), std::invalid_argument);
}

TEST_CASE("field ops against brute force") {
  hp::PrimeModulus pm(31);
  for (std::uint32_t a = 0; a < 31; ++a)
    for (std::uint32_t b = 0; b < 31; ++b) {
      CHECK(pm.add(a, b) == (a + b) % 31);
      CHECK(pm.sub(a, b) == (a + 31 - b) % 31);
      CHECK(pm.mul(a, b) == a * b % 31);
    }
  for (std::uint32_t a = 1; a < 31; ++a) {
    CHECK(pm.mul(a, pm.inv(a)) == 1);
    // order by direct iteration, independent of the member implementation
    std::uint32_t o = 1, v = a;
    while (v != 1) {
      v = pm.mul(v, a);
      ++o;
    }
    CHECK(pm.order(a) == o);
    CHECK(pm.exp(pm.log(a)) == a);
  }
}

TEST_CASE("order_of_power identity") {
  hp::PrimeModulus pm(61);
  for (std::uint32_t x : {2u, 3u, 10u, 59u})
    for (std::uint64_t j = 0; j <= 70; ++j) {
      std::uint32_t want = pm.order(pm.pow(x, j));
      CHECK(pm.order_of_power(x, j) == want);
    }
}

TEST_CASE("baby-step giant-step beyond the table limit") {
  hp::PrimeModulus pm(100003);  // > kLogTableMax forces BSGS logs
  hp::SplitMix rng(42);
  for (int i = 0; i < 60; ++i) {
    std::uint32_t x = 1 + static_cast<std::uint32_t>(rng.below(100002));
    CHECK(pm.exp(pm.log(x)) == x);
    std::uint32_t k = static_cast<std::uint32_t>(rng.below(100002));
    CHECK(pm.log(pm.exp(k)) == k);
  }
  CHECK(pm.mul(pm.lambda(), pm.inv(pm.lambda())) == 1);
}

TEST_CASE("gcd criterion: three formulations agree") {
  for (std::uint32_t n : {11u, 13u, 17u, 19u, 23u, 29u, 31u, 61u}) {
    hp::PrimeModulus pm(n);
    for (std::uint32_t c = 2; c < n - 2; ++c) {
      auto g = hp::gcd_criterion(pm, c);
      CHECK(g.g_order == g.g_log);
      CHECK(g.g_order == g.g_neg);
      CHECK(g.predicted == (g.g_order > 1));
      CHECK(g.o_c == pm.order(c));
      CHECK(g.log_c == pm.log(c));
      // definitional recomputation
      std::uint32_t m = (n - 1) / 2;
      CHECK(g.g_order == std::gcd((n - 1) / pm.order(c), m));
      CHECK(g.g_log == std::gcd(pm.log(c), m));
    }
  }
}

TEST_CASE("gcd criterion golden: n=13, c=5") {
  hp::PrimeModulus pm(13);
  auto g = hp::gcd_criterion(pm, 5);
  CHECK(g.o_c == 4);
  CHECK(g.log_c == 9);
  CHECK(g.g_order == 3);
  CHECK(g.predicted);
  auto h = hp::gcd_criterion(pm, 2);
  CHECK(h.log_c == 1);
  CHECK(h.g_order == 1);
  CHECK(!h.predicted);
}

}  // TEST_SUITE
