#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "hyperpath/modp.hpp"
#include "hyperpath/numtheory.hpp"
#include "hyperpath/ratlinalg.hpp"
#include "hyperpath/util.hpp"

namespace hp = hyperpath;
namespace mp = hyperpath::modp;

namespace {

// Matrix of known rank: diag(1 x k) followed by integer row operations and
// swaps, which never change the rank.
hp::IntMatrix planted_rank(std::size_t rows, std::size_t cols, std::size_t k,
                           hp::SplitMix& rng) {
  hp::IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < k; ++i)
    m.at(i, i) = 1 + static_cast<long>(rng.below(5));
  for (int step = 0; step < 60; ++step) {
    std::size_t a = rng.below(rows), b = rng.below(rows);
    if (a == b) continue;
    long f = static_cast<long>(rng.below(7)) - 3;
    for (std::size_t j = 0; j < cols; ++j) m.at(a, j) += f * m.at(b, j);
  }
  for (int step = 0; step < 20; ++step) {
    std::size_t a = rng.below(cols), b = rng.below(cols);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m.at(i, a), m.at(i, b));
  }
  return m;
}

std::vector<std::uint32_t> reduce_matrix(const hp::IntMatrix& m,
                                         std::uint32_t p) {
  std::vector<std::uint32_t> a(m.rows * m.cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class r = m.a[i] % p;
    if (r < 0) r += p;
    a[i] = static_cast<std::uint32_t>(r.get_ui());
  }
  return a;
}

}  // namespace

TEST_SUITE("modrank") {

TEST_CASE("Montgomery multiplication agrees with plain modular product") {
  for (std::uint32_t p : {3u, 65537u, 2147483647u, 1073741827u}) {
    mp::Mont m(p);
    hp::SplitMix rng(p);
    for (int i = 0; i < 200; ++i) {
      std::uint32_t a = static_cast<std::uint32_t>(rng.below(p));
      std::uint32_t b = static_cast<std::uint32_t>(rng.below(p));
      std::uint32_t am = mp::to_mont(a, m), bm = mp::to_mont(b, m);
      // abR in Montgomery form; multiply by 1 to leave Montgomery form
      std::uint32_t abm = mp::montmul(am, bm, m);
      std::uint32_t ab = mp::montmul(abm, 1, m);
      CHECK(ab == static_cast<std::uint32_t>(
                      static_cast<std::uint64_t>(a) * b % p));
    }
  }
}

TEST_CASE("inv_mod") {
  for (std::uint32_t p : {5u, 97u, 1073741827u}) {
    hp::SplitMix rng(p + 1);
    for (int i = 0; i < 100; ++i) {
      std::uint32_t a = 1 + static_cast<std::uint32_t>(rng.below(p - 1));
      std::uint32_t v = mp::inv_mod(a, p);
      CHECK(static_cast<std::uint64_t>(a) * v % p == 1);
    }
  }
}

TEST_CASE("rank_mod_p basics") {
  const std::uint32_t p = 1073741827;
  std::vector<std::uint32_t> id = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  CHECK(mp::rank_mod_p(id, 3, 3, p) == 3);
  // second row = 2 * first, third independent
  std::vector<std::uint32_t> m = {1, 2, 3, 2, 4, 6, 0, 0, 5};
  CHECK(mp::rank_mod_p(m, 3, 3, p) == 2);
  std::vector<std::uint32_t> z(12, 0);
  CHECK(mp::rank_mod_p(z, 3, 4, p) == 0);
  // rank drops mod p when the determinant does: [[1,0],[0,p]] over F_p
  std::vector<std::uint32_t> d = {1, 0, 0, 0};
  CHECK(mp::rank_mod_p(d, 2, 2, p) == 1);
}

TEST_CASE("scalar and runtime-selected kernels produce identical echelons") {
  auto avail = mp::available_kernels();
  REQUIRE(!avail.empty());
  CHECK(std::find(avail.begin(), avail.end(), "scalar") != avail.end());
  const std::string preferred = avail.back();
  if (avail.size() < 2) {
    MESSAGE("only the scalar kernel is available on this host");
    return;
  }
  hp::SplitMix rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t rows = 5 + rng.below(60), cols = 5 + rng.below(60);
    std::uint32_t p = 1073741827;
    std::vector<std::uint32_t> base(rows * cols);
    for (auto& x : base) x = static_cast<std::uint32_t>(rng.below(p));
    std::vector<std::uint32_t> a = base, b = base;
    mp::set_kernels("scalar");
    std::size_t ra = mp::rank_mod_p(a, rows, cols, p);
    mp::set_kernels(avail.back());
    std::size_t rb = mp::rank_mod_p(b, rows, cols, p);
    CHECK(ra == rb);
    CHECK(a == b);  // bit-identical elimination result
  }
  mp::set_kernels(preferred);
}

TEST_CASE("bareiss rank on planted-rank matrices") {
  hp::SplitMix rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t rows = 3 + rng.below(12), cols = 3 + rng.below(12);
    std::size_t k = rng.below(std::min(rows, cols) + 1);
    hp::IntMatrix m = planted_rank(rows, cols, k, rng);
    CHECK(hp::bareiss_rank(m) == k);
    // modular rank is a lower bound; equality for a random 31-bit prime
    mp::PrimeStream ps(hp::mix64(100 + trial), 1);
    std::uint32_t q = ps.next();
    CHECK(hp::rank_mod_prime(m, q) == k);
  }
}

TEST_CASE("rank is invariant under transpose (Bareiss)") {
  hp::SplitMix rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t rows = 3 + rng.below(8), cols = 3 + rng.below(8);
    hp::IntMatrix m(rows, cols);
    for (auto& x : m.a) x = static_cast<long>(rng.below(9)) - 4;
    hp::IntMatrix mt(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) mt.at(j, i) = m.at(i, j);
    CHECK(hp::bareiss_rank(m) == hp::bareiss_rank(mt));
  }
}

TEST_CASE("rational_rank: accelerated full-rank path and Bareiss fallback") {
  hp::SplitMix rng(17);
  // full rank square: random small entries are overwhelmingly nonsingular;
  // verify against Bareiss rather than assuming
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t d = 4 + rng.below(8);
    hp::IntMatrix m(d, d);
    for (auto& x : m.a) x = static_cast<long>(rng.below(19)) - 9;
    std::size_t want = hp::bareiss_rank(m);
    auto res = hp::rational_rank(m, hp::mix64(trial));
    CHECK(res.rank == want);
    if (want == d) CHECK(res.accelerated);
    if (want < d) CHECK(!res.accelerated);
  }
  // planted deficiency must take the exact fallback
  hp::IntMatrix m = planted_rank(9, 9, 5, rng);
  auto res = hp::rational_rank(m, 3);
  CHECK(res.rank == 5);
  CHECK(!res.accelerated);
}

TEST_CASE("clear_denominators_columns preserves column-space dimension") {
  hp::SplitMix rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t rows = 4 + rng.below(6), cols = 4 + rng.below(6);
    hp::IntMatrix zi(rows, cols);
    for (auto& x : zi.a) x = static_cast<long>(rng.below(11)) - 5;
    std::size_t want = hp::bareiss_rank(zi);
    // divide each column by a random positive denominator
    std::vector<mpq_class> q(rows * cols);
    for (std::size_t j = 0; j < cols; ++j) {
      long den = 1 + static_cast<long>(rng.below(12));
      for (std::size_t i = 0; i < rows; ++i)
        q[i * cols + j] = mpq_class(zi.at(i, j)) / den;
    }
    hp::IntMatrix cleared = hp::clear_denominators_columns(q, rows, cols);
    CHECK(cleared.rows == rows);
    CHECK(cleared.cols == cols);
    CHECK(hp::bareiss_rank(cleared) == want);
  }
}

TEST_CASE("PrimeStream: distinct 31-bit primes congruent to 1 mod k") {
  for (std::uint32_t k : {1u, 2u, 12u, 498u}) {
    mp::PrimeStream ps(99, k);
    std::vector<std::uint32_t> seen;
    for (int i = 0; i < 8; ++i) {
      std::uint32_t q = ps.next();
      CHECK(hp::is_prime(q));
      CHECK(q >= (1u << 30));
      CHECK(q < (1u << 31));
      CHECK(q % std::max(1u, k) == 1 % std::max(1u, k));
      CHECK(std::find(seen.begin(), seen.end(), q) == seen.end());
      seen.push_back(q);
    }
  }
  // determinism
  mp::PrimeStream a(5, 12), b(5, 12);
  for (int i = 0; i < 5; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("root_of_order has exact order k") {
  for (std::uint32_t k : {2u, 3u, 12u, 60u}) {
    mp::PrimeStream ps(k, k);
    std::uint32_t q = ps.next();
    std::uint32_t z = mp::root_of_order(q, k, 77);
    CHECK(hp::pow_mod(z, k, q) == 1);
    for (auto [pf, e] : hp::factorize(k))
      CHECK(hp::pow_mod(z, k / static_cast<std::uint32_t>(pf), q) != 1);
  }
}

}  // TEST_SUITE
