#include <cmath>

#include "doctest.h"
#include "hyperpath/cyclo.hpp"
#include "hyperpath/numtheory.hpp"
#include "hyperpath/util.hpp"

namespace hp = hyperpath;

namespace {

hp::CycloField::Elt random_elt(const hp::CycloField& F, hp::SplitMix& rng) {
  auto e = F.zero();
  for (auto& c : e) {
    c = mpq_class(static_cast<long>(rng.below(11)) - 5,
                  1 + static_cast<long>(rng.below(4)));
    c.canonicalize();  // mpq_class(num, den) does not reduce the fraction
  }
  return e;
}

}  // namespace

TEST_SUITE("cyclo") {

TEST_CASE("cyclotomic polynomial goldens") {
  using V = std::vector<mpz_class>;
  CHECK(hp::cyclotomic_polynomial(1) == V{-1, 1});
  CHECK(hp::cyclotomic_polynomial(2) == V{1, 1});
  CHECK(hp::cyclotomic_polynomial(3) == V{1, 1, 1});
  CHECK(hp::cyclotomic_polynomial(4) == V{1, 0, 1});
  CHECK(hp::cyclotomic_polynomial(6) == V{1, -1, 1});
  CHECK(hp::cyclotomic_polynomial(12) == V{1, 0, -1, 0, 1});
  // first index with a coefficient outside {-1,0,1}
  auto p105 = hp::cyclotomic_polynomial(105);
  CHECK(p105.size() == 49);  // degree phi(105) = 48, monic
  CHECK(p105[41] == -2);
  CHECK(p105[48] == 1);
  for (unsigned k = 1; k <= 30; ++k)
    CHECK(hp::cyclotomic_polynomial(k).size() == hp::euler_phi(k) + 1);
}

TEST_CASE("product of cyclotomics over divisors is x^r - 1") {
  for (unsigned r : {6u, 12u, 10u}) {
    std::vector<mpz_class> prod = {1};
    for (auto k : hp::divisors(r)) {
      auto f = hp::cyclotomic_polynomial(k);
      std::vector<mpz_class> next(prod.size() + f.size() - 1, 0);
      for (std::size_t i = 0; i < prod.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += prod[i] * f[j];
      prod = std::move(next);
    }
    REQUIRE(prod.size() == r + 1);
    CHECK(prod[0] == -1);
    CHECK(prod[r] == 1);
    for (unsigned i = 1; i < r; ++i) CHECK(prod[i] == 0);
  }
}

TEST_CASE("field axioms, sampled") {
  for (unsigned k : {3u, 4u, 5u, 12u}) {
    hp::CycloField F(k);
    CHECK(F.degree() == hp::euler_phi(k));
    hp::SplitMix rng(k);
    for (int i = 0; i < 15; ++i) {
      auto a = random_elt(F, rng), b = random_elt(F, rng),
           c = random_elt(F, rng);
      CHECK(F.equal(F.mul(a, b), F.mul(b, a)));
      CHECK(F.equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c))));
      CHECK(F.equal(F.mul(F.add(a, b), c), F.add(F.mul(a, c), F.mul(b, c))));
      CHECK(F.equal(F.add(a, F.neg(a)), F.zero()));
      CHECK(F.equal(F.mul(a, F.one()), a));
      CHECK(F.equal(F.sub(a, b), F.add(a, F.neg(b))));
    }
  }
}

TEST_CASE("root powers and inverses") {
  for (unsigned k : {3u, 8u, 12u}) {
    hp::CycloField F(k);
    for (int e1 = -5; e1 <= 5; ++e1)
      for (int e2 = -5; e2 <= 5; ++e2)
        CHECK(F.equal(F.mul(F.root_power(e1), F.root_power(e2)),
                      F.root_power(e1 + e2)));
    CHECK(F.equal(F.root_power(k), F.one()));
    // sum of all k-th roots of unity vanishes (k > 1)
    auto s = F.zero();
    for (unsigned e = 0; e < k; ++e) F.add_into(s, F.root_power(e));
    CHECK(F.is_zero(s));

    hp::SplitMix rng(3 * k);
    for (int i = 0; i < 10; ++i) {
      auto a = random_elt(F, rng);
      auto inv = F.inverse(a);
      if (F.is_zero(a)) {
        CHECK(!inv.has_value());
      } else {
        REQUIRE(inv.has_value());
        CHECK(F.equal(F.mul(a, *inv), F.one()));
      }
    }
    CHECK(!F.inverse(F.zero()).has_value());
  }
}

TEST_CASE("numeric embedding matches exp(2 pi i e / k)") {
  for (unsigned k : {5u, 12u}) {
    hp::CycloField F(k);
    for (unsigned e = 0; e < k; ++e) {
      auto [re, im] = F.embed(F.root_power(e), 1);
      double want_re = std::cos(2 * M_PI * e / k);
      double want_im = std::sin(2 * M_PI * e / k);
      CHECK(std::abs(re - want_re) < 1e-9);
      CHECK(std::abs(im - want_im) < 1e-9);
    }
    // embedding is a ring homomorphism on a random product
    hp::SplitMix rng(k);
    auto a = random_elt(F, rng), b = random_elt(F, rng);
    auto [ar, ai] = F.embed(a);
    auto [br, bi] = F.embed(b);
    auto [pr, pi] = F.embed(F.mul(a, b));
    CHECK(std::abs(pr - (ar * br - ai * bi)) < 1e-7);
    CHECK(std::abs(pi - (ar * bi + ai * br)) < 1e-7);
  }
}

TEST_CASE("rank, det and left-kernel checks over Q(omega_12)") {
  hp::CycloField F(12);
  // rows (1, w), (w, w^2): proportional, rank 1
  hp::CycloMatrix m;
  m.rows = m.cols = 2;
  m.a = {F.one(), F.root_power(1), F.root_power(1), F.root_power(2)};
  CHECK(hp::cyclo_rank(F, m) == 1);

  hp::CycloMatrix m2;
  m2.rows = m2.cols = 2;
  m2.a = {F.one(), F.root_power(1), F.root_power(1), F.root_power(2)};
  CHECK(hp::cyclo_nullity(F, m2) == 1);
  CHECK(F.is_zero(hp::cyclo_det(F, m2)));
  // v = (w, -1) kills both columns
  std::vector<hp::CycloField::Elt> v = {F.root_power(1), F.neg(F.one())};
  CHECK(hp::cyclo_left_kernel_check(F, v, m2));
  std::vector<hp::CycloField::Elt> bad = {F.one(), F.one()};
  CHECK(!hp::cyclo_left_kernel_check(F, bad, m2));

  // generic 2x2 determinant
  hp::CycloMatrix g;
  g.rows = g.cols = 2;
  g.a = {F.one(), F.root_power(3), F.root_power(5), F.from_rational(2)};
  auto det = hp::cyclo_det(F, g);
  auto want = F.sub(F.from_rational(2), F.root_power(8));
  CHECK(F.equal(det, want));
  hp::CycloMatrix g2 = g;
  CHECK(hp::cyclo_rank(F, g2) == 2);

  // identity
  hp::CycloMatrix id;
  id.rows = id.cols = 3;
  id.a.assign(9, F.zero());
  for (int i = 0; i < 3; ++i) id.a[i * 3 + i] = F.one();
  CHECK(F.equal(hp::cyclo_det(F, id), F.one()));
}

TEST_CASE("field cache returns stable references") {
  hp::CycloFieldCache cache;
  const hp::CycloField& a = cache.get(12);
  const hp::CycloField& b = cache.get(12);
  CHECK(&a == &b);
  CHECK(cache.get(3).degree() == 2);
}

}  // TEST_SUITE
