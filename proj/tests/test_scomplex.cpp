#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "hyperpath/numtheory.hpp"
#include "hyperpath/scomplex.hpp"
#include "hyperpath/util.hpp"

namespace hp = hyperpath;

namespace {

std::uint64_t binom2(std::uint64_t m) { return m * (m - 1) / 2; }

}  // namespace

TEST_SUITE("scomplex") {

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(hp::ComplexSpec({2, 12, 5}).validate(),
                  std::invalid_argument);  // not prime
  CHECK_THROWS_AS(hp::ComplexSpec({2, 3, 1}).validate(),
                  std::invalid_argument);  // n < d + 3
  CHECK_THROWS_AS(hp::ComplexSpec({2, 13, 13}).validate(),
                  std::invalid_argument);  // c out of range
  CHECK_NOTHROW(hp::ComplexSpec({2, 13, 5}).validate());
}

TEST_CASE("running example: faces of (n, c) = (13, 5)") {
  hp::FaceSet fs = hp::build_complex({2, 13, 5});
  CHECK(fs.size() == 66);
  CHECK(hp::count_faces({2, 13, 5}) == 66);
  CHECK(fs.contains({0, 1, 5}));
  CHECK(fs.contains({2, 3, 12}));
  CHECK(fs.contains({2, 3, 9}));
  CHECK(!fs.contains({1, 2, 3}));
  CHECK(hp::cofacet_degree(fs, {1, 5}) == 3);
  CHECK(hp::cofacet_degree(fs, {1, 4}) == 2);
  CHECK(fs.find({0, 1, 5}) >= 0);
  CHECK(fs.find({1, 2, 3}) == -1);

  // every face satisfies the defining equation at its c-position
  hp::PrimeModulus pm(13);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& f = fs[i];
    REQUIRE(f.verts.size() == 3);
    CHECK(std::is_sorted(f.verts.begin(), f.verts.end()));
    std::uint32_t s = 0;
    for (unsigned j = 0; j < 3; ++j)
      s = pm.add(s, j == f.c_index ? pm.mul(5, f.verts[j]) : f.verts[j]);
    CHECK(s == 0);
  }
  // faces are sorted by vertex tuple
  for (std::size_t i = 1; i < fs.size(); ++i)
    CHECK(fs[i - 1].verts < fs[i].verts);
}

TEST_CASE("face counts across the small sweep") {
  for (std::uint32_t n : {11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
    for (std::uint32_t c = 2; c < n - 2; ++c)
      CHECK(hp::count_faces({2, n, c}) == binom2(n - 1));
    CHECK(hp::count_faces({2, n, 1}) == binom2(n - 1) / 3);
  }
}

TEST_CASE("cofacet degree bound (d + 1 = 3) on a sample") {
  for (std::uint32_t n : {11u, 13u, 19u}) {
    for (std::uint32_t c = 2; c < n - 2; ++c) {
      hp::FaceSet fs = hp::build_complex({2, n, c});
      CHECK(hp::max_cofacet_degree(fs) <= 3);
    }
  }
}

TEST_CASE("scaling orbits partition the faces; one short orbit") {
  hp::PrimeModulus pm(13);
  hp::FaceSet fs = hp::build_complex({2, 13, 5});
  auto orbits = hp::orbit_decomposition(pm, fs);
  std::vector<std::size_t> sizes;
  std::vector<bool> seen(fs.size(), false);
  for (const auto& orb : orbits) {
    sizes.push_back(orb.size());
    for (auto i : orb) {
      CHECK(!seen[i]);
      seen[i] = true;
    }
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
  std::sort(sizes.begin(), sizes.end());
  // the {u, -u, 0} faces form a single orbit of size (n-1)/2; all other
  // orbits are free of size n-1
  CHECK(sizes == std::vector<std::size_t>{6, 12, 12, 12, 12, 12});
}

TEST_CASE("scaling equivariance") {
  hp::PrimeModulus pm(17);
  hp::FaceSet fs = hp::build_complex({2, 17, 3});
  hp::SplitMix rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& f = fs[rng.below(fs.size())];
    std::uint32_t u = 1 + static_cast<std::uint32_t>(rng.below(16));
    std::vector<std::uint32_t> scaled = f.verts;
    for (auto& v : scaled) v = pm.mul(v, u);
    std::sort(scaled.begin(), scaled.end());
    CHECK(fs.contains(scaled));
  }
}

TEST_CASE("eligibility") {
  CHECK(hp::is_eligible_c(13, 2));
  CHECK(hp::is_eligible_c(13, 10));
  CHECK(!hp::is_eligible_c(13, 0));
  CHECK(!hp::is_eligible_c(13, 1));
  CHECK(!hp::is_eligible_c(13, 11));
  CHECK(!hp::is_eligible_c(13, 12));
  auto e = hp::eligible_c(13);
  REQUIRE(e.size() == 9);
  CHECK(e.front() == 2);
  CHECK(e.back() == 10);
  for (std::uint32_t n : {11u, 31u, 199u})
    CHECK(hp::eligible_c(n).size() == n - 4);
}

TEST_CASE("d = 3 faces obey the defining equation too") {
  // the enumerator is dimension-generic; spot-check d = 3
  hp::PrimeModulus pm(11);
  hp::FaceSet fs = hp::build_complex({3, 11, 2});
  CHECK(fs.size() > 0);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& f = fs[i];
    REQUIRE(f.verts.size() == 4);
    std::uint32_t s = 0;
    for (unsigned j = 0; j < 4; ++j)
      s = pm.add(s, j == f.c_index ? pm.mul(2, f.verts[j]) : f.verts[j]);
    CHECK(s == 0);
  }
}

}  // TEST_SUITE
