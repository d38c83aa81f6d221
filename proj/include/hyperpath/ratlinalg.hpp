#pragma once
// Exact rank of integer / rational dense matrices: fraction-free Bareiss
// elimination, with the standard two-prime modular shortcut for the
// full-rank case.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <vector>

namespace hyperpath {

struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<mpz_class> a;  // row-major

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  mpz_class& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const {
    return a[i * cols + j];
  }
};

// Fraction-free elimination (exact, destructive).
std::size_t bareiss_rank(IntMatrix m);

// Entries reduced mod p, then word-size elimination.
std::size_t rank_mod_prime(const IntMatrix& m, std::uint32_t p);

struct RankResult {
  std::size_t rank = 0;
  bool accelerated = false;  // true when the modular shortcut settled it
  std::array<std::uint32_t, 2> primes{0, 0};
};

// Exact rank: two random primes in [2^30, 2^31); if both modular ranks hit
// min(rows, cols) that value is certified (mod-p rank never exceeds the
// rational rank).  Otherwise falls back to Bareiss.
RankResult rational_rank(const IntMatrix& m, std::uint64_t seed);

// Column-wise denominator clearing: returns an integer matrix with the same
// column space dimension.
IntMatrix clear_denominators_columns(const std::vector<mpq_class>& a,
                                     std::size_t rows, std::size_t cols);

}  // namespace hyperpath
