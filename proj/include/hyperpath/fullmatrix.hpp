#pragma once
// The (n^2-1) x (n^2-1) binary relation matrix F: rows indexed by ordered
// pairs (x, y) != (0, 0), columns by ordered triples (x, y, z) with
// x + y + c z = 0, ones at rows (x,y), (y,z), (z,x).  Row differences
// recover the boundary matrix; full rank n^2 - n implies the complex is a
// hypertree (one direction only).

#include <array>
#include <cstdint>
#include <vector>

#include "hyperpath/numtheory.hpp"
#include "hyperpath/ratlinalg.hpp"

namespace hyperpath {

struct FullMatrix {
  std::uint32_t n = 0, c = 0;
  std::size_t dim = 0;  // n^2 - 1
  // row index of pair (x, y)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> row_pairs;
  // columns share the pair index set; triple (x, y, z) with z = -(x+y)/c
  std::vector<std::array<std::uint32_t, 3>> col_triples;
  // exactly three 1-entries per column, sorted
  std::vector<std::array<std::uint32_t, 3>> col_rows;

  std::size_t row_index(std::uint32_t x, std::uint32_t y) const;
};

// Row/column order: pairs (x,y) with 1 <= x < y lexicographic, then the
// mirrored (y,x), then (x,x), then (x,0), then (0,y).
FullMatrix build_full(const PrimeModulus& pm, std::uint32_t c);

// Pairs {(a, -(c+1)a, a), (-(c+1)a, a, a)} share their three 1-rows.
std::size_t duplicate_column_pairs(const FullMatrix& f);

// Row differences rho_(u,v) - rho_(v,u) for u < v restricted to face
// columns, as a signed integer matrix in boundary row/column order.
IntMatrix row_difference_matrix(const FullMatrix& f);

// sum_{j != k} rho_(k,j) == sum_{i != k} rho_(i,k) for every k in F_n.
bool star_dependency_holds(const FullMatrix& f);

// The pruned square matrix (rows (0,y) deleted, one column of each
// duplicate pair deleted) sandwiched between (I | -I | 0) and (I over 0)
// equals the star-row-free boundary matrix.
bool f_into_a_identity_holds(const PrimeModulus& pm, std::uint32_t c);

struct FullRankReport {
  std::size_t rank = 0;
  bool full = false;  // rank == n^2 - n
  unsigned primes_used = 0;
};

// Rank of F: two random word-size primes; if neither certifies fullness the
// deficient rank is settled by accumulating primes past the Hadamard norm
// bound (still exact).
FullRankReport rank_full(const PrimeModulus& pm, std::uint32_t c,
                         std::uint64_t seed = 1);

}  // namespace hyperpath
