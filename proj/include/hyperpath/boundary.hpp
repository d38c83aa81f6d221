#pragma once
// Second boundary matrix of the d = 2 complexes and its reduction to a
// square matrix of circulant blocks S: star rows removed, the {u, -u, 0}
// face orbit and {u, -u} edge orbit eliminated, remaining rows/columns
// grouped into scaling orbits indexed by block leaders.

#include <array>
#include <cstdint>
#include <vector>

#include "hyperpath/mcb.hpp"
#include "hyperpath/numtheory.hpp"
#include "hyperpath/ratlinalg.hpp"
#include "hyperpath/scomplex.hpp"

namespace hyperpath {

struct SignedSparseMatrix {
  std::size_t rows = 0, cols = 0;
  struct Entry {
    std::uint32_t row;
    int sign;  // +1 / -1
  };
  std::vector<std::vector<Entry>> col_entries;  // per column, sorted by row
  // labels
  std::vector<std::pair<std::uint32_t, std::uint32_t>> row_edges;  // (u<v)
  std::vector<std::array<std::uint32_t, 3>> col_faces;  // (x<y, z = c-pos)

  IntMatrix to_int_matrix() const;
};

// Rows: all C(n,2) edges {u<v} in lexicographic order.  Columns: faces in
// FaceSet order, keyed (x, y, z) with x < y the non-c vertices and z the
// c-position; column = e_(x,y) + e_(y,z) + e_(z,x) with e_(u,v) = -e_(v,u).
SignedSparseMatrix build_boundary(const PrimeModulus& pm, std::uint32_t c,
                                  const FaceSet& fs);

// Scaling-orbit leaders, sorted by discrete log.  Rows: x with
// x not in {0, 1, -1} and log x <= log x^{-1}.  Columns: y not in
// {1, -1, -(1+c), -1/(1+c)}, smaller-log member of {y, y^{-1}}, y = 0 kept
// and placed last.  Throws std::runtime_error if either count differs from
// (n-3)/2.
struct BlockLeaders {
  std::vector<std::uint32_t> rows;
  std::vector<std::uint32_t> cols;
};
BlockLeaders block_leaders(const PrimeModulus& pm, std::uint32_t c);

// Reduction of A: selects the oriented rows lambda^i * (1, x) and oriented
// face columns lambda^j * (1, y, z), applies the orientation signs, checks
// every block is circulant, and packs the result.  n >= 11, eligible c.
McbMatrix reduce_to_S(const SignedSparseMatrix& A, const PrimeModulus& pm,
                      std::uint32_t c);

// Direct three-term construction of the same matrix: for each column leader
// y (z = -(1+y)/c) the terms from edges (1,y), (1,z), (y,z) land in the
// blocks of their row leaders with exponents given by the scaling that maps
// the edge onto the leader orbit representative.  Terms whose edge is a
// star edge (contains 0) or lies in the {u,-u} orbit are dropped.
McbMatrix build_S_polynomial(const PrimeModulus& pm, std::uint32_t c);

// rational_rank semantics without materializing A as a bignum matrix: the
// two modular eliminations run on word-size copies built straight from the
// sparse columns; only the Bareiss fallback densifies.
RankResult boundary_rank(const SignedSparseMatrix& A, std::uint64_t seed);

}  // namespace hyperpath
