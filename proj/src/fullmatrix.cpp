#include "hyperpath/fullmatrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "hyperpath/boundary.hpp"
#include "hyperpath/modp.hpp"
#include "hyperpath/scomplex.hpp"
#include "hyperpath/util.hpp"

namespace hyperpath {

namespace {

// index of (x, y) with 1 <= x < y <= n-1 inside the lexicographic block
std::size_t upper_index(std::uint32_t n, std::uint32_t x, std::uint32_t y) {
  std::size_t off = static_cast<std::size_t>(x - 1) * (2 * n - 2 - x) / 2;
  return off + (y - x - 1);
}

}  // namespace

std::size_t FullMatrix::row_index(std::uint32_t x, std::uint32_t y) const {
  const std::size_t c2 =
      static_cast<std::size_t>(n - 1) * (n - 2) / 2;  // C(n-1,2)
  if (x != 0 && y != 0) {
    if (x < y) return upper_index(n, x, y);
    if (x > y) return c2 + upper_index(n, y, x);
    return 2 * c2 + (x - 1);
  }
  if (y == 0 && x != 0) return 2 * c2 + (n - 1) + (x - 1);
  if (x == 0 && y != 0) return 2 * c2 + 2 * (n - 1) + (y - 1);
  throw std::invalid_argument("row_index: (0,0) is not a row");
}

FullMatrix build_full(const PrimeModulus& pm, std::uint32_t c) {
  const std::uint32_t n = pm.n();
  if (!is_eligible_c(n, c))
    throw std::invalid_argument("build_full: c not eligible");
  FullMatrix f;
  f.n = n;
  f.c = c;
  f.dim = static_cast<std::size_t>(n) * n - 1;
  const std::uint32_t cinv = pm.inv(c);
  auto z_of = [&](std::uint32_t x, std::uint32_t y) {
    return pm.mul(pm.neg(pm.add(x, y)), cinv);
  };

  f.row_pairs.resize(f.dim);
  for (std::uint32_t x = 1; x < n; ++x)
    for (std::uint32_t y = 1; y < n; ++y)
      if (x != y) f.row_pairs[f.row_index(x, y)] = {x, y};
  for (std::uint32_t x = 1; x < n; ++x) {
    f.row_pairs[f.row_index(x, x)] = {x, x};
    f.row_pairs[f.row_index(x, 0)] = {x, 0};
    f.row_pairs[f.row_index(0, x)] = {0, x};
  }

  // face triples (x < y, z not in {x, y}), ordered like the boundary
  // columns: ascending in the sorted vertex set {x, y, z}
  std::vector<std::array<std::uint32_t, 3>> faces;
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = x + 1; y < n; ++y) {
      std::uint32_t z = z_of(x, y);
      if (z != x && z != y) faces.push_back({x, y, z});
    }
  std::sort(faces.begin(), faces.end(),
            [](const std::array<std::uint32_t, 3>& a,
               const std::array<std::uint32_t, 3>& b) {
              std::array<std::uint32_t, 3> sa = a, sb = b;
              std::sort(sa.begin(), sa.end());
              std::sort(sb.begin(), sb.end());
              return sa < sb;
            });
  const std::size_t c2 = static_cast<std::size_t>(n - 1) * (n - 2) / 2;
  if (faces.size() != c2)
    throw std::logic_error("build_full: unexpected face-column count");

  f.col_triples.reserve(f.dim);
  for (const auto& tr : faces) f.col_triples.push_back(tr);
  for (const auto& tr : faces) f.col_triples.push_back({tr[1], tr[0], tr[2]});
  for (std::uint32_t x = 1; x < n; ++x)
    f.col_triples.push_back({x, x, z_of(x, x)});
  for (std::uint32_t x = 1; x < n; ++x)
    f.col_triples.push_back({pm.neg(pm.mul(pm.add(c, 1), x)), x, x});
  for (std::uint32_t x = 1; x < n; ++x)
    f.col_triples.push_back({x, pm.neg(pm.mul(pm.add(c, 1), x)), x});
  if (f.col_triples.size() != f.dim)
    throw std::logic_error("build_full: column count mismatch");

  f.col_rows.reserve(f.dim);
  for (const auto& [x, y, z] : f.col_triples) {
    std::array<std::uint32_t, 3> rows = {
        static_cast<std::uint32_t>(f.row_index(x, y)),
        static_cast<std::uint32_t>(f.row_index(y, z)),
        static_cast<std::uint32_t>(f.row_index(z, x))};
    std::sort(rows.begin(), rows.end());
    if (rows[0] == rows[1] || rows[1] == rows[2])
      throw std::logic_error("build_full: column with fewer than 3 ones");
    f.col_rows.push_back(rows);
  }
  return f;
}

std::size_t duplicate_column_pairs(const FullMatrix& f) {
  std::map<std::array<std::uint32_t, 3>, std::size_t> groups;
  for (const auto& rows : f.col_rows) ++groups[rows];
  std::size_t pairs = 0;
  for (const auto& [rows, m] : groups) pairs += m * (m - 1) / 2;
  return pairs;
}

IntMatrix row_difference_matrix(const FullMatrix& f) {
  const std::uint32_t n = f.n;
  const std::size_t c2 = static_cast<std::size_t>(n - 1) * (n - 2) / 2;
  IntMatrix m(static_cast<std::size_t>(n) * (n - 1) / 2, c2);
  auto lex_pair = [&](std::uint32_t u, std::uint32_t v) {  // u < v, 0 allowed
    return static_cast<std::size_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
  };
  for (std::size_t j = 0; j < c2; ++j) {
    const auto& [x, y, z] = f.col_triples[j];
    const std::pair<std::uint32_t, std::uint32_t> ps[3] = {
        {x, y}, {y, z}, {z, x}};
    for (const auto& [a, b] : ps) {
      if (a < b)
        m.at(lex_pair(a, b), j) += 1;
      else
        m.at(lex_pair(b, a), j) -= 1;
    }
  }
  return m;
}

bool star_dependency_holds(const FullMatrix& f) {
  const std::uint32_t n = f.n;
  for (std::uint32_t k = 0; k < n; ++k) {
    for (const auto& [x, y, z] : f.col_triples) {
      const std::pair<std::uint32_t, std::uint32_t> ps[3] = {
          {x, y}, {y, z}, {z, x}};
      int lhs = 0, rhs = 0;  // rows rho_{k,j} vs rho_{i,k}, i, j != k
      for (const auto& [a, b] : ps) {
        if (a == k && b != k) ++lhs;
        if (b == k && a != k) ++rhs;
      }
      if (lhs != rhs) return false;
    }
  }
  return true;
}

bool f_into_a_identity_holds(const PrimeModulus& pm, std::uint32_t c) {
  const std::uint32_t n = pm.n();
  FullMatrix f = build_full(pm, c);
  const std::size_t c2 = static_cast<std::size_t>(n - 1) * (n - 2) / 2;

  ComplexSpec spec{2, n, c};
  SignedSparseMatrix A = build_boundary(pm, c, build_complex(spec));
  if (A.cols != c2) return false;
  IntMatrix dense_a = A.to_int_matrix();

  // column labels must agree between the two constructions
  for (std::size_t j = 0; j < c2; ++j)
    if (f.col_triples[j] != A.col_faces[j]) return false;

  // lhs(i, j) = F[(x,y), j] - F[(y,x), j] over rows 1 <= x < y <= n-1;
  // compare with A minus its n-1 star rows (0, k), which come first
  for (std::size_t j = 0; j < c2; ++j) {
    std::array<std::uint32_t, 3> in = f.col_rows[j];
    for (std::size_t i = 0; i < c2; ++i) {
      int lhs = 0;
      if (std::binary_search(in.begin(), in.end(),
                             static_cast<std::uint32_t>(i)))
        lhs += 1;
      if (std::binary_search(in.begin(), in.end(),
                             static_cast<std::uint32_t>(c2 + i)))
        lhs -= 1;
      if (dense_a.at(n - 1 + i, j) != lhs) return false;
    }
  }
  return true;
}

FullRankReport rank_full(const PrimeModulus& pm, std::uint32_t c,
                         std::uint64_t seed) {
  FullMatrix f = build_full(pm, c);
  const std::size_t dim = f.dim;
  const std::size_t full_target = dim - (f.n - 1);  // n^2 - n

  std::vector<std::uint32_t> a(dim * dim);
  auto rank_mod = [&](std::uint32_t q) {
    std::fill(a.begin(), a.end(), 0);
    for (std::size_t j = 0; j < dim; ++j)
      for (std::uint32_t row : f.col_rows[j]) a[row * dim + j] = 1;
    return modp::rank_mod_p(a, dim, dim, q);
  };

  modp::PrimeStream primes(mix64(seed, 0xF0), 1);
  FullRankReport rep;
  std::size_t best = 0;
  // |minor|^2 <= 3^dim for any minor of a 0/1 matrix with 3 ones per row
  mpz_class target;
  mpz_ui_pow_ui(target.get_mpz_t(), 3, static_cast<unsigned long>(dim));
  mpz_class prodq = 1;
  while (true) {
    std::uint32_t q = primes.next();
    ++rep.primes_used;
    best = std::max(best, rank_mod(q));
    if (best == full_target) break;  // mod rank is a lower bound: certified
    prodq *= q;
    if (rep.primes_used >= 2 && prodq * prodq > target) break;
  }
  rep.rank = best;
  rep.full = best == full_target;
  return rep;
}

}  // namespace hyperpath
