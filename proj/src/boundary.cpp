#include "hyperpath/boundary.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "hyperpath/modp.hpp"
#include "hyperpath/util.hpp"

namespace hyperpath {

namespace {

// index of pair (u, v), u < v, in lexicographic order over F_n
std::size_t pair_index(std::uint32_t n, std::uint32_t u, std::uint32_t v) {
  return static_cast<std::size_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

}  // namespace

IntMatrix SignedSparseMatrix::to_int_matrix() const {
  IntMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (const auto& e : col_entries[j]) m.at(e.row, j) = e.sign;
  return m;
}

SignedSparseMatrix build_boundary(const PrimeModulus& pm, std::uint32_t c,
                                  const FaceSet& fs) {
  const std::uint32_t n = pm.n();
  SignedSparseMatrix A;
  A.rows = static_cast<std::size_t>(n) * (n - 1) / 2;
  A.cols = fs.size();
  A.row_edges.reserve(A.rows);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) A.row_edges.emplace_back(u, v);
  A.col_entries.resize(A.cols);
  A.col_faces.resize(A.cols);
  (void)c;
  for (std::size_t f = 0; f < fs.size(); ++f) {
    const OrientedFace& face = fs[f];
    std::uint32_t z = face.verts[face.c_index];
    std::uint32_t xy[2];
    unsigned w = 0;
    for (unsigned i = 0; i < 3; ++i)
      if (i != face.c_index) xy[w++] = face.verts[i];
    std::uint32_t x = xy[0], y = xy[1];  // sorted already
    A.col_faces[f] = {x, y, z};
    // boundary of (x, y, z): e_(x,y) + e_(y,z) + e_(z,x)
    auto put = [&](std::uint32_t a, std::uint32_t b) {
      int sign = a < b ? 1 : -1;
      std::uint32_t lo = std::min(a, b), hi = std::max(a, b);
      A.col_entries[f].push_back(
          {static_cast<std::uint32_t>(pair_index(n, lo, hi)), sign});
    };
    put(x, y);
    put(y, z);
    put(z, x);
    std::sort(A.col_entries[f].begin(), A.col_entries[f].end(),
              [](const SignedSparseMatrix::Entry& a,
                 const SignedSparseMatrix::Entry& b) { return a.row < b.row; });
  }
  return A;
}

BlockLeaders block_leaders(const PrimeModulus& pm, std::uint32_t c) {
  const std::uint32_t n = pm.n();
  if (n < 11) throw std::invalid_argument("block_leaders: n >= 11 required");
  if (!is_eligible_c(n, c))
    throw std::invalid_argument("block_leaders: c not eligible");
  const std::uint32_t t = (n - 3) / 2;
  BlockLeaders out;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> rows;  // (log, x)
  for (std::uint32_t x = 2; x <= n - 2; ++x) {
    std::uint32_t lx = pm.log(x);
    std::uint32_t li = (n - 1 - lx) % (n - 1);
    if (lx <= li) rows.emplace_back(lx, x);
  }
  std::sort(rows.begin(), rows.end());
  for (auto& [l, x] : rows) out.rows.push_back(x);

  const std::uint32_t w1 = pm.neg(pm.add(1, c));           // -(1+c)
  const std::uint32_t w2 = pm.neg(pm.inv(pm.add(1, c)));   // -1/(1+c)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cols;
  for (std::uint32_t y = 1; y < n; ++y) {
    if (y == 1 || y == n - 1 || y == w1 || y == w2) continue;
    std::uint32_t ly = pm.log(y);
    std::uint32_t li = (n - 1 - ly) % (n - 1);
    if (ly <= li) cols.emplace_back(ly, y);
  }
  std::sort(cols.begin(), cols.end());
  for (auto& [l, y] : cols) out.cols.push_back(y);
  out.cols.push_back(0);  // the y = 0 orbit, placed last

  if (out.rows.size() != t || out.cols.size() != t)
    throw std::runtime_error("block_leaders: unexpected leader count");
  return out;
}

namespace {

struct LeaderResolver {
  const PrimeModulus& pm;
  std::vector<long> block_of;   // value -> row block index, -1 outside
  std::vector<bool> is_direct;  // true when the value is the leader itself

  LeaderResolver(const PrimeModulus& p, const std::vector<std::uint32_t>& xs)
      : pm(p), block_of(p.n(), -1), is_direct(p.n(), false) {
    for (std::size_t a = 0; a < xs.size(); ++a) {
      std::uint32_t x = xs[a], xi = pm.inv(x);
      block_of[x] = static_cast<long>(a);
      is_direct[x] = true;
      block_of[xi] = static_cast<long>(a);
      is_direct[xi] = (xi == x);
    }
  }

  // e_(a,b) = sign * (row lambda^e (1, x_block)); a, b nonzero, b/a not +-1
  struct Hit {
    unsigned block;
    std::uint32_t exp;
    int sign;
  };
  Hit resolve(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t w = pm.mul(b, pm.inv(a));
    long blk = block_of[w];
    if (blk < 0) throw std::logic_error("resolve: edge outside leader orbits");
    if (is_direct[w]) return {static_cast<unsigned>(blk), pm.log(a), 1};
    return {static_cast<unsigned>(blk), pm.log(b), -1};
  }
};

bool edge_is_dropped(const PrimeModulus& pm, std::uint32_t a,
                     std::uint32_t b) {
  if (a == 0 || b == 0) return true;        // star edge, rows removed
  return pm.add(a, b) == 0;                 // {u, -u} orbit, eliminated
}

}  // namespace

McbMatrix build_S_polynomial(const PrimeModulus& pm, std::uint32_t c) {
  const std::uint32_t n = pm.n();
  BlockLeaders lead = block_leaders(pm, c);
  const unsigned t = static_cast<unsigned>(lead.rows.size());
  const unsigned r = n - 1;
  LeaderResolver res(pm, lead.rows);
  McbMatrix S(r, t);
  const std::uint32_t cinv = pm.inv(c);
  for (unsigned jb = 0; jb < t; ++jb) {
    std::uint32_t y = lead.cols[jb];
    std::uint32_t z = pm.mul(pm.neg(pm.add(1, y)), cinv);
    const std::pair<std::uint32_t, std::uint32_t> edges[3] = {
        {1, y}, {1, z}, {y, z}};
    const int sigma[3] = {1, -1, 1};
    for (int term = 0; term < 3; ++term) {
      auto [a, b] = edges[term];
      if (edge_is_dropped(pm, a, b)) continue;
      auto hit = res.resolve(a, b);
      S.add_term(hit.block, jb, hit.exp % r, mpq_class(sigma[term] * hit.sign));
    }
  }
  return S;
}

RankResult boundary_rank(const SignedSparseMatrix& A, std::uint64_t seed) {
  const std::size_t bound = std::min(A.rows, A.cols);
  modp::PrimeStream primes(mix64(seed, 0x0b0b), 1);
  RankResult res;
  res.accelerated = true;
  std::vector<std::uint32_t> a(A.rows * A.cols);
  for (int trial = 0; trial < 2; ++trial) {
    std::uint32_t q = primes.next();
    res.primes[trial] = q;
    std::fill(a.begin(), a.end(), 0);
    for (std::size_t j = 0; j < A.cols; ++j)
      for (const auto& e : A.col_entries[j])
        a[static_cast<std::size_t>(e.row) * A.cols + j] =
            e.sign > 0 ? 1u : q - 1;
    std::size_t rk = modp::rank_mod_p(a, A.rows, A.cols, q);
    res.rank = std::max(res.rank, rk);
    if (rk < bound) res.accelerated = false;
  }
  if (res.accelerated) return res;
  res.rank = bareiss_rank(A.to_int_matrix());
  return res;
}

McbMatrix reduce_to_S(const SignedSparseMatrix& A, const PrimeModulus& pm,
                      std::uint32_t c) {
  const std::uint32_t n = pm.n();
  BlockLeaders lead = block_leaders(pm, c);
  const unsigned t = static_cast<unsigned>(lead.rows.size());
  const unsigned r = n - 1;
  const std::uint32_t cinv = pm.inv(c);

  // face key -> column index
  std::map<std::array<std::uint32_t, 3>, std::size_t> col_of;
  for (std::size_t j = 0; j < A.cols; ++j) col_of[A.col_faces[j]] = j;

  auto entry_at = [&](std::size_t row, std::size_t col) -> int {
    for (const auto& e : A.col_entries[col])
      if (e.row == row) return e.sign;
    return 0;
  };

  McbMatrix S(r, t);
  std::vector<int> block(static_cast<std::size_t>(r) * r);
  for (unsigned ib = 0; ib < t; ++ib) {
    std::uint32_t x = lead.rows[ib];
    for (unsigned jb = 0; jb < t; ++jb) {
      std::uint32_t y = lead.cols[jb];
      std::uint32_t z = pm.mul(pm.neg(pm.add(1, y)), cinv);
      bool nonzero = false;
      for (unsigned i = 0; i < r; ++i) {
        std::uint32_t s = pm.exp(i);
        std::uint32_t e0 = s, e1 = pm.mul(s, x);
        int rsign = e0 < e1 ? 1 : -1;
        std::size_t row =
            pair_index(n, std::min(e0, e1), std::max(e0, e1));
        for (unsigned j = 0; j < r; ++j) {
          std::uint32_t u = pm.exp(j);
          std::uint32_t f0 = u, f1 = pm.mul(u, y), f2 = pm.mul(u, z);
          int csign = f0 < f1 ? 1 : -1;
          std::array<std::uint32_t, 3> key = {std::min(f0, f1),
                                              std::max(f0, f1), f2};
          auto it = col_of.find(key);
          if (it == col_of.end())
            throw std::logic_error("reduce_to_S: face column missing");
          int v = rsign * csign * entry_at(row, it->second);
          block[static_cast<std::size_t>(i) * r + j] = v;
          if (v) nonzero = true;
        }
      }
      if (!nonzero) continue;
      // circulant check + packing: entry (i, j) must depend on (i - j) mod r
      std::vector<mpq_class> poly(r, mpq_class(0));
      for (unsigned e = 0; e < r; ++e)
        poly[e] = block[static_cast<std::size_t>(e) * r];
      for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j)
          if (mpq_class(block[static_cast<std::size_t>(i) * r + j]) !=
              poly[(i + r - j) % r])
            throw std::runtime_error("reduce_to_S: block is not circulant");
      S.set_block(ib, jb, std::move(poly));
    }
  }
  return S;
}

}  // namespace hyperpath
