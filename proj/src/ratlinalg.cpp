#include "hyperpath/ratlinalg.hpp"

#include <stdexcept>

#include "hyperpath/modp.hpp"

namespace hyperpath {

std::size_t bareiss_rank(IntMatrix m) {
  // one-step fraction-free elimination; previous pivot divides exactly
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t piv = rank;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != rank)
      for (std::size_t j = col; j < m.cols; ++j)
        std::swap(m.at(piv, j), m.at(rank, j));
    const mpz_class& pv = m.at(rank, col);
    for (std::size_t i = rank + 1; i < m.rows; ++i) {
      mpz_class f = m.at(i, col);
      m.at(i, col) = 0;
      // note: rows with f == 0 still pick up the pv/prev rescale
      for (std::size_t j = col + 1; j < m.cols; ++j) {
        mpz_class v = m.at(i, j) * pv - f * m.at(rank, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = v;
      }
    }
    prev = pv;
    ++rank;
  }
  return rank;
}

std::size_t rank_mod_prime(const IntMatrix& m, std::uint32_t p) {
  std::vector<std::uint32_t> a(m.rows * m.cols);
  mpz_class tmp;
  for (std::size_t i = 0; i < a.size(); ++i) {
    tmp = m.a[i] % p;
    if (tmp < 0) tmp += p;
    a[i] = static_cast<std::uint32_t>(tmp.get_ui());
  }
  return modp::rank_mod_p(a, m.rows, m.cols, p);
}

RankResult rational_rank(const IntMatrix& m, std::uint64_t seed) {
  RankResult res;
  std::size_t bound = std::min(m.rows, m.cols);
  if (bound == 0) return res;
  modp::PrimeStream primes(seed, 1);
  res.primes[0] = primes.next();
  res.primes[1] = primes.next();
  std::size_t r0 = rank_mod_prime(m, res.primes[0]);
  if (r0 == bound) {
    std::size_t r1 = rank_mod_prime(m, res.primes[1]);
    if (r1 == bound) {
      res.rank = bound;
      res.accelerated = true;
      return res;
    }
  }
  res.rank = bareiss_rank(m);
  return res;
}

IntMatrix clear_denominators_columns(const std::vector<mpq_class>& a,
                                     std::size_t rows, std::size_t cols) {
  if (a.size() != rows * cols)
    throw std::invalid_argument("clear_denominators: size mismatch");
  IntMatrix out(rows, cols);
  mpz_class l;
  for (std::size_t j = 0; j < cols; ++j) {
    l = 1;
    for (std::size_t i = 0; i < rows; ++i)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
              a[i * cols + j].get_den().get_mpz_t());
    for (std::size_t i = 0; i < rows; ++i) {
      const mpq_class& q = a[i * cols + j];
      out.at(i, j) = q.get_num() * (l / q.get_den());
    }
  }
  return out;
}

}  // namespace hyperpath
