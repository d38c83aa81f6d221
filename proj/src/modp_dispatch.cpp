#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <stdexcept>

#include "hyperpath/modp.hpp"
#include "hyperpath/numtheory.hpp"

namespace hyperpath::modp {

Mont::Mont(std::uint32_t prime) : p(prime) {
  if (p < 3 || (p & 1) == 0)
    throw std::invalid_argument("Mont: modulus must be odd and >= 3");
  // Newton iteration for p^{-1} mod 2^32, then negate.
  std::uint32_t inv = p;
  for (int i = 0; i < 4; ++i) inv *= 2u - p * inv;
  pinv_neg = ~inv + 1u;
  r2 = static_cast<std::uint32_t>(
      ((static_cast<unsigned __int128>(1) << 64) % p));
}

namespace {

const Kernels* select_default() {
#if HYPERPATH_HAVE_AVX2
  if (__builtin_cpu_supports("avx2")) return &kAvx2;
#endif
  return &kScalar;
}

const Kernels* lookup(const std::string& name) {
  if (name == "scalar") return &kScalar;
#if HYPERPATH_HAVE_AVX2
  if (name == "avx2") {
    if (!__builtin_cpu_supports("avx2"))
      throw std::invalid_argument("avx2 kernels not supported on this cpu");
    return &kAvx2;
  }
#endif
  throw std::invalid_argument("unknown kernel set: " + name);
}

const Kernels* g_active = nullptr;
std::once_flag g_init;

void init_active() {
  if (const char* env = std::getenv("HYPERPATH_SIMD")) {
    g_active = lookup(env);
    return;
  }
  g_active = select_default();
}

}  // namespace

const Kernels& active_kernels() {
  std::call_once(g_init, init_active);
  return *g_active;
}

std::vector<std::string> available_kernels() {
  std::vector<std::string> out{"scalar"};
#if HYPERPATH_HAVE_AVX2
  if (__builtin_cpu_supports("avx2")) out.emplace_back("avx2");
#endif
  return out;
}

void set_kernels(const std::string& name) {
  std::call_once(g_init, init_active);
  g_active = lookup(name);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // extended Euclid on signed 64-bit
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt, nt = tmp;
    tmp = r - q * nr;
    r = nr, nr = tmp;
  }
  if (r != 1) throw std::invalid_argument("inv_mod: not invertible");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

std::size_t rank_mod_p(std::uint32_t* a, std::size_t rows, std::size_t cols,
                       std::uint32_t p) {
  const Mont m(p);
  const Kernels& K = active_kernels();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      std::swap_ranges(a + piv * cols + col, a + (piv + 1) * cols,
                       a + rank * cols + col);
    std::uint32_t* prow = a + rank * cols;
    if (prow[col] != 1)
      K.scale(prow + col, cols - col, to_mont(inv_mod(prow[col], p), m), m);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      std::uint32_t f = a[i * cols + col];
      if (f) K.axpy_sub(a + i * cols + col, prow + col, cols - col,
                        to_mont(f, m), m);
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_mod_p(std::vector<std::uint32_t>& a, std::size_t rows,
                       std::size_t cols, std::uint32_t p) {
  if (a.size() != rows * cols)
    throw std::invalid_argument("rank_mod_p: size mismatch");
  return rank_mod_p(a.data(), rows, cols, p);
}

PrimeStream::PrimeStream(std::uint64_t seed, std::uint32_t k)
    : rng_(mix64(seed, k)), k_(k == 0 ? 1 : k) {}

std::uint32_t PrimeStream::next() {
  const std::uint64_t lo = 1ULL << 30, hi = 1ULL << 31;
  // candidates q = m*k + 1 inside [2^30, 2^31)
  std::uint64_t m_lo = (lo - 1) / k_ + 1, m_hi = (hi - 2) / k_;
  for (;;) {
    std::uint64_t mm = m_lo + rng_.below(m_hi - m_lo + 1);
    std::uint64_t q = mm * k_ + 1;
    if ((q & 1) == 0 || q < lo || q >= hi) continue;
    auto q32 = static_cast<std::uint32_t>(q);
    if (seen_.count(q32)) continue;
    if (!is_prime(q)) continue;
    seen_.insert(q32);
    return q32;
  }
}

std::uint32_t root_of_order(std::uint32_t q, std::uint32_t k,
                            std::uint64_t seed) {
  if ((q - 1) % k != 0)
    throw std::invalid_argument("root_of_order: k does not divide q-1");
  if (k == 1) return 1;
  auto fac = factorize(k);
  SplitMix rng(mix64(seed, q));
  for (;;) {
    auto x = static_cast<std::uint32_t>(1 + rng.below(q - 1));
    auto y = static_cast<std::uint32_t>(pow_mod(x, (q - 1) / k, q));
    if (y == 1) continue;
    bool exact = true;
    for (auto [pf, e] : fac) {
      if (pow_mod(y, k / pf, q) == 1) {
        exact = false;
        break;
      }
    }
    if (exact) return y;
  }
}

}  // namespace hyperpath::modp
