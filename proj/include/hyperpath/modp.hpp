#pragma once
// Dense row elimination over F_p for word-size primes.  The two inner loops
// (row scale, row axpy) exist as a scalar reference kernel and an AVX2
// Montgomery kernel selected at runtime; both produce bit-identical output.

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "hyperpath/util.hpp"

namespace hyperpath::modp {

// Montgomery context for odd p < 2^31, R = 2^32.
struct Mont {
  std::uint32_t p;
  std::uint32_t pinv_neg;  // -p^{-1} mod 2^32
  std::uint32_t r2;        // 2^64 mod p

  explicit Mont(std::uint32_t prime);
};

// a*b*R^{-1} mod p, inputs < p (either factor may be in Montgomery form)
inline std::uint32_t montmul(std::uint32_t a, std::uint32_t b,
                             const Mont& m) {
  std::uint64_t T = static_cast<std::uint64_t>(a) * b;
  std::uint32_t q = static_cast<std::uint32_t>(T) * m.pinv_neg;
  std::uint64_t t = (T + static_cast<std::uint64_t>(q) * m.p) >> 32;
  std::uint32_t r = static_cast<std::uint32_t>(t);
  return r >= m.p ? r - m.p : r;
}

inline std::uint32_t to_mont(std::uint32_t x, const Mont& m) {
  return montmul(x, m.r2, m);
}

inline std::uint32_t submod(std::uint32_t a, std::uint32_t b,
                            std::uint32_t p) {
  std::uint32_t s = a - b;
  return a < b ? s + p : s;
}

struct Kernels {
  const char* name;
  // dst[i] = (dst[i] - f * src[i]) mod p, f given in Montgomery form
  void (*axpy_sub)(std::uint32_t* dst, const std::uint32_t* src,
                   std::size_t len, std::uint32_t f_mont, const Mont& m);
  // row[i] = (f * row[i]) mod p, f in Montgomery form
  void (*scale)(std::uint32_t* row, std::size_t len, std::uint32_t f_mont,
                const Mont& m);
};

extern const Kernels kScalar;
#if HYPERPATH_HAVE_AVX2
extern const Kernels kAvx2;
#endif

const Kernels& active_kernels();
std::vector<std::string> available_kernels();
// "scalar" or "avx2"; throws std::invalid_argument if unknown/unavailable.
// The environment variable HYPERPATH_SIMD overrides the default choice.
void set_kernels(const std::string& name);

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

// In-place row echelon rank of a rows x cols row-major matrix, entries
// already reduced mod p.  Pivot choice: first row with a nonzero entry in
// the current column, columns scanned left to right (deterministic).
std::size_t rank_mod_p(std::uint32_t* a, std::size_t rows, std::size_t cols,
                       std::uint32_t p);
std::size_t rank_mod_p(std::vector<std::uint32_t>& a, std::size_t rows,
                       std::size_t cols, std::uint32_t p);

// Deterministic stream of distinct primes in [2^30, 2^31) congruent to
// 1 mod k (k >= 1 arbitrary; for k = 1 this is just random word primes).
class PrimeStream {
public:
  PrimeStream(std::uint64_t seed, std::uint32_t k);
  std::uint32_t next();

private:
  SplitMix rng_;
  std::uint32_t k_;
  std::set<std::uint32_t> seen_;
};

// Element of multiplicative order exactly k mod prime q, with k | q - 1.
std::uint32_t root_of_order(std::uint32_t q, std::uint32_t k,
                            std::uint64_t seed);

}  // namespace hyperpath::modp
