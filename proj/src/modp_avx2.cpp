// AVX2 Montgomery kernels: 8 lanes of 32-bit residues, widening products in
// even/odd 64-bit streams, REDC per stream, min-trick conditional subtract.
// Must stay bit-identical to the scalar kernels in modp_scalar.cpp.

#include "hyperpath/modp.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace hyperpath::modp {

namespace {

const __m256i kLo32 = _mm256_set1_epi64x(0xffffffffLL);

// REDC of 4 products held in 64-bit lanes; result < p in the low 32 bits.
inline __m256i redc64(__m256i T, __m256i p64, __m256i ninv64) {
  __m256i q = _mm256_and_si256(_mm256_mul_epu32(T, ninv64), kLo32);
  __m256i t = _mm256_srli_epi64(_mm256_add_epi64(T, _mm256_mul_epu32(q, p64)),
                                32);
  return t;  // < 2p, caller folds
}

inline __m256i montmul8(__m256i a, __m256i b, __m256i p64, __m256i ninv64,
                        __m256i p8) {
  __m256i ae = _mm256_and_si256(a, kLo32);
  __m256i be = _mm256_and_si256(b, kLo32);
  __m256i ao = _mm256_srli_epi64(a, 32);
  __m256i bo = _mm256_srli_epi64(b, 32);
  __m256i te = redc64(_mm256_mul_epu32(ae, be), p64, ninv64);
  __m256i to = redc64(_mm256_mul_epu32(ao, bo), p64, ninv64);
  __m256i r = _mm256_or_si256(te, _mm256_slli_epi64(to, 32));
  // fold [0, 2p) into [0, p)
  return _mm256_min_epu32(r, _mm256_sub_epi32(r, p8));
}

inline __m256i submod8(__m256i a, __m256i b, __m256i p8) {
  __m256i s = _mm256_sub_epi32(a, b);
  return _mm256_min_epu32(s, _mm256_add_epi32(s, p8));
}

}  // namespace

static void axpy_sub_avx2(std::uint32_t* dst, const std::uint32_t* src,
                          std::size_t len, std::uint32_t f_mont,
                          const Mont& m) {
  const __m256i f8 = _mm256_set1_epi32(static_cast<int>(f_mont));
  const __m256i p8 = _mm256_set1_epi32(static_cast<int>(m.p));
  const __m256i p64 = _mm256_set1_epi64x(m.p);
  const __m256i ninv64 = _mm256_set1_epi64x(m.pinv_neg);
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i prod = montmul8(f8, x, p64, ninv64, p8);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        submod8(d, prod, p8));
  }
  for (; i < len; ++i)
    dst[i] = submod(dst[i], montmul(f_mont, src[i], m), m.p);
}

static void scale_avx2(std::uint32_t* row, std::size_t len,
                       std::uint32_t f_mont, const Mont& m) {
  const __m256i f8 = _mm256_set1_epi32(static_cast<int>(f_mont));
  const __m256i p8 = _mm256_set1_epi32(static_cast<int>(m.p));
  const __m256i p64 = _mm256_set1_epi64x(m.p);
  const __m256i ninv64 = _mm256_set1_epi64x(m.pinv_neg);
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(row + i),
                        montmul8(f8, x, p64, ninv64, p8));
  }
  for (; i < len; ++i) row[i] = montmul(f_mont, row[i], m);
}

const Kernels kAvx2{"avx2", axpy_sub_avx2, scale_avx2};

}  // namespace hyperpath::modp

#endif  // x86_64
