#include "hyperpath/modp.hpp"

namespace hyperpath::modp {

static void axpy_sub_scalar(std::uint32_t* dst, const std::uint32_t* src,
                            std::size_t len, std::uint32_t f_mont,
                            const Mont& m) {
  for (std::size_t i = 0; i < len; ++i)
    dst[i] = submod(dst[i], montmul(f_mont, src[i], m), m.p);
}

static void scale_scalar(std::uint32_t* row, std::size_t len,
                         std::uint32_t f_mont, const Mont& m) {
  for (std::size_t i = 0; i < len; ++i) row[i] = montmul(f_mont, row[i], m);
}

const Kernels kScalar{"scalar", axpy_sub_scalar, scale_scalar};

}  // namespace hyperpath::modp
