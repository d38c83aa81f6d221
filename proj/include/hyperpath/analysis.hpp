#pragma once
// Classification of the d = 2 complexes: order-criterion prediction,
// explicit kernel vectors for predicted-singular cases, fast and exact
// deciders, range scans, and the acyclic-ratio statistics.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperpath/boundary.hpp"
#include "hyperpath/cyclo.hpp"
#include "hyperpath/mcb.hpp"
#include "hyperpath/numtheory.hpp"

namespace hyperpath {

// gcd((n-1)/o(c), (n-1)/2) > 1
bool predicted_nonacyclic(const PrimeModulus& pm, std::uint32_t c);
// smallest divisor >= 2 of that gcd; 0 when not predicted
unsigned smallest_predicted_k(const PrimeModulus& pm, std::uint32_t c);

struct KernelVector {
  unsigned k = 0;
  std::vector<CycloField::Elt> coords;  // one per row-leader block, in order
};

// coords[i] = 1 - omega_k^{log x_i}; requires k >= 2, k | (n-1)/2 and
// k | (n-1)/o(c).
KernelVector kernel_vector(const PrimeModulus& pm, std::uint32_t c,
                           unsigned k, CycloFieldCache& fields);

// Quadratic-family vector for c^2 + c - 1 = 0: k = (n-1)/2 and the
// coordinate of the row-leader block containing -c-1 is zeroed.
KernelVector golden_ratio_kernel(const PrimeModulus& pm, std::uint32_t c,
                                 CycloFieldCache& fields);

// Exact check v * evaluate(S, k) == 0.
bool verify_left_kernel(const KernelVector& v, const McbMatrix& S,
                        CycloFieldCache& fields);

enum class Method { Fast, Exact, Both };

struct ClassificationRecord {
  std::uint32_t n = 0, c = 0, o_c = 0, log_c = 0;
  bool predicted = false;
  bool singular = false;
  unsigned witness_k = 0;  // 0 when nonsingular
  unsigned codim = 0;
  bool hypertree = false;
  Method method = Method::Fast;
};

// Fast: S via the polynomial construction + divisor sweep (+ codimension
// when singular).  Exact: rational rank of the dense boundary matrix.
// Both: runs the two and throws std::runtime_error on any disagreement.
ClassificationRecord classify(std::uint32_t n, std::uint32_t c, Method method,
                              CycloFieldCache& fields, std::uint64_t seed = 1);

// All primes in [n_min, n_max], all eligible c, deterministic order and
// content for any job count.
std::vector<ClassificationRecord> scan_range(std::uint32_t n_min,
                                             std::uint32_t n_max,
                                             Method method, unsigned jobs,
                                             std::uint64_t seed = 1);

struct RatioRow {
  std::uint32_t n = 0;
  std::uint64_t acyclic = 0;     // A_n
  std::uint64_t nonacyclic = 0;  // N_n
  std::uint64_t predicted = 0;   // E_n
};

std::vector<RatioRow> ratio_rows(const std::vector<ClassificationRecord>&);

// CSV renderers (exact column sets; ratios to 6 decimal places).
std::string classification_csv(const std::vector<ClassificationRecord>&);
std::string ratio_csv(const std::vector<RatioRow>&);
// Matrix layout: rows c = 2 .. n_max - 3, columns the primes in range;
// cells: codimension (0 = hypertree) or X when c is not eligible.
std::string table_csv(const std::vector<ClassificationRecord>&,
                      std::uint32_t n_min, std::uint32_t n_max);
std::string ratio_svg(const std::vector<RatioRow>&);

}  // namespace hyperpath
