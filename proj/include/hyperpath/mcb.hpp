#pragma once
// Matrices of circulant blocks: t x t grids of r x r circulants, stored as
// the length-r coefficient vector of each block in the cyclic shift P.
// Singularity splits along divisors k | r into evaluations at primitive
// k-th roots of unity; those evaluations are decided either by exact
// cyclotomic elimination or by a certified multi-prime modular rank.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hyperpath/cyclo.hpp"

namespace hyperpath {

class McbMatrix {
public:
  McbMatrix(unsigned r, unsigned t) : r_(r), t_(t) {}

  unsigned r() const { return r_; }
  unsigned t() const { return t_; }

  // coefficient of P^e in block (i, j)
  void add_term(unsigned i, unsigned j, unsigned e, const mpq_class& coeff);
  void set_block(unsigned i, unsigned j, std::vector<mpq_class> poly);
  // nullptr when the block is zero
  const std::vector<mpq_class>* block(unsigned i, unsigned j) const;
  const std::map<std::pair<unsigned, unsigned>, std::vector<mpq_class>>&
  blocks() const {
    return blocks_;
  }

  std::vector<mpq_class> to_dense() const;  // rt x rt row-major
  // circulant-structure detection; nullopt if any block is not circulant
  static std::optional<McbMatrix> from_dense(const std::vector<mpq_class>& a,
                                             unsigned r, unsigned t);

private:
  unsigned r_, t_;
  std::map<std::pair<unsigned, unsigned>, std::vector<mpq_class>> blocks_;
};

// t x t matrix over Q(omega_k) obtained by substituting P -> omega_k.
CycloMatrix evaluate(const McbMatrix& m, unsigned k, const CycloField& F);

enum class Strategy {
  Auto,              // exact for small fields, certified modular otherwise
  ExactCyclotomic,   // Gaussian elimination over Q(omega_k)
  CertifiedModular,  // primes q = 1 (mod k) until a norm bound is passed
  Both,              // run both, throw on mismatch
};

// Exact nullity of the evaluation at a primitive k-th root of unity.
unsigned nullity_at(const McbMatrix& m, unsigned k, CycloFieldCache& fields,
                    Strategy strategy, std::uint64_t seed);

struct SingularReport {
  bool singular = false;
  unsigned witness_k = 0;  // smallest nontrivial divisor of r with a
                           // singular evaluation; 1 when only the trivial
                           // evaluation is singular; 0 when nonsingular
};

// Ascending divisor sweep with early exit. The decision covers every
// divisor of r; k = 1 is checked last so the witness prefers a conductor
// that carries a structural kernel certificate.
SingularReport is_singular_fast(const McbMatrix& m, CycloFieldCache& fields,
                                Strategy strategy = Strategy::Auto,
                                std::uint64_t seed = 1);

// sum over k | r of phi(k) * nullity(evaluation at omega_k)
unsigned codimension(const McbMatrix& m, CycloFieldCache& fields,
                     Strategy strategy = Strategy::Auto,
                     std::uint64_t seed = 1, unsigned jobs = 1);

// Block-DFT interleaving permutation: alpha * r + beta -> beta * t + alpha.
std::vector<std::size_t> phi_permutation(unsigned r, unsigned t);

// Numeric check that conjugating by the permuted block DFT produces
// block-diagonal blocks Delta_i matching the evaluations at omega_r^{-i}
// (DFT matrix F[k][l] = omega_r^{-kl}).  Returns the max absolute deviation.
double block_diagonalization_deviation(const McbMatrix& m);

McbMatrix mcb_multiply(const McbMatrix& a, const McbMatrix& b);
// Inverse via evaluation at every divisor + rational CRT interpolation;
// nullopt when singular.  Intended for small r, t.
std::optional<McbMatrix> mcb_inverse(const McbMatrix& m,
                                     CycloFieldCache& fields);

// Determinant as an element of Q[P]/(P^r - 1), by Leibniz expansion.
// Intended for small t (testing determinant identities).
std::vector<mpq_class> mcb_det_poly(const McbMatrix& m);

}  // namespace hyperpath
