#pragma once
// Exact arithmetic in cyclotomic fields Q(omega_k): elements are rational
// coefficient vectors in the power basis modulo the k-th cyclotomic
// polynomial.  Includes field-valued Gaussian elimination (det / nullity /
// kernel checks).

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace hyperpath {

// Coefficients ascending, monic, degree phi(k).
std::vector<mpz_class> cyclotomic_polynomial(unsigned k);

class CycloField {
public:
  using Elt = std::vector<mpq_class>;  // size degree(), reduced

  explicit CycloField(unsigned k);

  unsigned k() const { return k_; }
  unsigned degree() const { return deg_; }
  const std::vector<mpz_class>& modulus_poly() const { return psi_; }

  Elt zero() const { return Elt(deg_, mpq_class(0)); }
  Elt one() const;
  Elt from_rational(const mpq_class& q) const;
  // omega_k^e for any integer e (reduced mod k, then mod Psi_k)
  Elt root_power(std::int64_t e) const;

  bool is_zero(const Elt& a) const;
  bool equal(const Elt& a, const Elt& b) const;
  void add_into(Elt& a, const Elt& b) const;
  void sub_into(Elt& a, const Elt& b) const;
  void scale_into(Elt& a, const mpq_class& q) const;
  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt neg(const Elt& a) const;
  // nullopt when a == 0
  std::optional<Elt> inverse(const Elt& a) const;

  // Numeric embedding omega_k -> exp(2 pi i j / k), for cross-checks.
  std::pair<double, double> embed(const Elt& a, unsigned j = 1) const;

private:
  unsigned k_, deg_;
  std::vector<mpz_class> psi_;
  // x^m mod Psi_k for m in [0, max(k - 1, 2 deg - 2)]
  std::vector<std::vector<mpz_class>> xpow_;
};

// Row-major t-by-t (or rows-by-cols) matrices over a cyclotomic field.
struct CycloMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<CycloField::Elt> a;  // row-major

  CycloField::Elt& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const CycloField::Elt& at(std::size_t i, std::size_t j) const {
    return a[i * cols + j];
  }
};

// Destructive Gaussian elimination; first-nonzero pivoting.
std::size_t cyclo_rank(const CycloField& F, CycloMatrix& m);
inline std::size_t cyclo_nullity(const CycloField& F, CycloMatrix m) {
  std::size_t r = cyclo_rank(F, m);
  return m.cols - r;
}
CycloField::Elt cyclo_det(const CycloField& F, CycloMatrix m);
// v * M == 0 (v a row vector of length M.rows)
bool cyclo_left_kernel_check(const CycloField& F,
                             const std::vector<CycloField::Elt>& v,
                             const CycloMatrix& m);

// Shared per-conductor field cache (fields are immutable once built).
class CycloFieldCache {
public:
  const CycloField& get(unsigned k);

private:
  std::mutex mu_;
  std::map<unsigned, std::unique_ptr<CycloField>> fields_;
};

}  // namespace hyperpath
