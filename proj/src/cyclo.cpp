#include "hyperpath/cyclo.hpp"

#include <cmath>
#include <stdexcept>

#include "hyperpath/numtheory.hpp"

namespace hyperpath {

/* *** polynomial helpers (dense, ascending coefficients) *** */

namespace {

// exact division of integer polynomials, divisor monic
std::vector<mpz_class> poly_div_exact(const std::vector<mpz_class>& num,
                                      const std::vector<mpz_class>& den) {
  std::vector<mpz_class> rem = num;
  std::size_t dn = den.size() - 1;
  if (rem.size() < den.size()) throw std::logic_error("poly_div: degree");
  std::vector<mpz_class> quo(rem.size() - dn);
  for (std::size_t i = rem.size(); i-- > dn;) {
    std::size_t qi = i - dn;
    mpz_class f = rem[i];
    if (f == 0) continue;
    quo[qi] = f;
    for (std::size_t j = 0; j <= dn; ++j) rem[qi + j] -= f * den[j];
  }
  for (const auto& r : rem)
    if (r != 0) throw std::logic_error("poly_div: inexact");
  return quo;
}

void trim(std::vector<mpq_class>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// extended gcd over Q[x]: returns (g, u) with u*a = g mod b, g monic gcd
std::pair<std::vector<mpq_class>, std::vector<mpq_class>> poly_half_gcd(
    std::vector<mpq_class> a, std::vector<mpq_class> b) {
  // invariants: r0 = u0*a (mod b0-original), r1 = u1*a (mod ...)
  std::vector<mpq_class> r0 = std::move(a), r1 = std::move(b);
  std::vector<mpq_class> u0{mpq_class(1)}, u1;
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    // divide r0 by r1
    std::vector<mpq_class> q(r0.size() >= r1.size()
                                 ? r0.size() - r1.size() + 1
                                 : 0);
    std::vector<mpq_class> rem = r0;
    if (!q.empty()) {
      for (std::size_t i = rem.size(); i-- > r1.size() - 1;) {
        std::size_t qi = i - (r1.size() - 1);
        if (qi >= q.size()) continue;
        mpq_class f = rem[i] / r1.back();
        if (f == 0) continue;
        q[qi] = f;
        for (std::size_t j = 0; j < r1.size(); ++j) rem[qi + j] -= f * r1[j];
      }
    }
    trim(rem);
    // u_next = u0 - q*u1
    std::vector<mpq_class> un = u0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (std::size_t j = 0; j < u1.size(); ++j) {
        if (i + j >= un.size()) un.resize(i + j + 1);
        un[i + j] -= q[i] * u1[j];
      }
    }
    trim(un);
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(un);
  }
  return {r0, u0};
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(unsigned k) {
  if (k == 0) throw std::invalid_argument("cyclotomic_polynomial: k >= 1");
  // x^k - 1 divided by Psi_d over proper divisors d, ascending
  std::vector<mpz_class> f(k + 1);
  f[0] = -1;
  f[k] = 1;
  for (std::uint32_t d : divisors(k)) {
    if (d == k) continue;
    f = poly_div_exact(f, cyclotomic_polynomial(d));
  }
  return f;
}

/* *** CycloField *** */

CycloField::CycloField(unsigned k) : k_(k) {
  psi_ = cyclotomic_polynomial(k);
  deg_ = static_cast<unsigned>(psi_.size() - 1);
  std::size_t top = std::max<std::size_t>(k_ >= 1 ? k_ - 1 : 0,
                                          deg_ >= 1 ? 2 * deg_ - 2 : 0);
  xpow_.reserve(top + 1);
  std::vector<mpz_class> cur(deg_, 0);
  if (deg_ > 0) cur[0] = 1;
  for (std::size_t m = 0; m <= top; ++m) {
    xpow_.push_back(cur);
    // multiply by x mod Psi
    mpz_class lead = deg_ ? cur[deg_ - 1] : 0;
    for (std::size_t i = deg_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    if (deg_) cur[0] = 0;
    if (lead != 0)
      for (std::size_t i = 0; i < deg_; ++i) cur[i] -= lead * psi_[i];
  }
}

CycloField::Elt CycloField::one() const {
  Elt e = zero();
  e[0] = 1;
  return e;
}

CycloField::Elt CycloField::from_rational(const mpq_class& q) const {
  Elt e = zero();
  e[0] = q;
  return e;
}

CycloField::Elt CycloField::root_power(std::int64_t e) const {
  std::int64_t m = ((e % k_) + k_) % k_;
  Elt out = zero();
  const auto& pw = xpow_[static_cast<std::size_t>(m)];
  for (unsigned i = 0; i < deg_; ++i) out[i] = pw[i];
  return out;
}

bool CycloField::is_zero(const Elt& a) const {
  for (const auto& q : a)
    if (q != 0) return false;
  return true;
}

bool CycloField::equal(const Elt& a, const Elt& b) const {
  for (unsigned i = 0; i < deg_; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

void CycloField::add_into(Elt& a, const Elt& b) const {
  for (unsigned i = 0; i < deg_; ++i) a[i] += b[i];
}

void CycloField::sub_into(Elt& a, const Elt& b) const {
  for (unsigned i = 0; i < deg_; ++i) a[i] -= b[i];
}

void CycloField::scale_into(Elt& a, const mpq_class& q) const {
  for (unsigned i = 0; i < deg_; ++i) a[i] *= q;
}

CycloField::Elt CycloField::add(const Elt& a, const Elt& b) const {
  Elt r = a;
  add_into(r, b);
  return r;
}

CycloField::Elt CycloField::sub(const Elt& a, const Elt& b) const {
  Elt r = a;
  sub_into(r, b);
  return r;
}

CycloField::Elt CycloField::neg(const Elt& a) const {
  Elt r = a;
  for (auto& q : r) q = -q;
  return r;
}

CycloField::Elt CycloField::mul(const Elt& a, const Elt& b) const {
  std::vector<mpq_class> conv(2 * deg_ - 1);
  for (unsigned i = 0; i < deg_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < deg_; ++j) {
      if (b[j] == 0) continue;
      conv[i + j] += a[i] * b[j];
    }
  }
  Elt out(conv.begin(), conv.begin() + deg_);
  for (unsigned m = deg_; m < 2 * deg_ - 1; ++m) {
    if (conv[m] == 0) continue;
    const auto& pw = xpow_[m];
    for (unsigned i = 0; i < deg_; ++i)
      if (pw[i] != 0) out[i] += conv[m] * pw[i];
  }
  return out;
}

std::optional<CycloField::Elt> CycloField::inverse(const Elt& a) const {
  if (is_zero(a)) return std::nullopt;
  std::vector<mpq_class> pa(a.begin(), a.end());
  std::vector<mpq_class> pm(psi_.size());
  for (std::size_t i = 0; i < psi_.size(); ++i) pm[i] = mpq_class(psi_[i]);
  auto [g, u] = poly_half_gcd(pa, pm);
  if (g.empty()) return std::nullopt;
  if (g.size() != 1)
    throw std::logic_error("CycloField: reducible modulus?");
  Elt out = zero();
  for (std::size_t i = 0; i < u.size() && i < deg_; ++i) out[i] = u[i] / g[0];
  // u may exceed deg-1 in edge cases; reduce properly
  for (std::size_t i = deg_; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    const auto& pw = xpow_[i];
    for (unsigned j = 0; j < deg_; ++j) out[j] += (u[i] / g[0]) * pw[j];
  }
  return out;
}

std::pair<double, double> CycloField::embed(const Elt& a, unsigned j) const {
  double re = 0, im = 0;
  for (unsigned i = 0; i < deg_; ++i) {
    double co = a[i].get_d();
    double ang = 2.0 * M_PI * (static_cast<double>(i) * j) / k_;
    re += co * std::cos(ang);
    im += co * std::sin(ang);
  }
  return {re, im};
}

/* *** field-valued elimination *** */

std::size_t cyclo_rank(const CycloField& F, CycloMatrix& m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t piv = rank;
    while (piv < m.rows && F.is_zero(m.at(piv, col))) ++piv;
    if (piv == m.rows) continue;
    if (piv != rank)
      for (std::size_t j = col; j < m.cols; ++j)
        std::swap(m.at(piv, j), m.at(rank, j));
    auto inv = F.inverse(m.at(rank, col));
    for (std::size_t j = col; j < m.cols; ++j)
      m.at(rank, j) = F.mul(m.at(rank, j), *inv);
    for (std::size_t i = rank + 1; i < m.rows; ++i) {
      if (F.is_zero(m.at(i, col))) continue;
      CycloField::Elt f = m.at(i, col);
      for (std::size_t j = col; j < m.cols; ++j)
        F.sub_into(m.at(i, j), F.mul(f, m.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

CycloField::Elt cyclo_det(const CycloField& F, CycloMatrix m) {
  if (m.rows != m.cols) throw std::invalid_argument("cyclo_det: not square");
  CycloField::Elt det = F.one();
  for (std::size_t col = 0; col < m.cols; ++col) {
    std::size_t piv = col;
    while (piv < m.rows && F.is_zero(m.at(piv, col))) ++piv;
    if (piv == m.rows) return F.zero();
    if (piv != col) {
      for (std::size_t j = col; j < m.cols; ++j)
        std::swap(m.at(piv, j), m.at(col, j));
      det = F.neg(det);
    }
    det = F.mul(det, m.at(col, col));
    auto inv = F.inverse(m.at(col, col));
    for (std::size_t i = col + 1; i < m.rows; ++i) {
      if (F.is_zero(m.at(i, col))) continue;
      CycloField::Elt f = F.mul(m.at(i, col), *inv);
      for (std::size_t j = col; j < m.cols; ++j)
        F.sub_into(m.at(i, j), F.mul(f, m.at(col, j)));
    }
  }
  return det;
}

bool cyclo_left_kernel_check(const CycloField& F,
                             const std::vector<CycloField::Elt>& v,
                             const CycloMatrix& m) {
  if (v.size() != m.rows)
    throw std::invalid_argument("left_kernel_check: length mismatch");
  for (std::size_t j = 0; j < m.cols; ++j) {
    CycloField::Elt acc = F.zero();
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (F.is_zero(v[i]) || F.is_zero(m.at(i, j))) continue;
      F.add_into(acc, F.mul(v[i], m.at(i, j)));
    }
    if (!F.is_zero(acc)) return false;
  }
  return true;
}

const CycloField& CycloFieldCache::get(unsigned k) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = fields_.find(k);
  if (it == fields_.end())
    it = fields_.emplace(k, std::make_unique<CycloField>(k)).first;
  return *it->second;
}

}  // namespace hyperpath
