#include "hyperpath/numtheory.hpp"

#include <algorithm>
#include <numeric>

namespace hyperpath {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % mod);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp,
                      std::uint64_t mod) {
  if (mod == 1) return 0;
  std::uint64_t r = 1;
  base %= mod;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return r;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p) continue;
    unsigned e = 0;
    while (m % p == 0) m /= p, ++e;
    out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::vector<std::uint32_t> divisors(std::uint32_t m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; static_cast<std::uint64_t>(d) * d <= m; ++d) {
    if (m % d) continue;
    out.push_back(d);
    if (d != m / d) out.push_back(m / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t r = m;
  for (auto [p, e] : factorize(m)) r -= r / p;
  return r;
}

PrimeModulus::PrimeModulus(std::uint32_t n) : n_(n) {
  if (n < 3 || !is_prime(n))
    throw std::invalid_argument("PrimeModulus: modulus must be an odd prime");
  auto fac = factorize(n - 1);
  for (std::uint32_t g = 2; g < n; ++g) {
    bool primitive = true;
    for (auto [p, e] : fac) {
      if (pow_mod(g, (n - 1) / p, n) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      lambda_ = g;
      break;
    }
  }
  if (n <= kLogTableMax) {
    log_table_.assign(n, 0);
    pow_table_.assign(n - 1, 0);
    std::uint32_t x = 1;
    for (std::uint32_t k = 0; k < n - 1; ++k) {
      pow_table_[k] = x;
      log_table_[x] = k;
      x = mul(x, lambda_);
    }
  } else {
    // baby-step giant-step tables for log()
    bsgs_m_ = 1;
    while (static_cast<std::uint64_t>(bsgs_m_) * bsgs_m_ < n - 1) ++bsgs_m_;
    bsgs_baby_.reserve(bsgs_m_);
    std::uint32_t x = 1;
    for (std::uint32_t j = 0; j < bsgs_m_; ++j) {
      bsgs_baby_.emplace_back(x, j);
      x = mul(x, lambda_);
    }
    std::sort(bsgs_baby_.begin(), bsgs_baby_.end());
  }
}

std::uint32_t PrimeModulus::inv(std::uint32_t x) const {
  if (x == 0) throw std::invalid_argument("inv: zero element");
  return pow(x, n_ - 2);
}

std::uint32_t PrimeModulus::exp(std::int64_t k) const {
  std::int64_t m = n_ - 1;
  std::int64_t e = ((k % m) + m) % m;
  if (!pow_table_.empty()) return pow_table_[static_cast<std::size_t>(e)];
  return pow(lambda_, static_cast<std::uint64_t>(e));
}

std::uint32_t PrimeModulus::log(std::uint32_t x) const {
  if (x == 0 || x >= n_)
    throw std::invalid_argument("log: element outside F_n^*");
  if (!log_table_.empty()) return log_table_[x];
  // x * lambda^{-im} landing on a baby step gives log = i*m + j
  std::uint32_t giant = inv(pow(lambda_, bsgs_m_));
  std::uint32_t cur = x;
  for (std::uint32_t i = 0; i <= (n_ - 2) / bsgs_m_ + 1; ++i) {
    auto it = std::lower_bound(bsgs_baby_.begin(), bsgs_baby_.end(),
                               std::make_pair(cur, 0u));
    if (it != bsgs_baby_.end() && it->first == cur)
      return (i * bsgs_m_ + it->second) % (n_ - 1);
    cur = mul(cur, giant);
  }
  throw std::logic_error("log: not found (non-prime modulus?)");
}

std::uint32_t PrimeModulus::order(std::uint32_t x) const {
  if (x == 0) throw std::invalid_argument("order: zero element");
  std::uint32_t o = 1, cur = x;
  while (cur != 1) {
    cur = mul(cur, x);
    ++o;
  }
  return o;
}

std::uint32_t PrimeModulus::order_of_power(std::uint32_t x,
                                           std::uint64_t j) const {
  std::uint32_t o = order(x);
  return o / static_cast<std::uint32_t>(std::gcd<std::uint64_t>(j, o));
}

GcdCriterion gcd_criterion(const PrimeModulus& pm, std::uint32_t c) {
  if (c == 0) throw std::invalid_argument("gcd_criterion: c must be nonzero");
  std::uint32_t m = (pm.n() - 1) / 2;
  GcdCriterion g;
  g.o_c = pm.order(c);
  g.log_c = pm.log(c);
  g.g_order = std::gcd((pm.n() - 1) / g.o_c, m);
  g.g_log = std::gcd(g.log_c, m);
  g.g_neg = std::gcd((pm.n() - 1) / pm.order(pm.neg(c)), m);
  g.predicted = g.g_order > 1;
  return g;
}

}  // namespace hyperpath
