#pragma once
// Arithmetic in the prime field F_n: primitive root, discrete logarithm,
// multiplicative orders, and the gcd order criterion used by the classifier.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hyperpath {

bool is_prime(std::uint64_t n);  // trial division; intended range n <= ~1e7
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod);

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t m);
std::vector<std::uint32_t> divisors(std::uint32_t m);  // ascending
std::uint64_t euler_phi(std::uint64_t m);

// Odd prime modulus with a fixed primitive root lambda (the smallest one).
// Discrete logs are table-based up to kLogTableMax and use baby-step
// giant-step beyond that, so construction stays O(n) / O(sqrt n).
class PrimeModulus {
public:
  static constexpr std::uint32_t kLogTableMax = 100000;

  explicit PrimeModulus(std::uint32_t n);

  std::uint32_t n() const { return n_; }
  std::uint32_t lambda() const { return lambda_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + n_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : n_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) % n_);
  }
  std::uint32_t pow(std::uint32_t x, std::uint64_t e) const {
    return static_cast<std::uint32_t>(pow_mod(x, e, n_));
  }
  std::uint32_t inv(std::uint32_t x) const;  // x != 0

  // lambda^k for any integer exponent (reduced mod n-1).
  std::uint32_t exp(std::int64_t k) const;
  // log base lambda; throws on x == 0.
  std::uint32_t log(std::uint32_t x) const;
  // multiplicative order, computed by direct iteration (independent of log).
  std::uint32_t order(std::uint32_t x) const;
  // order of x^j via o(x)/gcd(j, o(x)).
  std::uint32_t order_of_power(std::uint32_t x, std::uint64_t j) const;

private:
  std::uint32_t n_{0};
  std::uint32_t lambda_{0};
  std::vector<std::uint32_t> log_table_;  // empty above kLogTableMax
  std::vector<std::uint32_t> pow_table_;
  std::uint32_t bsgs_m_{0};
  std::vector<std::pair<std::uint32_t, std::uint32_t>> bsgs_baby_;  // sorted
};

// Order-based singularity criterion.  All three gcds agree; `predicted`
// is g_order > 1.
struct GcdCriterion {
  std::uint32_t o_c;
  std::uint32_t log_c;
  std::uint32_t g_order;  // gcd((n-1)/o(c), (n-1)/2)
  std::uint32_t g_log;    // gcd(log c,       (n-1)/2)
  std::uint32_t g_neg;    // gcd((n-1)/o(-c), (n-1)/2)
  bool predicted;
};

GcdCriterion gcd_criterion(const PrimeModulus& pm, std::uint32_t c);

}  // namespace hyperpath
