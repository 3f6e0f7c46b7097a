#ifndef FEYNQ_FP_HPP
#define FEYNQ_FP_HPP

// Arithmetic in a prime field F_q for small moduli (q <= 2^16).

#include <cstdint>
#include <stdexcept>
#include <string>

namespace feynq {

inline bool is_prime_u32(std::uint32_t m) {
  if (m < 2) return false;
  for (std::uint64_t p = 2; p * p <= m; ++p)
    if (m % p == 0) return false;
  return true;
}

class PrimeField {
public:
  explicit PrimeField(std::uint32_t modulus) : q_(modulus) {
    if (modulus > 65536u)
      throw std::invalid_argument(std::to_string(modulus) +
                                  " exceeds the largest supported modulus "
                                  "2^16");
    if (!is_prime_u32(modulus))
      throw std::invalid_argument(std::to_string(modulus) + " is not prime");
  }

  std::uint32_t modulus() const { return q_; }

  std::uint32_t reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(q_);
    return static_cast<std::uint32_t>(r < 0 ? r + q_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + q_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : q_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(a) * b % q_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint64_t base = a % q_, acc = 1;
    while (e) {
      if (e & 1) acc = acc * base % q_;
      base = base * base % q_;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a % q_ == 0) throw std::domain_error("inverse of zero in F_q");
    return pow(a, q_ - 2);
  }

private:
  std::uint32_t q_;
};

} // namespace feynq

#endif
