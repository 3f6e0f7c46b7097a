#ifndef FEYNQ_TEST_UTIL_HPP
#define FEYNQ_TEST_UTIL_HPP

#include "feynq/lclass.hpp"

#include <random>

namespace feynq::testutil {

// random polynomial in L with degree <= max_deg and |coefficients| <= bound
inline LClass random_lclass(std::mt19937_64& rng, int max_deg, int bound) {
  std::uniform_int_distribution<int> deg_dist(0, max_deg);
  std::uniform_int_distribution<long long> coeff_dist(-bound, bound);
  LClass r;
  const int deg = deg_dist(rng);
  for (int k = 0; k <= deg; ++k)
    r +=
        LClass::monomial(static_cast<unsigned>(k), Int(coeff_dist(rng)));
  return r;
}

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes{
      2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
      67, 71, 73, 79, 83, 89, 97};
  return primes;
}

} // namespace feynq::testutil

#endif
