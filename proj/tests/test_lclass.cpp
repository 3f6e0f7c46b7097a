#include "feynq/lclass.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <utility>
#include <vector>

using feynq::Int;
using feynq::LClass;

namespace {

// independent oracle: points of {z1*w1 + z2*w2 = 0} over F_2^4 by full
// enumeration
int quadric_points_f2() {
  int hits = 0;
  for (int z1 = 0; z1 < 2; ++z1)
    for (int z2 = 0; z2 < 2; ++z2)
      for (int w1 = 0; w1 < 2; ++w1)
        for (int w2 = 0; w2 < 2; ++w2)
          if ((z1 * w1 + z2 * w2) % 2 == 0) ++hits;
  return hits;
}

} // namespace

TEST_CASE("ring operations") {
  const LClass l = LClass::lefschetz();
  CHECK((l + LClass(1)) * (l - LClass(1)) == l * l - LClass(1));
  CHECK(LClass(0).is_zero());
  CHECK((l - l).is_zero());
  CHECK(l.pow(5) == LClass::monomial(5));
  CHECK(LClass::monomial(3, Int(-2)).degree() == 3);
  CHECK(LClass().degree() == -1);
  CHECK(-LClass::monomial(2) == LClass::monomial(2, Int(-1)));
}

TEST_CASE("projective space classes") {
  CHECK(feynq::projective_class(0) == LClass(1));
  CHECK(feynq::projective_class(2) ==
        LClass::parse("L^2 + L + 1"));
  // [P^n](L-1) + 1 = L^{n+1}
  const LClass l = LClass::lefschetz();
  for (int n = 0; n <= 20; ++n)
    CHECK(feynq::projective_class(n) * (l - LClass(1)) + LClass(1) ==
          LClass::monomial(static_cast<unsigned>(n) + 1));
}

TEST_CASE("exact division") {
  const LClass l = LClass::lefschetz();
  CHECK(feynq::exact_div(l * l - LClass(1), l - LClass(1)) == l + LClass(1));
  SECTION("indivisible input carries its remainder") {
    try {
      feynq::exact_div(l + LClass(1), l);
      FAIL("expected NotDivisible");
    } catch (const feynq::NotDivisible& e) {
      CHECK(e.remainder == LClass(1));
    }
  }
  SECTION("division by zero is rejected") {
    CHECK_THROWS_AS(feynq::exact_div(l, LClass(0)), std::invalid_argument);
  }
  SECTION("round trip on random inputs") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 200; ++iter) {
      const LClass a = feynq::testutil::random_lclass(rng, 7, 9);
      LClass b = feynq::testutil::random_lclass(rng, 4, 9);
      if (b.is_zero()) b = l + LClass(2);
      CHECK(feynq::exact_div(a * b, b) == a);
    }
  }
}

TEST_CASE("evaluation") {
  const LClass cls = LClass::parse("L^3 + L^2 - L");
  CHECK(quadric_points_f2() == 10);
  CHECK(cls.eval(2) == 10);
  CHECK(cls.eval(3) == 33);
  SECTION("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 100; ++iter) {
      const LClass a = feynq::testutil::random_lclass(rng, 8, 9);
      const LClass b = feynq::testutil::random_lclass(rng, 8, 9);
      const Int q = feynq::testutil::small_primes()[iter %
          feynq::testutil::small_primes().size()];
      CHECK((a + b).eval(q) == a.eval(q) + b.eval(q));
      CHECK((a * b).eval(q) == a.eval(q) * b.eval(q));
    }
  }
}

TEST_CASE("interpolation") {
  SECTION("recovers the quadric class from exact counts") {
    const std::vector<std::pair<Int, Int>> pts{
        {2, 10}, {3, 33}, {5, 145}, {7, 385}};
    CHECK(feynq::interpolate(pts, 3) == LClass::parse("L^3 + L^2 - L"));
  }
  SECTION("rejects inconsistent data") {
    const std::vector<std::pair<Int, Int>> pts{{2, 0}, {3, 1}};
    CHECK_THROWS_AS(feynq::interpolate(pts, 0), feynq::NoIntegerFit);
  }
  SECTION("rejects non-integer fits") {
    // unique line through (2,0), (3,1) is X - 2; through (2,0), (4,1) it is
    // (X-2)/2, which has no integer coefficients
    const std::vector<std::pair<Int, Int>> pts{{2, 0}, {4, 1}};
    CHECK_THROWS_AS(feynq::interpolate(pts, 1), feynq::NoIntegerFit);
  }
  SECTION("requires enough distinct points") {
    const std::vector<std::pair<Int, Int>> pts{{2, 4}, {2, 4}};
    CHECK_THROWS_AS(feynq::interpolate(pts, 1), std::invalid_argument);
    CHECK_THROWS_AS(feynq::interpolate(pts, 5), std::invalid_argument);
  }
  SECTION("round trip on random polynomials") {
    std::mt19937_64 rng(4242);
    for (int iter = 0; iter < 100; ++iter) {
      const LClass a = feynq::testutil::random_lclass(rng, 6, 50);
      std::vector<std::pair<Int, Int>> pts;
      for (std::size_t i = 0; i < 10; ++i) {
        const Int q = feynq::testutil::small_primes()[i];
        pts.emplace_back(q, a.eval(q));
      }
      CHECK(feynq::interpolate(pts, 6) == a);
    }
  }
}

TEST_CASE("textual format") {
  CHECK(LClass::parse("L^7 + L^6 - L^5").str() == "L^7 + L^6 - L^5");
  CHECK(LClass(0).str() == "0");
  CHECK(LClass::parse("0").is_zero());
  CHECK(LClass::parse("3*L^11 - 7*L^9 + 4*L^8 + 4*L^7 - 3*L^6").str() ==
        "3*L^11 - 7*L^9 + 4*L^8 + 4*L^7 - 3*L^6");
  CHECK(LClass::parse("-L + 5").str() == "-L + 5");
  CHECK(LClass::parse("2L^2") == LClass::monomial(2, Int(2)));
  CHECK(LClass::parse(" 1 + L ") == LClass::parse("L + 1"));
  CHECK_THROWS_AS(LClass::parse("L^"), std::invalid_argument);
  CHECK_THROWS_AS(LClass::parse("foo"), std::invalid_argument);
  CHECK_THROWS_AS(LClass::parse(""), std::invalid_argument);
  SECTION("round trip on random polynomials") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 200; ++iter) {
      const LClass a = feynq::testutil::random_lclass(rng, 9, 12);
      CHECK(LClass::parse(a.str()) == a);
    }
  }
}
