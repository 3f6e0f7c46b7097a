#include "feynq/arrangement.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "feynq/classes.hpp"
#include "test_util.hpp"

using feynq::AffineArrangement;
using feynq::Hyperplane;
using feynq::Int;
using feynq::PositionClass;

namespace {

// literal point-enumeration oracle for the union of affine hyperplanes
Int union_by_enumeration(int d, std::uint32_t q,
                         const std::vector<Hyperplane>& planes) {
  std::vector<std::uint32_t> x(static_cast<std::size_t>(d), 0);
  Int total = 0;
  while (true) {
    bool on_some = false;
    for (const auto& h : planes) {
      std::uint64_t acc = 0;
      for (int i = 0; i < d; ++i)
        acc += static_cast<std::uint64_t>(h.normal[static_cast<std::size_t>(i)]) *
               x[static_cast<std::size_t>(i)];
      if (acc % q == h.offset % q) {
        on_some = true;
        break;
      }
    }
    if (on_some) ++total;
    int pos = 0;
    while (pos < d && ++x[static_cast<std::size_t>(pos)] == q) {
      x[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == d) break;
  }
  return total;
}

std::vector<Hyperplane> random_planes(std::mt19937_64& rng, int d,
                                      std::uint32_t q, int k) {
  std::uniform_int_distribution<std::uint32_t> coef(0, q - 1);
  std::vector<Hyperplane> planes;
  while (static_cast<int>(planes.size()) < k) {
    Hyperplane h;
    h.normal.resize(static_cast<std::size_t>(d));
    bool nonzero = false;
    for (auto& c : h.normal) {
      c = coef(rng);
      nonzero = nonzero || c != 0;
    }
    if (!nonzero) continue;
    h.offset = coef(rng);
    planes.push_back(std::move(h));
  }
  return planes;
}

} // namespace

TEST_CASE("construction and intersection dimensions") {
  // two transverse lines in the plane over F_5
  const AffineArrangement arr(2, 5,
                              {{{1, 0}, 2}, {{0, 1}, 3}});
  CHECK(arr.dimension() == 2);
  CHECK(arr.modulus() == 5);
  CHECK(arr.size() == 2);
  CHECK(arr.intersection_dim({0}) == 1);
  CHECK(arr.intersection_dim({0, 1}) == 0);

  // parallel lines never meet
  const AffineArrangement par(2, 5, {{{1, 1}, 0}, {{1, 1}, 1}});
  CHECK(par.intersection_dim({0, 1}) == std::nullopt);
  // ... but a plane repeated with the same equation is just itself
  const AffineArrangement rep(2, 5, {{{1, 1}, 0}, {{2, 2}, 0}});
  CHECK(rep.intersection_dim({0, 1}) == 1);

  CHECK_THROWS_AS(AffineArrangement(2, 5, {{{0, 0}, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(AffineArrangement(0, 5, {}), std::invalid_argument);
  CHECK_THROWS_AS(AffineArrangement(2, 4, {{{1, 0}, 0}}),
                  std::invalid_argument);
}

TEST_CASE("union counts") {
  SECTION("two transverse lines over F_3: 3 + 3 - 1") {
    const AffineArrangement arr(2, 3, {{{1, 0}, 0}, {{0, 1}, 0}});
    CHECK(arr.union_count() == 5);
  }
  SECTION("two parallel lines over F_3: 3 + 3") {
    const AffineArrangement arr(2, 3, {{{1, 2}, 0}, {{1, 2}, 1}});
    CHECK(arr.union_count() == 6);
  }
  SECTION("random arrangements match point enumeration") {
    std::mt19937_64 rng(20260816);
    const std::vector<std::uint32_t> primes{2, 3, 5, 7};
    for (int trial = 0; trial < 80; ++trial) {
      const int d = 1 + static_cast<int>(rng() % 3);
      const std::uint32_t q = primes[rng() % primes.size()];
      const int k = 1 + static_cast<int>(rng() % 4);
      const auto planes = random_planes(rng, d, q, k);
      const AffineArrangement arr(d, q, planes);
      CHECK(arr.union_count() == union_by_enumeration(d, q, planes));
    }
  }
  SECTION("refuses oversized input") {
    std::vector<Hyperplane> planes;
    for (std::uint32_t i = 0; i < 21; ++i)
      planes.push_back({{1, i % 5}, i % 7});
    CHECK_THROWS_AS(AffineArrangement(2, 7, planes).union_count(),
                    feynq::TooLarge);
  }
}

TEST_CASE("position classification") {
  SECTION("triangle of lines is in general position") {
    const AffineArrangement arr(
        2, 5, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 1}});
    const auto pc = arr.classify_position();
    CHECK(pc.is_general());
    CHECK(pc.theta.empty());
    CHECK(pc.witness.empty());
  }
  SECTION("three concurrent lines are almost general") {
    const AffineArrangement arr(
        2, 5, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}});
    const auto pc = arr.classify_position();
    REQUIRE(pc.is_almost_general());
    CHECK(pc.theta == std::vector<std::vector<int>>{{0, 1, 2}});
  }
  SECTION("a parallel pair is violating with the smallest witness") {
    const AffineArrangement arr(
        2, 5, {{{1, 0}, 0}, {{1, 1}, 0}, {{1, 1}, 1}});
    const auto pc = arr.classify_position();
    REQUIRE(pc.is_violating());
    CHECK(pc.witness == std::vector<int>{1, 2});
  }
  SECTION("coincident planes are violating") {
    const AffineArrangement arr(2, 5, {{{1, 1}, 0}, {{2, 2}, 0}});
    CHECK(arr.classify_position().is_violating());
  }
  SECTION("more planes than dim can still be almost general") {
    // x=0, y=0, x+y=1 meet pairwise in three distinct points: for k > d
    // every k-fold intersection must be empty, which holds here only for
    // the triple; pairs have dim 0 and are deep sets
    const AffineArrangement arr(
        2, 5, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 1}});
    CHECK(arr.classify_position().is_general());
  }
  SECTION("four planes through one point in three-space") {
    const AffineArrangement arr(3, 5,
                                {{{1, 0, 0}, 0},
                                 {{0, 1, 0}, 0},
                                 {{0, 0, 1}, 0},
                                 {{1, 1, 1}, 0}});
    const auto pc = arr.classify_position();
    REQUIRE(pc.is_almost_general());
    REQUIRE(pc.theta.size() == 1);
    CHECK(pc.theta[0] == std::vector<int>{0, 1, 2, 3});
  }
}

TEST_CASE("intersection poset") {
  SECTION("two crossing lines") {
    const AffineArrangement arr(2, 3, {{{1, 0}, 0}, {{0, 1}, 0}});
    const auto poset = arr.intersection_poset();
    REQUIRE(poset.size() == 3);
    CHECK(poset[0].dim == 1);
    CHECK(poset[1].dim == 1);
    CHECK(poset[2].dim == 0);
    CHECK(poset[2].labels == std::vector<int>{0, 1});
  }
  SECTION("concurrent triple dedupes to a single point element") {
    const AffineArrangement arr(
        2, 5, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}});
    const auto poset = arr.intersection_poset();
    int points = 0;
    for (const auto& el : poset)
      if (el.dim == 0) {
        ++points;
        CHECK(el.labels == std::vector<int>{0, 1, 2});
      }
    CHECK(points == 1);
  }
  SECTION("parallel pair has no point element") {
    const AffineArrangement arr(2, 3, {{{1, 2}, 0}, {{1, 2}, 1}});
    for (const auto& el : arr.intersection_poset())
      CHECK(el.dim == 1);
  }
}

TEST_CASE("general-position sampling") {
  SECTION("postcondition and determinism") {
    for (const std::uint32_t q : {5u, 7u, 11u}) {
      for (int d = 1; d <= 4; ++d) {
        for (int k = 0; k <= d; ++k) {
          const AffineArrangement arr =
              feynq::sample_general_position(d, q, k, 42);
          REQUIRE(arr.size() == k);
          CHECK(arr.classify_position().is_general());
          const AffineArrangement again =
              feynq::sample_general_position(d, q, k, 42);
          for (int i = 0; i < k; ++i) {
            const auto& a = arr.hyperplanes()[static_cast<std::size_t>(i)];
            const auto& b = again.hyperplanes()[static_cast<std::size_t>(i)];
            CHECK(a.normal == b.normal);
            CHECK(a.offset == b.offset);
          }
        }
      }
    }
  }
  SECTION("rejects more planes than the dimension allows") {
    CHECK_THROWS_AS(feynq::sample_general_position(2, 5, 3, 1),
                    std::invalid_argument);
  }
  SECTION("union of a general-position sample has the closed-form size") {
    for (const std::uint32_t q : {5u, 7u, 11u}) {
      // the closed-form class is only defined for ambient dimension >= 2
      for (int d = 2; d <= 4; ++d) {
        for (int k = 0; k <= d; ++k) {
          const AffineArrangement arr =
              feynq::sample_general_position(d, q, k, 7 + k);
          // independent of the sample: inclusion-exclusion collapses to
          // sum_j (-1)^(j+1) C(k,j) q^(d-j), which is the evaluation of
          // the closed-form union class
          const Int expected =
              feynq::general_union_class(k, d).eval(Int(q));
          CHECK(arr.union_count() == expected);
        }
      }
    }
  }
}

TEST_CASE("affine-map invariance of classification") {
  // applying an invertible affine substitution x -> Ax + b to every
  // hyperplane preserves the position class
  std::mt19937_64 rng(991);
  const std::uint32_t q = 5;
  const int d = 2;
  feynq::PrimeField fq(q);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 2);
    const auto planes = random_planes(rng, d, q, k);
    // random invertible 2x2 matrix over F_5
    std::uint32_t a, b, c, e;
    do {
      a = rng() % q;
      b = rng() % q;
      c = rng() % q;
      e = rng() % q;
    } while ((a * e + 4 * b * c) % q == 0); // det = ae - bc (mod 5)
    const std::uint32_t t0 = rng() % q, t1 = rng() % q;
    std::vector<Hyperplane> moved;
    for (const auto& h : planes) {
      // n . (Ax + t) = c  <=>  (A^T n) . x = c - n . t
      Hyperplane m;
      m.normal = {fq.add(fq.mul(h.normal[0], a), fq.mul(h.normal[1], c)),
                  fq.add(fq.mul(h.normal[0], b), fq.mul(h.normal[1], e))};
      const std::uint32_t shift =
          fq.add(fq.mul(h.normal[0], t0), fq.mul(h.normal[1], t1));
      m.offset = fq.sub(h.offset, shift);
      moved.push_back(std::move(m));
    }
    const auto before = AffineArrangement(d, q, planes).classify_position();
    const auto after = AffineArrangement(d, q, moved).classify_position();
    CHECK(before.kind == after.kind);
    CHECK(before.theta == after.theta);
    CHECK(before.witness == after.witness);
    CHECK(AffineArrangement(d, q, planes).union_count() ==
          AffineArrangement(d, q, moved).union_count());
  }
}
