#ifndef FEYNQ_ARRANGEMENT_HPP
#define FEYNQ_ARRANGEMENT_HPP

// Finite affine hyperplane arrangements over F_q: exact intersection
// dimensions by Gaussian elimination, inclusion-exclusion point counts of the
// union, position classification (general / almost-general / violating) and
// the intersection poset. This is the fibre geometry of the quadric bundles.

#include "feynq/fp.hpp"
#include "feynq/lclass.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace feynq {

struct TooLarge : std::runtime_error {
  explicit TooLarge(const std::string& why) : std::runtime_error(why) {}
};
struct ExhaustedAttempts : std::runtime_error {
  explicit ExhaustedAttempts(const std::string& why)
      : std::runtime_error(why) {}
};

// an affine hyperplane {x : normal . x = offset} with normal != 0
struct Hyperplane {
  std::vector<std::uint32_t> normal;
  std::uint32_t offset = 0;
};

struct PositionClass {
  enum class Kind { GeneralPosition, AlmostGeneral, Violating };
  Kind kind = Kind::GeneralPosition;
  // AlmostGeneral: the maximal label sets (0-based) whose intersection is a
  // single point; each has more than d labels
  std::vector<std::vector<int>> theta;
  // Violating: a smallest offending label subset (0-based, lexicographically
  // first among the smallest)
  std::vector<int> witness;

  bool is_general() const { return kind == Kind::GeneralPosition; }
  bool is_almost_general() const { return kind == Kind::AlmostGeneral; }
  bool is_violating() const { return kind == Kind::Violating; }
};

struct PosetElement {
  std::vector<int> labels; // maximal label set defining this subspace
  int dim = 0;
};

class AffineArrangement {
public:
  AffineArrangement(int d, std::uint32_t q, std::vector<Hyperplane> hyperplanes)
      : d_(d), field_(q), planes_(std::move(hyperplanes)) {
    if (d_ < 1) throw std::invalid_argument("AffineArrangement: d must be >= 1");
    for (auto& h : planes_) {
      if (static_cast<int>(h.normal.size()) != d_)
        throw std::invalid_argument(
            "AffineArrangement: normal has wrong dimension");
      bool nonzero = false;
      for (auto& x : h.normal) {
        x %= q;
        nonzero |= (x != 0);
      }
      h.offset %= q;
      if (!nonzero)
        throw std::invalid_argument("AffineArrangement: zero normal vector");
    }
  }

  int dimension() const { return d_; }
  std::uint32_t modulus() const { return field_.modulus(); }
  const PrimeField& field() const { return field_; }
  const std::vector<Hyperplane>& hyperplanes() const { return planes_; }
  int size() const { return static_cast<int>(planes_.size()); }

  // dimension of the intersection of the labelled hyperplanes
  // (d - rank), or nullopt when the intersection is empty
  std::optional<int> intersection_dim(const std::vector<int>& labels) const {
    auto [rank, consistent] = eliminate(labels, nullptr);
    if (!consistent) return std::nullopt;
    return d_ - rank;
  }

  // exact number of F_q-points of the union, by inclusion-exclusion over
  // nonempty subsets; empty intersections contribute nothing
  Int union_count() const {
    const int m = size();
    if (m > 20) throw TooLarge("union_count: more than 20 hyperplanes");
    std::vector<Int> qpow(static_cast<std::size_t>(d_) + 1);
    qpow[0] = 1;
    for (int k = 1; k <= d_; ++k)
      qpow[static_cast<std::size_t>(k)] =
          qpow[static_cast<std::size_t>(k - 1)] * field_.modulus();
    Int total = 0;
    std::vector<int> labels;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      labels.clear();
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) labels.push_back(i);
      auto dim = intersection_dim(labels);
      if (!dim) continue;
      if (labels.size() % 2 == 1)
        total += qpow[static_cast<std::size_t>(*dim)];
      else
        total -= qpow[static_cast<std::size_t>(*dim)];
    }
    return total;
  }

  // GeneralPosition: every subset of size s <= d meets in dimension exactly
  // d-s and every deeper subset is empty. AlmostGeneral: the s <= d condition
  // holds and each nonempty deeper intersection is a single point; theta
  // records the maximal such label sets. Violating otherwise, with a
  // smallest offending subset as witness.
  PositionClass classify_position() const {
    const int m = size();
    if (m > 20) throw TooLarge("classify_position: more than 20 hyperplanes");
    std::vector<std::vector<int>> deep;
    std::vector<int> combo;
    for (int s = 1; s <= m; ++s) {
      combo.assign(static_cast<std::size_t>(s), 0);
      for (int i = 0; i < s; ++i) combo[static_cast<std::size_t>(i)] = i;
      while (true) {
        auto dim = intersection_dim(combo);
        if (s <= d_) {
          if (!dim || *dim != d_ - s) {
            PositionClass out;
            out.kind = PositionClass::Kind::Violating;
            out.witness = combo;
            return out;
          }
        } else if (dim) {
          if (*dim != 0) {
            PositionClass out;
            out.kind = PositionClass::Kind::Violating;
            out.witness = combo;
            return out;
          }
          deep.push_back(combo);
        }
        if (!next_combination(combo, m)) break;
      }
    }
    PositionClass out;
    if (deep.empty()) {
      out.kind = PositionClass::Kind::GeneralPosition;
      return out;
    }
    out.kind = PositionClass::Kind::AlmostGeneral;
    for (std::size_t a = 0; a < deep.size(); ++a) {
      bool maximal = true;
      for (std::size_t b = 0; b < deep.size() && maximal; ++b)
        if (a != b && strict_subset(deep[a], deep[b])) maximal = false;
      if (maximal) out.theta.push_back(deep[a]);
    }
    return out;
  }

  // nonempty intersections deduplicated by the subspace they define, with the
  // maximal label set per subspace; sorted by decreasing dimension, then by
  // label set
  std::vector<PosetElement> intersection_poset() const {
    const int m = size();
    if (m > 12) throw TooLarge("intersection_poset: more than 12 hyperplanes");
    struct Entry {
      std::vector<bool> labels;
      int dim = 0;
    };
    std::map<std::vector<std::uint32_t>, Entry> by_subspace;
    std::vector<int> labels;
    std::vector<std::vector<std::uint32_t>> rref;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      labels.clear();
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) labels.push_back(i);
      auto [rank, consistent] = eliminate(labels, &rref);
      if (!consistent) continue;
      std::vector<std::uint32_t> key;
      for (const auto& row : rref) key.insert(key.end(), row.begin(), row.end());
      auto& entry = by_subspace[key];
      if (entry.labels.empty()) {
        entry.labels.assign(static_cast<std::size_t>(m), false);
        entry.dim = d_ - rank;
      }
      for (int l : labels) entry.labels[static_cast<std::size_t>(l)] = true;
    }
    std::vector<PosetElement> poset;
    for (const auto& [key, entry] : by_subspace) {
      PosetElement el;
      el.dim = entry.dim;
      for (int i = 0; i < m; ++i)
        if (entry.labels[static_cast<std::size_t>(i)]) el.labels.push_back(i);
      poset.push_back(std::move(el));
    }
    std::sort(poset.begin(), poset.end(),
              [](const PosetElement& a, const PosetElement& b) {
                if (a.dim != b.dim) return a.dim > b.dim;
                return a.labels < b.labels;
              });
    return poset;
  }

private:
  static bool strict_subset(const std::vector<int>& a,
                            const std::vector<int>& b) {
    if (a.size() >= b.size()) return false;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  static bool next_combination(std::vector<int>& combo, int m) {
    const int s = static_cast<int>(combo.size());
    for (int i = s - 1; i >= 0; --i) {
      if (combo[static_cast<std::size_t>(i)] < m - (s - i)) {
        ++combo[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < s; ++j)
          combo[static_cast<std::size_t>(j)] =
              combo[static_cast<std::size_t>(j - 1)] + 1;
        return true;
      }
    }
    return false;
  }

  // Gauss-Jordan on the augmented system [normal | offset]; returns
  // (rank, consistent). When rref is non-null and the system is consistent,
  // stores the nonzero rows of the reduced echelon form (a canonical key for
  // the solution subspace).
  std::pair<int, bool>
  eliminate(const std::vector<int>& labels,
            std::vector<std::vector<std::uint32_t>>* rref) const {
    const std::size_t w = static_cast<std::size_t>(d_) + 1;
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(labels.size());
    for (int l : labels) {
      if (l < 0 || l >= size())
        throw std::invalid_argument("hyperplane label out of range");
      const auto& h = planes_[static_cast<std::size_t>(l)];
      std::vector<std::uint32_t> row(w);
      for (int c = 0; c < d_; ++c)
        row[static_cast<std::size_t>(c)] =
            h.normal[static_cast<std::size_t>(c)];
      row[static_cast<std::size_t>(d_)] = h.offset;
      rows.push_back(std::move(row));
    }
    const PrimeField& f = field_;
    int rank = 0;
    for (int col = 0; col < d_ && rank < static_cast<int>(rows.size());
         ++col) {
      std::size_t pivot = rows.size();
      for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size();
           ++r)
        if (rows[r][static_cast<std::size_t>(col)] != 0) {
          pivot = r;
          break;
        }
      if (pivot == rows.size()) continue;
      std::swap(rows[static_cast<std::size_t>(rank)], rows[pivot]);
      auto& prow = rows[static_cast<std::size_t>(rank)];
      const std::uint32_t scale = f.inv(prow[static_cast<std::size_t>(col)]);
      for (auto& x : prow) x = f.mul(x, scale);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == static_cast<std::size_t>(rank)) continue;
        const std::uint32_t factor = rows[r][static_cast<std::size_t>(col)];
        if (factor == 0) continue;
        for (std::size_t c = 0; c < w; ++c)
          rows[r][c] = f.sub(rows[r][c], f.mul(factor, prow[c]));
      }
      ++rank;
    }
    bool consistent = true;
    for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size(); ++r)
      if (rows[r][static_cast<std::size_t>(d_)] != 0) {
        consistent = false;
        break;
      }
    if (rref && consistent) {
      rref->assign(rows.begin(), rows.begin() + rank);
    }
    return {rank, consistent};
  }

  int d_;
  PrimeField field_;
  std::vector<Hyperplane> planes_;
};

// Rejection-sample an arrangement of k hyperplanes in general position in
// F_q^d, deterministically from the seed; throws ExhaustedAttempts when the
// attempt bound is hit (likely over very small fields).
inline AffineArrangement sample_general_position(int d, std::uint32_t q, int k,
                                                 std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("sample_general_position: d >= 1");
  if (k < 0 || k > d)
    throw std::invalid_argument("sample_general_position: need 0 <= k <= d");
  PrimeField field(q); // validates the modulus
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> coord(0, q - 1);
  constexpr int kMaxAttempts = 256;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Hyperplane> planes;
    planes.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      Hyperplane h;
      h.normal.resize(static_cast<std::size_t>(d));
      do {
        for (auto& x : h.normal) x = coord(rng);
      } while (std::all_of(h.normal.begin(), h.normal.end(),
                           [](std::uint32_t x) { return x == 0; }));
      h.offset = coord(rng);
      planes.push_back(std::move(h));
    }
    AffineArrangement arr(d, q, std::move(planes));
    if (arr.classify_position().is_general()) return arr;
  }
  throw ExhaustedAttempts("sample_general_position: no general-position "
                          "arrangement found (d=" +
                          std::to_string(d) + ", q=" + std::to_string(q) +
                          ", k=" + std::to_string(k) + ")");
}

} // namespace feynq

#endif
