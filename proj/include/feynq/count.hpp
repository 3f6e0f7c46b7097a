#ifndef FEYNQ_COUNT_HPP
#define FEYNQ_COUNT_HPP

// Exact F_q point counting for Feynman quadrics and the related varieties:
// a brute-force counter over the full configuration space and an independent
// fibrewise counter that fixes the w-coordinates and counts the z-fibre (a
// union of linear subspaces) by inclusion-exclusion with exact ranks over
// F_q. The two never share a code path; agreement between them is the
// ground truth the class formulas are verified against.

#include "feynq/arrangement.hpp"
#include "feynq/fp.hpp"
#include "feynq/graph.hpp"
#include "feynq/lclass.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace feynq {

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& why) : std::runtime_error(why) {}
};

// enumeration ceilings; configuration values, not hard limits of the math
struct CountBudget {
  std::uint64_t brute = std::uint64_t(1) << 32;
  std::uint64_t fibrewise = std::uint64_t(1) << 34;
};

enum class CountAlgorithm { Brute, Fibrewise };

struct CountReport {
  FeynmanGraph graph;
  int d = 0;
  std::uint32_t q = 0;
  Int count;
  CountAlgorithm algorithm = CountAlgorithm::Brute;
  double elapsed_ms = 0.0;
  int threads = 1;
};

namespace detail {

constexpr int kMaxZDim = 32;

inline Int ipow(std::uint32_t base, int exp) {
  Int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline Int int128_to_int(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u =
      neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
          : static_cast<unsigned __int128>(v);
  Int r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  if (neg) r = -r;
  return r;
}

inline void decode_base_q(std::uint64_t x, std::uint32_t q,
                          std::vector<std::uint32_t>& digits) {
  for (auto& dgt : digits) {
    dgt = static_cast<std::uint32_t>(x % q);
    x /= q;
  }
}

inline void increment_base_q(std::vector<std::uint32_t>& digits,
                             std::uint32_t q) {
  for (auto& dgt : digits) {
    if (++dgt < q) return;
    dgt = 0;
  }
}

inline int resolve_threads(int threads, std::uint64_t total) {
  int t = threads;
  if (t <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    t = hw == 0 ? 1 : static_cast<int>(hw);
  }
  if (t > 64) t = 64;
  const std::uint64_t min_chunk = 1024;
  if (total / min_chunk < static_cast<std::uint64_t>(t))
    t = static_cast<int>(std::max<std::uint64_t>(1, total / min_chunk));
  return std::max(t, 1);
}

// Split [0,total) into contiguous chunks, run fn(begin,end) per chunk and
// add the partial results in chunk order; any additive T. Deterministic in
// the thread count because addition of exact values is commutative.
template <class T, class Fn>
T parallel_reduce(std::uint64_t total, int threads, Fn&& fn) {
  const int t = resolve_threads(threads, total);
  if (t <= 1) return fn(std::uint64_t(0), total);
  std::vector<std::optional<T>> parts(static_cast<std::size_t>(t));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(t));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    const std::uint64_t begin =
        total / static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(i) +
        std::min<std::uint64_t>(static_cast<std::uint64_t>(i),
                                total % static_cast<std::uint64_t>(t));
    std::uint64_t len = total / static_cast<std::uint64_t>(t);
    if (static_cast<std::uint64_t>(i) < total % static_cast<std::uint64_t>(t))
      ++len;
    pool.emplace_back([&, i, begin, len] {
      try {
        parts[static_cast<std::size_t>(i)] = fn(begin, begin + len);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  T acc = std::move(*parts[0]);
  for (int i = 1; i < t; ++i) acc += *parts[static_cast<std::size_t>(i)];
  return acc;
}

// incremental row-echelon basis over F_q with stack discipline: push reduces
// the row against the current pivots and records a new pivot when the rank
// grows; pop undoes the latest push
struct FibreDfs {
  const PrimeField* f = nullptr;
  int zdim = 0;
  int ecount = 0;
  const std::array<std::uint32_t, kMaxZDim>* rows = nullptr;
  const std::uint8_t* zerorow = nullptr;
  const unsigned __int128* qpow = nullptr;
  std::array<std::array<std::uint32_t, kMaxZDim>, kMaxZDim> pivots{};
  std::array<int, kMaxZDim> pivcol{};
  int npiv = 0;

  bool push(const std::array<std::uint32_t, kMaxZDim>& row) {
    auto r = row;
    for (int p = 0; p < npiv; ++p) {
      const std::uint32_t c = r[static_cast<std::size_t>(pivcol[p])];
      if (c == 0) continue;
      const auto& pr = pivots[static_cast<std::size_t>(p)];
      for (int j = pivcol[p]; j < zdim; ++j)
        r[static_cast<std::size_t>(j)] =
            f->sub(r[static_cast<std::size_t>(j)],
                   f->mul(c, pr[static_cast<std::size_t>(j)]));
    }
    int lead = -1;
    for (int j = 0; j < zdim; ++j)
      if (r[static_cast<std::size_t>(j)] != 0) {
        lead = j;
        break;
      }
    if (lead < 0) return false;
    const std::uint32_t s = f->inv(r[static_cast<std::size_t>(lead)]);
    for (int j = lead; j < zdim; ++j)
      r[static_cast<std::size_t>(j)] =
          f->mul(r[static_cast<std::size_t>(j)], s);
    pivots[static_cast<std::size_t>(npiv)] = r;
    pivcol[static_cast<std::size_t>(npiv)] = lead;
    ++npiv;
    return true;
  }
  void pop() { --npiv; }

  // inclusion-exclusion over edge subsets containing the current stack:
  // sum over nonempty S of (-1)^{|S|+1} q^{zdim - rank(S)}. Once the rank
  // saturates at zdim with edges still undecided, the remaining subtree
  // cancels to zero exactly.
  __int128 go(int k, int included, int rank) {
    if (rank == zdim && k < ecount) return 0;
    if (k == ecount) {
      if (included == 0) return 0;
      const auto t = static_cast<__int128>(
          qpow[static_cast<std::size_t>(zdim - rank)]);
      return (included & 1) ? t : -t;
    }
    __int128 s = go(k + 1, included, rank);
    bool grew = false;
    if (!zerorow[k]) grew = push(rows[static_cast<std::size_t>(k)]);
    s += go(k + 1, included + 1, rank + (grew ? 1 : 0));
    if (grew) pop();
    return s;
  }
};

} // namespace detail

// ---------------------------------------------------------------------------
// brute force: enumerate every (z,w) configuration and test the edge quadrics

inline CountReport brute_force_count(const FeynmanGraph& g, int d,
                                     std::uint32_t q, int threads = 0,
                                     const CountBudget& budget = {}) {
  if (d < 1) throw std::invalid_argument("brute_force_count: d must be >= 1");
  const PrimeField field(q);
  const auto t0 = std::chrono::steady_clock::now();
  const int n = g.vertex_count();
  const int ncoord = 2 * d * n;
  const Int space = detail::ipow(q, ncoord);
  if (space > budget.brute)
    throw BudgetExceeded("brute_force_count: " + space.str() +
                         " configurations exceed the budget of " +
                         std::to_string(budget.brute));
  const auto total = space.convert_to<std::uint64_t>();
  const int used_threads = detail::resolve_threads(threads, total);

  struct EdgeOffsets {
    int zu, wu, zv, wv;
  };
  std::vector<EdgeOffsets> offs;
  offs.reserve(g.edges().size());
  for (const auto& [u, v] : g.edges())
    offs.push_back({(u - 1) * 2 * d, (u - 1) * 2 * d + d, (v - 1) * 2 * d,
                    (v - 1) * 2 * d + d});

  const Int hits = detail::parallel_reduce<Int>(
      total, threads, [&](std::uint64_t begin, std::uint64_t end) -> Int {
        std::vector<std::uint32_t> dig(static_cast<std::size_t>(ncoord));
        detail::decode_base_q(begin, q, dig);
        std::uint64_t local = 0;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
          for (const auto& e : offs) {
            std::uint64_t acc = 0;
            for (int t = 0; t < d; ++t) {
              const std::uint32_t dz =
                  field.sub(dig[static_cast<std::size_t>(e.zu + t)],
                            dig[static_cast<std::size_t>(e.zv + t)]);
              const std::uint32_t dw =
                  field.sub(dig[static_cast<std::size_t>(e.wu + t)],
                            dig[static_cast<std::size_t>(e.wv + t)]);
              acc += static_cast<std::uint64_t>(dz) * dw;
            }
            if (acc % q == 0) {
              ++local;
              break;
            }
          }
          detail::increment_base_q(dig, q);
        }
        return Int(local);
      });

  const auto t1 = std::chrono::steady_clock::now();
  return CountReport{
      g,
      d,
      q,
      hits,
      CountAlgorithm::Brute,
      std::chrono::duration<double, std::milli>(t1 - t0).count(),
      used_threads};
}

// ---------------------------------------------------------------------------
// fibrewise: pin w^1 = 0, enumerate the remaining w, count each z-fibre (a
// union of linear subspaces of A^{dn}) by inclusion-exclusion over edge
// subsets with exact ranks, then restore the w-translation factor q^d

namespace detail {

inline CountReport fibrewise_count_impl(const FeynmanGraph& g, int d,
                                        std::uint32_t q,
                                        const std::vector<int>& signs,
                                        int threads,
                                        const CountBudget& budget) {
  if (d < 1) throw std::invalid_argument("fibrewise_count: d must be >= 1");
  if (static_cast<int>(signs.size()) != d)
    throw std::invalid_argument("fibrewise_count: need one sign per "
                                "coordinate");
  for (int s : signs)
    if (s != 1 && s != -1)
      throw std::invalid_argument("fibrewise_count: signs must be +1 or -1");
  const PrimeField field(q);
  const auto t0 = std::chrono::steady_clock::now();
  const int n = g.vertex_count();
  const int zdim = d * n;
  const int ecount = g.edge_count();
  if (zdim > kMaxZDim)
    throw BudgetExceeded("fibrewise_count: d*n exceeds the supported " +
                         std::to_string(kMaxZDim) + " z-coordinates");
  const Int wspace = ipow(q, d * (n - 1));
  if (wspace > budget.fibrewise)
    throw BudgetExceeded("fibrewise_count: " + wspace.str() +
                         " base tuples exceed the budget of " +
                         std::to_string(budget.fibrewise));
  // per-fibre terms are accumulated in 128-bit integers
  if ((ipow(q, zdim) << ecount) >= (Int(1) << 126))
    throw BudgetExceeded("fibrewise_count: fibre terms would overflow the "
                         "128-bit accumulator");
  const auto total = wspace.convert_to<std::uint64_t>();
  const int used_threads = resolve_threads(threads, total);

  std::vector<std::pair<int, int>> edges0; // 0-based endpoints
  edges0.reserve(static_cast<std::size_t>(ecount));
  for (const auto& [u, v] : g.edges()) edges0.emplace_back(u - 1, v - 1);

  std::vector<unsigned __int128> qpow(static_cast<std::size_t>(zdim) + 1);
  qpow[0] = 1;
  for (int i = 1; i <= zdim; ++i)
    qpow[static_cast<std::size_t>(i)] = qpow[static_cast<std::size_t>(i - 1)] * q;

  const Int pinned_sum = parallel_reduce<Int>(
      total, threads, [&](std::uint64_t begin, std::uint64_t end) -> Int {
        std::vector<std::uint32_t> wdig(
            static_cast<std::size_t>(d * (n - 1)));
        decode_base_q(begin, q, wdig);
        std::vector<std::array<std::uint32_t, kMaxZDim>> rows(
            static_cast<std::size_t>(ecount));
        std::vector<std::uint8_t> zerorow(static_cast<std::size_t>(ecount));
        FibreDfs dfs;
        dfs.f = &field;
        dfs.zdim = zdim;
        dfs.ecount = ecount;
        dfs.rows = rows.data();
        dfs.zerorow = zerorow.data();
        dfs.qpow = qpow.data();
        const auto wcoord = [&](int vertex, int t) -> std::uint32_t {
          // vertex 0 is pinned at the origin
          return vertex == 0
                     ? 0
                     : wdig[static_cast<std::size_t>((vertex - 1) * d + t)];
        };
        Int chunk = 0;
        __int128 acc = 0;
        std::uint32_t flush = 0;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
          for (int e = 0; e < ecount; ++e) {
            const auto& [u, v] = edges0[static_cast<std::size_t>(e)];
            auto& row = rows[static_cast<std::size_t>(e)];
            row.fill(0);
            bool zero = true;
            for (int t = 0; t < d; ++t) {
              std::uint32_t delta = field.sub(wcoord(u, t), wcoord(v, t));
              if (signs[static_cast<std::size_t>(t)] < 0)
                delta = field.neg(delta);
              zero &= (delta == 0);
              row[static_cast<std::size_t>(u * d + t)] = delta;
              row[static_cast<std::size_t>(v * d + t)] = field.neg(delta);
            }
            zerorow[static_cast<std::size_t>(e)] = zero ? 1 : 0;
          }
          acc += dfs.go(0, 0, 0);
          if (++flush == 1024) {
            chunk += int128_to_int(acc);
            acc = 0;
            flush = 0;
          }
          increment_base_q(wdig, q);
        }
        chunk += int128_to_int(acc);
        return chunk;
      });

  const auto t1 = std::chrono::steady_clock::now();
  return CountReport{
      g,
      d,
      q,
      pinned_sum * ipow(q, d),
      CountAlgorithm::Fibrewise,
      std::chrono::duration<double, std::milli>(t1 - t0).count(),
      used_threads};
}

} // namespace detail

inline CountReport fibrewise_count(const FeynmanGraph& g, int d,
                                   std::uint32_t q, int threads = 0,
                                   const CountBudget& budget = {}) {
  return detail::fibrewise_count_impl(g, d, q, std::vector<int>(
                                          static_cast<std::size_t>(d), 1),
                                      threads, budget);
}

// count with the signature-flipped edge quadrics
// sum_t eps_t (z^i_t - z^j_t)(w^i_t - w^j_t); the flips are absorbed into
// the fibre rows, everything else is the fibrewise code path
inline CountReport signature_flip_count(const FeynmanGraph& g, int d,
                                        std::uint32_t q,
                                        const std::vector<int>& signs,
                                        int threads = 0,
                                        const CountBudget& budget = {}) {
  return detail::fibrewise_count_impl(g, d, q, signs, threads, budget);
}

// ---------------------------------------------------------------------------
// the section-2 varieties, counted by direct enumeration

inline Int count_simple_quadric(int d, std::uint32_t q,
                                const CountBudget& budget = {}) {
  if (d < 1) throw std::invalid_argument("count_simple_quadric: d >= 1");
  const PrimeField field(q);
  const Int space = detail::ipow(q, 2 * d);
  if (space > budget.brute)
    throw BudgetExceeded("count_simple_quadric: space exceeds budget");
  const auto total = space.convert_to<std::uint64_t>();
  std::vector<std::uint32_t> dig(static_cast<std::size_t>(2 * d));
  std::uint64_t hits = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t acc = 0;
    for (int t = 0; t < d; ++t)
      acc += static_cast<std::uint64_t>(dig[static_cast<std::size_t>(t)]) *
             dig[static_cast<std::size_t>(d + t)];
    if (acc % q == 0) ++hits;
    detail::increment_base_q(dig, q);
  }
  return Int(hits);
}

namespace detail {

// representatives of P^{m-1}(F_q): all vectors whose first nonzero
// coordinate is 1
inline std::vector<std::vector<std::uint32_t>>
projective_points(int m, std::uint32_t q) {
  std::vector<std::vector<std::uint32_t>> pts;
  std::vector<std::uint32_t> v(static_cast<std::size_t>(m), 0);
  const Int space = ipow(q, m);
  const auto total = space.convert_to<std::uint64_t>();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    int first = -1;
    for (int i = 0; i < m; ++i)
      if (v[static_cast<std::size_t>(i)] != 0) {
        first = i;
        break;
      }
    if (first >= 0 && v[static_cast<std::size_t>(first)] == 1)
      pts.push_back(v);
    increment_base_q(v, q);
  }
  return pts;
}

} // namespace detail

// points of the bidegree-(1,1) hypersurface {sum_{i>=1} z_i w_i = 0} in
// P^d x P^d (homogeneous coordinates [z_0 : ... : z_d])
inline Int count_projective_closure(int d, std::uint32_t q,
                                    const CountBudget& budget = {}) {
  if (d < 1) throw std::invalid_argument("count_projective_closure: d >= 1");
  const PrimeField field(q);
  const auto pts = detail::projective_points(d + 1, q);
  const Int pairs = Int(pts.size()) * Int(pts.size());
  if (pairs > budget.brute)
    throw BudgetExceeded("count_projective_closure: space exceeds budget");
  std::uint64_t hits = 0;
  for (const auto& z : pts)
    for (const auto& w : pts) {
      std::uint64_t acc = 0;
      for (int i = 1; i <= d; ++i)
        acc += static_cast<std::uint64_t>(z[static_cast<std::size_t>(i)]) *
               w[static_cast<std::size_t>(i)];
      if (acc % q == 0) ++hits;
    }
  return Int(hits);
}

// points of the split quadric {sum_t u_t v_t = 0} in P^{D-1}, where u is the
// first half of the homogeneous coordinates and v the second; D = 2d even
inline Int count_projective_quadric(int D, std::uint32_t q,
                                    const CountBudget& budget = {}) {
  if (D < 4 || D % 2 != 0)
    throw std::invalid_argument(
        "count_projective_quadric: D must be even and >= 4");
  const PrimeField field(q);
  const Int space = detail::ipow(q, D);
  if (space > budget.brute)
    throw BudgetExceeded("count_projective_quadric: space exceeds budget");
  const auto pts = detail::projective_points(D, q);
  const int h = D / 2;
  std::uint64_t hits = 0;
  for (const auto& x : pts) {
    std::uint64_t acc = 0;
    for (int t = 0; t < h; ++t)
      acc += static_cast<std::uint64_t>(x[static_cast<std::size_t>(t)]) *
             x[static_cast<std::size_t>(h + t)];
    if (acc % q == 0) ++hits;
  }
  return Int(hits);
}

// ---------------------------------------------------------------------------
// singular loci, by enumeration of the vanishing of every partial derivative

struct SingularTarget {
  enum class Kind { SimpleQuadric, EdgeComponent };
  Kind kind = Kind::SimpleQuadric;
  int n = 2; // vertex count, EdgeComponent only

  static SingularTarget simple_quadric() { return {}; }
  static SingularTarget edge_component(int n) {
    if (n < 2)
      throw std::invalid_argument("SingularTarget: edge component needs "
                                  "n >= 2");
    return {Kind::EdgeComponent, n};
  }
};

inline Int singular_point_count(const SingularTarget& target, int d,
                                std::uint32_t q,
                                const CountBudget& budget = {}) {
  if (d < 1) throw std::invalid_argument("singular_point_count: d >= 1");
  const PrimeField field(q);
  const int n = target.kind == SingularTarget::Kind::SimpleQuadric
                    ? 1
                    : target.n;
  const int ncoord = 2 * d * n;
  const Int space = detail::ipow(q, ncoord);
  if (space > budget.brute)
    throw BudgetExceeded("singular_point_count: space exceeds budget");
  const auto total = space.convert_to<std::uint64_t>();
  std::vector<std::uint32_t> dig(static_cast<std::size_t>(ncoord));
  std::uint64_t hits = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    bool singular = true;
    if (target.kind == SingularTarget::Kind::SimpleQuadric) {
      // gradient of z.w is (w ; z)
      for (int t = 0; t < 2 * d && singular; ++t)
        singular = dig[static_cast<std::size_t>(t)] == 0;
    } else {
      // gradient of (z^1-z^2).(w^1-w^2) vanishes iff z^1=z^2 and w^1=w^2
      for (int t = 0; t < 2 * d && singular; ++t)
        singular = dig[static_cast<std::size_t>(t)] ==
                   dig[static_cast<std::size_t>(2 * d + t)];
    }
    if (singular) ++hits;
    detail::increment_base_q(dig, q);
  }
  return Int(hits);
}

// ---------------------------------------------------------------------------
// the fibre survey over the base of the projection that forgets one vertex
// of complete(n+1): classify every base point into the three fibre cases

struct FibreSurvey {
  int n = 0; // pinned vertices; the surveyed graph is complete(n+1)
  int d = 0;
  std::uint32_t q = 0;
  Int case1_count;      // a pinned pair already satisfies its quadric
                        // (fibre = A^d)
  Int case2_count;      // some w^a = w^i outside case 1 (fibre = A^d)
  Int case3_general;    // arrangement in general position
  Int case3_almost;     // almost-general (cannot occur for n <= d)
  Int case3_violating;  // parallel or otherwise degenerate
  Int fibre_point_total; // sum of fibre counts over all base points
  Int fibrewise_total;   // fibrewise_count(complete(n+1)) cross-check
};

inline FibreSurvey fibre_survey(int n, int d, std::uint32_t q,
                                int threads = 0,
                                const CountBudget& budget = {}) {
  if (n < 1) throw std::invalid_argument("fibre_survey: n must be >= 1");
  if (d < 1) throw std::invalid_argument("fibre_survey: d must be >= 1");
  const PrimeField field(q);
  const int ncoord = 2 * d * n + d; // (z^i, w^i) for i = 1..n, then w^a
  const Int space = detail::ipow(q, ncoord);
  if (space > budget.brute)
    throw BudgetExceeded("fibre_survey: " + space.str() +
                         " base points exceed the budget of " +
                         std::to_string(budget.brute));
  const auto total = space.convert_to<std::uint64_t>();

  std::vector<std::pair<int, int>> pinned_edges; // 0-based, complete(n)
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pinned_edges.emplace_back(i, j);

  struct Tally {
    Int c1, c2, c3g, c3a, c3v, fibre;
    Tally& operator+=(const Tally& o) {
      c1 += o.c1;
      c2 += o.c2;
      c3g += o.c3g;
      c3a += o.c3a;
      c3v += o.c3v;
      fibre += o.fibre;
      return *this;
    }
  };

  const Int qd = detail::ipow(q, d);
  const Tally tally = detail::parallel_reduce<Tally>(
      total, threads, [&](std::uint64_t begin, std::uint64_t end) -> Tally {
        std::vector<std::uint32_t> dig(static_cast<std::size_t>(ncoord));
        detail::decode_base_q(begin, q, dig);
        const auto zc = [&](int i, int t) {
          return dig[static_cast<std::size_t>(i * 2 * d + t)];
        };
        const auto wc = [&](int i, int t) {
          return dig[static_cast<std::size_t>(i * 2 * d + d + t)];
        };
        const auto ac = [&](int t) {
          return dig[static_cast<std::size_t>(n * 2 * d + t)];
        };
        Tally local;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
          bool case1 = false;
          for (const auto& [u, v] : pinned_edges) {
            std::uint64_t acc = 0;
            for (int t = 0; t < d; ++t)
              acc += static_cast<std::uint64_t>(
                         field.sub(zc(u, t), zc(v, t))) *
                     field.sub(wc(u, t), wc(v, t));
            if (acc % q == 0) {
              case1 = true;
              break;
            }
          }
          if (case1) {
            local.c1 += 1;
            local.fibre += qd;
          } else {
            bool case2 = false;
            for (int i = 0; i < n && !case2; ++i) {
              bool eq = true;
              for (int t = 0; t < d && eq; ++t) eq = ac(t) == wc(i, t);
              case2 = eq;
            }
            if (case2) {
              local.c2 += 1;
              local.fibre += qd;
            } else {
              std::vector<Hyperplane> planes;
              planes.reserve(static_cast<std::size_t>(n));
              for (int i = 0; i < n; ++i) {
                Hyperplane h;
                h.normal.resize(static_cast<std::size_t>(d));
                std::uint64_t off = 0;
                for (int t = 0; t < d; ++t) {
                  const std::uint32_t nt = field.sub(ac(t), wc(i, t));
                  h.normal[static_cast<std::size_t>(t)] = nt;
                  off += static_cast<std::uint64_t>(nt) * zc(i, t);
                }
                h.offset = static_cast<std::uint32_t>(off % q);
                planes.push_back(std::move(h));
              }
              const AffineArrangement arr(d, q, std::move(planes));
              const PositionClass pc = arr.classify_position();
              if (pc.is_general())
                local.c3g += 1;
              else if (pc.is_almost_general())
                local.c3a += 1;
              else
                local.c3v += 1;
              local.fibre += arr.union_count();
            }
          }
          detail::increment_base_q(dig, q);
        }
        return local;
      });

  FibreSurvey survey;
  survey.n = n;
  survey.d = d;
  survey.q = q;
  survey.case1_count = tally.c1;
  survey.case2_count = tally.c2;
  survey.case3_general = tally.c3g;
  survey.case3_almost = tally.c3a;
  survey.case3_violating = tally.c3v;
  survey.fibre_point_total = tally.fibre;
  survey.fibrewise_total =
      fibrewise_count(FeynmanGraph::complete(n + 1), d, q, threads, budget)
          .count;
  if (survey.fibre_point_total != survey.fibrewise_total)
    throw std::logic_error(
        "fibre_survey: fibre totals disagree with the fibrewise counter "
        "(survey " +
        survey.fibre_point_total.str() + ", fibrewise " +
        survey.fibrewise_total.str() + ")");
  return survey;
}

// ---------------------------------------------------------------------------
// remaining counts: the graph hypersurface and the configuration space

inline Int count_graph_hypersurface(const FeynmanGraph& g, std::uint32_t q,
                                    const CountBudget& budget = {}) {
  const PrimeField field(q);
  const int m = g.edge_count();
  const Int space = detail::ipow(q, m);
  if (space > budget.brute)
    throw BudgetExceeded("count_graph_hypersurface: space exceeds budget");
  const auto monomials = g.graph_polynomial();
  const auto total = space.convert_to<std::uint64_t>();
  std::vector<std::uint32_t> alpha(static_cast<std::size_t>(m));
  std::uint64_t hits = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t psi = 0;
    for (const auto& [monomial, multiplicity] : monomials) {
      std::uint32_t prod = 1;
      for (int e : monomial)
        prod = field.mul(prod, alpha[static_cast<std::size_t>(e)]);
      psi += static_cast<std::uint64_t>(multiplicity) * prod;
    }
    if (psi % q == 0) ++hits;
    detail::increment_base_q(alpha, q);
  }
  return Int(hits);
}

// points of the pinned configuration space: base points b of
// (A^d x A^d)^n avoiding every quadric of complete(n), paired with a
// w^a distinct from every pinned w^i; n = 0 gives the bare A^d
inline Int count_configuration_space(int n, int d, std::uint32_t q,
                                     int threads = 0,
                                     const CountBudget& budget = {}) {
  if (n < 0)
    throw std::invalid_argument("count_configuration_space: n must be >= 0");
  if (d < 1)
    throw std::invalid_argument("count_configuration_space: d must be >= 1");
  const PrimeField field(q);
  if (n == 0) return detail::ipow(q, d);
  const int ncoord = 2 * d * n + d;
  const Int space = detail::ipow(q, ncoord);
  if (space > budget.brute)
    throw BudgetExceeded("count_configuration_space: space exceeds budget");
  const auto total = space.convert_to<std::uint64_t>();
  std::vector<std::pair<int, int>> pinned_edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pinned_edges.emplace_back(i, j);

  return detail::parallel_reduce<Int>(
      total, threads, [&](std::uint64_t begin, std::uint64_t end) -> Int {
        std::vector<std::uint32_t> dig(static_cast<std::size_t>(ncoord));
        detail::decode_base_q(begin, q, dig);
        const auto zc = [&](int i, int t) {
          return dig[static_cast<std::size_t>(i * 2 * d + t)];
        };
        const auto wc = [&](int i, int t) {
          return dig[static_cast<std::size_t>(i * 2 * d + d + t)];
        };
        const auto ac = [&](int t) {
          return dig[static_cast<std::size_t>(n * 2 * d + t)];
        };
        std::uint64_t local = 0;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
          bool excluded = false;
          for (const auto& [u, v] : pinned_edges) {
            std::uint64_t acc = 0;
            for (int t = 0; t < d; ++t)
              acc += static_cast<std::uint64_t>(
                         field.sub(zc(u, t), zc(v, t))) *
                     field.sub(wc(u, t), wc(v, t));
            if (acc % q == 0) {
              excluded = true;
              break;
            }
          }
          for (int i = 0; i < n && !excluded; ++i) {
            bool eq = true;
            for (int t = 0; t < d && eq; ++t) eq = ac(t) == wc(i, t);
            excluded = eq;
          }
          if (!excluded) ++local;
          detail::increment_base_q(dig, q);
        }
        return Int(local);
      });
}

} // namespace feynq

#endif
