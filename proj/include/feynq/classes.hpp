#ifndef FEYNQ_CLASSES_HPP
#define FEYNQ_CLASSES_HPP

// Closed-form Grothendieck-ring classes of the quadrics and of the Feynman
// quadrics of complete graphs: the simple quadric and its projective
// closure / blow-up, unions of hyperplanes in general position, and the two
// candidate recursions for Z of a complete graph (the published recursion and
// the corrected one that splits the degenerate fibre stratum off). All
// formulas live in Z[L]; dimensions below 2 are rejected throughout.

#include "feynq/lclass.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace feynq {

struct InvalidDimension : std::runtime_error {
  explicit InvalidDimension(const std::string& why)
      : std::runtime_error(why) {}
};
struct KTooLarge : std::runtime_error {
  explicit KTooLarge(const std::string& why) : std::runtime_error(why) {}
};
struct Unsupported : std::runtime_error {
  explicit Unsupported(const std::string& why) : std::runtime_error(why) {}
};
struct OutOfRange : std::runtime_error {
  explicit OutOfRange(const std::string& why) : std::runtime_error(why) {}
};
struct ZeroSample : std::runtime_error {
  explicit ZeroSample(const std::string& why) : std::runtime_error(why) {}
};

namespace detail {
inline void require_dim(int d, const char* where) {
  if (d < 2)
    throw InvalidDimension(std::string(where) + ": requires d >= 2, got " +
                           std::to_string(d));
}
inline Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
} // namespace detail

// [Q] for the simple quadric Q = {z . w = 0} in A^d x A^d
inline LClass simple_quadric_class(int d) {
  detail::require_dim(d, "simple_quadric_class");
  const unsigned ud = static_cast<unsigned>(d);
  return LClass::monomial(2 * ud - 1) + LClass::monomial(ud) -
         LClass::monomial(ud - 1);
}

// class of the bidegree-(1,1) hypersurface {sum_{i>=1} z_i w_i = 0} in
// P^d x P^d (the projective closure of Q)
inline LClass projective_closure_class(int d) {
  detail::require_dim(d, "projective_closure_class");
  return LClass::monomial(static_cast<unsigned>(d)) +
         projective_class(d) * projective_class(d - 1);
}

// class of the exceptional divisor {u . v = 0} in P^{2d-1} of the blow-up of
// Q at the origin: ([Q] - 1) must be divisible by (L - 1)
inline LClass exceptional_divisor_class(int d) {
  detail::require_dim(d, "exceptional_divisor_class");
  const LClass l_minus_1 = LClass::lefschetz() - LClass(1);
  return exact_div(simple_quadric_class(d) - LClass(1), l_minus_1);
}

// class of Bl_0(Q): the punctured quadric plus the exceptional divisor
inline LClass blowup_class(int d) {
  detail::require_dim(d, "blowup_class");
  return (simple_quadric_class(d) - LClass(1)) + exceptional_divisor_class(d);
}

// [U_k] for a union of k affine hyperplanes in general position in A^d:
// sum_{j=1..k} (-1)^{j+1} C(k,j) L^{d-j}; U_0 = 0
inline LClass general_union_class(int k, int d) {
  detail::require_dim(d, "general_union_class");
  if (k < 0) throw OutOfRange("general_union_class: k must be >= 0");
  if (k > d)
    throw KTooLarge("general_union_class: k = " + std::to_string(k) +
                    " exceeds d = " + std::to_string(d));
  LClass r;
  for (int j = 1; j <= k; ++j) {
    Int c = detail::binomial(k, j);
    if (j % 2 == 0) c = -c;
    r += LClass::monomial(static_cast<unsigned>(d - j), c);
  }
  return r;
}

// [H^e] for one edge component H^e = Q x (A^d x A^d)^{n-1} inside
// (A^d x A^d)^n
inline LClass edge_component_class(int n, int d) {
  detail::require_dim(d, "edge_component_class");
  if (n < 2) throw OutOfRange("edge_component_class: n must be >= 2");
  return simple_quadric_class(d) *
         LClass::monomial(static_cast<unsigned>(2 * d * (n - 1)));
}

// class of the parallel-degeneration stratum of the 2-pinned configuration
// space: base points whose two fibre hyperplanes are parallel and distinct
// (w^2 - w^a = lambda (w^1 - w^a), lambda not in {0,1}, all other
// configuration conditions intact)
inline LClass parallel_stratum_class(int d) {
  detail::require_dim(d, "parallel_stratum_class");
  const LClass lcls = LClass::lefschetz();
  return LClass::monomial(static_cast<unsigned>(3 * d - 1)) *
         (lcls - LClass(1)) *
         (LClass::monomial(static_cast<unsigned>(d)) - LClass(1)) *
         (lcls - LClass(2));
}

inline LClass z_complete_corrected(int n, int d);

// C(n): class of the pinned configuration space — base points b of
// (A^d x A^d)^n avoiding every quadric of complete(n), paired with a w^a
// distinct from every pinned w^i — computed with the corrected Z_n;
// C(0) = L^d
inline LClass configuration_complement_class(int n, int d) {
  detail::require_dim(d, "configuration_complement_class");
  if (n < 0)
    throw OutOfRange("configuration_complement_class: n must be >= 0");
  if (n > d)
    throw OutOfRange("configuration_complement_class: n = " +
                     std::to_string(n) + " exceeds d = " + std::to_string(d));
  if (n > 3)
    throw Unsupported(
        "configuration_complement_class: corrected Z is only available for "
        "complete graphs on <= 3 vertices");
  const unsigned ud = static_cast<unsigned>(d);
  if (n == 0) return LClass::monomial(ud);
  const LClass z_n = n == 1 ? LClass() : z_complete_corrected(n, d);
  const unsigned amb = static_cast<unsigned>(2 * d * n);
  return LClass::monomial(amb + ud) - z_n * LClass::monomial(ud) -
         LClass(n) * (LClass::monomial(amb) - z_n);
}

// F(n): the same configuration space computed along the forgetful-morphism
// route, peeling one pinned vertex at a time:
// F(m) = F(m-1) * (L^d - L^{m-1}) * (L^d - U_{m-1}), F(0) = L^d
inline LClass forgetful_route_class(int n, int d) {
  detail::require_dim(d, "forgetful_route_class");
  if (n < 1) throw OutOfRange("forgetful_route_class: n must be >= 1");
  if (n > d)
    throw Unsupported("forgetful_route_class: n = " + std::to_string(n) +
                      " exceeds d = " + std::to_string(d));
  const LClass ld = LClass::monomial(static_cast<unsigned>(d));
  LClass f = ld;
  for (int m = 1; m <= n; ++m)
    f *= (ld - LClass::monomial(static_cast<unsigned>(m - 1))) *
         (ld - general_union_class(m - 1, d));
  return f;
}

// Z of the complete graph on n vertices along the published recursion:
// Z_{m+1} = Z_m L^{2d} + m (L^{2dm} - Z_m) L^d + C_paper(m) U_m, with the
// degenerate-position stratum absorbed into the general-position fibre class
inline LClass z_complete_paper(int n, int d) {
  detail::require_dim(d, "z_complete_paper");
  if (n < 2 || n > d + 1)
    throw OutOfRange("z_complete_paper: requires 2 <= n <= d+1, got n = " +
                     std::to_string(n) + ", d = " + std::to_string(d));
  const unsigned ud = static_cast<unsigned>(d);
  LClass z = edge_component_class(2, d);
  for (int m = 2; m < n; ++m) {
    const unsigned amb = static_cast<unsigned>(2 * d * m);
    const LClass diag = LClass(m) * (LClass::monomial(amb) - z);
    const LClass c_paper =
        LClass::monomial(amb + ud) - z * LClass::monomial(ud) - diag;
    z = z * LClass::monomial(2 * ud) + diag * LClass::monomial(ud) +
        c_paper * general_union_class(m, d);
  }
  return z;
}

// Z of the complete graph on n vertices with the parallel-degeneration
// stratum counted with its true fibre (two disjoint hyperplanes, 2 L^{d-1})
// instead of the transverse-union class U_2
inline LClass z_complete_corrected(int n, int d) {
  detail::require_dim(d, "z_complete_corrected");
  if (n < 2 || n > d + 1)
    throw OutOfRange("z_complete_corrected: requires 2 <= n <= d+1, got n = " +
                     std::to_string(n) + ", d = " + std::to_string(d));
  if (n > 3)
    throw Unsupported(
        "z_complete_corrected: the stratified fibre classes are only worked "
        "out for complete graphs on <= 3 vertices");
  if (n == 2) return edge_component_class(2, d);
  const unsigned ud = static_cast<unsigned>(d);
  const LClass z2 = edge_component_class(2, d);
  const unsigned amb = static_cast<unsigned>(4 * d);
  const LClass diag = LClass(2) * (LClass::monomial(amb) - z2);
  const LClass m_par = parallel_stratum_class(d);
  const LClass m_trans = configuration_complement_class(2, d) - m_par;
  return z2 * LClass::monomial(2 * ud) + diag * LClass::monomial(ud) +
         m_trans * general_union_class(2, d) +
         m_par * LClass::monomial(ud - 1, Int(2));
}

// The fibrewise decomposition of Z_{complete(n+1)} over the base
// (A^d x A^d)^n x A^d: base strata (already inside the pinned quadric
// union / on a diagonal / the configuration complement) and the
// assembled pieces, with the
// configuration-complement fibre split into its transverse and parallel
// parts. Both route totals are included.
struct StrataDecomposition {
  int n = 0; // number of unpinned vertices: the graph is complete(n+1)
  int d = 0;
  LClass base_in_quadric;   // Z_n * L^d
  LClass base_diagonal;     // n * (L^{2dn} - Z_n)
  LClass base_complement;   // C(n)
  LClass piece_a;           // base_in_quadric * L^d (fibre A^d)
  LClass piece_b;           // base_diagonal * L^d   (fibre A^d)
  LClass piece_c_transverse;
  LClass piece_c_parallel;
  LClass total_paper;
  LClass total_corrected;
};

inline StrataDecomposition strata_decomposition(int n, int d) {
  detail::require_dim(d, "strata_decomposition");
  if (n < 1 || n > d)
    throw OutOfRange("strata_decomposition: requires 2 <= n+1 <= d+1, got "
                     "n = " +
                     std::to_string(n) + ", d = " + std::to_string(d));
  if (n > 3)
    throw Unsupported("strata_decomposition: only complete graphs on <= 4 "
                      "vertices are stratified");
  StrataDecomposition s;
  s.n = n;
  s.d = d;
  const unsigned ud = static_cast<unsigned>(d);
  const unsigned amb = static_cast<unsigned>(2 * d * n);
  const LClass z_n = n == 1 ? LClass() : z_complete_corrected(n, d);
  s.base_in_quadric = z_n * LClass::monomial(ud);
  s.base_diagonal = LClass(n) * (LClass::monomial(amb) - z_n);
  s.base_complement = configuration_complement_class(n, d);
  s.piece_a = s.base_in_quadric * LClass::monomial(ud);
  s.piece_b = s.base_diagonal * LClass::monomial(ud);
  if (n == 1) {
    s.piece_c_transverse = s.base_complement * general_union_class(1, d);
    s.piece_c_parallel = LClass();
  } else if (n == 2) {
    const LClass m_par = parallel_stratum_class(d);
    s.piece_c_transverse =
        (s.base_complement - m_par) * general_union_class(2, d);
    s.piece_c_parallel = m_par * LClass::monomial(ud - 1, Int(2));
  } else {
    // n == 3 would need the corrected Z_4
    throw Unsupported("strata_decomposition: corrected fibre classes are not "
                      "available beyond n = 2");
  }
  s.total_paper = z_complete_paper(n + 1, d);
  s.total_corrected = z_complete_corrected(n + 1, d);
  return s;
}

// Numerical check of the propagator restriction: on the real locus
// w = conj(z), the quadric propagator q(z,w)^{1-d} agrees with the Euclidean
// propagator |z|^{2-2d}. Returns the largest relative deviation over the
// samples (each sample is a complex d-vector, d >= 2, nonzero).
inline double propagator_restriction_residual(
    const std::vector<std::vector<std::complex<double>>>& samples) {
  double worst = 0.0;
  for (const auto& z : samples) {
    const int d = static_cast<int>(z.size());
    if (d < 2)
      throw InvalidDimension(
          "propagator_restriction_residual: samples must have d >= 2");
    std::complex<double> q(0.0, 0.0);
    double norm_sq = 0.0;
    for (const auto& zi : z) {
      q += zi * std::conj(zi);
      norm_sq += std::norm(zi);
    }
    if (norm_sq == 0.0)
      throw ZeroSample("propagator_restriction_residual: zero sample vector");
    const std::complex<double> propagator =
        std::pow(q, std::complex<double>(1.0 - d, 0.0));
    const double reference = std::pow(norm_sq, 1.0 - d);
    const double rel = std::abs(propagator - reference) / reference;
    worst = std::max(worst, rel);
  }
  return worst;
}

} // namespace feynq

#endif
