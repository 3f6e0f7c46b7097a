#ifndef FEYNQ_LCLASS_HPP
#define FEYNQ_LCLASS_HPP

// Classes in the Grothendieck ring of varieties that are polynomials in the
// Lefschetz class L = [A^1]: elements of Z[L] with arbitrary-precision
// coefficients, exact evaluation, exact division and exact interpolation
// from point counts.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace feynq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class LClass {
public:
  LClass() = default;
  LClass(long long constant) { // NOLINT: implicit by design, Z embeds in Z[L]
    if (constant != 0) c_.push_back(Int(constant));
  }
  explicit LClass(const Int& constant) {
    if (constant != 0) c_.push_back(constant);
  }

  // c * L^k
  static LClass monomial(unsigned k, Int coeff = Int(1)) {
    LClass r;
    if (coeff != 0) {
      r.c_.assign(k + 1, Int(0));
      r.c_[k] = std::move(coeff);
    }
    return r;
  }
  static LClass lefschetz() { return monomial(1); }

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is -1
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Int coeff(std::size_t k) const {
    return k < c_.size() ? c_[k] : Int(0);
  }
  const std::vector<Int>& coefficients() const { return c_; }

  friend LClass operator+(const LClass& a, const LClass& b) {
    LClass r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.normalize();
    return r;
  }
  friend LClass operator-(const LClass& a, const LClass& b) {
    LClass r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] -= b.c_[i];
    r.normalize();
    return r;
  }
  LClass operator-() const {
    LClass r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend LClass operator*(const LClass& a, const LClass& b) {
    if (a.is_zero() || b.is_zero()) return {};
    LClass r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.normalize();
    return r;
  }
  LClass& operator+=(const LClass& o) { return *this = *this + o; }
  LClass& operator-=(const LClass& o) { return *this = *this - o; }
  LClass& operator*=(const LClass& o) { return *this = *this * o; }

  LClass pow(unsigned e) const {
    LClass r(1), base = *this;
    while (e) {
      if (e & 1u) r *= base;
      if (e >>= 1) base *= base;
    }
    return r;
  }

  friend bool operator==(const LClass& a, const LClass& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const LClass& a, const LClass& b) {
    return !(a == b);
  }

  // exact evaluation at an integer value of L
  Int eval(const Int& q) const {
    Int acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + c_[i];
    return acc;
  }

  // "a_k*L^k + ... + a_0" with zero terms omitted; the zero class is "0"
  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const Int& c = c_[i];
      if (c == 0) continue;
      const bool neg = c < 0;
      if (first) {
        if (neg) out << "-";
        first = false;
      } else {
        out << (neg ? " - " : " + ");
      }
      Int a = neg ? Int(-c) : c;
      if (i == 0) {
        out << a.str();
      } else {
        if (a != 1) out << a.str() << "*";
        out << "L";
        if (i != 1) out << "^" << i;
      }
    }
    return out.str();
  }

  static LClass parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const LClass& a) {
    return os << a.str();
  }

private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  // c_[k] is the coefficient of L^k; invariant: empty or nonzero back()
  std::vector<Int> c_;
};

// [P^n] = 1 + L + ... + L^n
inline LClass projective_class(int n) {
  if (n < 0) throw std::invalid_argument("projective_class: n must be >= 0");
  LClass r;
  for (int k = 0; k <= n; ++k) r += LClass::monomial(static_cast<unsigned>(k));
  return r;
}

struct NotDivisible : std::runtime_error {
  explicit NotDivisible(LClass rem)
      : std::runtime_error("exact_div: division leaves remainder " +
                           rem.str()),
        remainder(std::move(rem)) {}
  LClass remainder;
};

// Exact division in Z[L]: returns c with a = b*c, throws NotDivisible
// (carrying the offending remainder) when no such integer polynomial exists.
inline LClass exact_div(const LClass& a, const LClass& b) {
  if (b.is_zero()) throw std::invalid_argument("exact_div: division by zero");
  LClass rem = a, quot;
  const int db = b.degree();
  const Int& lead = b.coeff(static_cast<std::size_t>(db));
  while (!rem.is_zero() && rem.degree() >= db) {
    const int dr = rem.degree();
    Int c = rem.coeff(static_cast<std::size_t>(dr));
    if (c % lead != 0) throw NotDivisible(rem);
    LClass t = LClass::monomial(static_cast<unsigned>(dr - db), c / lead);
    quot += t;
    rem -= t * b;
  }
  if (!rem.is_zero()) throw NotDivisible(rem);
  return quot;
}

struct NoIntegerFit : std::runtime_error {
  explicit NoIntegerFit(const std::string& why)
      : std::runtime_error("interpolate: " + why) {}
};

// Exact interpolation: the unique polynomial of degree <= max_degree through
// the (q, value) points, which must exist with integer coefficients and be
// consistent with every supplied point; otherwise NoIntegerFit.
inline LClass interpolate(const std::vector<std::pair<Int, Int>>& points,
                          int max_degree) {
  if (max_degree < 0)
    throw std::invalid_argument("interpolate: max_degree must be >= 0");
  const std::size_t need = static_cast<std::size_t>(max_degree) + 1;
  if (points.size() < need)
    throw std::invalid_argument(
        "interpolate: need at least max_degree+1 points");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw std::invalid_argument(
            "interpolate: sample points must be distinct");

  // Newton divided differences on the first max_degree+1 points.
  std::vector<Rat> dd(need);
  for (std::size_t i = 0; i < need; ++i) dd[i] = Rat(points[i].second);
  for (std::size_t level = 1; level < need; ++level)
    for (std::size_t i = need - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) /
              Rat(points[i].first - points[i - level].first);

  // Expand sum_j dd[j] * prod_{i<j} (X - x_i) into monomial coefficients.
  std::vector<Rat> poly(need, Rat(0));
  std::vector<Rat> basis(need, Rat(0)); // running product, degree index
  basis[0] = 1;
  std::size_t basis_deg = 0;
  for (std::size_t j = 0; j < need; ++j) {
    for (std::size_t k = 0; k <= basis_deg; ++k) poly[k] += dd[j] * basis[k];
    if (j + 1 < need) {
      const Rat x(points[j].first);
      ++basis_deg;
      for (std::size_t k = basis_deg; k-- > 0;) {
        basis[k + 1] += basis[k];
        basis[k] *= -x;
      }
    }
  }

  LClass result;
  for (std::size_t k = need; k-- > 0;) {
    if (boost::multiprecision::denominator(poly[k]) != 1)
      throw NoIntegerFit("coefficient of L^" + std::to_string(k) +
                         " is not an integer");
    result += LClass::monomial(static_cast<unsigned>(k),
                               boost::multiprecision::numerator(poly[k]));
  }
  for (const auto& [q, v] : points)
    if (result.eval(q) != v)
      throw NoIntegerFit("data at q=" + q.str() +
                         " is inconsistent with a degree-" +
                         std::to_string(max_degree) + " integer polynomial");
  return result;
}

inline LClass LClass::parse(std::string_view text) {
  std::size_t i = 0;
  const auto fail = [&](const std::string& why) -> void {
    throw std::invalid_argument("LClass::parse: " + why + " at position " +
                                std::to_string(i));
  };
  const auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  const auto parse_uint = [&]() -> Int {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    if (i == start) fail("expected an integer");
    return Int(std::string(text.substr(start, i - start)));
  };

  LClass result;
  skip_ws();
  if (i == text.size()) fail("empty input");
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  while (true) {
    skip_ws();
    Int coeff = 1;
    bool saw_coeff = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coeff = parse_uint();
      saw_coeff = true;
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    unsigned exponent = 0;
    if (i < text.size() && text[i] == 'L') {
      ++i;
      exponent = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        Int e = parse_uint();
        if (e > 100000) fail("exponent too large");
        exponent = static_cast<unsigned>(e);
      }
    } else if (!saw_coeff) {
      fail("expected a term");
    }
    if (negative) coeff = -coeff;
    result += LClass::monomial(exponent, coeff);
    skip_ws();
    if (i == text.size()) break;
    if (text[i] == '+')
      negative = false;
    else if (text[i] == '-')
      negative = true;
    else
      fail("expected '+' or '-'");
    ++i;
  }
  return result;
}

} // namespace feynq

#endif
