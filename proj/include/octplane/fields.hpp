#ifndef OCTPLANE_FIELDS_HPP
#define OCTPLANE_FIELDS_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "octplane/error.hpp"
#include "octplane/rng.hpp"

namespace octplane {

/// Exact arithmetic for the three ground fields:
///   - Q, arbitrary-precision rationals,
///   - Q(sqrt2), the real quadratic field with its Galois involution,
///   - F2(t1,t2,t3), rational functions over GF(2) in three indeterminates.
/// Every element is stored in canonical reduced form, so structural equality
/// is mathematical equality. All values are immutable; operations are pure.

enum class FieldKind : uint8_t { Rationals = 0, RealQuadratic = 1, Char2Function = 2 };

struct FieldDescriptor {
  FieldKind kind;

  int characteristic() const { return kind == FieldKind::Char2Function ? 2 : 0; }
  const char* name() const;
  std::vector<std::string> variable_names() const;
};

const char* field_name(FieldKind k);
FieldKind field_from_name(const std::string& name);  // throws ConfigError
inline int characteristic(FieldKind k) { return k == FieldKind::Char2Function ? 2 : 0; }

// ---------------------------------------------------------------------------
// Multivariate polynomials over GF(2) in t1,t2,t3.
//
// A polynomial is a sorted vector of monomial keys; every present monomial has
// coefficient 1. Exponents pack as key = e1<<42 | e2<<21 | e3 (21 bits each),
// so numeric key order is lexicographic order with t1 > t2 > t3.
// ---------------------------------------------------------------------------
class F2Poly {
 public:
  using Key = uint64_t;
  static constexpr int kShift = 21;
  static constexpr Key kMask = (Key(1) << kShift) - 1;

  F2Poly() = default;  // zero
  static F2Poly zero() { return F2Poly(); }
  static F2Poly one() { return monomial(0, 0, 0); }
  static F2Poly variable(int i);  // 0,1,2 -> t1,t2,t3
  static F2Poly monomial(unsigned e1, unsigned e2, unsigned e3);
  static F2Poly from_terms(std::vector<Key> terms);  // normalizes mod 2

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0] == 0; }
  size_t term_count() const { return terms_.size(); }
  const std::vector<Key>& terms() const { return terms_; }

  static unsigned exp_of(Key k, int var) { return unsigned((k >> (kShift * (2 - var))) & kMask); }
  unsigned degree(int var) const { return deg_[size_t(var)]; }
  unsigned total_degree() const;
  Key leading_key() const;  // lex-largest; polynomial must be nonzero

  friend F2Poly operator+(const F2Poly& a, const F2Poly& b);  // = subtraction in GF(2)
  friend F2Poly operator*(const F2Poly& a, const F2Poly& b);
  friend bool operator==(const F2Poly& a, const F2Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const F2Poly& a, const F2Poly& b) { return a.terms_ < b.terms_; }

  /// Exact division; throws Internal if b does not divide a.
  static F2Poly div_exact(const F2Poly& a, const F2Poly& b);
  /// Exact division that reports failure instead of throwing.
  static bool try_div_exact(const F2Poly& a, const F2Poly& b, F2Poly& quotient);
  /// Subresultant-PRS gcd with fast paths for univariate and tiny operands.
  static F2Poly gcd(const F2Poly& a, const F2Poly& b);

  /// Terms must already be ascending and duplicate-free.
  static F2Poly from_sorted_unique(std::vector<Key> terms);

  std::string str() const;

 private:
  void refresh_degrees();

  std::vector<Key> terms_;  // ascending key order, no duplicates
  std::array<unsigned, 3> deg_ = {0, 0, 0};
};

/// Reduced fraction of F2Poly. gcd(num, den) = 1 and den != 0; over GF(2) the
/// only unit is 1, so the reduced form is unique and equality is structural.
///
/// The denominator is additionally kept as a list of factors whose product is
/// den. Reduction runs factor by factor, which keeps gcd calls small, and
/// addition cancels structurally equal factors before any gcd is attempted.
/// The factor split is an internal detail: equality, ordering and
/// serialization only ever see the expanded canonical (num, den) pair.
class F2Frac {
 public:
  F2Frac() : num_(), den_(F2Poly::one()) {}
  F2Frac(F2Poly num, F2Poly den);  // reduces; throws DivisionByZero if den = 0

  static F2Frac zero() { return F2Frac(); }
  static F2Frac one() { return F2Frac(F2Poly::one(), F2Poly::one()); }

  const F2Poly& num() const { return num_; }
  const F2Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  friend F2Frac operator+(const F2Frac& a, const F2Frac& b);
  friend F2Frac operator*(const F2Frac& a, const F2Frac& b);
  F2Frac inverted() const;  // DivisionByZero on zero
  friend bool operator==(const F2Frac& a, const F2Frac& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Exact sum of three-way products over a shared cleared denominator; one
  /// reduction for the whole expression instead of one per operation.
  static F2Frac sum_of_triples(const std::vector<std::array<const F2Frac*, 3>>& triples);

  std::string str() const;

 private:
  static F2Frac from_parts(F2Poly num, std::vector<F2Poly> factors);

  F2Poly num_, den_;
  std::vector<F2Poly> factors_;  // den_ = product(factors_), each non-unit, sorted
};

/// u + v*sqrt(2) with exact rational u, v.
struct QuadExt {
  mpq_class u, v;

  QuadExt() : u(0), v(0) {}
  QuadExt(mpq_class uu, mpq_class vv) : u(std::move(uu)), v(std::move(vv)) {}

  bool is_zero() const { return u == 0 && v == 0; }
  friend bool operator==(const QuadExt& a, const QuadExt& b) { return a.u == b.u && a.v == b.v; }
};

// ---------------------------------------------------------------------------
// FieldElement: one element of one of the three fields.
// ---------------------------------------------------------------------------
class FieldElement {
 public:
  FieldElement() : v_(mpq_class(0)) {}

  static FieldElement zero(FieldKind k);
  static FieldElement one(FieldKind k);
  static FieldElement from_int(FieldKind k, long n);
  static FieldElement rational(FieldKind k, long num, long den);
  static FieldElement sqrt2();                       // in Q(sqrt2)
  static FieldElement variable(int i);               // t1,t2,t3 in F2(t)
  static FieldElement of(mpq_class q) { return FieldElement(std::move(q)); }
  static FieldElement of(QuadExt q) { return FieldElement(std::move(q)); }
  static FieldElement of(F2Frac f) { return FieldElement(std::move(f)); }

  FieldKind kind() const { return static_cast<FieldKind>(v_.index()); }
  bool is_zero() const;
  bool is_one() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;
  FieldElement inverted() const;  // DivisionByZero on zero
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inverted();
  }
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  /// The nontrivial element of Gal(Q(sqrt2)/Q); UnsupportedField elsewhere.
  FieldElement galois_conjugate() const;

  const mpq_class& as_rational() const;
  const QuadExt& as_quadratic() const;
  const F2Frac& as_f2frac() const;

  /// Re-runs canonicalization from the raw representation. Used by tests to
  /// confirm stored forms are already canonical.
  FieldElement recanonicalized() const;

  nlohmann::json to_json() const;
  static FieldElement from_json(FieldKind k, const nlohmann::json& j);
  std::string str() const;

  /// Bounded random element: Q with |num| <= height and 1 <= den <= height,
  /// F2(t) with total degree <= 2 and at most 4 monomials in num and den.
  static FieldElement sample(FieldKind k, SplitMix64& rng, int height = 10);
  static FieldElement sample_nonzero(FieldKind k, SplitMix64& rng, int height = 10);

  /// Exact sum of products a*b*c over the given triples. Equal to the naive
  /// fold but reduces the result once at the end.
  static FieldElement sum_of_products(
      FieldKind k, const std::vector<std::array<const FieldElement*, 3>>& triples);

 private:
  explicit FieldElement(mpq_class q) : v_(std::move(q)) {}
  explicit FieldElement(QuadExt q) : v_(std::move(q)) {}
  explicit FieldElement(F2Frac f) : v_(std::move(f)) {}

  std::variant<mpq_class, QuadExt, F2Frac> v_;
};

void require_same_field(const FieldElement& a, const FieldElement& b);

}  // namespace octplane

#endif
