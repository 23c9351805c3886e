#ifndef OCTPLANE_OCTONION_HPP
#define OCTPLANE_OCTONION_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "octplane/fields.hpp"
#include "octplane/linalg.hpp"

namespace octplane {

/// Octonion division algebras over the three ground fields.
///
/// Characteristic 0 fields get three Cayley-Dickson doublings of the field
/// itself with parameters mu = (-1,-1,-1), so the norm is the sum of eight
/// squares. The characteristic-2 field starts from the separable quadratic
/// etale algebra k[z]/(z^2 + z + t1) and doubles by t2 and then t3. Structure
/// constants are generated programmatically from the doubling formula
///   (a,b)(c,d) = (ac + mu * conj(d) b,  da + b conj(c)),
/// never hand-typed.
class Algebra {
 public:
  /// Shared immutable algebra for a field; built once.
  static std::shared_ptr<const Algebra> for_field(FieldKind k);

  FieldKind field() const { return field_; }
  int characteristic() const { return octplane::characteristic(field_); }

  using Term = std::pair<int, FieldElement>;
  const std::vector<Term>& product_terms(int i, int j) const { return table_[i][j]; }
  const std::vector<Term>& conj_terms(int i) const { return conj_[i]; }

  /// Doubling parameters: mu1,mu2,mu3 in characteristic 0; alpha,beta,gamma
  /// in characteristic 2.
  const std::array<FieldElement, 3>& params() const { return params_; }

  /// N(x) = sum g_ij x_i x_j, expanded once from e_i * conj(e_j).
  const std::vector<std::tuple<int, int, FieldElement>>& norm_gram() const { return norm_gram_; }
  /// T(x) = sum t_i x_i.
  const std::array<FieldElement, 8>& trace_coeffs() const { return trace_coeffs_; }

  /// Structure-constant table as CSV (row e_i, column e_j). Entries that are
  /// a single signed basis vector print as a signed 1-based index; anything
  /// else (characteristic 2) prints as an explicit linear combination.
  std::string table_csv() const;

 private:
  Algebra() = default;
  FieldKind field_;
  std::array<FieldElement, 3> params_;
  std::array<std::array<std::vector<Term>, 8>, 8> table_;
  std::array<std::vector<Term>, 8> conj_;
  std::vector<std::tuple<int, int, FieldElement>> norm_gram_;
  std::array<FieldElement, 8> trace_coeffs_;
  friend Algebra build_algebra(FieldKind);
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

class Octonion {
 public:
  Octonion() = default;

  static Octonion zero(const AlgebraPtr& alg);
  static Octonion one(const AlgebraPtr& alg);
  static Octonion basis(const AlgebraPtr& alg, int i);
  static Octonion scalar(const AlgebraPtr& alg, FieldElement s);
  static Octonion from_coords(const AlgebraPtr& alg, std::array<FieldElement, 8> c);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::array<FieldElement, 8>& coords() const { return c_; }
  const FieldElement& coord(int i) const { return c_[i]; }
  FieldKind field() const { return alg_->field(); }

  bool is_zero() const;

  friend Octonion operator+(const Octonion& x, const Octonion& y);
  friend Octonion operator-(const Octonion& x, const Octonion& y);
  friend Octonion operator*(const Octonion& x, const Octonion& y);  // table-driven
  Octonion operator-() const;
  friend bool operator==(const Octonion& x, const Octonion& y);
  friend bool operator!=(const Octonion& x, const Octonion& y) { return !(x == y); }

  Octonion scaled(const FieldElement& s) const;

  std::string str() const;
  nlohmann::json to_json() const;
  static Octonion from_json(const nlohmann::json& j);

  static Octonion sample(const AlgebraPtr& alg, SplitMix64& rng, int height = 10);
  static Octonion sample_nonzero(const AlgebraPtr& alg, SplitMix64& rng, int height = 10);

 private:
  AlgebraPtr alg_;
  std::array<FieldElement, 8> c_;
};

Octonion conjugate(const Octonion& x);
FieldElement norm(const Octonion& x);   // N(x) through the precomputed Gram form
FieldElement trace(const Octonion& x);  // T(x) through precomputed coefficients
std::pair<FieldElement, FieldElement> quadratic_data(const Octonion& x);  // (N, T)

/// N and T evaluated literally as x*conj(x) and x+conj(x), checking that the
/// result is a scalar multiple of the unit. Cross-checked against the fast
/// forms by the test suites.
FieldElement norm_by_definition(const Octonion& x);
FieldElement trace_by_definition(const Octonion& x);
FieldElement bilinear(const Octonion& x, const Octonion& y);  // N(x+y)-N(x)-N(y)
Octonion inverse(const Octonion& x);  // conj(x)/N(x); DivisionByZero, NormIsotropic

/// Slow reference product evaluated by recursive doubling, with no use of the
/// precomputed structure-constant table. Differential-testing oracle.
Octonion multiply_reference(const Octonion& x, const Octonion& y);

void require_same_algebra(const Octonion& x, const Octonion& y);

// ---------------------------------------------------------------------------
// Subalgebra frames and the automorphisms eta of types I-IV.
// ---------------------------------------------------------------------------

class SubalgebraFrame {
 public:
  enum class Kind { QuaternionPerp, TotallySingular };

  /// O = D + cD with D a quaternion subalgebra spanned by d_basis, c in the
  /// orthogonal complement, beta = N(c) != 0. Validates closure of D under
  /// multiplication and conjugation and the orthogonality of c.
  static SubalgebraFrame quaternion_perp(const AlgebraPtr& alg,
                                         std::array<Octonion, 4> d_basis, Octonion c);

  /// Characteristic 2: O = D + Dz with D a totally singular 4-dimensional
  /// subfield and T(z) = 1.
  static SubalgebraFrame totally_singular(const AlgebraPtr& alg,
                                          std::array<Octonion, 4> d_basis, Octonion z);

  static SubalgebraFrame default_quaternion(const AlgebraPtr& alg);  // D = <e0..e3>, c = e4
  static SubalgebraFrame default_singular(const AlgebraPtr& alg);    // D = <e0,e2,e4,e6>, z = e1

  Kind kind() const { return kind_; }
  const std::array<Octonion, 4>& d_basis() const { return d_basis_; }
  const Octonion& c() const { return aux_; }  // QuaternionPerp
  const Octonion& z() const { return aux_; }  // TotallySingular
  const FieldElement& beta() const { return beta_; }
  const AlgebraPtr& algebra() const { return alg_; }

  /// x = x1 + c * x2 (QuaternionPerp) or x = x1 + x2 * z (TotallySingular)
  /// with x1, x2 in D; exact linear solve through the precomputed inverse.
  std::pair<Octonion, Octonion> decompose(const Octonion& x) const;
  Octonion recompose(const Octonion& x1, const Octonion& x2) const;

  bool in_d(const Octonion& x) const;

 private:
  SubalgebraFrame() = default;
  Kind kind_;
  AlgebraPtr alg_;
  std::array<Octonion, 4> d_basis_;
  Octonion aux_;
  FieldElement beta_;
  Mat inv_basis_;  // inverse of the 8x8 change-of-basis matrix
};

enum class EtaType { I, II, III, IV };

const char* eta_type_name(EtaType t);

/// The involutive automorphisms driving the four polarity types:
///   I   identity,
///   II  Galois conjugation applied to every coordinate (Q(sqrt2) only),
///   III d + d' -> d - d' for the splitting O = D + D-perp (char != 2),
///   IV  d + d'z -> d + d' conj(z) (char 2).
class Eta {
 public:
  static Eta type_i(const AlgebraPtr& alg);
  static Eta type_ii(const AlgebraPtr& alg);
  static Eta type_iii(SubalgebraFrame frame);
  static Eta type_iv(SubalgebraFrame frame);
  static Eta of_type(EtaType t, const AlgebraPtr& alg);  // with default frames

  EtaType type() const { return type_; }
  const AlgebraPtr& algebra() const { return alg_; }
  const SubalgebraFrame& frame() const;

  Octonion apply(const Octonion& x) const;
  Octonion apply_conj(const Octonion& x) const { return apply(conjugate(x)); }

  /// Field automorphism induced on scalars (Galois for type II, identity
  /// otherwise).
  FieldElement scalar_action(const FieldElement& s) const;

 private:
  Eta() = default;
  EtaType type_;
  AlgebraPtr alg_;
  std::optional<SubalgebraFrame> frame_;
};

}  // namespace octplane

#endif
