#ifndef OCTPLANE_MOUFANG_HPP
#define OCTPLANE_MOUFANG_HPP

#include <nlohmann/json.hpp>

#include "octplane/polarity.hpp"

namespace octplane {

/// The Moufang-set data derived from the polarities: the root group
/// (U,+) of absolute points with
///   (a,b) + (c,d) = (a+c, b+d - eta(conj c) a),
/// the permutation tau, the hermitian group T with its isomorphism chi onto
/// the type III root group, the explicit group of the standard polarity, the
/// projective model of the type IV case, and the samplable checks.

/// An element (a,b) of U: an affine absolute point.
struct UElem {
  Octonion a, b;

  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  friend bool operator==(const UElem& x, const UElem& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const UElem& x, const UElem& y) { return !(x == y); }
  nlohmann::json to_json() const { return {{"a", a.to_json()}, {"b", b.to_json()}}; }
};

/// X = U with one extra symbol.
struct Carrier {
  bool inf = false;
  UElem u;

  static Carrier infinity() {
    Carrier c;
    c.inf = true;
    return c;
  }
  static Carrier of(UElem x) {
    Carrier c;
    c.u = std::move(x);
    return c;
  }
  friend bool operator==(const Carrier& x, const Carrier& y) {
    if (x.inf != y.inf) return false;
    return x.inf || x.u == y.u;
  }
  nlohmann::json to_json() const {
    return inf ? nlohmann::json{{"inf", true}} : u.to_json();
  }
};

enum class Construction { PolarityI, PolarityII, PolarityIII, PolarityIV, F4, Hermitian,
                          ProjectiveSub };

const char* construction_name(Construction c);

/// Membership, group operation and tau for one construction. Polarity-derived
/// bundles dispatch on the stored eta; the independently coded group of the
/// standard polarity carries no eta at all.
class MoufangBundle {
 public:
  static MoufangBundle from_polarity(Polarity psi);
  static MoufangBundle f4_group(const AlgebraPtr& alg);

  Construction construction() const { return construction_; }
  const AlgebraPtr& algebra() const { return alg_; }
  const Polarity& polarity() const;

  UElem zero_elem() const { return UElem{Octonion::zero(alg_), Octonion::zero(alg_)}; }
  bool contains(const UElem& x) const;

  /// Group operation; throws MembershipViolated if the result fails the
  /// membership equation (which would falsify the implementation).
  UElem add(const UElem& x, const UElem& y) const;
  UElem negate(const UElem& x) const;
  /// tau on U*: (-a b^-1, b^-1), with eta woven in for type III.
  UElem tau(const UElem& x) const;  // ZeroElement on (0,0)

  Carrier tau_ext(const Carrier& c) const;
  Carrier alpha_ext(const Carrier& c, const UElem& u) const;

  UElem sample(SplitMix64& rng, int height = 6) const;

  /// Root collineation of the plane realizing alpha_u, with M recovered from
  /// A (only for polarity-backed and standard-polarity bundles).
  RootElement root_of(const UElem& u) const;

 private:
  MoufangBundle() = default;
  Construction construction_;
  AlgebraPtr alg_;
  std::optional<Polarity> psi_;
  std::vector<Octonion> fixed_basis_;  // type IV sampler
};

/// N(a) + T(b) = 0, the membership condition of the group attached to the
/// standard polarity, coded directly.
bool f4_membership(const Octonion& a, const Octonion& b);

/// x -> -x^-1 on a division algebra; with a subspace basis given, inputs are
/// required to lie in its span.
Octonion projective_tau(const Octonion& x);
Octonion projective_tau(const Octonion& x, const std::vector<Octonion>& subspace_basis);

bool in_span(const std::vector<Octonion>& basis, const Octonion& x);

// ---------------------------------------------------------------------------
// Hermitian group
// ---------------------------------------------------------------------------

/// (a1, a2, t) over the quaternion algebra D with N(a1) + beta N(a2) = T(t).
struct HermElem {
  Octonion a1, a2, t;

  bool is_zero() const { return a1.is_zero() && a2.is_zero() && t.is_zero(); }
  friend bool operator==(const HermElem& x, const HermElem& y) {
    return x.a1 == y.a1 && x.a2 == y.a2 && x.t == y.t;
  }
  friend bool operator!=(const HermElem& x, const HermElem& y) { return !(x == y); }
  nlohmann::json to_json() const {
    return {{"a1", a1.to_json()}, {"a2", a2.to_json()}, {"t", t.to_json()}};
  }
};

class HermitianBundle {
 public:
  explicit HermitianBundle(SubalgebraFrame frame);

  const SubalgebraFrame& frame() const { return frame_; }
  const AlgebraPtr& algebra() const { return frame_.algebra(); }
  const FieldElement& beta() const { return frame_.beta(); }

  bool contains(const HermElem& x) const;
  HermElem identity() const;
  /// (a,t)(b,u) = (a+b, t+u+h(b,a)) with h(b,a) = conj(b1) a1 + beta conj(b2) a2.
  HermElem op(const HermElem& x, const HermElem& y) const;
  HermElem inverse(const HermElem& x) const;
  Octonion h_form(const HermElem& x, const HermElem& y) const;  // h(x, y)
  /// tau(a,t) = (a t^-1, t^-1), the right D-action acting per component.
  HermElem tau(const HermElem& x) const;  // ZeroElement on t = 0

  HermElem sample(SplitMix64& rng, int height = 6) const;

 private:
  SubalgebraFrame frame_;
};

/// chi(a1, a2, t) = ((a1, conj a2), (-t + beta N(a2), -a1 conj(a2))) in the
/// D + cD coordinates of the frame; a group isomorphism onto the type III
/// root group intertwining the two taus.
UElem chi_iso(const HermitianBundle& herm, const HermElem& x);
HermElem chi_iso_inverse(const HermitianBundle& herm, const UElem& x);

// ---------------------------------------------------------------------------
// Samplable checks
// ---------------------------------------------------------------------------

struct CheckReport {
  std::string check;
  std::string type;   // construction the check ran against
  std::string field;
  bool pass = true;
  int samples = 0;
  uint64_t seed = 0;
  nlohmann::json counterexample;

  void record_failure(const nlohmann::json& ce) {
    if (pass) {
      pass = false;
      counterexample = ce;
    }
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"check", check}, {"type", type},   {"field", field},
                     {"samples", samples}, {"seed", seed}, {"pass", pass}};
    if (!pass && !counterexample.is_null()) j["counterexample"] = counterexample;
    return j;
  }
};

/// For sampled ordered pairs (p,q) of distinct members: the witness
/// u = (-p) + q is the unique element with p + u = q; no nonzero element
/// fixes a sampled point; and for polarity-backed bundles the witness's root
/// collineation maps p to q inside the plane.
CheckReport check_sharp_transitivity(const MoufangBundle& bundle, int pairs, uint64_t seed);

/// The conjugated root group U_0 = U_inf^tau: tau alpha_u tau fixes 0, its
/// action evaluated through the carrier equals the action evaluated through
/// the plane collineations (sigma and the root element), and U_0 is sharply
/// transitive on X minus 0 via constructed witnesses.
CheckReport check_root_conjugation(const MoufangBundle& bundle, int samples, uint64_t seed);

}  // namespace octplane

#endif
