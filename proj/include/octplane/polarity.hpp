#ifndef OCTPLANE_POLARITY_HPP
#define OCTPLANE_POLARITY_HPP

#include <optional>

#include "octplane/plane.hpp"

namespace octplane {

/// A polarity of the coordinate plane in the standard form
///   (a,b) <-> [eta(conj a), -eta(conj b)],  (c) <-> [eta(conj c)],
///   (inf) <-> [inf]
/// for one of the four automorphism types. The type decides the family:
/// I the standard polarity, II the twisted one over Q(sqrt2), III the
/// quaternion-splitting one away from characteristic 2, IV the totally
/// singular one in characteristic 2.
class Polarity {
 public:
  explicit Polarity(Eta eta) : eta_(std::move(eta)) {}
  static Polarity of_type(EtaType t, const AlgebraPtr& alg) {
    return Polarity(Eta::of_type(t, alg));
  }

  const Eta& eta() const { return eta_; }
  EtaType type() const { return eta_.type(); }
  const AlgebraPtr& algebra() const { return eta_.algebra(); }

  PlaneLine apply(const PlanePoint& p) const;
  PlanePoint apply(const PlaneLine& line) const;

 private:
  Eta eta_;
};

/// p incident with its own polar line. For affine (a,b) this is the equation
/// eta(conj a) a + eta(conj b) + b = 0; ideal points are never absolute and
/// the point at infinity always is.
bool is_absolute(const Polarity& psi, const PlanePoint& p);

/// Some b with eta(conj a) a + eta(conj b) + b = 0, chosen canonically:
/// b = -(1/2) eta(conj a) a away from characteristic 2, and the particular
/// solution of the 8x8 linear system with free coordinates zero in
/// characteristic 2. nullopt when the system is inconsistent.
std::optional<Octonion> absolute_fiber_solve(const Polarity& psi, const Octonion& a);

/// Basis of ker(y -> eta(conj y) + y) for a type IV automorphism; the
/// 5-dimensional carrier of the projective sub-Moufang set.
std::vector<Octonion> fixed_space(const Eta& eta);

}  // namespace octplane

#endif
