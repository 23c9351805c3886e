#ifndef OCTPLANE_HERMITIAN_HPP
#define OCTPLANE_HERMITIAN_HPP

#include <nlohmann/json_fwd.hpp>

#include "octplane/plane.hpp"

namespace octplane {

/// The cubic norm structure H(O_3) of 3x3 twisted-hermitian matrices
/// (alpha1,alpha2,alpha3; a1,a2,a3), its Jordan U-operator, the rank-one
/// model of the plane, the isomorphism phi between the two plane models, and
/// the slot-swap involution driving the type-II polarity of the matrix model.
///
/// Conventions follow the (1,-1,1)-twisted form throughout:
///   N(x) = a1 a2 a3 + a1 N(x1) - a2 N(x2) + a3 N(x3) - T(x1 x2 x3)
///   T(x,y) = sum ai bi - T(x1 conj(y1)) + T(x2 conj(y2)) - T(x3 conj(y3))
///   x#   = (a2 a3 + N(x1), a1 a3 - N(x2), a1 a2 + N(x3);
///           conj(x2 x3) - a1 x1, -conj(x3 x1) - a2 x2, conj(x1 x2) - a3 x3)
/// so that x## = N(x) x, N(x#) = N(x)^2, and phi lands on rank-one elements.
class HermMat {
 public:
  HermMat() = default;

  static HermMat make(std::array<FieldElement, 3> alpha, std::array<Octonion, 3> a);
  static HermMat zero(const AlgebraPtr& alg);
  static HermMat unit(const AlgebraPtr& alg);  // (1,1,1; 0,0,0)
  static HermMat diag(const AlgebraPtr& alg, long d1, long d2, long d3);

  const FieldElement& alpha(int i) const { return alpha_[size_t(i)]; }
  const Octonion& a(int i) const { return a_[size_t(i)]; }
  const AlgebraPtr& algebra() const { return alg_; }
  bool is_zero() const;

  friend HermMat operator+(const HermMat& x, const HermMat& y);
  friend HermMat operator-(const HermMat& x, const HermMat& y);
  HermMat operator-() const;
  HermMat scaled(const FieldElement& s) const;
  friend bool operator==(const HermMat& x, const HermMat& y);
  friend bool operator!=(const HermMat& x, const HermMat& y) { return !(x == y); }

  nlohmann::json to_json() const;
  static HermMat from_json(const nlohmann::json& j);
  std::string str() const;

  static HermMat sample(const AlgebraPtr& alg, SplitMix64& rng, int height = 10);

 private:
  AlgebraPtr alg_;
  std::array<FieldElement, 3> alpha_;
  std::array<Octonion, 3> a_;
};

FieldElement cubic_norm(const HermMat& x);
FieldElement trace_form(const HermMat& x, const HermMat& y);
HermMat sharp(const HermMat& x);
HermMat cross(const HermMat& x, const HermMat& y);  // (x+y)# - x# - y#
HermMat u_operator(const HermMat& x, const HermMat& y);  // T(x,y) x - x# x y
bool is_rank_one(const HermMat& x);

/// Test hook: flips one sign in the adjoint formula so downstream consistency
/// checks must fail with a concrete counterexample.
void set_adjoint_fault(bool enabled);
bool adjoint_fault_enabled();

/// Points and lines of the matrix model: rank-one representatives.
struct RankOnePoint {
  HermMat rep;
  static RankOnePoint of(HermMat x);  // validates x != 0, x# = 0
};
struct RankOneLine {
  HermMat rep;
  static RankOneLine of(HermMat x);
};

bool hat_incident(const RankOnePoint& p, const RankOneLine& line);

RankOnePoint phi_map(const PlanePoint& p);
RankOneLine phi_map(const PlaneLine& line);

/// Entrywise action of eta: the Galois action on the scalar slots and eta on
/// the octonion entries.
HermMat eta_entrywise(const Eta& eta, const HermMat& x);

/// The slot-swap involution adapted to the twisted conventions:
///   tau_j(x) = (e1, -e3, -e2; -conj(c1), conj(c3), -conj(c2)).
/// Its partner tau_j_line is the inverse direction; tau_j_line o tau_j = id.
HermMat tau_j(const HermMat& x);
HermMat tau_j_line(const HermMat& x);

/// The type-II polarity of the matrix model: points x -> [tau_j(eta~(x))],
/// lines y -> (tau_j_line(eta~(y))). Involutive and incidence-reversing.
HermMat hat_psi_point(const Eta& eta, const HermMat& x);
HermMat hat_psi_line(const Eta& eta, const HermMat& y);

/// x = lambda y for some nonzero scalar lambda?
bool proportional(const HermMat& x, const HermMat& y);

}  // namespace octplane

#endif
