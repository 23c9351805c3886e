#ifndef OCTPLANE_PLANE_HPP
#define OCTPLANE_PLANE_HPP

#include <nlohmann/json_fwd.hpp>

#include "octplane/octonion.hpp"

namespace octplane {

/// The coordinate model of the octonion projective plane: points (a,b), (c),
/// (inf); lines [m,k], [l], [inf]; the six incidence clauses; root elements
/// x(A,B,M); the collineations sigma and the conjugating transformation; and
/// the coordinate form of the twisted polarity psi.

class PlanePoint {
 public:
  enum class Kind { Affine, Ideal, Infinity };

  static PlanePoint affine(Octonion a, Octonion b);
  static PlanePoint ideal(Octonion c);
  static PlanePoint at_infinity(const AlgebraPtr& alg);

  Kind kind() const { return kind_; }
  const Octonion& a() const { return a_; }
  const Octonion& b() const { return b_; }
  const Octonion& c() const { return a_; }  // ideal coordinate
  const AlgebraPtr& algebra() const { return alg_; }

  friend bool operator==(const PlanePoint& p, const PlanePoint& q);
  friend bool operator!=(const PlanePoint& p, const PlanePoint& q) { return !(p == q); }

  nlohmann::json to_json() const;
  static PlanePoint from_json(const nlohmann::json& j);
  std::string str() const;

  static PlanePoint sample(const AlgebraPtr& alg, SplitMix64& rng, int height = 10);

 private:
  Kind kind_;
  AlgebraPtr alg_;
  Octonion a_, b_;
};

class PlaneLine {
 public:
  enum class Kind { Affine, Vertical, Infinity };

  static PlaneLine affine(Octonion m, Octonion k);
  static PlaneLine vertical(Octonion l);
  static PlaneLine at_infinity(const AlgebraPtr& alg);

  Kind kind() const { return kind_; }
  const Octonion& m() const { return m_; }
  const Octonion& k() const { return k_; }
  const Octonion& l() const { return m_; }  // vertical coordinate
  const AlgebraPtr& algebra() const { return alg_; }

  friend bool operator==(const PlaneLine& x, const PlaneLine& y);
  friend bool operator!=(const PlaneLine& x, const PlaneLine& y) { return !(x == y); }

  nlohmann::json to_json() const;
  static PlaneLine from_json(const nlohmann::json& j);
  std::string str() const;

  static PlaneLine sample(const AlgebraPtr& alg, SplitMix64& rng, int height = 10);

 private:
  Kind kind_;
  AlgebraPtr alg_;
  Octonion m_, k_;
};

bool incident(const PlanePoint& p, const PlaneLine& line);

/// x(A,B,M), an arbitrary element of the unipotent radical U+ fixing the flag
/// ((inf),[inf]). The displayed action on affine elements is
///   (a,b) -> (a+A, b+B-Ma),   [m,k] -> [m+M, k+B+mA+MA];
/// ideal points, vertical lines and the elements at infinity carry the unique
/// incidence-preserving extension, which the property tests validate.
struct RootElement {
  Octonion A, B, M;
};

PlanePoint root_apply(const RootElement& g, const PlanePoint& p);
PlaneLine root_apply(const RootElement& g, const PlaneLine& line);

/// sigma: (a,b) -> (-a b^-1, b^-1), [m,k] -> [k^-1 m, k^-1]. Partial: anything
/// without the required inverse is OutsideDomain.
PlanePoint sigma_apply(const PlanePoint& p);
PlaneLine sigma_apply(const PlaneLine& line);

/// The type-III variant with eta woven in:
/// (a,b) -> (-eta(a b^-1), eta(b)^-1), [m,k] -> [eta(k^-1 m), eta(k)^-1].
PlanePoint sigma_eta_apply(const Eta& eta, const PlanePoint& p);
PlaneLine sigma_eta_apply(const Eta& eta, const PlaneLine& line);

/// The coordinate transformation conjugating the type-II polarity Psi of the
/// standard form to the twisted polarity psi: T o Psi = psi o T. Total on the
/// whole plane and incidence-preserving.
PlanePoint conjugating_transform(const PlanePoint& p);
PlaneLine conjugating_transform(const PlaneLine& line);
PlanePoint conjugating_transform_inverse(const PlanePoint& p);
PlaneLine conjugating_transform_inverse(const PlaneLine& line);

/// The twisted polarity psi = T o Psi o T^-1 in coordinates (type II eta):
///   (a,b) -> [eta(conj(b))^-1, -eta(conj(a b^-1))]   for b != 0
///   (a,0) -> [-eta(conj(a))]
///   (c)   -> [0, eta(conj(c))^-1] for c != 0,   (0) -> [inf],
///   (inf) -> [0,0]
/// and the matching inverse clauses for lines.
PlaneLine psi_coord_apply(const Eta& eta, const PlanePoint& p);
PlanePoint psi_coord_apply(const Eta& eta, const PlaneLine& line);

}  // namespace octplane

#endif
