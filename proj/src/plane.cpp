#include "octplane/plane.hpp"

#include <nlohmann/json.hpp>

namespace octplane {

using json = nlohmann::json;

PlanePoint PlanePoint::affine(Octonion a, Octonion b) {
  require_same_algebra(a, b);
  PlanePoint p;
  p.kind_ = Kind::Affine;
  p.alg_ = a.algebra();
  p.a_ = std::move(a);
  p.b_ = std::move(b);
  return p;
}

PlanePoint PlanePoint::ideal(Octonion c) {
  PlanePoint p;
  p.kind_ = Kind::Ideal;
  p.alg_ = c.algebra();
  p.a_ = std::move(c);
  p.b_ = Octonion::zero(p.alg_);
  return p;
}

PlanePoint PlanePoint::at_infinity(const AlgebraPtr& alg) {
  PlanePoint p;
  p.kind_ = Kind::Infinity;
  p.alg_ = alg;
  p.a_ = Octonion::zero(alg);
  p.b_ = Octonion::zero(alg);
  return p;
}

bool operator==(const PlanePoint& p, const PlanePoint& q) {
  if (p.kind_ != q.kind_ || p.alg_->field() != q.alg_->field()) return false;
  switch (p.kind_) {
    case PlanePoint::Kind::Affine: return p.a_ == q.a_ && p.b_ == q.b_;
    case PlanePoint::Kind::Ideal: return p.a_ == q.a_;
    case PlanePoint::Kind::Infinity: return true;
  }
  return false;
}

PlaneLine PlaneLine::affine(Octonion m, Octonion k) {
  require_same_algebra(m, k);
  PlaneLine x;
  x.kind_ = Kind::Affine;
  x.alg_ = m.algebra();
  x.m_ = std::move(m);
  x.k_ = std::move(k);
  return x;
}

PlaneLine PlaneLine::vertical(Octonion l) {
  PlaneLine x;
  x.kind_ = Kind::Vertical;
  x.alg_ = l.algebra();
  x.m_ = std::move(l);
  x.k_ = Octonion::zero(x.alg_);
  return x;
}

PlaneLine PlaneLine::at_infinity(const AlgebraPtr& alg) {
  PlaneLine x;
  x.kind_ = Kind::Infinity;
  x.alg_ = alg;
  x.m_ = Octonion::zero(alg);
  x.k_ = Octonion::zero(alg);
  return x;
}

bool operator==(const PlaneLine& x, const PlaneLine& y) {
  if (x.kind_ != y.kind_ || x.alg_->field() != y.alg_->field()) return false;
  switch (x.kind_) {
    case PlaneLine::Kind::Affine: return x.m_ == y.m_ && x.k_ == y.k_;
    case PlaneLine::Kind::Vertical: return x.m_ == y.m_;
    case PlaneLine::Kind::Infinity: return true;
  }
  return false;
}

bool incident(const PlanePoint& p, const PlaneLine& line) {
  if (p.algebra()->field() != line.algebra()->field())
    fail(Err::AlgebraMismatch, "point and line over different algebras");
  switch (p.kind()) {
    case PlanePoint::Kind::Affine:
      switch (line.kind()) {
        case PlaneLine::Kind::Affine: return line.m() * p.a() + p.b() == line.k();
        case PlaneLine::Kind::Vertical: return p.a() == line.l();
        case PlaneLine::Kind::Infinity: return false;
      }
      break;
    case PlanePoint::Kind::Ideal:
      switch (line.kind()) {
        case PlaneLine::Kind::Affine: return p.c() == line.m();
        case PlaneLine::Kind::Vertical: return false;
        case PlaneLine::Kind::Infinity: return true;
      }
      break;
    case PlanePoint::Kind::Infinity:
      return line.kind() != PlaneLine::Kind::Affine;
  }
  fail(Err::Internal, "bad incidence case");
}

// ---------------------------------------------------------------------------
// Root elements
// ---------------------------------------------------------------------------

PlanePoint root_apply(const RootElement& g, const PlanePoint& p) {
  switch (p.kind()) {
    case PlanePoint::Kind::Affine:
      return PlanePoint::affine(p.a() + g.A, p.b() + g.B - g.M * p.a());
    case PlanePoint::Kind::Ideal: return PlanePoint::ideal(p.c() + g.M);
    case PlanePoint::Kind::Infinity: return p;
  }
  fail(Err::Internal, "bad point kind");
}

PlaneLine root_apply(const RootElement& g, const PlaneLine& line) {
  switch (line.kind()) {
    case PlaneLine::Kind::Affine:
      return PlaneLine::affine(line.m() + g.M,
                               line.k() + g.B + line.m() * g.A + g.M * g.A);
    case PlaneLine::Kind::Vertical: return PlaneLine::vertical(line.l() + g.A);
    case PlaneLine::Kind::Infinity: return line;
  }
  fail(Err::Internal, "bad line kind");
}

// ---------------------------------------------------------------------------
// sigma
// ---------------------------------------------------------------------------

PlanePoint sigma_apply(const PlanePoint& p) {
  if (p.kind() != PlanePoint::Kind::Affine || p.b().is_zero())
    fail(Err::OutsideDomain, "sigma needs an affine point with b != 0");
  Octonion bi = inverse(p.b());
  return PlanePoint::affine(-(p.a() * bi), bi);
}

PlaneLine sigma_apply(const PlaneLine& line) {
  if (line.kind() != PlaneLine::Kind::Affine || line.k().is_zero())
    fail(Err::OutsideDomain, "sigma needs an affine line with k != 0");
  Octonion ki = inverse(line.k());
  return PlaneLine::affine(ki * line.m(), ki);
}

PlanePoint sigma_eta_apply(const Eta& eta, const PlanePoint& p) {
  if (p.kind() != PlanePoint::Kind::Affine || p.b().is_zero())
    fail(Err::OutsideDomain, "sigma_eta needs an affine point with b != 0");
  return PlanePoint::affine(-eta.apply(p.a() * inverse(p.b())), inverse(eta.apply(p.b())));
}

PlaneLine sigma_eta_apply(const Eta& eta, const PlaneLine& line) {
  if (line.kind() != PlaneLine::Kind::Affine || line.k().is_zero())
    fail(Err::OutsideDomain, "sigma_eta needs an affine line with k != 0");
  return PlaneLine::affine(eta.apply(inverse(line.k()) * line.m()),
                           inverse(eta.apply(line.k())));
}

// ---------------------------------------------------------------------------
// Conjugating transformation
// ---------------------------------------------------------------------------

PlanePoint conjugating_transform(const PlanePoint& p) {
  const AlgebraPtr& alg = p.algebra();
  switch (p.kind()) {
    case PlanePoint::Kind::Affine: return PlanePoint::affine(p.b(), -p.a());
    case PlanePoint::Kind::Ideal:
      if (p.c().is_zero()) return PlanePoint::at_infinity(alg);
      return PlanePoint::ideal(-inverse(p.c()));
    case PlanePoint::Kind::Infinity: return PlanePoint::ideal(Octonion::zero(alg));
  }
  fail(Err::Internal, "bad point kind");
}

PlaneLine conjugating_transform(const PlaneLine& line) {
  const AlgebraPtr& alg = line.algebra();
  switch (line.kind()) {
    case PlaneLine::Kind::Affine: {
      if (line.m().is_zero()) return PlaneLine::vertical(line.k());
      Octonion mi = inverse(line.m());
      return PlaneLine::affine(-mi, -(mi * line.k()));
    }
    case PlaneLine::Kind::Vertical:
      return PlaneLine::affine(Octonion::zero(alg), -line.l());
    case PlaneLine::Kind::Infinity: return line;
  }
  fail(Err::Internal, "bad line kind");
}

PlanePoint conjugating_transform_inverse(const PlanePoint& p) {
  const AlgebraPtr& alg = p.algebra();
  switch (p.kind()) {
    case PlanePoint::Kind::Affine: return PlanePoint::affine(-p.b(), p.a());
    case PlanePoint::Kind::Ideal:
      if (p.c().is_zero()) return PlanePoint::at_infinity(alg);
      return PlanePoint::ideal(-inverse(p.c()));
    case PlanePoint::Kind::Infinity: return PlanePoint::ideal(Octonion::zero(alg));
  }
  fail(Err::Internal, "bad point kind");
}

PlaneLine conjugating_transform_inverse(const PlaneLine& line) {
  const AlgebraPtr& alg = line.algebra();
  switch (line.kind()) {
    case PlaneLine::Kind::Affine: {
      if (line.m().is_zero()) return PlaneLine::vertical(-line.k());
      Octonion mi = inverse(line.m());
      return PlaneLine::affine(-mi, mi * line.k());
    }
    case PlaneLine::Kind::Vertical:
      return PlaneLine::affine(Octonion::zero(alg), line.l());
    case PlaneLine::Kind::Infinity: return line;
  }
  fail(Err::Internal, "bad line kind");
}

// ---------------------------------------------------------------------------
// psi in coordinates
// ---------------------------------------------------------------------------

namespace {

void require_type_ii(const Eta& eta) {
  if (eta.type() != EtaType::II) fail(Err::WrongType, "psi requires a type II automorphism");
}

Octonion eta_conj(const Eta& eta, const Octonion& x) { return eta.apply(conjugate(x)); }

}  // namespace

PlaneLine psi_coord_apply(const Eta& eta, const PlanePoint& p) {
  require_type_ii(eta);
  const AlgebraPtr& alg = p.algebra();
  switch (p.kind()) {
    case PlanePoint::Kind::Affine: {
      if (p.b().is_zero()) return PlaneLine::vertical(-eta_conj(eta, p.a()));
      return PlaneLine::affine(inverse(eta_conj(eta, p.b())),
                               -eta_conj(eta, p.a() * inverse(p.b())));
    }
    case PlanePoint::Kind::Ideal:
      if (p.c().is_zero()) return PlaneLine::at_infinity(alg);
      return PlaneLine::affine(Octonion::zero(alg), inverse(eta_conj(eta, p.c())));
    case PlanePoint::Kind::Infinity:
      return PlaneLine::affine(Octonion::zero(alg), Octonion::zero(alg));
  }
  fail(Err::Internal, "bad point kind");
}

PlanePoint psi_coord_apply(const Eta& eta, const PlaneLine& line) {
  require_type_ii(eta);
  const AlgebraPtr& alg = line.algebra();
  switch (line.kind()) {
    case PlaneLine::Kind::Affine: {
      if (line.m().is_zero()) {
        if (line.k().is_zero()) return PlanePoint::at_infinity(alg);
        return PlanePoint::ideal(inverse(eta_conj(eta, line.k())));
      }
      // [m,k] -> (-eta(conj(k) conj(m)^-1), eta(conj(m))^-1)
      Octonion mbar = conjugate(line.m());
      return PlanePoint::affine(-eta.apply(conjugate(line.k()) * inverse(mbar)),
                                inverse(eta.apply(mbar)));
    }
    case PlaneLine::Kind::Vertical:
      return PlanePoint::affine(-eta_conj(eta, line.l()), Octonion::zero(alg));
    case PlaneLine::Kind::Infinity: return PlanePoint::ideal(Octonion::zero(alg));
  }
  fail(Err::Internal, "bad line kind");
}

// ---------------------------------------------------------------------------
// Serialization and sampling
// ---------------------------------------------------------------------------

json PlanePoint::to_json() const {
  switch (kind_) {
    case Kind::Affine: return json{{"t", "affine"}, {"a", a_.to_json()}, {"b", b_.to_json()}};
    case Kind::Ideal: return json{{"t", "ideal"}, {"c", a_.to_json()}};
    case Kind::Infinity: return json{{"t", "inf"}, {"alg", field_name(alg_->field())}};
  }
  fail(Err::Internal, "bad point kind");
}

PlanePoint PlanePoint::from_json(const json& j) {
  std::string t = j.at("t").get<std::string>();
  if (t == "affine")
    return affine(Octonion::from_json(j.at("a")), Octonion::from_json(j.at("b")));
  if (t == "ideal") return ideal(Octonion::from_json(j.at("c")));
  if (t == "inf")
    return at_infinity(Algebra::for_field(field_from_name(j.at("alg").get<std::string>())));
  fail(Err::BadInput, "unknown point tag '" + t + "'");
}

std::string PlanePoint::str() const {
  switch (kind_) {
    case Kind::Affine: return "(" + a_.str() + ", " + b_.str() + ")";
    case Kind::Ideal: return "(" + a_.str() + ")";
    case Kind::Infinity: return "(inf)";
  }
  return "?";
}

json PlaneLine::to_json() const {
  switch (kind_) {
    case Kind::Affine: return json{{"t", "affine"}, {"m", m_.to_json()}, {"k", k_.to_json()}};
    case Kind::Vertical: return json{{"t", "vertical"}, {"l", m_.to_json()}};
    case Kind::Infinity: return json{{"t", "inf"}, {"alg", field_name(alg_->field())}};
  }
  fail(Err::Internal, "bad line kind");
}

PlaneLine PlaneLine::from_json(const json& j) {
  std::string t = j.at("t").get<std::string>();
  if (t == "affine")
    return affine(Octonion::from_json(j.at("m")), Octonion::from_json(j.at("k")));
  if (t == "vertical") return vertical(Octonion::from_json(j.at("l")));
  if (t == "inf")
    return at_infinity(Algebra::for_field(field_from_name(j.at("alg").get<std::string>())));
  fail(Err::BadInput, "unknown line tag '" + t + "'");
}

std::string PlaneLine::str() const {
  switch (kind_) {
    case Kind::Affine: return "[" + m_.str() + ", " + k_.str() + "]";
    case Kind::Vertical: return "[" + m_.str() + "]";
    case Kind::Infinity: return "[inf]";
  }
  return "?";
}

PlanePoint PlanePoint::sample(const AlgebraPtr& alg, SplitMix64& rng, int height) {
  uint64_t pick = rng.below(8);
  if (pick < 6)
    return affine(Octonion::sample(alg, rng, height), Octonion::sample(alg, rng, height));
  if (pick == 6) return ideal(Octonion::sample(alg, rng, height));
  return at_infinity(alg);
}

PlaneLine PlaneLine::sample(const AlgebraPtr& alg, SplitMix64& rng, int height) {
  uint64_t pick = rng.below(8);
  if (pick < 6)
    return affine(Octonion::sample(alg, rng, height), Octonion::sample(alg, rng, height));
  if (pick == 6) return vertical(Octonion::sample(alg, rng, height));
  return at_infinity(alg);
}

}  // namespace octplane
