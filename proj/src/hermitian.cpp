#include "octplane/hermitian.hpp"

#include <atomic>

#include <nlohmann/json.hpp>

namespace octplane {

using json = nlohmann::json;

namespace {
std::atomic<bool> g_adjoint_fault{false};
}

void set_adjoint_fault(bool enabled) { g_adjoint_fault.store(enabled); }
bool adjoint_fault_enabled() { return g_adjoint_fault.load(); }

HermMat HermMat::make(std::array<FieldElement, 3> alpha, std::array<Octonion, 3> a) {
  HermMat x;
  x.alg_ = a[0].algebra();
  for (int i = 0; i < 3; ++i) {
    if (alpha[size_t(i)].kind() != x.alg_->field() || a[size_t(i)].field() != x.alg_->field())
      fail(Err::AlgebraMismatch, "hermitian matrix entries over different fields");
  }
  x.alpha_ = std::move(alpha);
  x.a_ = std::move(a);
  return x;
}

HermMat HermMat::zero(const AlgebraPtr& alg) {
  FieldElement z = FieldElement::zero(alg->field());
  Octonion oz = Octonion::zero(alg);
  return make({z, z, z}, {oz, oz, oz});
}

HermMat HermMat::unit(const AlgebraPtr& alg) { return diag(alg, 1, 1, 1); }

HermMat HermMat::diag(const AlgebraPtr& alg, long d1, long d2, long d3) {
  FieldKind k = alg->field();
  Octonion oz = Octonion::zero(alg);
  return make({FieldElement::from_int(k, d1), FieldElement::from_int(k, d2),
               FieldElement::from_int(k, d3)},
              {oz, oz, oz});
}

bool HermMat::is_zero() const {
  for (const auto& al : alpha_)
    if (!al.is_zero()) return false;
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

HermMat operator+(const HermMat& x, const HermMat& y) {
  return HermMat::make({x.alpha_[0] + y.alpha_[0], x.alpha_[1] + y.alpha_[1],
                        x.alpha_[2] + y.alpha_[2]},
                       {x.a_[0] + y.a_[0], x.a_[1] + y.a_[1], x.a_[2] + y.a_[2]});
}

HermMat operator-(const HermMat& x, const HermMat& y) { return x + (-y); }

HermMat HermMat::operator-() const {
  return make({-alpha_[0], -alpha_[1], -alpha_[2]}, {-a_[0], -a_[1], -a_[2]});
}

HermMat HermMat::scaled(const FieldElement& s) const {
  return make({alpha_[0] * s, alpha_[1] * s, alpha_[2] * s},
              {a_[0].scaled(s), a_[1].scaled(s), a_[2].scaled(s)});
}

bool operator==(const HermMat& x, const HermMat& y) {
  return x.alg_->field() == y.alg_->field() && x.alpha_ == y.alpha_ && x.a_ == y.a_;
}

FieldElement cubic_norm(const HermMat& x) {
  return x.alpha(0) * x.alpha(1) * x.alpha(2) + x.alpha(0) * norm(x.a(0)) -
         x.alpha(1) * norm(x.a(1)) + x.alpha(2) * norm(x.a(2)) -
         trace((x.a(0) * x.a(1)) * x.a(2));
}

FieldElement trace_form(const HermMat& x, const HermMat& y) {
  // T(a conj(b)) is the polar form <a,b>.
  return x.alpha(0) * y.alpha(0) + x.alpha(1) * y.alpha(1) + x.alpha(2) * y.alpha(2) -
         bilinear(x.a(0), y.a(0)) + bilinear(x.a(1), y.a(1)) - bilinear(x.a(2), y.a(2));
}

HermMat sharp(const HermMat& x) {
  const FieldElement n1 = norm(x.a(0));
  FieldElement d1 = x.alpha(1) * x.alpha(2) + (g_adjoint_fault.load() ? -n1 : n1);
  FieldElement d2 = x.alpha(0) * x.alpha(2) - norm(x.a(1));
  FieldElement d3 = x.alpha(0) * x.alpha(1) + norm(x.a(2));
  Octonion s1 = conjugate(x.a(1) * x.a(2)) - x.a(0).scaled(x.alpha(0));
  Octonion s2 = -conjugate(x.a(2) * x.a(0)) - x.a(1).scaled(x.alpha(1));
  Octonion s3 = conjugate(x.a(0) * x.a(1)) - x.a(2).scaled(x.alpha(2));
  return HermMat::make({std::move(d1), std::move(d2), std::move(d3)},
                       {std::move(s1), std::move(s2), std::move(s3)});
}

HermMat cross(const HermMat& x, const HermMat& y) { return sharp(x + y) - sharp(x) - sharp(y); }

HermMat u_operator(const HermMat& x, const HermMat& y) {
  return x.scaled(trace_form(x, y)) - cross(sharp(x), y);
}

bool is_rank_one(const HermMat& x) { return !x.is_zero() && sharp(x).is_zero(); }

RankOnePoint RankOnePoint::of(HermMat x) {
  if (!is_rank_one(x)) fail(Err::BadInput, "not a rank-one element");
  return RankOnePoint{std::move(x)};
}

RankOneLine RankOneLine::of(HermMat x) {
  if (!is_rank_one(x)) fail(Err::BadInput, "not a rank-one element");
  return RankOneLine{std::move(x)};
}

bool hat_incident(const RankOnePoint& p, const RankOneLine& line) {
  return trace_form(p.rep, line.rep).is_zero();
}

RankOnePoint phi_map(const PlanePoint& p) {
  const AlgebraPtr& alg = p.algebra();
  const FieldKind k = alg->field();
  FieldElement one = FieldElement::one(k), zero = FieldElement::zero(k);
  Octonion oz = Octonion::zero(alg);
  switch (p.kind()) {
    case PlanePoint::Kind::Affine:
      return RankOnePoint{HermMat::make(
          {norm(p.b()), -norm(p.a()), one},
          {p.a(), conjugate(p.b()), p.b() * conjugate(p.a())})};
    case PlanePoint::Kind::Ideal:
      return RankOnePoint{HermMat::make({norm(p.c()), -one, zero}, {oz, oz, -p.c()})};
    case PlanePoint::Kind::Infinity:
      return RankOnePoint{HermMat::make({one, zero, zero}, {oz, oz, oz})};
  }
  fail(Err::Internal, "bad point kind");
}

RankOneLine phi_map(const PlaneLine& line) {
  const AlgebraPtr& alg = line.algebra();
  const FieldKind k = alg->field();
  FieldElement one = FieldElement::one(k), zero = FieldElement::zero(k);
  Octonion oz = Octonion::zero(alg);
  switch (line.kind()) {
    case PlaneLine::Kind::Affine:
      return RankOneLine{HermMat::make(
          {-one, norm(line.m()), -norm(line.k())},
          {-(conjugate(line.m()) * line.k()), conjugate(line.k()), line.m()})};
    case PlaneLine::Kind::Vertical:
      return RankOneLine{HermMat::make({zero, one, -norm(line.l())}, {-line.l(), oz, oz})};
    case PlaneLine::Kind::Infinity:
      return RankOneLine{HermMat::make({zero, zero, one}, {oz, oz, oz})};
  }
  fail(Err::Internal, "bad line kind");
}

HermMat eta_entrywise(const Eta& eta, const HermMat& x) {
  return HermMat::make({eta.scalar_action(x.alpha(0)), eta.scalar_action(x.alpha(1)),
                        eta.scalar_action(x.alpha(2))},
                       {eta.apply(x.a(0)), eta.apply(x.a(1)), eta.apply(x.a(2))});
}

HermMat tau_j(const HermMat& x) {
  return HermMat::make({x.alpha(0), -x.alpha(2), -x.alpha(1)},
                       {-conjugate(x.a(0)), conjugate(x.a(2)), -conjugate(x.a(1))});
}

HermMat tau_j_line(const HermMat& x) {
  return HermMat::make({x.alpha(0), -x.alpha(2), -x.alpha(1)},
                       {-conjugate(x.a(0)), -conjugate(x.a(2)), conjugate(x.a(1))});
}

HermMat hat_psi_point(const Eta& eta, const HermMat& x) {
  if (eta.type() != EtaType::II) fail(Err::WrongType, "hat psi requires a type II automorphism");
  return tau_j(eta_entrywise(eta, x));
}

HermMat hat_psi_line(const Eta& eta, const HermMat& y) {
  if (eta.type() != EtaType::II) fail(Err::WrongType, "hat psi requires a type II automorphism");
  return tau_j_line(eta_entrywise(eta, y));
}

bool proportional(const HermMat& x, const HermMat& y) {
  if (x.algebra()->field() != y.algebra()->field()) return false;
  if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
  // find lambda from the first slot nonzero in either
  FieldElement lambda = FieldElement::zero(x.algebra()->field());
  bool found = false;
  for (int i = 0; i < 3 && !found; ++i) {
    if (!y.alpha(i).is_zero()) {
      lambda = x.alpha(i) / y.alpha(i);
      found = true;
    } else if (!x.alpha(i).is_zero()) {
      return false;
    }
  }
  for (int i = 0; i < 3 && !found; ++i) {
    for (int c = 0; c < 8 && !found; ++c) {
      if (!y.a(i).coord(c).is_zero()) {
        lambda = x.a(i).coord(c) / y.a(i).coord(c);
        found = true;
      } else if (!x.a(i).coord(c).is_zero()) {
        return false;
      }
    }
  }
  if (!found || lambda.is_zero()) return false;
  return x == y.scaled(lambda);
}

json HermMat::to_json() const {
  json alphas = json::array();
  for (const auto& al : alpha_) alphas.push_back(al.to_json());
  json as = json::array();
  for (const auto& x : a_) as.push_back(x.to_json());
  return json{{"alpha", alphas}, {"a", as}};
}

HermMat HermMat::from_json(const json& j) {
  const json& alphas = j.at("alpha");
  const json& as = j.at("a");
  if (!alphas.is_array() || alphas.size() != 3 || !as.is_array() || as.size() != 3)
    fail(Err::BadInput, "hermitian matrix needs 3 scalars and 3 octonions");
  std::array<Octonion, 3> a = {Octonion::from_json(as[0]), Octonion::from_json(as[1]),
                               Octonion::from_json(as[2])};
  FieldKind k = a[0].field();
  return make({FieldElement::from_json(k, alphas[0]), FieldElement::from_json(k, alphas[1]),
               FieldElement::from_json(k, alphas[2])},
              std::move(a));
}

std::string HermMat::str() const {
  return "(" + alpha_[0].str() + ", " + alpha_[1].str() + ", " + alpha_[2].str() + "; " +
         a_[0].str() + ", " + a_[1].str() + ", " + a_[2].str() + ")";
}

HermMat HermMat::sample(const AlgebraPtr& alg, SplitMix64& rng, int height) {
  FieldKind k = alg->field();
  return make({FieldElement::sample(k, rng, height), FieldElement::sample(k, rng, height),
               FieldElement::sample(k, rng, height)},
              {Octonion::sample(alg, rng, height), Octonion::sample(alg, rng, height),
               Octonion::sample(alg, rng, height)});
}

}  // namespace octplane
