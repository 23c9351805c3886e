#include "octplane/polarity.hpp"

#include "octplane/linalg.hpp"

namespace octplane {

PlaneLine Polarity::apply(const PlanePoint& p) const {
  switch (p.kind()) {
    case PlanePoint::Kind::Affine:
      return PlaneLine::affine(eta_.apply(conjugate(p.a())), -eta_.apply(conjugate(p.b())));
    case PlanePoint::Kind::Ideal: return PlaneLine::vertical(eta_.apply(conjugate(p.c())));
    case PlanePoint::Kind::Infinity: return PlaneLine::at_infinity(p.algebra());
  }
  fail(Err::Internal, "bad point kind");
}

PlanePoint Polarity::apply(const PlaneLine& line) const {
  switch (line.kind()) {
    case PlaneLine::Kind::Affine:
      return PlanePoint::affine(eta_.apply(conjugate(line.m())),
                                -eta_.apply(conjugate(line.k())));
    case PlaneLine::Kind::Vertical: return PlanePoint::ideal(eta_.apply(conjugate(line.l())));
    case PlaneLine::Kind::Infinity: return PlanePoint::at_infinity(line.algebra());
  }
  fail(Err::Internal, "bad line kind");
}

bool is_absolute(const Polarity& psi, const PlanePoint& p) {
  switch (p.kind()) {
    case PlanePoint::Kind::Affine: {
      const Eta& eta = psi.eta();
      Octonion lhs = eta.apply(conjugate(p.a())) * p.a() + eta.apply(conjugate(p.b())) + p.b();
      return lhs.is_zero();
    }
    case PlanePoint::Kind::Ideal: return false;  // (c) never lies on a vertical line
    case PlanePoint::Kind::Infinity: return true;
  }
  fail(Err::Internal, "bad point kind");
}

namespace {

// Matrix of the k-linear map y -> eta(conj y) + y in the construction basis.
Mat eta_conj_plus_id(const Eta& eta) {
  const AlgebraPtr& alg = eta.algebra();
  const FieldKind k = alg->field();
  Mat m(8, Vec(8, FieldElement::zero(k)));
  for (int j = 0; j < 8; ++j) {
    Octonion col = eta.apply(conjugate(Octonion::basis(alg, j))) + Octonion::basis(alg, j);
    for (int i = 0; i < 8; ++i) m[size_t(i)][size_t(j)] = col.coord(i);
  }
  return m;
}

}  // namespace

std::optional<Octonion> absolute_fiber_solve(const Polarity& psi, const Octonion& a) {
  const Eta& eta = psi.eta();
  const AlgebraPtr& alg = psi.algebra();
  Octonion w = eta.apply(conjugate(a)) * a;
  if (alg->characteristic() != 2) {
    FieldElement half = FieldElement::from_int(alg->field(), 2).inverted();
    return -w.scaled(half);
  }
  // characteristic 2: solve eta(conj b) + b = w coordinatewise
  Mat m = eta_conj_plus_id(eta);
  Vec rhs(w.coords().begin(), w.coords().end());
  std::optional<Vec> sol = solve_linear(m, rhs);
  if (!sol) return std::nullopt;
  std::array<FieldElement, 8> coords;
  for (int i = 0; i < 8; ++i) coords[size_t(i)] = (*sol)[size_t(i)];
  return Octonion::from_coords(alg, std::move(coords));
}

std::vector<Octonion> fixed_space(const Eta& eta) {
  if (eta.type() != EtaType::IV)
    fail(Err::WrongType, "fixed_space is defined for type IV automorphisms");
  const AlgebraPtr& alg = eta.algebra();
  std::vector<Vec> kernel = kernel_basis(eta_conj_plus_id(eta));
  std::vector<Octonion> basis;
  basis.reserve(kernel.size());
  for (const Vec& v : kernel) {
    std::array<FieldElement, 8> coords;
    for (int i = 0; i < 8; ++i) coords[size_t(i)] = v[size_t(i)];
    basis.push_back(Octonion::from_coords(alg, std::move(coords)));
  }
  return basis;
}

}  // namespace octplane
