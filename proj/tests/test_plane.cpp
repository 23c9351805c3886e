#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "octplane/plane.hpp"

using namespace octplane;

namespace {

AlgebraPtr Q() { return Algebra::for_field(FieldKind::Rationals); }

Octonion oq(long n) { return Octonion::scalar(Q(), FieldElement::from_int(FieldKind::Rationals, n)); }

}  // namespace

TEST_CASE("incidence clauses") {
  auto alg = Q();
  Octonion z = oq(0), one = oq(1), two = oq(2);
  CHECK(incident(PlanePoint::affine(z, z), PlaneLine::affine(z, z)));
  CHECK(incident(PlanePoint::at_infinity(alg), PlaneLine::at_infinity(alg)));
  CHECK(incident(PlanePoint::affine(one, one), PlaneLine::affine(one, two)));
  CHECK_FALSE(incident(PlanePoint::affine(one, one), PlaneLine::affine(z, z)));
  CHECK(incident(PlanePoint::ideal(two), PlaneLine::affine(two, one)));
  CHECK(incident(PlanePoint::ideal(two), PlaneLine::at_infinity(alg)));
  CHECK_FALSE(incident(PlanePoint::ideal(two), PlaneLine::vertical(two)));
  CHECK(incident(PlanePoint::at_infinity(alg), PlaneLine::vertical(two)));
  CHECK_FALSE(incident(PlanePoint::at_infinity(alg), PlaneLine::affine(z, z)));
  CHECK(incident(PlanePoint::affine(two, one), PlaneLine::vertical(two)));
  // oracle: evaluate m*a + b against k on random affine pairs
  SplitMix64 rng(derive_check_seed(42, "incidence"));
  for (int i = 0; i < 200; ++i) {
    Octonion a = Octonion::sample(alg, rng), m = Octonion::sample(alg, rng);
    Octonion k = Octonion::sample(alg, rng);
    bool inc = incident(PlanePoint::affine(a, k - m * a), PlaneLine::affine(m, k));
    CHECK(inc);
  }
}

TEST_CASE("root elements act as displayed and fix the flag at infinity") {
  auto alg = Q();
  SplitMix64 rng(derive_check_seed(42, "roots"));
  Octonion z = oq(0);
  for (int i = 0; i < 50; ++i) {
    RootElement g{Octonion::sample(alg, rng), Octonion::sample(alg, rng),
                  Octonion::sample(alg, rng)};
    // x(A,B,M) maps (0,0) -> (A,B) and [0,0] -> [M, B+MA]
    PlanePoint img = root_apply(g, PlanePoint::affine(z, z));
    CHECK(img == PlanePoint::affine(g.A, g.B));
    PlaneLine limg = root_apply(g, PlaneLine::affine(z, z));
    CHECK(limg == PlaneLine::affine(g.M, g.B + g.M * g.A));
    CHECK(root_apply(g, PlanePoint::at_infinity(alg)) == PlanePoint::at_infinity(alg));
    CHECK(root_apply(g, PlaneLine::at_infinity(alg)) == PlaneLine::at_infinity(alg));
  }
  RootElement id{z, z, z};
  for (int i = 0; i < 50; ++i) {
    PlanePoint p = PlanePoint::sample(alg, rng);
    PlaneLine line = PlaneLine::sample(alg, rng);
    CHECK(root_apply(id, p) == p);
    CHECK(root_apply(id, line) == line);
  }
}

TEST_CASE("root elements preserve incidence across all variants") {
  for (FieldKind k : {FieldKind::Rationals, FieldKind::Char2Function}) {
    auto alg = Algebra::for_field(k);
    const int n = k == FieldKind::Char2Function ? 100 : 500;
    SplitMix64 rng(derive_check_seed(42, std::string("root-incidence-") + field_name(k)));
    for (int i = 0; i < n; ++i) {
      RootElement g{Octonion::sample(alg, rng, 4), Octonion::sample(alg, rng, 4),
                    Octonion::sample(alg, rng, 4)};
      PlanePoint p = PlanePoint::sample(alg, rng, 4);
      PlaneLine line = PlaneLine::sample(alg, rng, 4);
      CHECK(incident(p, line) == incident(root_apply(g, p), root_apply(g, line)));
    }
  }
}

TEST_CASE("root composition agrees with the parameter-extraction oracle") {
  auto alg = Q();
  SplitMix64 rng(derive_check_seed(42, "root-compose"));
  Octonion z = oq(0);
  for (int rep = 0; rep < 20; ++rep) {
    RootElement g{Octonion::sample(alg, rng, 4), Octonion::sample(alg, rng, 4),
                  Octonion::sample(alg, rng, 4)};
    RootElement h{Octonion::sample(alg, rng, 4), Octonion::sample(alg, rng, 4),
                  Octonion::sample(alg, rng, 4)};
    // oracle: read the composite's parameters off probe images
    PlanePoint p0 = root_apply(h, root_apply(g, PlanePoint::affine(z, z)));
    PlaneLine l0 = root_apply(h, root_apply(g, PlaneLine::affine(z, z)));
    RootElement comp{p0.a(), p0.b(), l0.m()};
    for (int i = 0; i < 50; ++i) {
      PlanePoint p = PlanePoint::sample(alg, rng, 4);
      CHECK(root_apply(h, root_apply(g, p)) == root_apply(comp, p));
      PlaneLine line = PlaneLine::sample(alg, rng, 4);
      CHECK(root_apply(h, root_apply(g, line)) == root_apply(comp, line));
    }
  }
}

TEST_CASE("sigma formulas and involution") {
  auto alg = Q();
  Octonion z = oq(0), one = oq(1);
  Octonion b = oq(3);
  CHECK(sigma_apply(PlanePoint::affine(z, b)) == PlanePoint::affine(z, inverse(b)));
  CHECK(sigma_apply(PlaneLine::affine(z, one)) == PlaneLine::affine(z, one));
  CHECK_THROWS_AS(sigma_apply(PlanePoint::affine(one, z)), Error);
  CHECK_THROWS_AS(sigma_apply(PlanePoint::at_infinity(alg)), Error);
  SplitMix64 rng(derive_check_seed(42, "sigma"));
  for (int i = 0; i < 300; ++i) {
    Octonion a = Octonion::sample(alg, rng);
    Octonion bb = Octonion::sample_nonzero(alg, rng);
    PlanePoint p = PlanePoint::affine(a, bb);
    CHECK(sigma_apply(sigma_apply(p)) == p);
    Octonion m = Octonion::sample(alg, rng);
    Octonion kk = Octonion::sample_nonzero(alg, rng);
    PlaneLine line = PlaneLine::affine(m, kk);
    CHECK(sigma_apply(sigma_apply(line)) == line);
  }
}

TEST_CASE("sigma_eta reduces to sigma for the identity automorphism") {
  auto alg = Q();
  Eta id = Eta::of_type(EtaType::I, alg);
  SplitMix64 rng(derive_check_seed(42, "sigma-eta"));
  for (int i = 0; i < 300; ++i) {
    PlanePoint p = PlanePoint::affine(Octonion::sample(alg, rng),
                                      Octonion::sample_nonzero(alg, rng));
    CHECK(sigma_eta_apply(id, p) == sigma_apply(p));
  }
  Eta iii = Eta::of_type(EtaType::III, alg);
  for (int i = 0; i < 300; ++i) {
    PlanePoint p = PlanePoint::affine(Octonion::sample(alg, rng),
                                      Octonion::sample_nonzero(alg, rng));
    CHECK(sigma_eta_apply(iii, sigma_eta_apply(iii, p)) == p);
  }
}

TEST_CASE("conjugating transformation values") {
  auto alg = Q();
  Octonion one = oq(1), two = oq(2);
  Octonion e1 = Octonion::basis(alg, 1);
  CHECK(conjugating_transform(PlanePoint::affine(one, two)) == PlanePoint::affine(two, -one));
  CHECK(conjugating_transform(PlaneLine::at_infinity(alg)) == PlaneLine::at_infinity(alg));
  // (e1) -> (-e1^-1) = (e1)
  CHECK(conjugating_transform(PlanePoint::ideal(e1)) == PlanePoint::ideal(e1));
  CHECK(conjugating_transform(PlanePoint::ideal(oq(0))) == PlanePoint::at_infinity(alg));
  CHECK(conjugating_transform(PlanePoint::at_infinity(alg)) == PlanePoint::ideal(oq(0)));
}

TEST_CASE("conjugating transformation is an incidence-preserving bijection") {
  for (FieldKind k : {FieldKind::Rationals, FieldKind::RealQuadratic}) {
    auto alg = Algebra::for_field(k);
    SplitMix64 rng(derive_check_seed(42, std::string("conjtrans-") + field_name(k)));
    for (int i = 0; i < 500; ++i) {
      PlanePoint p = PlanePoint::sample(alg, rng);
      PlaneLine line = PlaneLine::sample(alg, rng);
      CHECK(incident(p, line) ==
            incident(conjugating_transform(p), conjugating_transform(line)));
      CHECK(conjugating_transform_inverse(conjugating_transform(p)) == p);
      CHECK(conjugating_transform_inverse(conjugating_transform(line)) == line);
      CHECK(conjugating_transform(conjugating_transform_inverse(p)) == p);
      CHECK(conjugating_transform(conjugating_transform_inverse(line)) == line);
    }
  }
}

TEST_CASE("psi coordinate clauses") {
  auto alg = Algebra::for_field(FieldKind::RealQuadratic);
  Eta eta = Eta::of_type(EtaType::II, alg);
  auto fe = [&](long n) { return FieldElement::from_int(FieldKind::RealQuadratic, n); };
  Octonion z = Octonion::zero(alg), one = Octonion::one(alg);
  // (0,0) -> [0]
  CHECK(psi_coord_apply(eta, PlanePoint::affine(z, z)) == PlaneLine::vertical(z));
  // (inf) -> [0,0]
  CHECK(psi_coord_apply(eta, PlanePoint::at_infinity(alg)) == PlaneLine::affine(z, z));
  // (0) -> [inf]
  CHECK(psi_coord_apply(eta, PlanePoint::ideal(z)) == PlaneLine::at_infinity(alg));
  // (0,b) -> [eta(conj b)^-1, 0]
  SplitMix64 rng(derive_check_seed(42, "psi-clauses"));
  for (int i = 0; i < 100; ++i) {
    Octonion b = Octonion::sample_nonzero(alg, rng);
    PlaneLine img = psi_coord_apply(eta, PlanePoint::affine(z, b));
    CHECK(img == PlaneLine::affine(inverse(eta.apply(conjugate(b))), z));
  }
  (void)fe;
}

TEST_CASE("psi is an involution and reverses incidence") {
  auto alg = Algebra::for_field(FieldKind::RealQuadratic);
  Eta eta = Eta::of_type(EtaType::II, alg);
  SplitMix64 rng(derive_check_seed(42, "psi-polarity"));
  for (int i = 0; i < 500; ++i) {
    PlanePoint p = PlanePoint::sample(alg, rng);
    PlaneLine line = PlaneLine::sample(alg, rng);
    CHECK(psi_coord_apply(eta, psi_coord_apply(eta, p)) == p);
    CHECK(psi_coord_apply(eta, psi_coord_apply(eta, line)) == line);
    // polarity reversal: p * L iff psi(L) * psi(p)
    CHECK(incident(p, line) == incident(psi_coord_apply(eta, line), psi_coord_apply(eta, p)));
  }
  CHECK_THROWS_AS(psi_coord_apply(Eta::of_type(EtaType::I, Q()),
                                  PlanePoint::at_infinity(Q())),
                  Error);
}

TEST_CASE("plane element json round trip") {
  for (FieldKind k : {FieldKind::Rationals, FieldKind::Char2Function}) {
    auto alg = Algebra::for_field(k);
    SplitMix64 rng(derive_check_seed(42, std::string("plane-json-") + field_name(k)));
    for (int i = 0; i < 60; ++i) {
      PlanePoint p = PlanePoint::sample(alg, rng);
      CHECK(PlanePoint::from_json(p.to_json()) == p);
      PlaneLine line = PlaneLine::sample(alg, rng);
      CHECK(PlaneLine::from_json(line.to_json()) == line);
    }
  }
}
