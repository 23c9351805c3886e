#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <set>

#include "octplane/octonion.hpp"

using namespace octplane;

namespace {

AlgebraPtr Q() { return Algebra::for_field(FieldKind::Rationals); }
AlgebraPtr QS() { return Algebra::for_field(FieldKind::RealQuadratic); }
AlgebraPtr F2() { return Algebra::for_field(FieldKind::Char2Function); }

FieldElement fe(long n) { return FieldElement::from_int(FieldKind::Rationals, n); }

int samples_for(FieldKind k, int full) { return k == FieldKind::Char2Function ? 200 : full; }

}  // namespace

TEST_CASE("unit law and basis squares over Q") {
  auto alg = Q();
  Octonion e0 = Octonion::one(alg);
  SplitMix64 rng(derive_check_seed(42, "unit-law"));
  for (int i = 0; i < 50; ++i) {
    Octonion x = Octonion::sample(alg, rng);
    CHECK(e0 * x == x);
    CHECK(x * e0 == x);
  }
  for (int i = 1; i < 8; ++i) {
    Octonion ei = Octonion::basis(alg, i);
    CHECK(ei * ei == -e0);  // T(ei)=0, N(ei)=1
  }
}

TEST_CASE("structure constants from the doubling steps") {
  auto alg = Q();
  auto e = [&](int i) { return Octonion::basis(alg, i); };
  CHECK(e(1) * e(2) == e(3));
  CHECK(e(1) * e(3) == -e(2));
  // differential oracle: the whole 8x8 table against recursive doubling
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(e(i) * e(j) == multiply_reference(e(i), e(j)));
}

TEST_CASE("quadratic data") {
  auto alg = Q();
  auto qd = [&](const Octonion& x) { return quadratic_data(x); };
  CHECK(qd(Octonion::one(alg)) == std::pair{fe(1), fe(2)});
  CHECK(qd(Octonion::basis(alg, 3)) == std::pair{fe(1), fe(0)});
  Octonion x = Octonion::one(alg) + Octonion::basis(alg, 1);
  CHECK(qd(x) == std::pair{fe(2), fe(2)});
}

TEST_CASE("conjugation") {
  auto alg = Q();
  CHECK(conjugate(Octonion::one(alg)) == Octonion::one(alg));
  CHECK(conjugate(Octonion::basis(alg, 5)) == -Octonion::basis(alg, 5));
  Octonion x = Octonion::scalar(alg, fe(2)) + Octonion::basis(alg, 7).scaled(fe(3));
  CHECK(conjugate(x) == Octonion::scalar(alg, fe(2)) - Octonion::basis(alg, 7).scaled(fe(3)));
  SplitMix64 rng(derive_check_seed(42, "conj"));
  for (int i = 0; i < 100; ++i) {
    Octonion a = Octonion::sample(alg, rng), b = Octonion::sample(alg, rng);
    CHECK(conjugate(conjugate(a)) == a);
    CHECK(conjugate(a * b) == conjugate(b) * conjugate(a));
  }
}

TEST_CASE("inverses") {
  auto alg = Q();
  CHECK(inverse(Octonion::one(alg)) == Octonion::one(alg));
  CHECK(inverse(Octonion::basis(alg, 2)) == -Octonion::basis(alg, 2));
  CHECK_THROWS_AS(inverse(Octonion::zero(alg)), Error);
  SplitMix64 rng(derive_check_seed(42, "inv"));
  for (int i = 0; i < 100; ++i) {
    Octonion x = Octonion::sample_nonzero(alg, rng);
    Octonion y = Octonion::sample(alg, rng);
    CHECK(inverse(x) * (x * y) == y);
    CHECK((y * inverse(x)) * x == y);  // inverse property
  }
}

TEST_CASE("composition, alternativity and a Moufang identity") {
  for (FieldKind k : {FieldKind::Rationals, FieldKind::RealQuadratic, FieldKind::Char2Function}) {
    auto alg = Algebra::for_field(k);
    const int n = samples_for(k, 500);
    SplitMix64 rng(derive_check_seed(42, std::string("oct-identities-") + field_name(k)));
    for (int i = 0; i < n; ++i) {
      Octonion x = Octonion::sample(alg, rng, 5);
      Octonion y = Octonion::sample(alg, rng, 5);
      Octonion z = Octonion::sample(alg, rng, 5);
      CHECK(norm(x * y) == norm(x) * norm(y));
      CHECK(x * (x * y) == (x * x) * y);
      CHECK((y * x) * x == y * (x * x));
      CHECK(((x * y) * x) * z == x * (y * (x * z)));
    }
  }
}

TEST_CASE("differential test against the recursive reference product") {
  for (FieldKind k : {FieldKind::Rationals, FieldKind::RealQuadratic, FieldKind::Char2Function}) {
    auto alg = Algebra::for_field(k);
    const int n = samples_for(k, 300);
    SplitMix64 rng(derive_check_seed(42, std::string("diff-") + field_name(k)));
    for (int i = 0; i < n; ++i) {
      Octonion x = Octonion::sample(alg, rng, 5);
      Octonion y = Octonion::sample(alg, rng, 5);
      Octonion a = x * y, b = multiply_reference(x, y);
      CHECK(a == b);
      CHECK(a.to_json().dump() == b.to_json().dump());
    }
  }
}

TEST_CASE("characteristic 2 symplectic data") {
  auto alg = F2();
  auto e = [&](int i) { return Octonion::basis(alg, i); };
  FieldElement t1 = FieldElement::variable(0), t2 = FieldElement::variable(1),
               t3 = FieldElement::variable(2);
  // z = e1 generates the etale algebra: z^2 = z + t1, T(z) = 1
  CHECK(e(1) * e(1) == e(1) + Octonion::scalar(alg, t1));
  CHECK(trace(e(1)) == FieldElement::one(FieldKind::Char2Function));
  CHECK(bilinear(e(0), e(1)) == FieldElement::one(FieldKind::Char2Function));
  // D = <e0,e2,e4,e6> is totally singular
  const int dbasis[4] = {0, 2, 4, 6};
  for (int i : dbasis)
    for (int j : dbasis) CHECK(bilinear(e(i), e(j)).is_zero());
  // the hyperbolic pairs of the symplectic basis
  CHECK(bilinear(e(2), e(3)) == t2);              // <b, ab> = N(b)
  CHECK(bilinear(e(4), e(5)) == t3);              // <c, ac> = N(c)
  CHECK(bilinear(e(6), e(7)) == t2 * t3);         // <bc, (ab)c> = N(b)N(c)
  CHECK(norm(e(2)) == t2);
  CHECK(norm(e(4)) == t3);
  // D is closed under multiplication (a commutative subfield)
  for (int i : dbasis)
    for (int j : dbasis) {
      CHECK(e(i) * e(j) == e(j) * e(i));
    }
}

TEST_CASE("nonzero norms across all fields") {
  // division spot-check: every sampled nonzero element inverts
  for (FieldKind k : {FieldKind::Rationals, FieldKind::RealQuadratic, FieldKind::Char2Function}) {
    auto alg = Algebra::for_field(k);
    SplitMix64 rng(derive_check_seed(42, std::string("division-") + field_name(k)));
    const int n = samples_for(k, 200);
    for (int i = 0; i < n; ++i) {
      Octonion x = Octonion::sample_nonzero(alg, rng, 4);
      CHECK(!norm(x).is_zero());
      Octonion xi = inverse(x);
      CHECK(xi * x == Octonion::one(alg));
    }
  }
}

TEST_CASE("quaternion frame: decompose and recompose") {
  auto alg = Q();
  SubalgebraFrame f = SubalgebraFrame::default_quaternion(alg);
  CHECK(f.beta() == fe(1));
  auto e = [&](int i) { return Octonion::basis(alg, i); };
  auto [a1, a2] = f.decompose(e(0));
  CHECK(a1 == e(0));
  CHECK(a2.is_zero());
  auto [b1, b2] = f.decompose(e(4));
  CHECK(b1.is_zero());
  CHECK(b2 == e(0));  // e4 = c * 1
  auto [c1, c2] = f.decompose(e(5));
  CHECK(c1.is_zero());
  CHECK(c2 == -e(1));  // e5 = c * (-e1): frozen from the 8x8 linear solve
  SplitMix64 rng(derive_check_seed(42, "frame"));
  for (int i = 0; i < 100; ++i) {
    Octonion x = Octonion::sample(alg, rng);
    auto [x1, x2] = f.decompose(x);
    CHECK(f.in_d(x1));
    CHECK(f.in_d(x2));
    CHECK(f.recompose(x1, x2) == x);
  }
}

TEST_CASE("eta automorphisms") {
  SplitMix64 rng(derive_check_seed(42, "eta"));

  SUBCASE("type I is the identity") {
    Eta eta = Eta::of_type(EtaType::I, Q());
    Octonion x = Octonion::sample(Q(), rng);
    CHECK(eta.apply(x) == x);
  }

  SUBCASE("type II conjugates coefficients") {
    auto alg = QS();
    Eta eta = Eta::of_type(EtaType::II, alg);
    Octonion x = Octonion::basis(alg, 1).scaled(FieldElement::sqrt2());
    CHECK(eta.apply(x) == -x);
    for (int i = 0; i < 200; ++i) {
      Octonion a = Octonion::sample(alg, rng), b = Octonion::sample(alg, rng);
      CHECK(eta.apply(eta.apply(a)) == a);
      CHECK(eta.apply(a * b) == eta.apply(a) * eta.apply(b));
    }
  }

  SUBCASE("type III fixes D and negates the complement") {
    auto alg = Q();
    Eta eta = Eta::of_type(EtaType::III, alg);
    auto e = [&](int i) { return Octonion::basis(alg, i); };
    CHECK(eta.apply(e(2) + e(5)) == e(2) - e(5));
    for (int i = 0; i < 4; ++i) CHECK(eta.apply(e(i)) == e(i));
    for (int i = 4; i < 8; ++i) CHECK(eta.apply(e(i)) == -e(i));
    for (int i = 0; i < 200; ++i) {
      Octonion a = Octonion::sample(alg, rng), b = Octonion::sample(alg, rng);
      CHECK(eta.apply(eta.apply(a)) == a);
      CHECK(eta.apply(a * b) == eta.apply(a) * eta.apply(b));
    }
  }

  SUBCASE("type IV fixes D and swaps z with z+1") {
    auto alg = F2();
    Eta eta = Eta::of_type(EtaType::IV, alg);
    auto e = [&](int i) { return Octonion::basis(alg, i); };
    for (int i : {0, 2, 4, 6}) CHECK(eta.apply(e(i)) == e(i));
    Octonion z = e(1);
    CHECK(eta.apply(z) == z + Octonion::one(alg));
    CHECK(eta.apply(z + Octonion::one(alg)) == z);
    for (int i = 0; i < 100; ++i) {
      Octonion a = Octonion::sample(alg, rng, 3), b = Octonion::sample(alg, rng, 3);
      CHECK(eta.apply(eta.apply(a)) == a);
      CHECK(eta.apply(a * b) == eta.apply(a) * eta.apply(b));
    }
  }
}

TEST_CASE("octonion json round trip and algebra mismatch") {
  SplitMix64 rng(derive_check_seed(42, "oct-json"));
  for (FieldKind k : {FieldKind::Rationals, FieldKind::RealQuadratic, FieldKind::Char2Function}) {
    auto alg = Algebra::for_field(k);
    Octonion x = Octonion::sample(alg, rng);
    CHECK(Octonion::from_json(x.to_json()) == x);
  }
  CHECK_THROWS_AS(Octonion::one(Q()) * Octonion::one(F2()), Error);
}

TEST_CASE("structure table CSV") {
  std::string csv = Q()->table_csv();
  // e0 row is the identity row; e1*e1 = -e0; e1*e2 = e3
  CHECK(csv.find("e0,1,2,3,4,5,6,7,8") != std::string::npos);
  CHECK(csv.find("e1,2,-1,4,-3") != std::string::npos);
  std::string csv2 = F2()->table_csv();
  CHECK(csv2.find("*e") != std::string::npos);  // char-2 entries carry coefficients
}
