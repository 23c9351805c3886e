#include "octplane/verify.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace octplane {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Config and report plumbing
// ---------------------------------------------------------------------------

namespace {

bool type_fits_field(EtaType t, FieldKind f) {
  switch (t) {
    case EtaType::I: return true;
    case EtaType::II: return f == FieldKind::RealQuadratic;
    case EtaType::III: return characteristic(f) != 2;
    case EtaType::IV: return characteristic(f) == 2;
  }
  return false;
}

std::string type_requirement(EtaType t) {
  switch (t) {
    case EtaType::I: return "";
    case EtaType::II: return "type ii needs the field qsqrt2";
    case EtaType::III: return "type iii needs characteristic != 2";
    case EtaType::IV: return "type iv needs characteristic 2";
  }
  return "";
}

EtaType type_from_name(const std::string& s) {
  if (s == "i") return EtaType::I;
  if (s == "ii") return EtaType::II;
  if (s == "iii") return EtaType::III;
  if (s == "iv") return EtaType::IV;
  fail(Err::ConfigError, "unknown polarity type '" + s + "' (expected i | ii | iii | iv | all)");
}

int capped(FieldKind f, int n, int cap2 = 200) {
  return f == FieldKind::Char2Function ? std::min(n, cap2) : n;
}

}  // namespace

RunConfig RunConfig::make(const std::string& field, const std::string& polarity, int samples,
                          uint64_t seed, const std::vector<std::string>& checks, int jobs) {
  RunConfig c;
  c.field = field_from_name(field);
  if (samples <= 0) fail(Err::ConfigError, "samples must be positive");
  if (jobs <= 0) fail(Err::ConfigError, "jobs must be positive");
  c.samples = samples;
  c.seed = seed;
  c.jobs = jobs;
  c.checks = checks;
  if (polarity == "all") {
    for (EtaType t : {EtaType::I, EtaType::II, EtaType::III, EtaType::IV}) {
      if (type_fits_field(t, c.field))
        c.types.push_back(t);
      else
        c.skipped_types.push_back(std::string(eta_type_name(t)) + ": " + type_requirement(t));
    }
  } else {
    EtaType t = type_from_name(polarity);
    if (!type_fits_field(t, c.field)) fail(Err::ConfigError, type_requirement(t));
    c.types.push_back(t);
  }
  const std::vector<std::string> names = check_names();
  const std::set<std::string> known(names.begin(), names.end());
  for (const std::string& name : checks)
    if (!known.count(name)) fail(Err::ConfigError, "unknown check '" + name + "'");
  return c;
}

json RunConfig::to_json() const {
  json tnames = json::array();
  for (EtaType t : types) tnames.push_back(eta_type_name(t));
  json j{{"field", field_name(field)}, {"polarity", tnames},   {"samples", samples},
         {"seed", seed},               {"jobs", jobs},         {"fault_adjoint", fault_adjoint}};
  j["checks"] = checks.empty() ? json::array({"all"}) : json(checks);
  return j;
}

json CheckResult::to_json() const {
  json j{{"check", check}, {"pass", pass}, {"samples", samples}, {"seed", seed}};
  if (!field.empty()) j["field"] = field;
  if (!type.empty()) j["type"] = type;
  if (skipped) {
    j["skipped"] = true;
    j["reason"] = skip_reason;
  }
  if (!pass && !counterexample.is_null()) j["counterexample"] = counterexample;
  return j;
}

std::vector<std::string> check_names() {
  return {"field-axioms",   "octonion",  "structure-constants", "eta",
          "plane-roots",    "sigma",     "phi",                 "cubic-norm",
          "polarity",       "moufang",   "f4-equivalence",      "hermitian-equivalence",
          "conjugation",    "projective-subspace"};
}

// ---------------------------------------------------------------------------
// Check implementations
// ---------------------------------------------------------------------------

namespace {

struct Ctx {
  const RunConfig& cfg;
  AlgebraPtr alg;
  uint64_t check_seed;

  SplitMix64 rng_for(uint64_t i) const { return SplitMix64(derive_sample_seed(check_seed, i)); }
};

PlanePoint point_of_kind(const AlgebraPtr& alg, int kind, SplitMix64& rng, int h = 10) {
  switch (kind % 3) {
    case 0: return PlanePoint::affine(Octonion::sample(alg, rng, h), Octonion::sample(alg, rng, h));
    case 1: return PlanePoint::ideal(Octonion::sample(alg, rng, h));
    default: return PlanePoint::at_infinity(alg);
  }
}

PlaneLine line_of_kind(const AlgebraPtr& alg, int kind, SplitMix64& rng, int h = 10) {
  switch (kind % 3) {
    case 0: return PlaneLine::affine(Octonion::sample(alg, rng, h), Octonion::sample(alg, rng, h));
    case 1: return PlaneLine::vertical(Octonion::sample(alg, rng, h));
    default: return PlaneLine::at_infinity(alg);
  }
}

CheckResult check_field_axioms(const Ctx& c) {
  CheckResult r;
  r.check = "field-axioms";
  r.seed = c.check_seed;
  const FieldKind k = c.cfg.field;
  const int n = capped(k, c.cfg.samples);
  r.samples = n;
  FieldElement one = FieldElement::one(k);
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    FieldElement x = FieldElement::sample(k, rng);
    FieldElement y = FieldElement::sample(k, rng);
    FieldElement z = FieldElement::sample(k, rng);
    bool ok = (x + y) + z == x + (y + z) && (x * y) * z == x * (y * z) &&
              x * (y + z) == x * y + x * z && x * y == y * x && x + y == y + x &&
              (x + (-x)).is_zero() && x.recanonicalized() == x;
    if (ok && !x.is_zero()) ok = x * x.inverted() == one;
    if (ok && k == FieldKind::RealQuadratic) {
      ok = x.galois_conjugate().galois_conjugate() == x &&
           (x * y).galois_conjugate() == x.galois_conjugate() * y.galois_conjugate();
    }
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i}, {"x", x.to_json()}, {"y", y.to_json()},
                          {"z", z.to_json()}};
    }
  }
  return r;
}

CheckResult check_octonion(const Ctx& c) {
  CheckResult r;
  r.check = "octonion";
  r.seed = c.check_seed;
  const int n = capped(c.cfg.field, c.cfg.samples);
  r.samples = n;
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    Octonion x = Octonion::sample(c.alg, rng);
    Octonion y = Octonion::sample(c.alg, rng);
    Octonion z = Octonion::sample(c.alg, rng);
    Octonion xx = x * x;
    Octonion xy = x * y;
    bool ok = norm(xy) == norm(x) * norm(y) && x * xy == xx * y && (y * x) * x == y * xx &&
              (xy * x) * z == x * (y * (x * z)) && norm_by_definition(x) == norm(x) &&
              trace_by_definition(x) == trace(x) &&
              conjugate(xy) == conjugate(y) * conjugate(x);
    if (ok && !y.is_zero()) ok = (x * inverse(y)) * y == x && inverse(y) * (y * x) == x;
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i}, {"x", x.to_json()}, {"y", y.to_json()},
                          {"z", z.to_json()}};
    }
  }
  return r;
}

CheckResult check_structure_constants(const Ctx& c) {
  CheckResult r;
  r.check = "structure-constants";
  r.seed = c.check_seed;
  const int n = capped(c.cfg.field, c.cfg.samples);
  r.samples = n;
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    Octonion x = Octonion::sample(c.alg, rng);
    Octonion y = Octonion::sample(c.alg, rng);
    Octonion fast = x * y;
    Octonion slow = multiply_reference(x, y);
    if (fast.to_json().dump() != slow.to_json().dump()) {
      r.pass = false;
      r.counterexample = {{"sample", i},
                          {"x", x.to_json()},
                          {"y", y.to_json()},
                          {"table", fast.to_json()},
                          {"reference", slow.to_json()}};
    }
  }
  return r;
}

CheckResult check_eta(const Ctx& c, EtaType t) {
  CheckResult r;
  r.check = std::string("eta-") + eta_type_name(t);
  r.seed = c.check_seed;
  const int n = capped(c.cfg.field, c.cfg.samples);
  r.samples = n;
  Eta eta = Eta::of_type(t, c.alg);
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    Octonion x = Octonion::sample(c.alg, rng);
    Octonion y = Octonion::sample(c.alg, rng);
    bool ok = eta.apply(eta.apply(x)) == x && eta.apply(x * y) == eta.apply(x) * eta.apply(y);
    if (ok && t == EtaType::III) {
      const SubalgebraFrame& f = eta.frame();
      auto [x1, x2] = f.decompose(x);
      Octonion perp = f.recompose(Octonion::zero(c.alg), x2);
      ok = eta.apply(x1) == x1 && eta.apply(perp) == -perp;
    }
    if (ok && t == EtaType::IV) {
      const SubalgebraFrame& f = eta.frame();
      auto [x1, x2] = f.decompose(x);
      Octonion one = Octonion::one(c.alg);
      ok = eta.apply(x1) == x1 && eta.apply(f.z()) == f.z() + one &&
           eta.apply(f.z() + one) == f.z();
      (void)x2;
    }
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i}, {"x", x.to_json()}, {"y", y.to_json()}};
    }
  }
  return r;
}

CheckResult check_plane_roots(const Ctx& c) {
  CheckResult r;
  r.check = "plane-roots";
  r.seed = c.check_seed;
  const int n = capped(c.cfg.field, c.cfg.samples);
  r.samples = n;
  Octonion z = Octonion::zero(c.alg);
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    RootElement g{Octonion::sample(c.alg, rng), Octonion::sample(c.alg, rng),
                  Octonion::sample(c.alg, rng)};
    PlanePoint p = point_of_kind(c.alg, i, rng);
    PlaneLine line = line_of_kind(c.alg, i / 3, rng);
    bool ok = incident(p, line) == incident(root_apply(g, p), root_apply(g, line));
    if (ok) {
      // the composite acts like the element read off probe images
      RootElement h{Octonion::sample(c.alg, rng), Octonion::sample(c.alg, rng),
                    Octonion::sample(c.alg, rng)};
      PlanePoint p0 = root_apply(h, root_apply(g, PlanePoint::affine(z, z)));
      PlaneLine l0 = root_apply(h, root_apply(g, PlaneLine::affine(z, z)));
      RootElement comp{p0.a(), p0.b(), l0.m()};
      ok = root_apply(h, root_apply(g, p)) == root_apply(comp, p) &&
           root_apply(h, root_apply(g, line)) == root_apply(comp, line);
    }
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i}, {"p", p.to_json()}, {"line", line.to_json()}};
    }
  }
  return r;
}

CheckResult check_sigma(const Ctx& c, EtaType t) {
  CheckResult r;
  r.check = std::string("sigma-") + eta_type_name(t);
  r.seed = c.check_seed;
  const int n = capped(c.cfg.field, c.cfg.samples);
  r.samples = n;
  Polarity psi = Polarity::of_type(t, c.alg);
  const bool dressed = t == EtaType::III;
  auto sig_p = [&](const PlanePoint& p) {
    return dressed ? sigma_eta_apply(psi.eta(), p) : sigma_apply(p);
  };
  auto sig_l = [&](const PlaneLine& l) {
    return dressed ? sigma_eta_apply(psi.eta(), l) : sigma_apply(l);
  };
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    PlanePoint p = PlanePoint::affine(Octonion::sample(c.alg, rng),
                                      Octonion::sample_nonzero(c.alg, rng));
    PlaneLine line = PlaneLine::affine(Octonion::sample(c.alg, rng),
                                       Octonion::sample_nonzero(c.alg, rng));
    bool ok = sig_p(sig_p(p)) == p && sig_l(sig_l(line)) == line &&
              psi.apply(sig_p(p)) == sig_l(psi.apply(p)) &&
              psi.apply(sig_l(line)) == sig_p(psi.apply(line));
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i}, {"p", p.to_json()}, {"line", line.to_json()}};
    }
  }
  return r;
}

CheckResult check_phi(const Ctx& c) {
  CheckResult r;
  r.check = "phi";
  r.seed = c.check_seed;
  const int n = capped(c.cfg.field, c.cfg.samples);
  r.samples = n;
  std::set<std::string> seen_points, seen_images;
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    PlanePoint p = point_of_kind(c.alg, i, rng);  // walks through all 3x3 variant pairs
    PlaneLine line = line_of_kind(c.alg, i / 3, rng);
    RankOnePoint hp{phi_map(p)};
    RankOneLine hl{phi_map(line)};
    bool ok = is_rank_one(hp.rep) && is_rank_one(hl.rep) &&
              incident(p, line) == hat_incident(hp, hl);
    if (ok && seen_points.insert(p.to_json().dump()).second)
      ok = seen_images.insert(hp.rep.to_json().dump()).second;  // injectivity
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i},
                          {"p", p.to_json()},
                          {"line", line.to_json()},
                          {"phi-p", hp.rep.to_json()}};
    }
  }
  return r;
}

CheckResult check_cubic_norm(const Ctx& c) {
  CheckResult r;
  r.check = "cubic-norm";
  r.seed = c.check_seed;
  const int n = capped(c.cfg.field, c.cfg.samples, 20);
  r.samples = n;
  // The nested U-operators square entry degrees twice; the function field
  // runs them on degree <= 1 entries with unit denominators to stay
  // tractable, the characteristic-0 fields at full sampling density.
  const bool char2 = c.cfg.field == FieldKind::Char2Function;
  auto sparse_herm = [&](SplitMix64& rng) {
    if (!char2) return HermMat::sample(c.alg, rng, 5);
    auto fe = [&rng] {
      switch (rng.below(5)) {
        case 0: return FieldElement::zero(FieldKind::Char2Function);
        case 1: return FieldElement::one(FieldKind::Char2Function);
        default: return FieldElement::variable(int(rng.below(3)));
      }
    };
    auto oc = [&] {
      std::array<FieldElement, 8> coords;
      for (int k = 0; k < 8; ++k) coords[size_t(k)] = fe();
      return Octonion::from_coords(c.alg, std::move(coords));
    };
    return HermMat::make({fe(), fe(), fe()}, {oc(), oc(), oc()});
  };
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    HermMat x = HermMat::sample(c.alg, rng, 5);
    HermMat xs = sharp(x);
    bool ok = sharp(xs) == x.scaled(cubic_norm(x)) &&
              cubic_norm(xs) == cubic_norm(x) * cubic_norm(x);
    if (ok) {
      HermMat xf = sparse_herm(rng);
      HermMat y = sparse_herm(rng);
      HermMat z = sparse_herm(rng);
      ok = u_operator(u_operator(xf, y), z) ==
           u_operator(xf, u_operator(y, u_operator(xf, z)));
      if (!ok) x = xf;
    }
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i}, {"x", x.to_json()}};
    }
  }
  return r;
}

CheckResult check_polarity(const Ctx& c, EtaType t) {
  CheckResult r;
  r.check = std::string("polarity-") + eta_type_name(t);
  r.seed = c.check_seed;
  const int n = capped(c.cfg.field, c.cfg.samples);
  r.samples = n;
  Polarity psi = Polarity::of_type(t, c.alg);
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    PlanePoint p = point_of_kind(c.alg, i, rng);
    PlaneLine line = line_of_kind(c.alg, i / 3, rng);
    PlaneLine pp = psi.apply(p);
    bool ok = psi.apply(pp) == p && psi.apply(psi.apply(line)) == line &&
              incident(p, line) == incident(psi.apply(line), pp) &&
              is_absolute(psi, p) == incident(p, pp);
    // both plane models agree that the polar image is a plane element
    if (ok) ok = is_rank_one(phi_map(pp).rep);
    if (ok && t == EtaType::I && p.kind() == PlanePoint::Kind::Affine)
      ok = is_absolute(psi, p) == (norm(p.a()) + trace(p.b())).is_zero();
    if (ok && t == EtaType::IV && p.kind() == PlanePoint::Kind::Affine && is_absolute(psi, p))
      ok = p.a().is_zero() && (psi.eta().apply(conjugate(p.b())) + p.b()).is_zero();
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i}, {"p", p.to_json()}, {"line", line.to_json()}};
    }
  }
  return r;
}

CheckResult check_moufang(const Ctx& c, EtaType t) {
  CheckResult r;
  r.check = std::string("moufang-") + eta_type_name(t);
  r.seed = c.check_seed;
  const int n = capped(c.cfg.field, c.cfg.samples);
  r.samples = n;
  MoufangBundle b = MoufangBundle::from_polarity(Polarity::of_type(t, c.alg));
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    UElem x = b.sample(rng), y = b.sample(rng), z = b.sample(rng);
    bool ok = b.contains(x) && b.add(b.add(x, y), z) == b.add(x, b.add(y, z)) &&
              b.add(x, b.negate(x)) == b.zero_elem() && b.contains(b.negate(x));
    if (ok && x.b.is_zero()) ok = x.a.is_zero();
    if (ok && !x.is_zero()) ok = b.tau(b.tau(x)) == x;  // tau() rechecks membership
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i}, {"x", x.to_json()}, {"y", y.to_json()},
                          {"z", z.to_json()}};
      break;
    }
  }
  if (r.pass) {
    CheckReport st = check_sharp_transitivity(b, std::max(1, n / 2), c.check_seed);
    if (!st.pass) {
      r.pass = false;
      r.counterexample = {{"stage", "sharp-transitivity"}, {"detail", st.counterexample}};
    }
  }
  if (r.pass) {
    CheckReport rc = check_root_conjugation(b, std::max(1, n / 5), c.check_seed);
    if (!rc.pass) {
      r.pass = false;
      r.counterexample = {{"stage", "root-conjugation"}, {"detail", rc.counterexample}};
    }
  }
  return r;
}

CheckResult check_f4_equivalence(const Ctx& c) {
  CheckResult r;
  r.check = "f4-equivalence";
  r.seed = c.check_seed;
  const int n = c.cfg.samples;
  r.samples = n;
  if (c.alg->characteristic() == 2) {
    r.skipped = true;
    r.skip_reason = "needs characteristic 0";
    return r;
  }
  MoufangBundle f4 = MoufangBundle::f4_group(c.alg);
  MoufangBundle p1 = MoufangBundle::from_polarity(Polarity::of_type(EtaType::I, c.alg));
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    UElem x = p1.sample(rng), y = p1.sample(rng);
    Octonion a = Octonion::sample(c.alg, rng), bb = Octonion::sample(c.alg, rng);
    bool ok = f4.contains(x) && f4_membership(x.a, x.b) &&
              f4.contains(UElem{a, bb}) == p1.contains(UElem{a, bb}) &&
              f4.add(x, y) == p1.add(x, y);
    if (ok && !x.is_zero()) ok = f4.tau(x) == p1.tau(x);
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i}, {"x", x.to_json()}, {"y", y.to_json()}};
    }
  }
  return r;
}

CheckResult check_hermitian_equivalence(const Ctx& c) {
  CheckResult r;
  r.check = "hermitian-equivalence";
  r.seed = c.check_seed;
  const int n = c.cfg.samples;
  r.samples = n;
  HermitianBundle herm(SubalgebraFrame::default_quaternion(c.alg));
  MoufangBundle b3 = MoufangBundle::from_polarity(Polarity::of_type(EtaType::III, c.alg));
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    HermElem x = herm.sample(rng), y = herm.sample(rng);
    UElem cx = chi_iso(herm, x), cy = chi_iso(herm, y);
    bool ok = b3.contains(cx) && chi_iso_inverse(herm, cx) == x &&
              chi_iso(herm, herm.op(x, y)) == b3.add(cx, cy);
    if (ok && !x.t.is_zero()) {
      ok = chi_iso(herm, herm.tau(x)) == b3.tau(cx);
      if (ok) {
        FieldElement lhs =
            norm(-x.t + Octonion::scalar(c.alg, herm.beta() * norm(x.a2))) +
            herm.beta() * norm(-(x.a1 * conjugate(x.a2)));
        ok = lhs == norm(x.t);
      }
    }
    if (ok) {
      UElem u = b3.sample(rng);
      HermElem back = chi_iso_inverse(herm, u);
      ok = herm.contains(back) && chi_iso(herm, back) == u;  // surjective
    }
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i}, {"x", x.to_json()}, {"y", y.to_json()}};
    }
  }
  return r;
}

CheckResult check_conjugation(const Ctx& c) {
  CheckResult r;
  r.check = "conjugation";
  r.seed = c.check_seed;
  const int n = c.cfg.samples;
  r.samples = n;
  Polarity psi_std = Polarity::of_type(EtaType::II, c.alg);
  const Eta& eta = psi_std.eta();
  MoufangBundle b2 = MoufangBundle::from_polarity(psi_std);
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    PlanePoint p = point_of_kind(c.alg, i, rng);
    PlaneLine line = line_of_kind(c.alg, i / 3, rng);
    // T o Psi = psi o T on points and lines
    bool ok = conjugating_transform(psi_std.apply(p)) ==
                  psi_coord_apply(eta, conjugating_transform(p)) &&
              conjugating_transform(psi_std.apply(line)) ==
                  psi_coord_apply(eta, conjugating_transform(line));
    // psi is an involutive polarity in its own right
    if (ok)
      ok = psi_coord_apply(eta, psi_coord_apply(eta, p)) == p &&
           incident(p, line) ==
               incident(psi_coord_apply(eta, line), psi_coord_apply(eta, p));
    // absoluteness transports through T in both directions
    if (ok) {
      PlanePoint tp = conjugating_transform(p);
      ok = is_absolute(psi_std, p) == incident(tp, psi_coord_apply(eta, tp));
    }
    // carrier elements land on psi-absolute points, reversibly
    if (ok) {
      UElem u = b2.sample(rng);
      PlanePoint pu = PlanePoint::affine(u.a, u.b);
      PlanePoint tu = conjugating_transform(pu);
      ok = is_absolute(psi_std, pu) && incident(tu, psi_coord_apply(eta, tu)) &&
           conjugating_transform_inverse(tu) == pu;
    }
    // the matrix-model polarity matches the coordinate list through phi
    if (ok) {
      ok = proportional(hat_psi_point(eta, phi_map(p).rep),
                        phi_map(psi_coord_apply(eta, p)).rep) &&
           proportional(hat_psi_line(eta, phi_map(line).rep),
                        phi_map(psi_coord_apply(eta, line)).rep);
    }
    // and it reverses hat-incidence with an exact involution
    if (ok) {
      HermMat hp = phi_map(p).rep, hl = phi_map(line).rep;
      ok = hat_psi_line(eta, hat_psi_point(eta, hp)) == hp &&
           trace_form(hp, hl).is_zero() ==
               trace_form(hat_psi_line(eta, hl), hat_psi_point(eta, hp)).is_zero();
    }
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i}, {"p", p.to_json()}, {"line", line.to_json()}};
    }
  }
  return r;
}

CheckResult check_projective_subspace(const Ctx& c) {
  CheckResult r;
  r.check = "projective-subspace";
  r.seed = c.check_seed;
  const int n = capped(c.cfg.field, c.cfg.samples);
  r.samples = n;
  Polarity psi = Polarity::of_type(EtaType::IV, c.alg);
  std::vector<Octonion> basis = fixed_space(psi.eta());
  if (basis.size() != 5) {
    r.pass = false;
    r.counterexample = {{"fixed-space-dimension", basis.size()}};
    return r;
  }
  MoufangBundle b = MoufangBundle::from_polarity(psi);
  for (int i = 0; i < n && r.pass; ++i) {
    SplitMix64 rng = c.rng_for(uint64_t(i));
    UElem x = b.sample(rng), y = b.sample(rng);
    bool ok = x.a.is_zero() && in_span(basis, x.b) && b.add(x, y) == b.add(y, x);
    if (ok && !x.is_zero())
      ok = in_span(basis, inverse(x.b)) && b.tau(x).b == projective_tau(x.b, basis);
    // the fiber over nonzero a is empty: every absolute point lies on [0]
    if (ok) {
      Octonion a = Octonion::sample_nonzero(c.alg, rng, 3);
      ok = !absolute_fiber_solve(psi, a).has_value();
    }
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"sample", i}, {"x", x.to_json()}, {"y", y.to_json()}};
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

struct Instance {
  std::string name;  // report name, possibly with a type suffix
  std::string base;  // name used for --checks selection
  std::string type;  // polarity type for the per-type checks
  std::function<CheckResult()> run;
};

std::vector<Instance> build_instances(const RunConfig& cfg) {
  std::vector<Instance> out;
  AlgebraPtr alg = Algebra::for_field(cfg.field);
  auto ctx = [&cfg, alg](const std::string& name) {
    return Ctx{cfg, alg, derive_check_seed(cfg.seed, name)};
  };
  auto add = [&out](const std::string& name, const std::string& base,
                    std::function<CheckResult()> fn, const std::string& type = "") {
    out.push_back(Instance{name, base, type, std::move(fn)});
  };

  add("field-axioms", "field-axioms", [=] { return check_field_axioms(ctx("field-axioms")); });
  add("octonion", "octonion", [=] { return check_octonion(ctx("octonion")); });
  add("structure-constants", "structure-constants",
      [=] { return check_structure_constants(ctx("structure-constants")); });
  add("plane-roots", "plane-roots", [=] { return check_plane_roots(ctx("plane-roots")); });
  add("phi", "phi", [=] { return check_phi(ctx("phi")); });
  add("cubic-norm", "cubic-norm", [=] { return check_cubic_norm(ctx("cubic-norm")); });

  for (EtaType t : cfg.types) {
    std::string suffix = eta_type_name(t);
    if (t != EtaType::I)
      add("eta-" + suffix, "eta", [=] { return check_eta(ctx("eta-" + suffix), t); }, suffix);
    add("sigma-" + suffix, "sigma", [=] { return check_sigma(ctx("sigma-" + suffix), t); },
        suffix);
    add("polarity-" + suffix, "polarity",
        [=] { return check_polarity(ctx("polarity-" + suffix), t); }, suffix);
    add("moufang-" + suffix, "moufang",
        [=] { return check_moufang(ctx("moufang-" + suffix), t); }, suffix);
    if (t == EtaType::I && characteristic(cfg.field) != 2)
      add("f4-equivalence", "f4-equivalence",
          [=] { return check_f4_equivalence(ctx("f4-equivalence")); }, suffix);
    if (t == EtaType::II)
      add("conjugation", "conjugation", [=] { return check_conjugation(ctx("conjugation")); },
          suffix);
    if (t == EtaType::III)
      add("hermitian-equivalence", "hermitian-equivalence",
          [=] { return check_hermitian_equivalence(ctx("hermitian-equivalence")); }, suffix);
    if (t == EtaType::IV)
      add("projective-subspace", "projective-subspace",
          [=] { return check_projective_subspace(ctx("projective-subspace")); }, suffix);
  }
  return out;
}

}  // namespace

json run_verify(const RunConfig& cfg) {
  struct FaultGuard {
    explicit FaultGuard(bool on) { set_adjoint_fault(on); }
    ~FaultGuard() { set_adjoint_fault(false); }
  } guard(cfg.fault_adjoint);

  std::vector<Instance> instances = build_instances(cfg);
  std::vector<CheckResult> results(instances.size());
  std::vector<size_t> selected;
  for (size_t i = 0; i < instances.size(); ++i) {
    const bool wanted = cfg.checks.empty() ||
                        std::find(cfg.checks.begin(), cfg.checks.end(), instances[i].base) !=
                            cfg.checks.end();
    if (wanted) {
      selected.push_back(i);
    } else {
      results[i].check = instances[i].name;
      results[i].skipped = true;
      results[i].pass = true;
      results[i].skip_reason = "not selected";
    }
    results[i].field = field_name(cfg.field);
    results[i].type = instances[i].type;
  }

  const int jobs = std::max(1, cfg.jobs);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t slot = next.fetch_add(1);
      if (slot >= selected.size()) return;
      size_t i = selected[slot];
      CheckResult res = instances[i].run();
      res.field = field_name(cfg.field);
      res.type = instances[i].type;
      results[i] = res;
    }
  };
  if (jobs == 1 || selected.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  json out{{"version", 1}, {"config", cfg.to_json()}};
  json arr = json::array();
  for (const CheckResult& r : results) arr.push_back(r.to_json());
  for (const std::string& sk : cfg.skipped_types) {
    auto colon = sk.find(':');
    arr.push_back(json{{"check", "polarity-" + sk.substr(0, colon)},
                       {"pass", true},
                       {"skipped", true},
                       {"reason", sk.substr(colon + 2)},
                       {"samples", 0},
                       {"seed", 0}});
  }
  out["results"] = std::move(arr);
  return out;
}

bool report_all_passed(const json& report) {
  for (const auto& r : report.at("results"))
    if (!r.at("pass").get<bool>()) return false;
  return true;
}

json absolute_points(const RunConfig& cfg, int count) {
  if (count < 0) fail(Err::ConfigError, "count must be nonnegative");
  if (cfg.types.empty()) fail(Err::ConfigError, "no polarity type applies to this field");
  const EtaType t = cfg.types.front();
  AlgebraPtr alg = Algebra::for_field(cfg.field);
  Polarity psi = Polarity::of_type(t, alg);
  std::vector<Octonion> basis;
  if (t == EtaType::IV) basis = fixed_space(psi.eta());

  json out = json::array();
  std::set<std::string> seen;
  uint64_t check_seed = derive_check_seed(cfg.seed, "absolute-points");
  for (uint64_t i = 0; int(out.size()) < count && i < uint64_t(count) * 100 + 16; ++i) {
    SplitMix64 rng(derive_sample_seed(check_seed, i));
    PlanePoint p = PlanePoint::at_infinity(alg);
    if (t == EtaType::IV) {
      Octonion y = Octonion::zero(alg);
      for (const Octonion& v : basis) y = y + v.scaled(FieldElement::sample(cfg.field, rng));
      p = PlanePoint::affine(Octonion::zero(alg), y);
    } else {
      Octonion a = Octonion::sample(alg, rng);
      std::optional<Octonion> b = absolute_fiber_solve(psi, a);
      if (!b) continue;
      p = PlanePoint::affine(a, *b);
    }
    if (!is_absolute(psi, p)) fail(Err::Internal, "emitted point fails the absolute check");
    if (seen.insert(p.to_json().dump()).second) out.push_back(p.to_json());
  }
  return out;
}

}  // namespace octplane
