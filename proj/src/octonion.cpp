#include "octplane/octonion.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include <nlohmann/json.hpp>

namespace octplane {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Algebra generation by Cayley-Dickson doubling.
// ---------------------------------------------------------------------------

namespace {

// Dense intermediate representation while doubling.
struct Proto {
  FieldKind field;
  int dim = 1;
  // prod[i][j] = coefficient vector of e_i * e_j
  std::vector<std::vector<Vec>> prod;
  std::vector<Vec> conj;  // conj[i] = coefficient vector of conj(e_i)

  Vec zero_vec() const { return Vec(size_t(dim), FieldElement::zero(field)); }

  Vec mul(const Vec& x, const Vec& y) const {
    Vec r = zero_vec();
    for (int i = 0; i < dim; ++i) {
      if (x[size_t(i)].is_zero()) continue;
      for (int j = 0; j < dim; ++j) {
        if (y[size_t(j)].is_zero()) continue;
        FieldElement c = x[size_t(i)] * y[size_t(j)];
        const Vec& t = prod[size_t(i)][size_t(j)];
        for (int k = 0; k < dim; ++k)
          if (!t[size_t(k)].is_zero()) r[size_t(k)] = r[size_t(k)] + c * t[size_t(k)];
      }
    }
    return r;
  }

  Vec conj_of(const Vec& x) const {
    Vec r = zero_vec();
    for (int i = 0; i < dim; ++i) {
      if (x[size_t(i)].is_zero()) continue;
      for (int k = 0; k < dim; ++k)
        if (!conj[size_t(i)][size_t(k)].is_zero())
          r[size_t(k)] = r[size_t(k)] + x[size_t(i)] * conj[size_t(i)][size_t(k)];
    }
    return r;
  }
};

Proto base_field(FieldKind k) {
  Proto p;
  p.field = k;
  p.dim = 1;
  p.prod = {{Vec{FieldElement::one(k)}}};
  p.conj = {Vec{FieldElement::one(k)}};
  return p;
}

// k[z]/(z^2 + z + alpha) with conj(z) = z + 1.
Proto base_etale(FieldKind k, const FieldElement& alpha) {
  Proto p;
  p.field = k;
  p.dim = 2;
  FieldElement zero = FieldElement::zero(k), one = FieldElement::one(k);
  p.prod.assign(2, std::vector<Vec>(2));
  p.prod[0][0] = Vec{one, zero};    // 1*1 = 1
  p.prod[0][1] = Vec{zero, one};    // 1*z = z
  p.prod[1][0] = Vec{zero, one};    // z*1 = z
  p.prod[1][1] = Vec{alpha, one};   // z*z = alpha + z
  p.conj = {Vec{one, zero}, Vec{one, one}};
  return p;
}

Proto doubled(const Proto& a, const FieldElement& mu) {
  Proto p;
  p.field = a.field;
  p.dim = 2 * a.dim;
  const int d = a.dim;
  auto embed = [&](const Vec& x, bool hi) {
    Vec r = p.zero_vec();
    for (int i = 0; i < d; ++i) r[size_t(i + (hi ? d : 0))] = x[size_t(i)];
    return r;
  };
  auto unit = [&](int i) {
    Vec r(size_t(d), FieldElement::zero(a.field));
    r[size_t(i)] = FieldElement::one(a.field);
    return r;
  };

  p.prod.assign(size_t(p.dim), std::vector<Vec>(size_t(p.dim)));
  // (x1,x2)(y1,y2) = (x1 y1 + mu conj(y2) x2,  y2 x1 + x2 conj(y1))
  for (int i = 0; i < p.dim; ++i) {
    for (int j = 0; j < p.dim; ++j) {
      const bool ih = i >= d, jh = j >= d;
      const Vec ei = unit(ih ? i - d : i), ej = unit(jh ? j - d : j);
      Vec lo(size_t(d), FieldElement::zero(a.field));
      Vec hi(size_t(d), FieldElement::zero(a.field));
      if (!ih && !jh) {
        lo = a.mul(ei, ej);
      } else if (!ih && jh) {
        hi = a.mul(ej, ei);
      } else if (ih && !jh) {
        hi = a.mul(ei, a.conj_of(ej));
      } else {
        Vec m = a.mul(a.conj_of(ej), ei);
        for (auto& c : m) c = mu * c;
        lo = m;
      }
      Vec full = embed(lo, false);
      const Vec hfull = embed(hi, true);
      for (int k = 0; k < p.dim; ++k)
        full[size_t(k)] = full[size_t(k)] + hfull[size_t(k)];
      p.prod[size_t(i)][size_t(j)] = std::move(full);
    }
  }
  p.conj.assign(size_t(p.dim), Vec());
  for (int i = 0; i < p.dim; ++i) {
    if (i < d) {
      p.conj[size_t(i)] = embed(a.conj_of(unit(i)), false);
    } else {
      Vec v = embed(unit(i - d), true);
      for (auto& c : v) c = -c;
      p.conj[size_t(i)] = std::move(v);
    }
  }
  return p;
}

}  // namespace

Algebra build_algebra(FieldKind k) {
  Algebra a;
  a.field_ = k;
  Proto p;
  if (characteristic(k) == 0) {
    FieldElement m1 = -FieldElement::one(k);
    a.params_ = {m1, m1, m1};
    p = base_field(k);
    for (int step = 0; step < 3; ++step) p = doubled(p, m1);
  } else {
    FieldElement t1 = FieldElement::variable(0);
    FieldElement t2 = FieldElement::variable(1);
    FieldElement t3 = FieldElement::variable(2);
    a.params_ = {t1, t2, t3};
    p = base_etale(k, t1);
    p = doubled(p, t2);
    p = doubled(p, t3);
  }
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      std::vector<Algebra::Term> t;
      for (int kk = 0; kk < 8; ++kk)
        if (!p.prod[size_t(i)][size_t(j)][size_t(kk)].is_zero())
          t.emplace_back(kk, p.prod[size_t(i)][size_t(j)][size_t(kk)]);
      a.table_[size_t(i)][size_t(j)] = std::move(t);
    }
    std::vector<Algebra::Term> c;
    for (int kk = 0; kk < 8; ++kk)
      if (!p.conj[size_t(i)][size_t(kk)].is_zero())
        c.emplace_back(kk, p.conj[size_t(i)][size_t(kk)]);
    a.conj_[size_t(i)] = std::move(c);
  }
  // Expand N(x) = (x * conj(x))_0 and T(x) = (x + conj(x))_0 symbolically.
  // The doubling construction guarantees both are scalar multiples of e0;
  // the slow by-definition forms re-check that at runtime.
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      FieldElement g = FieldElement::zero(k);
      for (const auto& [cj, ccoeff] : a.conj_[size_t(j)])
        for (const auto& [pk, pcoeff] : a.table_[size_t(i)][size_t(cj)])
          if (pk == 0) g = g + ccoeff * pcoeff;
      if (!g.is_zero()) a.norm_gram_.emplace_back(i, j, g);
    }
    FieldElement t = i == 0 ? FieldElement::one(k) : FieldElement::zero(k);
    for (const auto& [cj, ccoeff] : a.conj_[size_t(i)])
      if (cj == 0) t = t + ccoeff;
    a.trace_coeffs_[size_t(i)] = t;
  }
  return a;
}

std::shared_ptr<const Algebra> Algebra::for_field(FieldKind k) {
  static std::mutex mtx;
  static std::array<std::shared_ptr<const Algebra>, 3> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[size_t(k)];
  if (!slot) slot = std::shared_ptr<const Algebra>(new Algebra(build_algebra(k)));
  return slot;
}

std::string Algebra::table_csv() const {
  std::ostringstream out;
  out << "i\\j";
  for (int j = 0; j < 8; ++j) out << ",e" << j;
  out << "\n";
  for (int i = 0; i < 8; ++i) {
    out << "e" << i;
    for (int j = 0; j < 8; ++j) {
      out << ",";
      const auto& terms = table_[size_t(i)][size_t(j)];
      FieldElement one = FieldElement::one(field_);
      if (terms.size() == 1 && (terms[0].second == one || terms[0].second == -one)) {
        int idx = terms[0].first + 1;
        out << (terms[0].second == one ? idx : -idx);
      } else {
        bool first = true;
        for (const auto& [idx, coeff] : terms) {
          if (!first) out << "+";
          out << "(" << coeff.str() << ")*e" << idx;
          first = false;
        }
        if (terms.empty()) out << "0";
      }
    }
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Octonion
// ---------------------------------------------------------------------------

Octonion Octonion::zero(const AlgebraPtr& alg) {
  Octonion x;
  x.alg_ = alg;
  x.c_.fill(FieldElement::zero(alg->field()));
  return x;
}

Octonion Octonion::one(const AlgebraPtr& alg) { return basis(alg, 0); }

Octonion Octonion::basis(const AlgebraPtr& alg, int i) {
  Octonion x = zero(alg);
  x.c_[size_t(i)] = FieldElement::one(alg->field());
  return x;
}

Octonion Octonion::scalar(const AlgebraPtr& alg, FieldElement s) {
  Octonion x = zero(alg);
  x.c_[0] = std::move(s);
  return x;
}

Octonion Octonion::from_coords(const AlgebraPtr& alg, std::array<FieldElement, 8> c) {
  Octonion x;
  x.alg_ = alg;
  x.c_ = std::move(c);
  return x;
}

bool Octonion::is_zero() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

void require_same_algebra(const Octonion& x, const Octonion& y) {
  if (!x.algebra() || !y.algebra() || x.algebra()->field() != y.algebra()->field())
    fail(Err::AlgebraMismatch, "octonions from different algebras");
}

Octonion operator+(const Octonion& x, const Octonion& y) {
  require_same_algebra(x, y);
  Octonion r = x;
  for (int i = 0; i < 8; ++i) r.c_[size_t(i)] = r.c_[size_t(i)] + y.c_[size_t(i)];
  return r;
}

Octonion operator-(const Octonion& x, const Octonion& y) { return x + (-y); }

Octonion Octonion::operator-() const {
  Octonion r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Octonion operator*(const Octonion& x, const Octonion& y) {
  require_same_algebra(x, y);
  const Algebra& alg = *x.algebra();
  const FieldKind fk = alg.field();
  // Gather each coordinate as one sum of products so every field can clear
  // denominators once per coordinate.
  std::array<std::vector<std::array<const FieldElement*, 3>>, 8> buckets;
  for (int i = 0; i < 8; ++i) {
    if (x.c_[size_t(i)].is_zero()) continue;
    for (int j = 0; j < 8; ++j) {
      if (y.c_[size_t(j)].is_zero()) continue;
      for (const auto& [k, coeff] : alg.product_terms(i, j))
        buckets[size_t(k)].push_back({&x.c_[size_t(i)], &y.c_[size_t(j)], &coeff});
    }
  }
  Octonion r = Octonion::zero(x.algebra());
  for (int k = 0; k < 8; ++k)
    if (!buckets[size_t(k)].empty())
      r.c_[size_t(k)] = FieldElement::sum_of_products(fk, buckets[size_t(k)]);
  return r;
}

bool operator==(const Octonion& x, const Octonion& y) {
  if (!x.algebra() || !y.algebra() || x.algebra()->field() != y.algebra()->field()) return false;
  return x.c_ == y.c_;
}

Octonion Octonion::scaled(const FieldElement& s) const {
  Octonion r = *this;
  for (auto& v : r.c_) v = v * s;
  return r;
}

Octonion conjugate(const Octonion& x) {
  const Algebra& alg = *x.algebra();
  std::array<FieldElement, 8> c;
  c.fill(FieldElement::zero(alg.field()));
  for (int i = 0; i < 8; ++i) {
    if (x.coord(i).is_zero()) continue;
    for (const auto& [k, coeff] : alg.conj_terms(i))
      c[size_t(k)] = c[size_t(k)] + x.coord(i) * coeff;
  }
  return Octonion::from_coords(x.algebra(), std::move(c));
}

namespace {

FieldElement checked_scalar(const Octonion& x, const char* what) {
  for (int i = 1; i < 8; ++i)
    if (!x.coord(i).is_zero())
      fail(Err::Internal, std::string(what) + " is not a scalar multiple of the unit");
  return x.coord(0);
}

}  // namespace

FieldElement norm(const Octonion& x) {
  const FieldKind k = x.field();
  std::vector<std::array<const FieldElement*, 3>> triples;
  for (const auto& [i, j, g] : x.algebra()->norm_gram()) {
    if (x.coord(i).is_zero() || x.coord(j).is_zero()) continue;
    triples.push_back({&x.coord(i), &x.coord(j), &g});
  }
  return FieldElement::sum_of_products(k, triples);
}

FieldElement trace(const Octonion& x) {
  const FieldKind k = x.field();
  FieldElement t = FieldElement::zero(k);
  const auto& coeffs = x.algebra()->trace_coeffs();
  for (int i = 0; i < 8; ++i)
    if (!coeffs[size_t(i)].is_zero() && !x.coord(i).is_zero())
      t = t + coeffs[size_t(i)] * x.coord(i);
  return t;
}

FieldElement norm_by_definition(const Octonion& x) {
  return checked_scalar(x * conjugate(x), "x*conj(x)");
}

FieldElement trace_by_definition(const Octonion& x) {
  return checked_scalar(x + conjugate(x), "x+conj(x)");
}

std::pair<FieldElement, FieldElement> quadratic_data(const Octonion& x) {
  return {norm(x), trace(x)};
}

FieldElement bilinear(const Octonion& x, const Octonion& y) {
  return norm(x + y) - norm(x) - norm(y);
}

Octonion inverse(const Octonion& x) {
  if (x.is_zero()) fail(Err::DivisionByZero, "inverse of zero octonion");
  FieldElement n = norm(x);
  if (n.is_zero())
    fail(Err::NormIsotropic, "nonzero octonion with zero norm; the algebra is not division");
  return conjugate(x).scaled(n.inverted());
}

// ---------------------------------------------------------------------------
// Reference product: recursive doubling, no table.
// ---------------------------------------------------------------------------

namespace {

using Span = std::vector<FieldElement>;

Span rec_conj(const Span& x, int char2) {
  const size_t n = x.size();
  if (n == 1) return x;
  if (n == 2 && char2) {
    // conj(u + v z) = (u + v) + v z
    return Span{x[0] + x[1], x[1]};
  }
  Span lo(x.begin(), x.begin() + n / 2), hi(x.begin() + n / 2, x.end());
  Span cl = rec_conj(lo, char2);
  Span r(n, FieldElement::zero(x[0].kind()));
  for (size_t i = 0; i < n / 2; ++i) {
    r[i] = cl[i];
    r[n / 2 + i] = -hi[i];
  }
  return r;
}

Span rec_mul(const Span& x, const Span& y, const std::array<FieldElement, 3>& params, int char2) {
  const size_t n = x.size();
  const FieldKind k = x[0].kind();
  if (n == 1) return Span{x[0] * y[0]};
  if (n == 2 && char2) {
    // (u1 + v1 z)(u2 + v2 z) with z^2 = z + alpha
    const FieldElement& alpha = params[0];
    return Span{x[0] * y[0] + alpha * (x[1] * y[1]),
                x[0] * y[1] + x[1] * y[0] + x[1] * y[1]};
  }
  // doubling level: n=8 uses params[2], n=4 params[1], n=2 params[0]
  int level = n == 8 ? 2 : (n == 4 ? 1 : 0);
  const FieldElement& mu = params[size_t(level)];
  Span x1(x.begin(), x.begin() + n / 2), x2(x.begin() + n / 2, x.end());
  Span y1(y.begin(), y.begin() + n / 2), y2(y.begin() + n / 2, y.end());
  // (x1,x2)(y1,y2) = (x1 y1 + mu conj(y2) x2, y2 x1 + x2 conj(y1))
  Span a = rec_mul(x1, y1, params, char2);
  Span b = rec_mul(rec_conj(y2, char2), x2, params, char2);
  Span c = rec_mul(y2, x1, params, char2);
  Span d = rec_mul(x2, rec_conj(y1, char2), params, char2);
  Span r(n, FieldElement::zero(k));
  for (size_t i = 0; i < n / 2; ++i) {
    r[i] = a[i] + mu * b[i];
    r[n / 2 + i] = c[i] + d[i];
  }
  return r;
}

}  // namespace

Octonion multiply_reference(const Octonion& x, const Octonion& y) {
  require_same_algebra(x, y);
  const auto& alg = x.algebra();
  Span xs(x.coords().begin(), x.coords().end());
  Span ys(y.coords().begin(), y.coords().end());
  Span r = rec_mul(xs, ys, alg->params(), alg->characteristic() == 2);
  std::array<FieldElement, 8> c;
  for (int i = 0; i < 8; ++i) c[size_t(i)] = r[size_t(i)];
  return Octonion::from_coords(alg, std::move(c));
}

// ---------------------------------------------------------------------------
// Serialization and sampling
// ---------------------------------------------------------------------------

std::string Octonion::str() const {
  std::string out;
  for (int i = 0; i < 8; ++i) {
    if (c_[size_t(i)].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c_[size_t(i)].str() + ")e" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

json Octonion::to_json() const {
  json coords = json::array();
  for (const auto& v : c_) coords.push_back(v.to_json());
  return json{{"alg", field_name(alg_->field())}, {"coords", coords}};
}

Octonion Octonion::from_json(const json& j) {
  if (!j.is_object() || !j.contains("alg") || !j.contains("coords"))
    fail(Err::BadInput, "octonion must be {alg, coords}");
  FieldKind k = field_from_name(j["alg"].get<std::string>());
  const json& coords = j["coords"];
  if (!coords.is_array() || coords.size() != 8) fail(Err::BadInput, "octonion needs 8 coords");
  std::array<FieldElement, 8> c;
  for (int i = 0; i < 8; ++i) c[size_t(i)] = FieldElement::from_json(k, coords[size_t(i)]);
  return from_coords(Algebra::for_field(k), std::move(c));
}

Octonion Octonion::sample(const AlgebraPtr& alg, SplitMix64& rng, int height) {
  std::array<FieldElement, 8> c;
  for (int i = 0; i < 8; ++i) c[size_t(i)] = FieldElement::sample(alg->field(), rng, height);
  return from_coords(alg, std::move(c));
}

Octonion Octonion::sample_nonzero(const AlgebraPtr& alg, SplitMix64& rng, int height) {
  for (;;) {
    Octonion x = sample(alg, rng, height);
    if (!x.is_zero()) return x;
  }
}

// ---------------------------------------------------------------------------
// SubalgebraFrame
// ---------------------------------------------------------------------------

namespace {

Mat basis_matrix(const std::array<Octonion, 8>& cols) {
  const FieldKind k = cols[0].field();
  Mat m(8, Vec(8, FieldElement::zero(k)));
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i) m[size_t(i)][size_t(j)] = cols[size_t(j)].coord(i);
  return m;
}

Vec coords_vec(const Octonion& x) { return Vec(x.coords().begin(), x.coords().end()); }

bool in_span(const std::array<Octonion, 4>& basis, const Octonion& x) {
  const FieldKind k = x.field();
  Mat m(8, Vec(5, FieldElement::zero(k)));
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 8; ++i) m[size_t(i)][size_t(j)] = basis[size_t(j)].coord(i);
  for (int i = 0; i < 8; ++i) m[size_t(i)][4] = x.coord(i);
  Mat just_basis(8, Vec(4, FieldElement::zero(k)));
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 8; ++i) just_basis[size_t(i)][size_t(j)] = basis[size_t(j)].coord(i);
  return rank(just_basis) == rank(m);
}

}  // namespace

SubalgebraFrame SubalgebraFrame::quaternion_perp(const AlgebraPtr& alg,
                                                 std::array<Octonion, 4> d_basis, Octonion c) {
  for (int i = 0; i < 4; ++i) {
    if (!in_span(d_basis, conjugate(d_basis[size_t(i)])))
      fail(Err::SingularFrame, "D is not closed under conjugation");
    for (int j = 0; j < 4; ++j)
      if (!in_span(d_basis, d_basis[size_t(i)] * d_basis[size_t(j)]))
        fail(Err::SingularFrame, "D is not closed under multiplication");
  }
  for (int i = 0; i < 4; ++i)
    if (!bilinear(c, d_basis[size_t(i)]).is_zero())
      fail(Err::SingularFrame, "c is not orthogonal to D");
  FieldElement beta = norm(c);
  if (beta.is_zero()) fail(Err::SingularFrame, "N(c) = 0");

  SubalgebraFrame f;
  f.kind_ = Kind::QuaternionPerp;
  f.alg_ = alg;
  f.d_basis_ = std::move(d_basis);
  f.aux_ = std::move(c);
  f.beta_ = std::move(beta);
  std::array<Octonion, 8> cols;
  for (int i = 0; i < 4; ++i) {
    cols[size_t(i)] = f.d_basis_[size_t(i)];
    cols[size_t(4 + i)] = f.aux_ * f.d_basis_[size_t(i)];
  }
  f.inv_basis_ = mat_inverse(basis_matrix(cols));  // SingularFrame if dependent
  return f;
}

SubalgebraFrame SubalgebraFrame::totally_singular(const AlgebraPtr& alg,
                                                  std::array<Octonion, 4> d_basis, Octonion z) {
  if (alg->characteristic() != 2)
    fail(Err::SingularFrame, "totally singular frames need characteristic 2");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (!bilinear(d_basis[size_t(i)], d_basis[size_t(j)]).is_zero())
        fail(Err::SingularFrame, "D is not totally singular");
      if (!in_span(d_basis, d_basis[size_t(i)] * d_basis[size_t(j)]))
        fail(Err::SingularFrame, "D is not closed under multiplication");
    }
  if (!trace(z).is_one()) fail(Err::SingularFrame, "T(z) != 1");

  SubalgebraFrame f;
  f.kind_ = Kind::TotallySingular;
  f.alg_ = alg;
  f.d_basis_ = std::move(d_basis);
  f.aux_ = std::move(z);
  f.beta_ = FieldElement::zero(alg->field());
  std::array<Octonion, 8> cols;
  for (int i = 0; i < 4; ++i) {
    cols[size_t(i)] = f.d_basis_[size_t(i)];
    cols[size_t(4 + i)] = f.d_basis_[size_t(i)] * f.aux_;
  }
  f.inv_basis_ = mat_inverse(basis_matrix(cols));
  return f;
}

SubalgebraFrame SubalgebraFrame::default_quaternion(const AlgebraPtr& alg) {
  std::array<Octonion, 4> d = {Octonion::basis(alg, 0), Octonion::basis(alg, 1),
                               Octonion::basis(alg, 2), Octonion::basis(alg, 3)};
  return quaternion_perp(alg, std::move(d), Octonion::basis(alg, 4));
}

SubalgebraFrame SubalgebraFrame::default_singular(const AlgebraPtr& alg) {
  std::array<Octonion, 4> d = {Octonion::basis(alg, 0), Octonion::basis(alg, 2),
                               Octonion::basis(alg, 4), Octonion::basis(alg, 6)};
  return totally_singular(alg, std::move(d), Octonion::basis(alg, 1));
}

std::pair<Octonion, Octonion> SubalgebraFrame::decompose(const Octonion& x) const {
  Vec coords = mat_apply(inv_basis_, coords_vec(x));
  Octonion x1 = Octonion::zero(alg_), x2 = Octonion::zero(alg_);
  for (int i = 0; i < 4; ++i) {
    x1 = x1 + d_basis_[size_t(i)].scaled(coords[size_t(i)]);
    x2 = x2 + d_basis_[size_t(i)].scaled(coords[size_t(4 + i)]);
  }
  return {x1, x2};
}

Octonion SubalgebraFrame::recompose(const Octonion& x1, const Octonion& x2) const {
  if (kind_ == Kind::QuaternionPerp) return x1 + aux_ * x2;
  return x1 + x2 * aux_;
}

bool SubalgebraFrame::in_d(const Octonion& x) const {
  auto [x1, x2] = decompose(x);
  return x2.is_zero();
}

// ---------------------------------------------------------------------------
// Eta
// ---------------------------------------------------------------------------

const char* eta_type_name(EtaType t) {
  switch (t) {
    case EtaType::I: return "i";
    case EtaType::II: return "ii";
    case EtaType::III: return "iii";
    case EtaType::IV: return "iv";
  }
  return "?";
}

Eta Eta::type_i(const AlgebraPtr& alg) {
  Eta e;
  e.type_ = EtaType::I;
  e.alg_ = alg;
  return e;
}

Eta Eta::type_ii(const AlgebraPtr& alg) {
  if (alg->field() != FieldKind::RealQuadratic)
    fail(Err::IncompatibleField, "type II needs the quadratic extension field");
  Eta e;
  e.type_ = EtaType::II;
  e.alg_ = alg;
  return e;
}

Eta Eta::type_iii(SubalgebraFrame frame) {
  if (frame.kind() != SubalgebraFrame::Kind::QuaternionPerp)
    fail(Err::FrameMismatch, "type III needs a quaternion frame");
  if (frame.algebra()->characteristic() == 2)
    fail(Err::IncompatibleField, "type III needs characteristic != 2");
  Eta e;
  e.type_ = EtaType::III;
  e.alg_ = frame.algebra();
  e.frame_ = std::move(frame);
  return e;
}

Eta Eta::type_iv(SubalgebraFrame frame) {
  if (frame.kind() != SubalgebraFrame::Kind::TotallySingular)
    fail(Err::FrameMismatch, "type IV needs a totally singular frame");
  Eta e;
  e.type_ = EtaType::IV;
  e.alg_ = frame.algebra();
  e.frame_ = std::move(frame);
  return e;
}

Eta Eta::of_type(EtaType t, const AlgebraPtr& alg) {
  switch (t) {
    case EtaType::I: return type_i(alg);
    case EtaType::II: return type_ii(alg);
    case EtaType::III: return type_iii(SubalgebraFrame::default_quaternion(alg));
    case EtaType::IV: return type_iv(SubalgebraFrame::default_singular(alg));
  }
  fail(Err::Internal, "bad eta type");
}

const SubalgebraFrame& Eta::frame() const {
  if (!frame_) fail(Err::WrongType, "eta of this type carries no frame");
  return *frame_;
}

Octonion Eta::apply(const Octonion& x) const {
  if (x.field() != alg_->field()) fail(Err::AlgebraMismatch, "eta applied across algebras");
  switch (type_) {
    case EtaType::I: return x;
    case EtaType::II: {
      std::array<FieldElement, 8> c;
      for (int i = 0; i < 8; ++i) c[size_t(i)] = x.coord(i).galois_conjugate();
      return Octonion::from_coords(x.algebra(), std::move(c));
    }
    case EtaType::III: {
      auto [x1, x2] = frame_->decompose(x);
      return frame_->recompose(x1, -x2);
    }
    case EtaType::IV: {
      // d + d'z -> d + d'(z+1) = x + d'
      auto [x1, x2] = frame_->decompose(x);
      return x + x2;
    }
  }
  fail(Err::Internal, "bad eta type");
}

FieldElement Eta::scalar_action(const FieldElement& s) const {
  if (type_ == EtaType::II) return s.galois_conjugate();
  return s;
}

}  // namespace octplane
