#include "octplane/fields.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

namespace octplane {

using json = nlohmann::json;

const char* err_name(Err e) {
  switch (e) {
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::UnsupportedField: return "UnsupportedField";
    case Err::FieldMismatch: return "FieldMismatch";
    case Err::AlgebraMismatch: return "AlgebraMismatch";
    case Err::NormIsotropic: return "NormIsotropic";
    case Err::SingularFrame: return "SingularFrame";
    case Err::OutsideDomain: return "OutsideDomain";
    case Err::ZeroElement: return "ZeroElement";
    case Err::MembershipViolated: return "MembershipViolated";
    case Err::FrameMismatch: return "FrameMismatch";
    case Err::WrongType: return "WrongType";
    case Err::IncompatibleField: return "IncompatibleField";
    case Err::WitnessFailure: return "WitnessFailure";
    case Err::OutsideSubspace: return "OutsideSubspace";
    case Err::ConfigError: return "ConfigError";
    case Err::BadInput: return "BadInput";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

const char* field_name(FieldKind k) {
  switch (k) {
    case FieldKind::Rationals: return "q";
    case FieldKind::RealQuadratic: return "qsqrt2";
    case FieldKind::Char2Function: return "f2t";
  }
  return "?";
}

const char* FieldDescriptor::name() const { return field_name(kind); }

std::vector<std::string> FieldDescriptor::variable_names() const {
  if (kind == FieldKind::Char2Function) return {"t1", "t2", "t3"};
  return {};
}

FieldKind field_from_name(const std::string& name) {
  if (name == "q") return FieldKind::Rationals;
  if (name == "qsqrt2") return FieldKind::RealQuadratic;
  if (name == "f2t") return FieldKind::Char2Function;
  fail(Err::ConfigError, "unknown field '" + name + "' (expected q | qsqrt2 | f2t)");
}

// ---------------------------------------------------------------------------
// F2Poly
// ---------------------------------------------------------------------------

F2Poly F2Poly::variable(int i) {
  switch (i) {
    case 0: return monomial(1, 0, 0);
    case 1: return monomial(0, 1, 0);
    case 2: return monomial(0, 0, 1);
  }
  fail(Err::BadInput, "variable index out of range");
}

F2Poly F2Poly::monomial(unsigned e1, unsigned e2, unsigned e3) {
  F2Poly p;
  p.terms_.push_back((Key(e1) << (2 * kShift)) | (Key(e2) << kShift) | Key(e3));
  p.deg_ = {e1, e2, e3};
  return p;
}

void F2Poly::refresh_degrees() {
  deg_ = {0, 0, 0};
  for (Key k : terms_)
    for (int v = 0; v < 3; ++v) deg_[size_t(v)] = std::max(deg_[size_t(v)], exp_of(k, v));
}

F2Poly F2Poly::from_terms(std::vector<Key> terms) {
  std::sort(terms.begin(), terms.end());
  F2Poly p;
  size_t i = 0;
  while (i < terms.size()) {
    size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) & 1) p.terms_.push_back(terms[i]);
    i = j;
  }
  p.refresh_degrees();
  return p;
}

F2Poly F2Poly::from_sorted_unique(std::vector<Key> terms) {
  F2Poly p;
  p.terms_ = std::move(terms);
  p.refresh_degrees();
  return p;
}

unsigned F2Poly::total_degree() const {
  unsigned d = 0;
  for (Key k : terms_) d = std::max(d, exp_of(k, 0) + exp_of(k, 1) + exp_of(k, 2));
  return d;
}

F2Poly::Key F2Poly::leading_key() const {
  if (terms_.empty()) fail(Err::Internal, "leading term of zero polynomial");
  return terms_.back();
}

F2Poly operator+(const F2Poly& a, const F2Poly& b) {
  F2Poly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  size_t i = 0, j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    if (a.terms_[i] < b.terms_[j]) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (b.terms_[j] < a.terms_[i]) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      ++i;
      ++j;  // equal monomials cancel mod 2
    }
  }
  r.terms_.insert(r.terms_.end(), a.terms_.begin() + i, a.terms_.end());
  r.terms_.insert(r.terms_.end(), b.terms_.begin() + j, b.terms_.end());
  r.refresh_degrees();
  return r;
}

namespace {

// Dense parity accumulator for GF(2) polynomial products. Exponents map to a
// rectangular bit grid sized by per-variable degree bounds, so repeated
// monomial collisions cost one bit flip instead of a sort pass.
class DenseAcc {
 public:
  // Bounds are inclusive per-variable degree maxima.
  DenseAcc(unsigned d1, unsigned d2, unsigned d3)
      : s2_(size_t(d3) + 1), s1_(s2_ * (size_t(d2) + 1)), bits_((s1_ * (d1 + 1) + 63) / 64, 0) {}

  static bool fits(unsigned d1, unsigned d2, unsigned d3) {
    // 2^27 bits = 16 MiB cap
    return (uint64_t(d1) + 1) * (uint64_t(d2) + 1) * (uint64_t(d3) + 1) <= (uint64_t(1) << 27);
  }

  size_t index_of(F2Poly::Key k) const {
    return size_t(F2Poly::exp_of(k, 0)) * s1_ + size_t(F2Poly::exp_of(k, 1)) * s2_ +
           size_t(F2Poly::exp_of(k, 2));
  }

  void flip(F2Poly::Key k) {
    size_t idx = index_of(k);
    bits_[idx / 64] ^= uint64_t(1) << (idx % 64);
  }

  void accumulate_product(const std::vector<F2Poly::Key>& a, const std::vector<F2Poly::Key>& b) {
    // The grid index is linear in the exponents, so offsets add.
    std::vector<size_t> ib;
    ib.reserve(b.size());
    for (F2Poly::Key kb : b) ib.push_back(index_of(kb));
    for (F2Poly::Key ka : a) {
      size_t ia = index_of(ka);
      for (size_t off : ib) {
        size_t idx = ia + off;
        bits_[idx / 64] ^= uint64_t(1) << (idx % 64);
      }
    }
  }

  F2Poly extract() const {
    std::vector<F2Poly::Key> terms;
    // Ascending grid index is ascending lexicographic key order.
    for (size_t w = 0; w < bits_.size(); ++w) {
      uint64_t word = bits_[w];
      while (word) {
        unsigned bit = unsigned(__builtin_ctzll(word));
        word &= word - 1;
        size_t idx = w * 64 + bit;
        unsigned e1 = unsigned(idx / s1_);
        unsigned e2 = unsigned((idx % s1_) / s2_);
        unsigned e3 = unsigned(idx % s2_);
        terms.push_back((F2Poly::Key(e1) << (2 * F2Poly::kShift)) |
                        (F2Poly::Key(e2) << F2Poly::kShift) | F2Poly::Key(e3));
      }
    }
    return F2Poly::from_sorted_unique(std::move(terms));
  }

 private:
  size_t s2_, s1_;
  std::vector<uint64_t> bits_;
};

}  // namespace

F2Poly operator*(const F2Poly& a, const F2Poly& b) {
  if (a.is_zero() || b.is_zero()) return F2Poly();
  const size_t pairs = a.terms_.size() * b.terms_.size();
  unsigned d1 = a.degree(0) + b.degree(0);
  unsigned d2 = a.degree(1) + b.degree(1);
  unsigned d3 = a.degree(2) + b.degree(2);
  if (pairs > 2048 && DenseAcc::fits(d1, d2, d3)) {
    DenseAcc acc(d1, d2, d3);
    acc.accumulate_product(a.terms_, b.terms_);
    return acc.extract();
  }
  std::vector<F2Poly::Key> acc;
  acc.reserve(pairs);
  for (F2Poly::Key ka : a.terms_)
    for (F2Poly::Key kb : b.terms_) acc.push_back(ka + kb);
  return F2Poly::from_terms(std::move(acc));
}

namespace {

bool monomial_divides(F2Poly::Key a, F2Poly::Key b) {
  // does monomial a divide monomial b
  for (int v = 0; v < 3; ++v)
    if (F2Poly::exp_of(a, v) > F2Poly::exp_of(b, v)) return false;
  return true;
}

F2Poly::Key monomial_gcd_key(const F2Poly& p) {
  unsigned e[3] = {~0u, ~0u, ~0u};
  for (F2Poly::Key k : p.terms())
    for (int v = 0; v < 3; ++v) e[v] = std::min(e[v], F2Poly::exp_of(k, v));
  return (F2Poly::Key(e[0]) << (2 * F2Poly::kShift)) | (F2Poly::Key(e[1]) << F2Poly::kShift) |
         F2Poly::Key(e[2]);
}

F2Poly shift_down(const F2Poly& p, F2Poly::Key m) {
  std::vector<F2Poly::Key> t;
  t.reserve(p.term_count());
  for (F2Poly::Key k : p.terms()) t.push_back(k - m);
  return F2Poly::from_terms(std::move(t));
}

// Coefficient of t_var^d in p, with that variable's exponent removed.
F2Poly coeff_wrt(const F2Poly& p, int var, unsigned d) {
  std::vector<F2Poly::Key> t;
  const int sh = F2Poly::kShift * (2 - var);
  for (F2Poly::Key k : p.terms())
    if (F2Poly::exp_of(k, var) == d) t.push_back(k - (F2Poly::Key(d) << sh));
  return F2Poly::from_terms(std::move(t));
}

F2Poly times_var_power(const F2Poly& p, int var, unsigned d) {
  const int sh = F2Poly::kShift * (2 - var);
  std::vector<F2Poly::Key> t;
  t.reserve(p.term_count());
  for (F2Poly::Key k : p.terms()) t.push_back(k + (F2Poly::Key(d) << sh));
  return F2Poly::from_terms(std::move(t));
}

F2Poly content_wrt(const F2Poly& p, int var) {
  F2Poly c;
  unsigned dmax = p.degree(var);
  for (unsigned d = 0; d <= dmax; ++d) {
    F2Poly co = coeff_wrt(p, var, d);
    if (co.is_zero()) continue;
    c = F2Poly::gcd(c, co);
    if (c.is_one()) return c;
  }
  return c;
}

// Exact pseudo-remainder lc(g)^(deg f - deg g + 1) * f mod g with respect to
// var. Signs do not exist over GF(2).
F2Poly prem(F2Poly f, const F2Poly& g, int var) {
  const unsigned dg = g.degree(var);
  const F2Poly lcg = coeff_wrt(g, var, dg);
  const unsigned df0 = f.degree(var);
  if (df0 < dg) return f;
  unsigned steps = 0;
  const unsigned want = df0 - dg + 1;
  while (!f.is_zero()) {
    const unsigned df = f.degree(var);
    if (df < dg) break;
    const F2Poly lcf = coeff_wrt(f, var, df);
    f = lcg * f + times_var_power(lcf, var, df - dg) * g;
    ++steps;
  }
  for (; steps < want; ++steps) f = lcg * f;
  return f;
}

// ---- dense univariate fast path -------------------------------------------

struct UBits {
  std::vector<uint64_t> w;  // bit i = coefficient of x^i
  int deg = -1;

  void set(unsigned i) {
    if (i / 64 >= w.size()) w.resize(i / 64 + 1, 0);
    w[i / 64] |= uint64_t(1) << (i % 64);
  }
  void update_deg() {
    deg = -1;
    for (size_t b = w.size(); b-- > 0;) {
      if (w[b]) {
        deg = int(b * 64 + 63 - unsigned(__builtin_clzll(w[b])));
        return;
      }
    }
  }
  bool is_zero() const { return deg < 0; }
  // this ^= other << sh
  void xor_shifted(const UBits& o, unsigned sh) {
    const unsigned word = sh / 64, bit = sh % 64;
    const size_t need = size_t(o.deg + int(sh)) / 64 + 1;
    if (w.size() < need) w.resize(need, 0);
    for (size_t i = 0; i <= size_t(o.deg) / 64; ++i) {
      uint64_t x = o.w[i];
      w[i + word] ^= x << bit;
      if (bit && i + word + 1 < w.size()) w[i + word + 1] ^= x >> (64 - bit);
    }
  }
};

// Which single variable p uses, or -1 if zero/constant, or -2 if several.
int single_variable(const F2Poly& p) {
  int var = -1;
  for (int v = 0; v < 3; ++v) {
    if (p.degree(v) == 0) continue;
    if (var >= 0) return -2;
    var = v;
  }
  return var;
}

UBits to_bits(const F2Poly& p, int var) {
  UBits b;
  for (F2Poly::Key k : p.terms()) b.set(F2Poly::exp_of(k, var));
  b.update_deg();
  return b;
}

F2Poly from_bits(const UBits& b, int var) {
  std::vector<F2Poly::Key> terms;
  const int sh = F2Poly::kShift * (2 - var);
  for (int i = 0; i <= b.deg; ++i)
    if (b.w[size_t(i) / 64] >> (unsigned(i) % 64) & 1) terms.push_back(F2Poly::Key(i) << sh);
  return F2Poly::from_terms(std::move(terms));
}

F2Poly gcd_univariate(const F2Poly& a, const F2Poly& b, int var) {
  UBits x = to_bits(a, var), y = to_bits(b, var);
  while (!y.is_zero()) {
    while (x.deg >= y.deg) {  // x mod y
      x.xor_shifted(y, unsigned(x.deg - y.deg));
      x.update_deg();
      if (x.is_zero()) break;
    }
    std::swap(x, y);
  }
  return from_bits(x, var);
}

// ---- evaluation-based coprimality certificate ------------------------------
//
// Arithmetic in GF(2^16) through log/exp tables; the tables are built once
// from a verified primitive polynomial.

namespace gf16 {

uint16_t logt[65536];
uint16_t expt[131072];

void init_tables() {
  const uint32_t poly = 0x1100B;  // x^16 + x^12 + x^3 + x + 1
  uint32_t s = 1;
  for (uint32_t i = 0; i < 65535; ++i) {
    expt[i] = uint16_t(s);
    logt[s] = uint16_t(i);
    s <<= 1;
    if (s & 0x10000) s ^= poly;
  }
  if (s != 1) fail(Err::Internal, "GF(2^16) modulus is not primitive");
  for (uint32_t i = 65535; i < 131072; ++i) expt[i] = expt[i - 65535];
  logt[0] = 0;
}

inline void ensure_init() {
  static const bool once = [] {
    init_tables();
    return true;
  }();
  (void)once;
}

inline uint16_t mul(uint16_t a, uint16_t b) {
  if (!a || !b) return 0;
  return expt[uint32_t(logt[a]) + uint32_t(logt[b])];
}

inline uint16_t inv(uint16_t a) { return expt[65535 - uint32_t(logt[a])]; }

}  // namespace gf16

// Two fixed evaluation pairs (retry points) per variable; arbitrary nonzero.
const uint16_t kEvalPoints[2][2] = {{0x9E37, 0x79B9}, {0x85EB, 0xCA6B}};

// f with the two variables other than `var` evaluated at fixed field points;
// coefficient of t_var^d lands in out[d].
void evaluate_except(const F2Poly& f, int var, uint16_t p1, uint16_t p2,
                     std::vector<uint16_t>& out) {
  gf16::ensure_init();
  int others[2], oi = 0;
  for (int v = 0; v < 3; ++v)
    if (v != var) others[oi++] = v;
  unsigned d1 = f.degree(others[0]), d2 = f.degree(others[1]);
  std::vector<uint16_t> pw1(d1 + 1), pw2(d2 + 1);
  pw1[0] = 1;
  for (unsigned i = 1; i <= d1; ++i) pw1[i] = gf16::mul(pw1[i - 1], p1);
  pw2[0] = 1;
  for (unsigned i = 1; i <= d2; ++i) pw2[i] = gf16::mul(pw2[i - 1], p2);
  out.assign(f.degree(var) + 1, 0);
  for (F2Poly::Key k : f.terms())
    out[F2Poly::exp_of(k, var)] ^=
        gf16::mul(pw1[F2Poly::exp_of(k, others[0])], pw2[F2Poly::exp_of(k, others[1])]);
}

bool gf16_univ_gcd_is_one(std::vector<uint16_t> a, std::vector<uint16_t> b) {
  auto deg = [](const std::vector<uint16_t>& p) {
    for (size_t i = p.size(); i-- > 0;)
      if (p[i]) return int(i);
    return -1;
  };
  int da = deg(a), db = deg(b);
  if (da < db) {
    std::swap(a, b);
    std::swap(da, db);
  }
  while (db >= 0) {
    uint16_t lb = gf16::inv(b[size_t(db)]);
    while (da >= db) {
      uint16_t c = gf16::mul(a[size_t(da)], lb);
      for (int i = 0; i <= db; ++i)
        a[size_t(da - db + i)] ^= gf16::mul(c, b[size_t(i)]);
      while (da >= 0 && !a[size_t(da)]) --da;
      if (da < 0) break;
    }
    std::swap(a, b);
    std::swap(da, db);
  }
  return da == 0;  // gcd is a nonzero constant
}

// Certifies gcd(f, g) = 1. A common factor must have positive degree in some
// variable shared by f and g; a specialization of the other variables that
// preserves both leading coefficients also preserves divisibility by that
// factor, so a coprime specialized pair rules it out. False = inconclusive.
bool certified_coprime(const F2Poly& f, const F2Poly& g) {
  std::vector<uint16_t> ea, eb;
  for (int v = 0; v < 3; ++v) {
    unsigned df = f.degree(v), dg = g.degree(v);
    if (df == 0 || dg == 0) continue;  // no common factor lives in v alone
    bool done = false;
    for (int attempt = 0; attempt < 2 && !done; ++attempt) {
      evaluate_except(f, v, kEvalPoints[attempt][0], kEvalPoints[attempt][1], ea);
      evaluate_except(g, v, kEvalPoints[attempt][0], kEvalPoints[attempt][1], eb);
      if (!ea[df] || !eb[dg]) continue;  // degree dropped, retry
      if (gf16_univ_gcd_is_one(ea, eb)) done = true;
    }
    if (!done) return false;
  }
  return true;
}

// Caches the numerator-side evaluations while one numerator is reduced
// against a whole factor list.
class CoprimeFilter {
 public:
  explicit CoprimeFilter(const F2Poly* num) : num_(num) {}

  void reset(const F2Poly* num) {
    num_ = num;
    for (auto& s : state_) s = State::Unknown;
  }

  // Certified gcd(num, f) = 1? False = inconclusive.
  bool coprime(const F2Poly& f) {
    std::vector<uint16_t> eb;
    for (int v = 0; v < 3; ++v) {
      unsigned df = num_->degree(v), dg = f.degree(v);
      if (df == 0 || dg == 0) continue;
      if (state_[v] == State::Unknown) {
        evaluate_except(*num_, v, kEvalPoints[0][0], kEvalPoints[0][1], evals_[v]);
        state_[v] = evals_[v][df] ? State::Good : State::Bad;
      }
      if (state_[v] == State::Bad) return false;
      evaluate_except(f, v, kEvalPoints[0][0], kEvalPoints[0][1], eb);
      if (!eb[dg]) return false;
      if (!gf16_univ_gcd_is_one(evals_[v], eb)) return false;
    }
    return true;
  }

 private:
  enum class State { Unknown, Good, Bad };
  const F2Poly* num_;
  std::array<std::vector<uint16_t>, 3> evals_;
  std::array<State, 3> state_ = {State::Unknown, State::Unknown, State::Unknown};
};

// ---- tiny-operand path -----------------------------------------------------

// Irreducible factors with multiplicity of a polynomial of total degree <= 2
// (after monomial content was stripped). A degree-2 polynomial without linear
// factors is irreducible.
void factor_small(const F2Poly& p, std::vector<F2Poly>& out) {
  if (p.is_one()) return;
  if (p.total_degree() == 1) {
    out.push_back(p);
    return;
  }
  for (unsigned mask = 1; mask < 8; ++mask) {
    for (unsigned c0 = 0; c0 < 2; ++c0) {
      std::vector<F2Poly::Key> terms;
      if (c0) terms.push_back(0);
      for (int v = 0; v < 3; ++v)
        if (mask >> unsigned(v) & 1) terms.push_back(F2Poly::Key(1) << (F2Poly::kShift * (2 - v)));
      F2Poly lin = F2Poly::from_terms(std::move(terms));
      F2Poly q;
      if (F2Poly::try_div_exact(p, lin, q)) {
        out.push_back(lin);
        factor_small(q, out);
        return;
      }
    }
  }
  out.push_back(p);  // irreducible quadratic
}

// gcd(a, small) where small has total degree <= 2: trial division by the
// irreducible factors of the small side.
F2Poly gcd_small(const F2Poly& a, const F2Poly& small) {
  std::vector<F2Poly> factors;
  factor_small(small, factors);
  F2Poly g = F2Poly::one();
  F2Poly rest = a;
  for (const F2Poly& p : factors) {
    F2Poly q;
    if (F2Poly::try_div_exact(rest, p, q)) {
      rest = std::move(q);
      g = g * p;
    }
  }
  return g;
}

}  // namespace

// Heap-based exact division (after Monagan-Pearce). The remainder is never
// materialized: its leading term is discovered by merging the descending
// stream of a with one pending stream per emitted quotient term, with GF(2)
// parity doing the cancellation.
bool F2Poly::try_div_exact(const F2Poly& a, const F2Poly& b, F2Poly& quotient) {
  if (b.is_zero()) return false;
  if (a.is_zero()) {
    quotient = F2Poly();
    return true;
  }
  const std::vector<Key>& bt = b.terms_;
  const Key lead_b = bt.back();
  const size_t nb = bt.size();

  struct Entry {
    Key key;
    uint32_t qi;
    uint32_t bj;
    bool operator<(const Entry& o) const { return key < o.key; }
  };
  std::priority_queue<Entry> heap;
  std::vector<Key> q;
  size_t ai = a.terms_.size();  // descending cursor, points one past

  for (;;) {
    bool have = false;
    Key m = 0;
    if (ai > 0) {
      m = a.terms_[ai - 1];
      have = true;
    }
    if (!heap.empty() && (!have || heap.top().key > m)) {
      m = heap.top().key;
      have = true;
    }
    if (!have) break;
    unsigned parity = 0;
    if (ai > 0 && a.terms_[ai - 1] == m) {
      parity ^= 1;
      --ai;
    }
    while (!heap.empty() && heap.top().key == m) {
      Entry e = heap.top();
      heap.pop();
      parity ^= 1;
      if (e.bj > 0) heap.push(Entry{q[e.qi] + bt[e.bj - 1], e.qi, e.bj - 1});
    }
    if (!parity) continue;
    if (!monomial_divides(lead_b, m)) return false;
    Key qk = m - lead_b;
    q.push_back(qk);
    if (nb >= 2) heap.push(Entry{qk + bt[nb - 2], uint32_t(q.size() - 1), uint32_t(nb - 2)});
  }
  std::reverse(q.begin(), q.end());
  quotient = F2Poly::from_sorted_unique(std::move(q));
  return true;
}

F2Poly F2Poly::div_exact(const F2Poly& a, const F2Poly& b) {
  if (b.is_zero()) fail(Err::DivisionByZero, "polynomial division by zero");
  F2Poly q;
  if (!try_div_exact(a, b, q)) fail(Err::Internal, "inexact polynomial division");
  return q;
}

F2Poly F2Poly::gcd(const F2Poly& a, const F2Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a == b) return a;
  if (a.is_one() || b.is_one()) return F2Poly::one();

  // Split off the monomial content first; it is cheap and often decisive.
  Key ma = monomial_gcd_key(a);
  Key mb = monomial_gcd_key(b);
  unsigned ce[3];
  for (int v = 0; v < 3; ++v) ce[v] = std::min(exp_of(ma, v), exp_of(mb, v));
  F2Poly common = F2Poly::monomial(ce[0], ce[1], ce[2]);
  F2Poly fa = shift_down(a, ma);
  F2Poly fb = shift_down(b, mb);
  if (fa.is_one() || fb.is_one()) return common;

  const int va = single_variable(fa), vb = single_variable(fb);
  if (va >= 0 && va == vb) return common * gcd_univariate(fa, fb, va);
  if (va >= 0 && vb >= 0 && va != vb) return common;  // disjoint variables

  if (fa.total_degree() <= 2) return common * gcd_small(fb, fa);
  if (fb.total_degree() <= 2) return common * gcd_small(fa, fb);

  if (certified_coprime(fa, fb)) return common;

  // Main variable: present in both, smallest of the larger degrees.
  int var = -1;
  unsigned best = ~0u;
  for (int v = 0; v < 3; ++v) {
    unsigned da = fa.degree(v), db = fb.degree(v);
    if (da == 0 || db == 0) continue;
    unsigned m = std::max(da, db);
    if (m < best) {
      best = m;
      var = v;
    }
  }
  if (var < 0) return common;  // no shared variable: coprime up to the monomial part

  F2Poly ca = content_wrt(fa, var);
  F2Poly cb = content_wrt(fb, var);
  F2Poly c = gcd(ca, cb);
  F2Poly f = div_exact(fa, ca);
  F2Poly g = div_exact(fb, cb);
  if (f.degree(var) < g.degree(var)) std::swap(f, g);

  // Subresultant PRS (Brown); over GF(2) all signs collapse. The remainder at
  // each step divides exactly by gg * hh^delta from the previous step.
  F2Poly gg = F2Poly::one();
  F2Poly hh = F2Poly::one();
  while (true) {
    const unsigned delta = f.degree(var) - g.degree(var);
    F2Poly r = prem(f, g, var);
    if (r.is_zero()) break;
    if (r.degree(var) == 0) {
      g = F2Poly::one();
      break;
    }
    F2Poly lcb = coeff_wrt(g, var, g.degree(var));
    f = g;
    F2Poly div = gg;
    for (unsigned i = 0; i < delta; ++i) div = div * hh;
    g = div_exact(r, div);
    gg = lcb;
    if (delta == 1) {
      hh = gg;
    } else if (delta >= 2) {
      F2Poly num = gg;
      for (unsigned i = 1; i < delta; ++i) num = num * gg;
      F2Poly den = hh;
      for (unsigned i = 2; i < delta; ++i) den = den * hh;  // hh^(delta-1)
      hh = div_exact(num, den);
    }
  }
  F2Poly gc = content_wrt(g, var);
  return common * c * div_exact(g, gc);
}

std::string F2Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!out.empty()) out += "+";
    Key k = *it;
    if (k == 0) {
      out += "1";
      continue;
    }
    bool first = true;
    static const char* names[3] = {"t1", "t2", "t3"};
    for (int v = 0; v < 3; ++v) {
      unsigned e = exp_of(k, v);
      if (e == 0) continue;
      if (!first) out += "*";
      out += names[v];
      if (e > 1) out += "^" + std::to_string(e);
      first = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// F2Frac
// ---------------------------------------------------------------------------

F2Frac F2Frac::from_parts(F2Poly num, std::vector<F2Poly> factors) {
  F2Frac r;
  if (num.is_zero()) return r;
  std::vector<F2Poly> kept;
  kept.reserve(factors.size());
  // Cheap kills first: structural duplicates were already cancelled by the
  // callers; here each factor is reduced against the numerator on its own.
  std::sort(factors.begin(), factors.end(),
            [](const F2Poly& x, const F2Poly& y) { return x.term_count() < y.term_count(); });
  CoprimeFilter filter(&num);
  for (F2Poly& f : factors) {
    if (f.is_one()) continue;
    if (num.is_one()) {
      kept.push_back(std::move(f));
      continue;
    }
    // Most factors are coprime to the numerator; certify that without a gcd.
    if (filter.coprime(f)) {
      kept.push_back(std::move(f));
      continue;
    }
    if (f.total_degree() > 2) {
      // Factors born from inversions tend to cancel whole when they are not
      // coprime; try the cheap division before a full gcd.
      F2Poly q;
      if (F2Poly::try_div_exact(num, f, q)) {
        num = std::move(q);
        filter.reset(&num);
        continue;
      }
    }
    F2Poly g = F2Poly::gcd(num, f);
    if (!g.is_one()) {
      num = F2Poly::div_exact(num, g);
      f = F2Poly::div_exact(f, g);
      filter.reset(&num);
    }
    if (!f.is_one()) kept.push_back(std::move(f));
  }
  std::sort(kept.begin(), kept.end());
  F2Poly den = F2Poly::one();
  for (const F2Poly& f : kept) den = den * f;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.factors_ = std::move(kept);
  return r;
}

F2Frac::F2Frac(F2Poly num, F2Poly den) {
  if (den.is_zero()) fail(Err::DivisionByZero, "fraction with zero denominator");
  std::vector<F2Poly> factors;
  if (!den.is_one()) factors.push_back(std::move(den));
  *this = from_parts(std::move(num), std::move(factors));
}

namespace {

// Splits the factor multisets of two fractions into (common, only-a, only-b),
// matching factors by structural equality. Inputs are sorted.
void split_factors(const std::vector<F2Poly>& a, const std::vector<F2Poly>& b,
                   std::vector<F2Poly>& common, std::vector<F2Poly>& only_a,
                   std::vector<F2Poly>& only_b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      common.push_back(a[i]);
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      only_a.push_back(a[i++]);
    } else {
      only_b.push_back(b[j++]);
    }
  }
  only_a.insert(only_a.end(), a.begin() + long(i), a.end());
  only_b.insert(only_b.end(), b.begin() + long(j), b.end());
}

F2Poly product_of(const std::vector<F2Poly>& fs) {
  F2Poly p = F2Poly::one();
  for (const F2Poly& f : fs) p = p * f;
  return p;
}

}  // namespace

F2Frac operator+(const F2Frac& a, const F2Frac& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::vector<F2Poly> common, ra, rb;
  split_factors(a.factors_, b.factors_, common, ra, rb);
  F2Poly num = a.num_ * product_of(rb) + b.num_ * product_of(ra);
  std::vector<F2Poly> factors = std::move(common);
  factors.insert(factors.end(), ra.begin(), ra.end());
  factors.insert(factors.end(), rb.begin(), rb.end());
  return F2Frac::from_parts(std::move(num), std::move(factors));
}

F2Frac operator*(const F2Frac& a, const F2Frac& b) {
  if (a.is_zero() || b.is_zero()) return F2Frac();
  std::vector<F2Poly> factors = a.factors_;
  factors.insert(factors.end(), b.factors_.begin(), b.factors_.end());
  return F2Frac::from_parts(a.num_ * b.num_, std::move(factors));
}

F2Frac F2Frac::inverted() const {
  if (is_zero()) fail(Err::DivisionByZero, "inverse of zero");
  F2Frac r;
  r.num_ = den_;
  r.den_ = num_;
  if (!num_.is_one()) r.factors_ = {num_};
  return r;
}

F2Frac F2Frac::sum_of_triples(const std::vector<std::array<const F2Frac*, 3>>& triples) {
  // Common denominator as a factor multiset: per factor value, the largest
  // multiplicity any term needs. Each term then scales by its residue.
  std::vector<std::vector<F2Poly>> dens;
  dens.reserve(triples.size());
  std::vector<F2Poly> common;
  for (const auto& t : triples) {
    if (t[0]->is_zero() || t[1]->is_zero() || t[2]->is_zero()) {
      dens.emplace_back();
      continue;
    }
    std::vector<F2Poly> d;
    d.reserve(t[0]->factors_.size() + t[1]->factors_.size() + t[2]->factors_.size());
    for (const F2Frac* f : t)
      d.insert(d.end(), f->factors_.begin(), f->factors_.end());
    std::sort(d.begin(), d.end());
    // common = multiset max of (common, d)
    std::vector<F2Poly> merged;
    size_t i = 0, j = 0;
    while (i < common.size() || j < d.size()) {
      if (i == common.size()) {
        merged.push_back(d[j++]);
      } else if (j == d.size()) {
        merged.push_back(common[i++]);
      } else if (common[i] == d[j]) {
        merged.push_back(common[i]);
        ++i;
        ++j;
      } else if (common[i] < d[j]) {
        merged.push_back(common[i++]);
      } else {
        merged.push_back(d[j++]);
      }
    }
    common = std::move(merged);
    dens.push_back(std::move(d));
  }

  // Factor lists per term: the three numerators plus the residue of the
  // common denominator over this term's own denominator.
  std::vector<std::vector<const F2Poly*>> term_polys;
  term_polys.reserve(triples.size());
  unsigned d1 = 0, d2 = 0, d3 = 0;
  for (size_t t = 0; t < triples.size(); ++t) {
    const auto& tr = triples[t];
    if (tr[0]->is_zero() || tr[1]->is_zero() || tr[2]->is_zero()) continue;
    std::vector<const F2Poly*> polys = {&tr[0]->num_, &tr[1]->num_, &tr[2]->num_};
    size_t i = 0, j = 0;
    const std::vector<F2Poly>& d = dens[t];
    while (i < common.size()) {
      if (j < d.size() && common[i] == d[j]) {
        ++i;
        ++j;
      } else if (j < d.size() && d[j] < common[i]) {
        ++j;
      } else {
        polys.push_back(&common[i]);
        ++i;
      }
    }
    unsigned e1 = 0, e2 = 0, e3 = 0;
    for (const F2Poly* p : polys) {
      e1 += p->degree(0);
      e2 += p->degree(1);
      e3 += p->degree(2);
    }
    d1 = std::max(d1, e1);
    d2 = std::max(d2, e2);
    d3 = std::max(d3, e3);
    term_polys.push_back(std::move(polys));
  }

  F2Poly num;
  if (DenseAcc::fits(d1, d2, d3)) {
    // Multiply everything but the largest factor, then flip the final cross
    // product straight into one shared grid; cancellation happens there.
    DenseAcc acc(d1, d2, d3);
    const F2Poly one = F2Poly::one();
    for (auto& polys : term_polys) {
      std::sort(polys.begin(), polys.end(), [](const F2Poly* x, const F2Poly* y) {
        return x->term_count() < y->term_count();
      });
      F2Poly partial = one;
      for (size_t i = 0; i + 1 < polys.size(); ++i) partial = partial * *polys[i];
      if (partial.is_zero()) continue;
      acc.accumulate_product(partial.terms(), polys.back()->terms());
    }
    num = acc.extract();
  } else {
    std::vector<F2Poly::Key> keys;
    for (const auto& polys : term_polys) {
      F2Poly p = *polys[0];
      for (size_t i = 1; i < polys.size(); ++i) p = p * *polys[i];
      keys.insert(keys.end(), p.terms().begin(), p.terms().end());
    }
    num = F2Poly::from_terms(std::move(keys));
  }
  return from_parts(std::move(num), std::move(common));
}

std::string F2Frac::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

namespace {

mpq_class make_mpq(long num, long den) {
  mpq_class q(num, den);
  mpq_canonicalize(q.get_mpq_t());
  return q;
}

}  // namespace

FieldElement FieldElement::zero(FieldKind k) {
  switch (k) {
    case FieldKind::Rationals: return FieldElement(mpq_class(0));
    case FieldKind::RealQuadratic: return FieldElement(QuadExt());
    case FieldKind::Char2Function: return FieldElement(F2Frac());
  }
  fail(Err::Internal, "bad field kind");
}

FieldElement FieldElement::one(FieldKind k) { return from_int(k, 1); }

FieldElement FieldElement::from_int(FieldKind k, long n) {
  switch (k) {
    case FieldKind::Rationals: return FieldElement(mpq_class(n));
    case FieldKind::RealQuadratic: return FieldElement(QuadExt(mpq_class(n), mpq_class(0)));
    case FieldKind::Char2Function:
      return FieldElement((n % 2 + 2) % 2 == 1 ? F2Frac::one() : F2Frac::zero());
  }
  fail(Err::Internal, "bad field kind");
}

FieldElement FieldElement::rational(FieldKind k, long num, long den) {
  switch (k) {
    case FieldKind::Rationals: return FieldElement(make_mpq(num, den));
    case FieldKind::RealQuadratic: return FieldElement(QuadExt(make_mpq(num, den), mpq_class(0)));
    case FieldKind::Char2Function: {
      long n = ((num % 2) + 2) % 2;
      long d = ((den % 2) + 2) % 2;
      if (d == 0) fail(Err::DivisionByZero, "even denominator in characteristic 2");
      return from_int(k, n);
    }
  }
  fail(Err::Internal, "bad field kind");
}

FieldElement FieldElement::sqrt2() { return FieldElement(QuadExt(mpq_class(0), mpq_class(1))); }

FieldElement FieldElement::variable(int i) {
  return FieldElement(F2Frac(F2Poly::variable(i), F2Poly::one()));
}

bool FieldElement::is_zero() const {
  switch (kind()) {
    case FieldKind::Rationals: return std::get<mpq_class>(v_) == 0;
    case FieldKind::RealQuadratic: return std::get<QuadExt>(v_).is_zero();
    case FieldKind::Char2Function: return std::get<F2Frac>(v_).is_zero();
  }
  return false;
}

bool FieldElement::is_one() const { return *this == one(kind()); }

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.kind() != b.kind()) fail(Err::FieldMismatch, "elements of different fields");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  switch (a.kind()) {
    case FieldKind::Rationals:
      return FieldElement::of(mpq_class(a.as_rational() + b.as_rational()));
    case FieldKind::RealQuadratic: {
      const QuadExt &x = a.as_quadratic(), &y = b.as_quadratic();
      return FieldElement::of(QuadExt(x.u + y.u, x.v + y.v));
    }
    case FieldKind::Char2Function: return FieldElement::of(a.as_f2frac() + b.as_f2frac());
  }
  fail(Err::Internal, "bad field kind");
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  switch (a.kind()) {
    case FieldKind::Rationals:
      return FieldElement::of(mpq_class(a.as_rational() * b.as_rational()));
    case FieldKind::RealQuadratic: {
      const QuadExt &x = a.as_quadratic(), &y = b.as_quadratic();
      // (u1 + v1 s)(u2 + v2 s) with s^2 = 2
      return FieldElement::of(QuadExt(x.u * y.u + 2 * x.v * y.v, x.u * y.v + x.v * y.u));
    }
    case FieldKind::Char2Function: return FieldElement::of(a.as_f2frac() * b.as_f2frac());
  }
  fail(Err::Internal, "bad field kind");
}

FieldElement FieldElement::operator-() const {
  switch (kind()) {
    case FieldKind::Rationals: return FieldElement::of(mpq_class(-as_rational()));
    case FieldKind::RealQuadratic: {
      const QuadExt& x = as_quadratic();
      return FieldElement::of(QuadExt(-x.u, -x.v));
    }
    case FieldKind::Char2Function: return *this;  // -x = x in characteristic 2
  }
  fail(Err::Internal, "bad field kind");
}

FieldElement FieldElement::inverted() const {
  if (is_zero()) fail(Err::DivisionByZero, "inverse of zero field element");
  switch (kind()) {
    case FieldKind::Rationals: return FieldElement::of(mpq_class(1 / as_rational()));
    case FieldKind::RealQuadratic: {
      const QuadExt& x = as_quadratic();
      mpq_class n = x.u * x.u - 2 * x.v * x.v;  // nonzero: sqrt2 is irrational
      return FieldElement::of(QuadExt(x.u / n, -x.v / n));
    }
    case FieldKind::Char2Function: return FieldElement::of(as_f2frac().inverted());
  }
  fail(Err::Internal, "bad field kind");
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FieldKind::Rationals: return a.as_rational() == b.as_rational();
    case FieldKind::RealQuadratic: return a.as_quadratic() == b.as_quadratic();
    case FieldKind::Char2Function: return a.as_f2frac() == b.as_f2frac();
  }
  return false;
}

FieldElement FieldElement::galois_conjugate() const {
  if (kind() != FieldKind::RealQuadratic)
    fail(Err::UnsupportedField, "Galois conjugation requires Q(sqrt2)");
  const QuadExt& x = as_quadratic();
  return FieldElement::of(QuadExt(x.u, -x.v));
}

const mpq_class& FieldElement::as_rational() const {
  if (kind() != FieldKind::Rationals) fail(Err::FieldMismatch, "not a rational");
  return std::get<mpq_class>(v_);
}

const QuadExt& FieldElement::as_quadratic() const {
  if (kind() != FieldKind::RealQuadratic) fail(Err::FieldMismatch, "not in Q(sqrt2)");
  return std::get<QuadExt>(v_);
}

const F2Frac& FieldElement::as_f2frac() const {
  if (kind() != FieldKind::Char2Function) fail(Err::FieldMismatch, "not in F2(t1,t2,t3)");
  return std::get<F2Frac>(v_);
}

FieldElement FieldElement::recanonicalized() const {
  switch (kind()) {
    case FieldKind::Rationals: {
      mpq_class q = as_rational();
      mpq_canonicalize(q.get_mpq_t());
      return FieldElement::of(std::move(q));
    }
    case FieldKind::RealQuadratic: {
      QuadExt x = as_quadratic();
      mpq_canonicalize(x.u.get_mpq_t());
      mpq_canonicalize(x.v.get_mpq_t());
      return FieldElement::of(std::move(x));
    }
    case FieldKind::Char2Function: {
      const F2Frac& f = as_f2frac();
      return FieldElement::of(F2Frac(f.num(), f.den()));
    }
  }
  fail(Err::Internal, "bad field kind");
}

namespace {

std::string rat_str(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rat(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) fail(Err::BadInput, "bad rational '" + s + "'");
  if (q.get_den() == 0) fail(Err::BadInput, "zero denominator in '" + s + "'");
  mpq_canonicalize(q.get_mpq_t());
  return q;
}

json poly_to_json(const F2Poly& p) {
  json arr = json::array();
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it)
    arr.push_back({F2Poly::exp_of(*it, 0), F2Poly::exp_of(*it, 1), F2Poly::exp_of(*it, 2)});
  return arr;
}

F2Poly poly_from_json(const json& j) {
  if (!j.is_array()) fail(Err::BadInput, "polynomial must be an array of exponent triples");
  std::vector<F2Poly::Key> terms;
  for (const auto& m : j) {
    if (!m.is_array() || m.size() != 3) fail(Err::BadInput, "bad exponent triple");
    unsigned e[3];
    for (int v = 0; v < 3; ++v) {
      long x = m[v].get<long>();
      if (x < 0 || x >= (1L << F2Poly::kShift)) fail(Err::BadInput, "exponent out of range");
      e[v] = unsigned(x);
    }
    terms.push_back((F2Poly::Key(e[0]) << (2 * F2Poly::kShift)) |
                    (F2Poly::Key(e[1]) << F2Poly::kShift) | F2Poly::Key(e[2]));
  }
  return F2Poly::from_terms(std::move(terms));
}

}  // namespace

json FieldElement::to_json() const {
  switch (kind()) {
    case FieldKind::Rationals: return rat_str(as_rational());
    case FieldKind::RealQuadratic: {
      const QuadExt& x = as_quadratic();
      return json::array({rat_str(x.u), rat_str(x.v)});
    }
    case FieldKind::Char2Function: {
      const F2Frac& f = as_f2frac();
      return json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
    }
  }
  fail(Err::Internal, "bad field kind");
}

FieldElement FieldElement::from_json(FieldKind k, const json& j) {
  switch (k) {
    case FieldKind::Rationals:
      if (!j.is_string()) fail(Err::BadInput, "rational must be a string");
      return FieldElement::of(parse_rat(j.get<std::string>()));
    case FieldKind::RealQuadratic: {
      if (!j.is_array() || j.size() != 2) fail(Err::BadInput, "Q(sqrt2) element must be a pair");
      return FieldElement::of(
          QuadExt(parse_rat(j[0].get<std::string>()), parse_rat(j[1].get<std::string>())));
    }
    case FieldKind::Char2Function: {
      if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        fail(Err::BadInput, "F2(t) element must be {num, den}");
      return FieldElement::of(F2Frac(poly_from_json(j["num"]), poly_from_json(j["den"])));
    }
  }
  fail(Err::Internal, "bad field kind");
}

std::string FieldElement::str() const {
  switch (kind()) {
    case FieldKind::Rationals: {
      const mpq_class& q = as_rational();
      return q.get_str();
    }
    case FieldKind::RealQuadratic: {
      const QuadExt& x = as_quadratic();
      return x.u.get_str() + (sgn(x.v) >= 0 ? "+" : "") + x.v.get_str() + "*sqrt2";
    }
    case FieldKind::Char2Function: return as_f2frac().str();
  }
  fail(Err::Internal, "bad field kind");
}

namespace {

mpq_class sample_rat(SplitMix64& rng, int height) {
  long num = rng.range(-height, height);
  long den = rng.range(1, height);
  mpq_class q(num, den);
  mpq_canonicalize(q.get_mpq_t());
  return q;
}

F2Poly sample_poly(SplitMix64& rng, int max_terms) {
  // Monomials of total degree <= 2 in t1,t2,t3.
  static const unsigned kMono[10][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0},
                                        {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  int cnt = int(rng.below(uint64_t(max_terms + 1)));
  std::vector<F2Poly::Key> terms;
  for (int i = 0; i < cnt; ++i) {
    const unsigned* m = kMono[rng.below(10)];
    terms.push_back((F2Poly::Key(m[0]) << (2 * F2Poly::kShift)) |
                    (F2Poly::Key(m[1]) << F2Poly::kShift) | F2Poly::Key(m[2]));
  }
  return F2Poly::from_terms(std::move(terms));
}

}  // namespace

FieldElement FieldElement::sample(FieldKind k, SplitMix64& rng, int height) {
  switch (k) {
    case FieldKind::Rationals: return FieldElement::of(sample_rat(rng, height));
    case FieldKind::RealQuadratic:
      return FieldElement::of(QuadExt(sample_rat(rng, height), sample_rat(rng, height)));
    case FieldKind::Char2Function: {
      // height controls the sparsity here: at most min(height, 4) monomials
      int terms = height < 1 ? 1 : (height > 4 ? 4 : height);
      F2Poly num = sample_poly(rng, terms);
      F2Poly den = sample_poly(rng, terms);
      while (den.is_zero()) den = sample_poly(rng, terms);
      return FieldElement::of(F2Frac(std::move(num), std::move(den)));
    }
  }
  fail(Err::Internal, "bad field kind");
}

FieldElement FieldElement::sample_nonzero(FieldKind k, SplitMix64& rng, int height) {
  for (;;) {
    FieldElement x = sample(k, rng, height);
    if (!x.is_zero()) return x;
  }
}

namespace {

// Accumulates terms n_i/d_i and reduces once at the end. All scratch is
// reused across calls to keep GMP allocation churn out of the hot path.
class RatAccum {
 public:
  void reset() { count_ = 0; }

  // slot to write num/den of the next term into
  mpz_class& num_slot() {
    if (count_ >= nums_.size()) {
      nums_.emplace_back();
      dens_.emplace_back();
    }
    return nums_[count_];
  }
  mpz_class& den_slot() { return dens_[count_]; }
  void commit() {
    if (nums_[count_] != 0) ++count_;
  }

  mpq_class result() {
    if (count_ == 0) return mpq_class(0);
    if (suffix_.size() < count_ + 1) suffix_.resize(count_ + 1);
    suffix_[count_] = 1;
    for (size_t i = count_; i-- > 0;)
      mpz_mul(suffix_[i].get_mpz_t(), dens_[i].get_mpz_t(), suffix_[i + 1].get_mpz_t());
    acc_ = 0;
    prefix_ = 1;
    for (size_t i = 0; i < count_; ++i) {
      mpz_mul(scale_.get_mpz_t(), prefix_.get_mpz_t(), suffix_[i + 1].get_mpz_t());
      mpz_addmul(acc_.get_mpz_t(), nums_[i].get_mpz_t(), scale_.get_mpz_t());
      mpz_mul(prefix_.get_mpz_t(), prefix_.get_mpz_t(), dens_[i].get_mpz_t());
    }
    mpq_class q;
    mpz_set(mpq_numref(q.get_mpq_t()), acc_.get_mpz_t());
    mpz_set(mpq_denref(q.get_mpq_t()), suffix_[0].get_mpz_t());
    mpq_canonicalize(q.get_mpq_t());
    return q;
  }

 private:
  std::vector<mpz_class> nums_, dens_, suffix_;
  mpz_class acc_, prefix_, scale_;
  size_t count_ = 0;
};

thread_local RatAccum t_rat_acc;
thread_local RatAccum t_rat_acc2;

void put_triple(RatAccum& acc, const mpq_class& x, const mpq_class& y, const mpq_class& z,
                int coeff) {
  if (sgn(x) == 0 || sgn(y) == 0 || sgn(z) == 0) return;
  mpz_class& n = acc.num_slot();
  mpz_mul(n.get_mpz_t(), x.get_num().get_mpz_t(), y.get_num().get_mpz_t());
  mpz_mul(n.get_mpz_t(), n.get_mpz_t(), z.get_num().get_mpz_t());
  if (coeff == 2) mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), 1);
  mpz_class& d = acc.den_slot();
  mpz_mul(d.get_mpz_t(), x.get_den().get_mpz_t(), y.get_den().get_mpz_t());
  mpz_mul(d.get_mpz_t(), d.get_mpz_t(), z.get_den().get_mpz_t());
  acc.commit();
}

}  // namespace

FieldElement FieldElement::sum_of_products(
    FieldKind k, const std::vector<std::array<const FieldElement*, 3>>& triples) {
  switch (k) {
    case FieldKind::Char2Function: {
      std::vector<std::array<const F2Frac*, 3>> ptrs;
      ptrs.reserve(triples.size());
      for (const auto& t : triples)
        ptrs.push_back({&t[0]->as_f2frac(), &t[1]->as_f2frac(), &t[2]->as_f2frac()});
      return FieldElement::of(F2Frac::sum_of_triples(ptrs));
    }
    case FieldKind::Rationals: {
      RatAccum& acc = t_rat_acc;
      acc.reset();
      for (const auto& t : triples)
        put_triple(acc, t[0]->as_rational(), t[1]->as_rational(), t[2]->as_rational(), 1);
      return FieldElement::of(acc.result());
    }
    case FieldKind::RealQuadratic: {
      // (u1+v1 s)(u2+v2 s)(u3+v3 s) with s^2 = 2, expanded per component.
      RatAccum& u_acc = t_rat_acc;
      RatAccum& v_acc = t_rat_acc2;
      u_acc.reset();
      v_acc.reset();
      for (const auto& t : triples) {
        const QuadExt &a = t[0]->as_quadratic(), &b = t[1]->as_quadratic(),
                      &c = t[2]->as_quadratic();
        put_triple(u_acc, a.u, b.u, c.u, 1);
        put_triple(u_acc, a.u, b.v, c.v, 2);
        put_triple(u_acc, a.v, b.u, c.v, 2);
        put_triple(u_acc, a.v, b.v, c.u, 2);
        put_triple(v_acc, a.u, b.u, c.v, 1);
        put_triple(v_acc, a.u, b.v, c.u, 1);
        put_triple(v_acc, a.v, b.u, c.u, 1);
        put_triple(v_acc, a.v, b.v, c.v, 2);
      }
      return FieldElement::of(QuadExt(u_acc.result(), v_acc.result()));
    }
  }
  fail(Err::Internal, "bad field kind");
}

}  // namespace octplane
