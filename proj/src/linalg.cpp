#include "octplane/linalg.hpp"

namespace octplane {

Mat mat_identity(FieldKind k, size_t n) {
  Mat m(n, Vec(n, FieldElement::zero(k)));
  for (size_t i = 0; i < n; ++i) m[i][i] = FieldElement::one(k);
  return m;
}

std::vector<size_t> rref(Mat& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    FieldElement inv = m[r][c].inverted();
    for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      FieldElement f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::optional<Vec> solve_linear(const Mat& a, const Vec& b) {
  if (a.empty()) return Vec{};
  const size_t rows = a.size(), cols = a[0].size();
  const FieldKind k = a[0][0].kind();
  Mat aug(rows, Vec(cols + 1, FieldElement::zero(k)));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  std::vector<size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // 0 = nonzero row
  Vec x(cols, FieldElement::zero(k));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

std::vector<Vec> kernel_basis(const Mat& a) {
  std::vector<Vec> basis;
  if (a.empty()) return basis;
  const size_t cols = a[0].size();
  const FieldKind k = a[0][0].kind();
  Mat m = a;
  std::vector<size_t> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  for (size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    Vec v(cols, FieldElement::zero(k));
    v[c] = FieldElement::one(k);
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

size_t rank(Mat a) { return rref(a).size(); }

Mat mat_inverse(const Mat& a) {
  const size_t n = a.size();
  const FieldKind k = a[0][0].kind();
  Mat aug(n, Vec(2 * n, FieldElement::zero(k)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = FieldElement::one(k);
  }
  std::vector<size_t> pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1)
    fail(Err::SingularFrame, "matrix is singular");
  Mat inv(n, Vec(n, FieldElement::zero(k)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

Vec mat_apply(const Mat& a, const Vec& x) {
  const FieldKind k = x.empty() ? FieldKind::Rationals : x[0].kind();
  Vec y(a.size(), FieldElement::zero(k));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j)
      if (!a[i][j].is_zero() && !x[j].is_zero()) y[i] = y[i] + a[i][j] * x[j];
  return y;
}

}  // namespace octplane
