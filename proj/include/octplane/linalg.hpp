#ifndef OCTPLANE_LINALG_HPP
#define OCTPLANE_LINALG_HPP

#include <optional>
#include <vector>

#include "octplane/fields.hpp"

namespace octplane {

// Dense exact linear algebra over a FieldElement field. Dimensions here are
// tiny (at most 8x9), so plain Gauss-Jordan with first-nonzero pivoting is
// all that is needed.

using Vec = std::vector<FieldElement>;
using Mat = std::vector<Vec>;

Mat mat_identity(FieldKind k, size_t n);

/// Reduced row echelon form in place; returns pivot column indices.
std::vector<size_t> rref(Mat& m);

/// Particular solution of A x = b with free variables set to zero, or nullopt
/// when the system is inconsistent. A is m x n, b has size m.
std::optional<Vec> solve_linear(const Mat& a, const Vec& b);

/// Basis of the kernel of the m x n matrix A, deterministic (one vector per
/// free column, in column order).
std::vector<Vec> kernel_basis(const Mat& a);

size_t rank(Mat a);

/// Inverse of a square matrix; throws SingularFrame when singular.
Mat mat_inverse(const Mat& a);

Vec mat_apply(const Mat& a, const Vec& x);

}  // namespace octplane

#endif
