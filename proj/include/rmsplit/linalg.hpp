#pragma once

#include <vector>

#include "rmsplit/intmath.hpp"

namespace rmsplit {

// Small dense integer matrices, row-major. Sizes here stay tiny (<= 4x8),
// with i128 intermediates guarding against overflow.
using IntMat = std::vector<std::vector<i64>>;

IntMat identity_mat(int n);
IntMat mat_mul(const IntMat& A, const IntMat& B);
IntMat transpose(const IntMat& A);
i128 det_mat_wide(const IntMat& A);  // Bareiss, square A
i64 det_mat(const IntMat& A);        // narrowing variant
int rank_mat(IntMat A);

// Row-style Hermite normal form: returns a basis (as rows) of the row space
// of A over Z, rank rows, in echelon form.
IntMat hnf_rows(IntMat A);

// Elementary divisors (Smith normal form diagonal, nonnegative, sorted
// by divisibility) of A.
std::vector<i64> smith_diagonal(IntMat A);

// Basis (as rows) of the integer kernel {x : x A = 0} of A (left kernel).
IntMat left_kernel(const IntMat& A);

// True iff v lies in the Z-row-span of basis B (B has full row rank).
bool in_row_span(const IntMat& B, const std::vector<i64>& v);

}  // namespace rmsplit
