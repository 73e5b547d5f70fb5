#include "rmsplit/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace rmsplit {

namespace {

i64 floordiv(i64 p, i64 q) {
  i64 r = p / q;
  if ((p % q != 0) && ((p < 0) != (q < 0))) --r;
  return r;
}

void row_axpy(std::vector<i64>& dst, const std::vector<i64>& src, i64 k) {
  for (size_t j = 0; j < dst.size(); ++j)
    dst[j] = narrow((i128)dst[j] + (i128)k * src[j]);
}

}  // namespace

IntMat identity_mat(int n) {
  IntMat I(n, std::vector<i64>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

IntMat mat_mul(const IntMat& A, const IntMat& B) {
  size_t m = A.size(), k = B.size(), n = B.empty() ? 0 : B[0].size();
  IntMat C(m, std::vector<i64>(n, 0));
  for (size_t i = 0; i < m; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (A[i][l] == 0) continue;
      for (size_t j = 0; j < n; ++j)
        C[i][j] = narrow((i128)C[i][j] + (i128)A[i][l] * B[l][j]);
    }
  return C;
}

IntMat transpose(const IntMat& A) {
  size_t m = A.size(), n = A.empty() ? 0 : A[0].size();
  IntMat T(n, std::vector<i64>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) T[j][i] = A[i][j];
  return T;
}

i128 det_mat_wide(const IntMat& A) {
  int n = (int)A.size();
  if (n == 0) return 1;
  std::vector<std::vector<i128>> M(n, std::vector<i128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M[i][j] = A[i][j];
  i128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (M[i][k] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

i64 det_mat(const IntMat& A) { return narrow(det_mat_wide(A)); }

IntMat hnf_rows(IntMat A) {
  size_t m = A.size();
  if (m == 0) return A;
  size_t n = A[0].size();
  size_t r = 0;
  for (size_t col = 0; col < n && r < m; ++col) {
    // gcd-eliminate column `col` among rows r..m-1
    while (true) {
      size_t best = m;
      for (size_t i = r; i < m; ++i)
        if (A[i][col] != 0 && (best == m || std::abs(A[i][col]) < std::abs(A[best][col])))
          best = i;
      if (best == m) break;  // column zero below r
      std::swap(A[r], A[best]);
      bool clean = true;
      for (size_t i = r + 1; i < m; ++i) {
        if (A[i][col] == 0) continue;
        i64 q = A[i][col] / A[r][col];
        row_axpy(A[i], A[r], -q);
        if (A[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (A[r][col] == 0) continue;
    if (A[r][col] < 0)
      for (auto& v : A[r]) v = -v;
    for (size_t i = 0; i < r; ++i) {
      i64 q = floordiv(A[i][col], A[r][col]);
      if (q != 0) row_axpy(A[i], A[r], -q);
    }
    ++r;
  }
  A.resize(r);
  return A;
}

int rank_mat(IntMat A) { return (int)hnf_rows(std::move(A)).size(); }

std::vector<i64> smith_diagonal(IntMat A) {
  size_t m = A.size();
  size_t n = m ? A[0].size() : 0;
  size_t t = 0;
  while (t < m && t < n) {
    // find a nonzero pivot in the trailing block
    size_t pi = m, pj = n;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j)
        if (A[i][j] != 0 && (pi == m || std::abs(A[i][j]) < std::abs(A[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    std::swap(A[t], A[pi]);
    for (size_t i = 0; i < m; ++i) std::swap(A[i][t], A[i][pj]);
    bool again = true;
    while (again) {
      again = false;
      for (size_t i = t + 1; i < m; ++i) {
        if (A[i][t] == 0) continue;
        i64 q = A[i][t] / A[t][t];
        row_axpy(A[i], A[t], -q);
        if (A[i][t] != 0) {
          std::swap(A[t], A[i]);
          again = true;
        }
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (A[t][j] == 0) continue;
        i64 q = A[t][j] / A[t][t];
        for (size_t i = 0; i < m; ++i)
          A[i][j] = narrow((i128)A[i][j] - (i128)q * A[i][t]);
        if (A[t][j] != 0) {
          for (size_t i = 0; i < m; ++i) std::swap(A[i][t], A[i][j]);
          again = true;
        }
      }
    }
    // divisibility: fold any entry not divisible by the pivot into column t
    bool redo = false;
    for (size_t i = t + 1; i < m && !redo; ++i)
      for (size_t j = t + 1; j < n && !redo; ++j)
        if (A[i][j] % A[t][t] != 0) {
          row_axpy(A[t], A[i], 1);
          redo = true;
        }
    if (redo) continue;
    ++t;
  }
  std::vector<i64> diag;
  for (size_t i = 0; i < t; ++i) diag.push_back(std::abs(A[i][i]));
  return diag;
}

IntMat left_kernel(const IntMat& A) {
  size_t m = A.size();
  size_t n = m ? A[0].size() : 0;
  IntMat ext(m, std::vector<i64>(n + m, 0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) ext[i][j] = A[i][j];
    ext[i][n + i] = 1;
  }
  // Unimodular row reduction of [A | I]: rows whose A-part vanished carry a
  // kernel basis in the I-part.  hnf_rows never drops rows of [A | I] since
  // the I-part keeps them independent.
  IntMat H = hnf_rows(std::move(ext));
  IntMat ker;
  for (auto& row : H) {
    bool zero = true;
    for (size_t j = 0; j < n; ++j)
      if (row[j] != 0) {
        zero = false;
        break;
      }
    if (!zero) continue;
    ker.push_back(std::vector<i64>(row.begin() + n, row.end()));
  }
  return ker;
}

bool in_row_span(const IntMat& B, const std::vector<i64>& v) {
  IntMat H = hnf_rows(B);
  std::vector<i64> w = v;
  for (auto& row : H) {
    size_t piv = 0;
    while (piv < row.size() && row[piv] == 0) ++piv;
    if (piv == row.size()) continue;
    if (w[piv] % row[piv] != 0) continue;
    row_axpy(w, row, -(w[piv] / row[piv]));
  }
  for (i64 c : w)
    if (c != 0) return false;
  return true;
}

}  // namespace rmsplit
