#include "hecke/linalg.hpp"

#include "hecke/error.hpp"

namespace hecke {

FqMatrix fq_identity(const FqField& F, size_t n) {
  FqMatrix I(n, n, F.zero());
  for (size_t i = 0; i < n; ++i) I.at(i, i) = F.one();
  return I;
}

FqMatrix fq_zero_matrix(const FqField& F, size_t rows, size_t cols) {
  return FqMatrix(rows, cols, F.zero());
}

FqMatrix fq_mul(const FqField& F, const FqMatrix& A, const FqMatrix& B) {
  check_internal(A.cols == B.rows, "matrix product shape mismatch");
  FqMatrix R(A.rows, B.cols, F.zero());
  for (size_t i = 0; i < A.rows; ++i) {
    for (size_t k = 0; k < A.cols; ++k) {
      const Fq& aik = A.at(i, k);
      if (F.is_zero(aik)) continue;
      for (size_t j = 0; j < B.cols; ++j) {
        R.at(i, j) = F.add(R.at(i, j), F.mul(aik, B.at(k, j)));
      }
    }
  }
  return R;
}

FqMatrix fq_add(const FqField& F, const FqMatrix& A, const FqMatrix& B) {
  check_internal(A.rows == B.rows && A.cols == B.cols, "matrix sum shape mismatch");
  FqMatrix R = A;
  for (size_t i = 0; i < R.a.size(); ++i) R.a[i] = F.add(R.a[i], B.a[i]);
  return R;
}

FqMatrix fq_sub(const FqField& F, const FqMatrix& A, const FqMatrix& B) {
  check_internal(A.rows == B.rows && A.cols == B.cols, "matrix difference shape mismatch");
  FqMatrix R = A;
  for (size_t i = 0; i < R.a.size(); ++i) R.a[i] = F.sub(R.a[i], B.a[i]);
  return R;
}

FqMatrix fq_scale(const FqField& F, const Fq& c, const FqMatrix& A) {
  FqMatrix R = A;
  for (auto& x : R.a) x = F.mul(c, x);
  return R;
}

FqMatrix fq_transpose(const FqMatrix& A) {
  FqMatrix R(A.cols, A.rows, A.a.empty() ? Fq{} : A.a[0]);
  if (A.a.empty()) {
    R.rows = A.cols;
    R.cols = A.rows;
    return R;
  }
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t j = 0; j < A.cols; ++j) R.at(j, i) = A.at(i, j);
  return R;
}

bool fq_is_identity(const FqField& F, const FqMatrix& A) {
  if (A.rows != A.cols) return false;
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t j = 0; j < A.cols; ++j) {
      const Fq& x = A.at(i, j);
      if (i == j ? !F.is_one(x) : !F.is_zero(x)) return false;
    }
  return true;
}

bool fq_is_zero_matrix(const FqField& F, const FqMatrix& A) {
  for (const auto& x : A.a)
    if (!F.is_zero(x)) return false;
  return true;
}

FqMatrix fq_pow(const FqField& F, const FqMatrix& A, int64_t e) {
  check_internal(A.rows == A.cols, "matrix power needs a square matrix");
  if (e < 0) return fq_pow(F, fq_inverse(F, A), -e);
  FqMatrix result = fq_identity(F, A.rows);
  FqMatrix base = A;
  uint64_t n = static_cast<uint64_t>(e);
  while (n > 0) {
    if (n & 1) result = fq_mul(F, result, base);
    base = fq_mul(F, base, base);
    n >>= 1;
  }
  return result;
}

namespace {

// Row echelon reduction in place; returns pivot columns.
std::vector<size_t> echelonize(const FqField& F, FqMatrix& A) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < A.cols && row < A.rows; ++col) {
    size_t sel = row;
    while (sel < A.rows && F.is_zero(A.at(sel, col))) ++sel;
    if (sel == A.rows) continue;
    if (sel != row)
      for (size_t j = 0; j < A.cols; ++j) std::swap(A.at(sel, j), A.at(row, j));
    Fq inv = F.inv(A.at(row, col));
    for (size_t j = col; j < A.cols; ++j) A.at(row, j) = F.mul(inv, A.at(row, j));
    for (size_t i = 0; i < A.rows; ++i) {
      if (i == row || F.is_zero(A.at(i, col))) continue;
      Fq factor = A.at(i, col);
      for (size_t j = col; j < A.cols; ++j)
        A.at(i, j) = F.sub(A.at(i, j), F.mul(factor, A.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

size_t fq_rank(const FqField& F, FqMatrix A) { return echelonize(F, A).size(); }

FqMatrix fq_inverse(const FqField& F, const FqMatrix& A) {
  require(A.rows == A.cols, "only square matrices can be inverted");
  const size_t n = A.rows;
  FqMatrix aug(n, 2 * n, F.zero());
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, n + i) = F.one();
  }
  std::vector<size_t> pivots = echelonize(F, aug);
  require(pivots.size() == n && pivots[n - 1] == n - 1, "matrix is singular");
  FqMatrix R(n, n, F.zero());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) R.at(i, j) = aug.at(i, n + j);
  return R;
}

FqMatrix fq_right_nullspace(const FqField& F, FqMatrix A) {
  const size_t n = A.cols;
  std::vector<size_t> pivots = echelonize(F, A);
  std::vector<bool> is_pivot(n, false);
  for (size_t c : pivots) is_pivot[c] = true;
  FqMatrix basis(n - pivots.size(), n, F.zero());
  size_t out = 0;
  for (size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    basis.at(out, free_col) = F.one();
    for (size_t r = 0; r < pivots.size(); ++r) {
      // Row r reads x_{pivot[r]} + sum over free cols = 0.
      basis.at(out, pivots[r]) = F.neg(A.at(r, free_col));
    }
    ++out;
  }
  return basis;
}

size_t fq_left_nullity(const FqField& F, const FqMatrix& A) {
  return A.rows - fq_rank(F, A);
}

size_t fq_invariant_subspace_dim(const FqField& F, const std::vector<FqMatrix>& mats) {
  if (mats.empty()) throw ParameterError("invariant subspace of an empty family is undefined without a dimension");
  const size_t n = mats[0].rows;
  for (const auto& M : mats)
    require(M.rows == n && M.cols == n, "invariant subspace needs square matrices of equal size");
  // v is fixed iff v (M - I) = 0 for all M; stack the blocks horizontally.
  FqMatrix stacked(n, n * mats.size(), F.zero());
  for (size_t m = 0; m < mats.size(); ++m) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Fq v = mats[m].at(i, j);
        if (i == j) v = F.sub(v, F.one());
        stacked.at(i, m * n + j) = v;
      }
  }
  return fq_left_nullity(F, stacked);
}

FqMatrix fq_sandwich_operator(const FqField& F, const FqMatrix& A, const FqMatrix& B) {
  check_internal(A.rows == A.cols && B.rows == B.cols, "sandwich operator needs square factors");
  const size_t m = A.rows, n = B.rows;
  FqMatrix op(m * n, m * n, F.zero());
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t r = 0; r < m; ++r) {
        const Fq& ari = A.at(r, i);
        if (F.is_zero(ari)) continue;
        for (size_t c = 0; c < n; ++c) op.at(i * n + j, r * n + c) = F.mul(ari, B.at(j, c));
      }
  return op;
}

FqMatrix fq_intertwiner_system(const FqField& F, const FqMatrix& P, const FqMatrix& Q) {
  check_internal(P.rows == P.cols && Q.rows == Q.cols, "intertwiner system needs square matrices");
  const size_t m = P.rows, n = Q.rows;
  FqMatrix M(m * n, m * n, F.zero());
  // Equation (r,c): sum_i P[r,i] X[i,c] - sum_j X[r,j] Q[j,c] = 0.
  for (size_t r = 0; r < m; ++r)
    for (size_t c = 0; c < n; ++c) {
      for (size_t i = 0; i < m; ++i)
        M.at(i * n + c, r * n + c) = F.add(M.at(i * n + c, r * n + c), P.at(r, i));
      for (size_t j = 0; j < n; ++j)
        M.at(r * n + j, r * n + c) = F.sub(M.at(r * n + j, r * n + c), Q.at(j, c));
    }
  return M;
}

size_t fq_intertwiner_dim(const FqField& F, const std::vector<FqMatrix>& Ps,
                          const std::vector<FqMatrix>& Qs) {
  check_internal(Ps.size() == Qs.size() && !Ps.empty(), "intertwiner family mismatch");
  const size_t m = Ps[0].rows, n = Qs[0].rows;
  FqMatrix stacked(m * n, m * n * Ps.size(), F.zero());
  for (size_t t = 0; t < Ps.size(); ++t) {
    FqMatrix M = fq_intertwiner_system(F, Ps[t], Qs[t]);
    for (size_t i = 0; i < m * n; ++i)
      for (size_t j = 0; j < m * n; ++j) stacked.at(i, t * m * n + j) = M.at(i, j);
  }
  return fq_left_nullity(F, stacked);
}

std::vector<FqMatrix> fq_intertwiner_basis(const FqField& F, const std::vector<FqMatrix>& Ps,
                                           const std::vector<FqMatrix>& Qs, size_t rows,
                                           size_t cols) {
  check_internal(Ps.size() == Qs.size(), "intertwiner family mismatch");
  FqMatrix stacked(rows * cols, rows * cols * std::max<size_t>(1, Ps.size()), F.zero());
  if (Ps.empty()) {
    // No constraints: whole space.
    std::vector<FqMatrix> out;
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) {
        FqMatrix E(rows, cols, F.zero());
        E.at(i, j) = F.one();
        out.push_back(E);
      }
    return out;
  }
  for (size_t t = 0; t < Ps.size(); ++t) {
    FqMatrix M = fq_intertwiner_system(F, Ps[t], Qs[t]);
    check_internal(M.rows == rows * cols, "intertwiner basis shape mismatch");
    for (size_t i = 0; i < rows * cols; ++i)
      for (size_t j = 0; j < rows * cols; ++j) stacked.at(i, t * rows * cols + j) = M.at(i, j);
  }
  // v with v * stacked = 0  <=>  stacked^T v^T = 0.
  FqMatrix null_rows = fq_right_nullspace(F, fq_transpose(stacked));
  std::vector<FqMatrix> out;
  for (size_t b = 0; b < null_rows.rows; ++b) {
    FqMatrix X(rows, cols, F.zero());
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) X.at(i, j) = null_rows.at(b, i * cols + j);
    out.push_back(X);
  }
  return out;
}

}  // namespace hecke
