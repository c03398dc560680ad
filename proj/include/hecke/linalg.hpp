#pragma once

// Dense exact linear algebra over a finite field: rank, nullspace, solving,
// and small conveniences used throughout (identity, product, Kronecker-style
// operators on matrix spaces).  Vectors are rows; matrices act on the right,
// so a composite "first A then B" is the product A*B.

#include <cstdint>
#include <vector>

#include "hecke/field.hpp"

namespace hecke {

struct FqMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Fq> a;  // row-major

  FqMatrix() = default;
  FqMatrix(size_t r, size_t c, const Fq& fill) : rows(r), cols(c), a(r * c, fill) {}

  Fq& at(size_t i, size_t j) { return a[i * cols + j]; }
  const Fq& at(size_t i, size_t j) const { return a[i * cols + j]; }
  bool operator==(const FqMatrix&) const = default;
};

FqMatrix fq_identity(const FqField& F, size_t n);
FqMatrix fq_zero_matrix(const FqField& F, size_t rows, size_t cols);
FqMatrix fq_mul(const FqField& F, const FqMatrix& A, const FqMatrix& B);
FqMatrix fq_add(const FqField& F, const FqMatrix& A, const FqMatrix& B);
FqMatrix fq_sub(const FqField& F, const FqMatrix& A, const FqMatrix& B);
FqMatrix fq_scale(const FqField& F, const Fq& c, const FqMatrix& A);
FqMatrix fq_transpose(const FqMatrix& A);
FqMatrix fq_pow(const FqField& F, const FqMatrix& A, int64_t e);  // e >= 0, or any e if A invertible
bool fq_is_identity(const FqField& F, const FqMatrix& A);
bool fq_is_zero_matrix(const FqField& F, const FqMatrix& A);

size_t fq_rank(const FqField& F, FqMatrix A);

// Inverse; ParameterError if singular.
FqMatrix fq_inverse(const FqField& F, const FqMatrix& A);

// Basis of the right nullspace {x column : A x = 0}, returned as rows of the
// result (each row is one basis vector of length A.cols).
FqMatrix fq_right_nullspace(const FqField& F, FqMatrix A);

// dim {v row : v A = 0} = rows - rank.
size_t fq_left_nullity(const FqField& F, const FqMatrix& A);

// dim of the common fixed space {v row : v M = v for all M in mats}.
// All matrices must be square of equal size.
size_t fq_invariant_subspace_dim(const FqField& F, const std::vector<FqMatrix>& mats);

// Operator F |-> A * F * B on the space of (A.cols x B.rows)-matrices F,
// returned as a square matrix acting on row-major vectorizations from the
// right: vec(A*F*B) = vec(F) * op.
FqMatrix fq_sandwich_operator(const FqField& F, const FqMatrix& A, const FqMatrix& B);

// dim of the solution space {X : P X = X Q} with X of shape P.rows x Q.cols;
// P, Q square.  This is the space of module homomorphisms between
// representations given on the same generator list when applied per
// generator and intersected (see fq_intertwiner_dim).
FqMatrix fq_intertwiner_system(const FqField& F, const FqMatrix& P, const FqMatrix& Q);

// dim {X : Ps[i] X = X Qs[i] for all i}.
size_t fq_intertwiner_dim(const FqField& F, const std::vector<FqMatrix>& Ps,
                          const std::vector<FqMatrix>& Qs);

// Basis of {X : Ps[i] X = X Qs[i] for all i}; each element returned as a
// matrix of shape rows x cols (rows = Ps[i].rows, cols = Qs[i].rows).
std::vector<FqMatrix> fq_intertwiner_basis(const FqField& F, const std::vector<FqMatrix>& Ps,
                                           const std::vector<FqMatrix>& Qs, size_t rows,
                                           size_t cols);

}  // namespace hecke
