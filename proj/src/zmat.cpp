#include "hecke/zmat.hpp"

#include <algorithm>
#include <cstdlib>

#include "hecke/field.hpp"
#include "hecke/linalg.hpp"

namespace hecke {

int64_t z_add(int64_t a, int64_t b) {
  int64_t r;
  check_internal(!__builtin_add_overflow(a, b, &r), "integer overflow in addition");
  return r;
}

int64_t z_mul(int64_t a, int64_t b) {
  int64_t r;
  check_internal(!__builtin_mul_overflow(a, b, &r), "integer overflow in multiplication");
  return r;
}

ZMatrix z_identity(size_t n) {
  ZMatrix I(n, n);
  for (size_t i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

ZMatrix z_mat_mul(const ZMatrix& A, const ZMatrix& B) {
  check_internal(A.cols == B.rows, "integer matrix product shape mismatch");
  ZMatrix R(A.rows, B.cols);
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t k = 0; k < A.cols; ++k) {
      if (A.at(i, k) == 0) continue;
      for (size_t j = 0; j < B.cols; ++j)
        R.at(i, j) = z_add(R.at(i, j), z_mul(A.at(i, k), B.at(k, j)));
    }
  return R;
}

ZMatrix z_stack(const ZMatrix& top, const ZMatrix& bottom) {
  check_internal(top.cols == bottom.cols, "stack width mismatch");
  ZMatrix R(top.rows + bottom.rows, top.cols);
  std::copy(top.a.begin(), top.a.end(), R.a.begin());
  std::copy(bottom.a.begin(), bottom.a.end(), R.a.begin() + top.a.size());
  return R;
}

int64_t z_det(const ZMatrix& A) {
  check_internal(A.rows == A.cols, "determinant of non-square matrix");
  const size_t n = A.rows;
  if (n == 0) return 1;
  std::vector<__int128> m(n * n);
  for (size_t i = 0; i < n * n; ++i) m[i] = A.a[i];
  auto at = [&](size_t i, size_t j) -> __int128& { return m[i * n + j]; };
  int sign = 1;
  __int128 prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (size_t j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;  // exact
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  __int128 det = sign * at(n - 1, n - 1);
  check_internal(det <= INT64_MAX && det >= INT64_MIN, "determinant overflow");
  return static_cast<int64_t>(det);
}

namespace {

void row_axpy(ZMatrix& M, size_t dst, size_t src, int64_t q) {
  for (size_t j = 0; j < M.cols; ++j) M.at(dst, j) = z_add(M.at(dst, j), z_mul(q, M.at(src, j)));
}

void col_axpy(ZMatrix& M, size_t dst, size_t src, int64_t q) {
  for (size_t i = 0; i < M.rows; ++i) M.at(i, dst) = z_add(M.at(i, dst), z_mul(q, M.at(i, src)));
}

void row_swap(ZMatrix& M, size_t a, size_t b) {
  if (a == b) return;
  for (size_t j = 0; j < M.cols; ++j) std::swap(M.at(a, j), M.at(b, j));
}

void col_swap(ZMatrix& M, size_t a, size_t b) {
  if (a == b) return;
  for (size_t i = 0; i < M.rows; ++i) std::swap(M.at(i, a), M.at(i, b));
}

void row_negate(ZMatrix& M, size_t r) {
  for (size_t j = 0; j < M.cols; ++j) M.at(r, j) = -M.at(r, j);
}

int64_t floor_div(int64_t a, int64_t b) {
  // b > 0 assumed.
  int64_t q = a / b, r = a % b;
  return (r < 0) ? q - 1 : q;
}

}  // namespace

ZMatrix z_row_basis(const ZMatrix& A) {
  ZMatrix H = A;
  size_t r = 0;
  for (size_t col = 0; col < H.cols && r < H.rows; ++col) {
    // Euclid on the entries of this column in rows >= r.
    while (true) {
      size_t pivot = H.rows;
      for (size_t i = r; i < H.rows; ++i)
        if (H.at(i, col) != 0 &&
            (pivot == H.rows || std::llabs(H.at(i, col)) < std::llabs(H.at(pivot, col))))
          pivot = i;
      if (pivot == H.rows) break;  // column is zero below r
      row_swap(H, r, pivot);
      bool clean = true;
      for (size_t i = r + 1; i < H.rows; ++i) {
        if (H.at(i, col) == 0) continue;
        row_axpy(H, i, r, -(H.at(i, col) / H.at(r, col)));
        if (H.at(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H.at(r, col) == 0) continue;
    if (H.at(r, col) < 0) row_negate(H, r);
    for (size_t i = 0; i < r; ++i) {
      int64_t q = floor_div(H.at(i, col), H.at(r, col));
      if (q != 0) row_axpy(H, i, r, -q);
    }
    ++r;
  }
  ZMatrix B(r, A.cols);
  std::copy(H.a.begin(), H.a.begin() + r * A.cols, B.a.begin());
  return B;
}

SnfResult z_snf(const ZMatrix& A) {
  SnfResult res{z_identity(A.rows), A, z_identity(A.cols)};
  ZMatrix& D = res.D;
  ZMatrix& U = res.U;
  ZMatrix& V = res.V;
  const size_t limit = std::min(A.rows, A.cols);
  for (size_t t = 0; t < limit; ++t) {
    while (true) {
      // Locate the entry of least absolute value in the trailing block.
      size_t pi = D.rows, pj = D.cols;
      for (size_t i = t; i < D.rows; ++i)
        for (size_t j = t; j < D.cols; ++j)
          if (D.at(i, j) != 0 &&
              (pi == D.rows || std::llabs(D.at(i, j)) < std::llabs(D.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == D.rows) goto finished;  // trailing block is zero
      row_swap(D, t, pi);
      row_swap(U, t, pi);
      col_swap(D, t, pj);
      col_swap(V, t, pj);
      bool reduced = true;
      for (size_t i = t + 1; i < D.rows; ++i) {
        if (D.at(i, t) == 0) continue;
        int64_t q = D.at(i, t) / D.at(t, t);
        row_axpy(D, i, t, -q);
        row_axpy(U, i, t, -q);
        if (D.at(i, t) != 0) reduced = false;
      }
      for (size_t j = t + 1; j < D.cols; ++j) {
        if (D.at(t, j) == 0) continue;
        int64_t q = D.at(t, j) / D.at(t, t);
        col_axpy(D, j, t, -q);
        col_axpy(V, j, t, -q);
        if (D.at(t, j) != 0) reduced = false;
      }
      if (!reduced) continue;
      // Pivot must divide every remaining entry so the invariant chain holds.
      bool divides = true;
      for (size_t i = t + 1; i < D.rows && divides; ++i)
        for (size_t j = t + 1; j < D.cols && divides; ++j)
          if (D.at(i, j) % D.at(t, t) != 0) {
            row_axpy(D, t, i, 1);
            row_axpy(U, t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (D.at(t, t) < 0) {
      row_negate(D, t);
      row_negate(U, t);
    }
  }
finished:
  return res;
}

std::optional<std::vector<int64_t>> z_solve_left(const ZMatrix& B, const std::vector<int64_t>& v) {
  check_internal(v.size() == B.cols, "z_solve_left shape mismatch");
  SnfResult s = z_snf(B);
  // x B = v  <=>  (x U^{-1}) D = v V.
  std::vector<int64_t> w(B.cols, 0);
  for (size_t j = 0; j < B.cols; ++j) {
    int64_t acc = 0;
    for (size_t i = 0; i < B.cols; ++i) acc = z_add(acc, z_mul(v[i], s.V.at(i, j)));
    w[j] = acc;
  }
  std::vector<int64_t> z(B.rows, 0);
  for (size_t j = 0; j < B.cols; ++j) {
    int64_t d = (j < B.rows) ? s.D.at(j, j) : 0;
    if (d != 0) {
      if (w[j] % d != 0) return std::nullopt;
      z[j] = w[j] / d;
    } else if (w[j] != 0) {
      return std::nullopt;
    }
  }
  std::vector<int64_t> x(B.rows, 0);
  for (size_t j = 0; j < B.rows; ++j) {
    int64_t acc = 0;
    for (size_t i = 0; i < B.rows; ++i) acc = z_add(acc, z_mul(z[i], s.U.at(i, j)));
    x[j] = acc;
  }
  return x;
}

bool z_lattice_contains(const ZMatrix& B, const std::vector<int64_t>& v) {
  return z_solve_left(B, v).has_value();
}

ZMatrix z_unimodular_inverse(const ZMatrix& V) {
  SnfResult s = z_snf(V);
  ZMatrix inv = z_mat_mul(s.V, s.U);
  check_internal(z_mat_mul(inv, V) == z_identity(V.rows), "matrix is not unimodular");
  return inv;
}

namespace {
constexpr uint64_t kMaxCosetCount = 1u << 20;
}  // namespace

uint64_t z_lattice_index(size_t n, const ZMatrix& T) {
  ZMatrix B = z_row_basis(T);
  require(B.rows == n, "lattice does not have full rank; the quotient is infinite");
  SnfResult s = z_snf(B);
  uint64_t index = 1;
  for (size_t i = 0; i < n; ++i) {
    check_internal(s.D.at(i, i) > 0, "full-rank lattice with zero invariant");
    index = index * static_cast<uint64_t>(s.D.at(i, i));
    check_internal(index <= kMaxCosetCount, "lattice index too large");
  }
  return index;
}

std::vector<std::vector<int64_t>> z_lattice_coset_reps(size_t n, const ZMatrix& T) {
  ZMatrix B = z_row_basis(T);
  require(B.rows == n, "lattice does not have full rank; the quotient is infinite");
  SnfResult s = z_snf(B);
  std::vector<int64_t> d(n);
  uint64_t count = 1;
  for (size_t i = 0; i < n; ++i) {
    d[i] = s.D.at(i, i);
    check_internal(d[i] > 0, "full-rank lattice with zero invariant");
    count *= static_cast<uint64_t>(d[i]);
    require(count <= kMaxCosetCount, "quotient too large to enumerate");
  }
  ZMatrix Vinv = z_unimodular_inverse(s.V);
  std::vector<std::vector<int64_t>> reps;
  reps.reserve(count);
  std::vector<int64_t> r(n, 0);
  while (true) {
    std::vector<int64_t> y(n, 0);
    for (size_t j = 0; j < n; ++j) {
      int64_t acc = 0;
      for (size_t i = 0; i < n; ++i) acc = z_add(acc, z_mul(r[i], Vinv.at(i, j)));
      y[j] = acc;
    }
    reps.push_back(std::move(y));
    size_t pos = 0;
    while (pos < n && ++r[pos] == d[pos]) r[pos++] = 0;
    if (pos == n) break;
  }
  return reps;
}

ZMatrix z_torsion_lattice(const std::vector<uint64_t>& ambient_orders) {
  size_t t = 0;
  for (uint64_t d : ambient_orders) t += (d > 0);
  ZMatrix L(t, ambient_orders.size());
  size_t row = 0;
  for (size_t j = 0; j < ambient_orders.size(); ++j)
    if (ambient_orders[j] > 0) L.at(row++, j) = static_cast<int64_t>(ambient_orders[j]);
  return L;
}

SubgroupPresentation z_subgroup_presentation(const ZMatrix& gens, size_t n,
                                             const std::vector<uint64_t>& ambient_orders) {
  check_internal(ambient_orders.size() == n, "ambient order count mismatch");
  check_internal(gens.rows == 0 || gens.cols == n, "generator width mismatch");
  ZMatrix L0 = z_torsion_lattice(ambient_orders);
  ZMatrix padded_gens = (gens.rows == 0) ? ZMatrix(0, n) : gens;
  ZMatrix S = z_row_basis(z_stack(padded_gens, L0));
  const size_t r = S.rows;
  // Express each torsion relation over the basis S.
  ZMatrix C(L0.rows, r);
  for (size_t i = 0; i < L0.rows; ++i) {
    std::vector<int64_t> row(n);
    for (size_t j = 0; j < n; ++j) row[j] = L0.at(i, j);
    auto coeffs = z_solve_left(S, row);
    check_internal(coeffs.has_value(), "torsion relation escapes the stabilizer lattice");
    for (size_t j = 0; j < r; ++j) C.at(i, j) = (*coeffs)[j];
  }
  SubgroupPresentation out;
  if (r == 0) {
    out.basis = ZMatrix(0, n);
    return out;
  }
  SnfResult s = z_snf(C);
  out.basis = z_mat_mul(z_unimodular_inverse(s.V), S);
  out.orders.assign(r, 0);
  for (size_t j = 0; j < std::min(L0.rows, r); ++j)
    out.orders[j] = static_cast<uint64_t>(s.D.at(j, j));
  return out;
}

size_t h1_abelian(const FqField& F, const std::vector<FqMatrix>& gen_actions,
                  const std::vector<uint64_t>& gen_orders) {
  require(gen_actions.size() == gen_orders.size(), "generator/order count mismatch");
  const size_t g = gen_actions.size();
  if (g == 0) return 0;
  const size_t d = gen_actions[0].rows;
  for (const auto& R : gen_actions)
    require(R.rows == d && R.cols == d, "generator actions must be square of equal size");
  for (size_t i = 0; i < g; ++i)
    for (size_t j = i + 1; j < g; ++j)
      require(fq_mul(F, gen_actions[i], gen_actions[j]) == fq_mul(F, gen_actions[j], gen_actions[i]),
              "generator actions must commute");
  for (size_t i = 0; i < g; ++i)
    if (gen_orders[i] > 0)
      require(fq_is_identity(F, fq_pow(F, gen_actions[i], static_cast<int64_t>(gen_orders[i]))),
              "generator action order does not match the stated group order");

  const FqMatrix I = fq_identity(F, d);
  std::vector<FqMatrix> shifted;  // R_i - I
  for (const auto& R : gen_actions) shifted.push_back(fq_sub(F, R, I));

  // Cocycle conditions: c_i (R_j - I) = c_j (R_i - I) for i < j, and
  // c_i (I + R_i + ... + R_i^{d_i - 1}) = 0 for finite-order generators.
  size_t n_pairs = g * (g - 1) / 2;
  size_t n_tors = 0;
  for (uint64_t o : gen_orders) n_tors += (o > 0);
  FqMatrix C(g * d, (n_pairs + n_tors) * d, F.zero());
  size_t block = 0;
  for (size_t i = 0; i < g; ++i)
    for (size_t j = i + 1; j < g; ++j) {
      for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b) {
          C.at(i * d + a, block * d + b) = shifted[j].at(a, b);
          C.at(j * d + a, block * d + b) = F.neg(shifted[i].at(a, b));
        }
      ++block;
    }
  for (size_t i = 0; i < g; ++i) {
    if (gen_orders[i] == 0) continue;
    FqMatrix N = fq_zero_matrix(F, d, d);
    FqMatrix power = I;
    for (uint64_t t = 0; t < gen_orders[i]; ++t) {
      N = fq_add(F, N, power);
      power = fq_mul(F, power, gen_actions[i]);
    }
    for (size_t a = 0; a < d; ++a)
      for (size_t b = 0; b < d; ++b) C.at(i * d + a, block * d + b) = N.at(a, b);
    ++block;
  }
  size_t dim_z1 = g * d - fq_rank(F, C);

  // Coboundaries: m |-> (m (R_i - I))_i.
  FqMatrix B(d, g * d, F.zero());
  for (size_t i = 0; i < g; ++i)
    for (size_t a = 0; a < d; ++a)
      for (size_t b = 0; b < d; ++b) B.at(a, i * d + b) = shifted[i].at(a, b);
  size_t dim_b1 = fq_rank(F, B);
  check_internal(dim_z1 >= dim_b1, "coboundaries escape cocycles");
  return dim_z1 - dim_b1;
}

}  // namespace hecke
