#pragma once

// Exact integer matrix algebra: Hermite and Smith normal forms, lattice
// membership, coset enumeration for finite quotients, and orbit/stabilizer
// computations for commuting group actions given by exponent vectors.
//
// Conventions match linalg.hpp: vectors are rows and lattices are row spans.
// All arithmetic is overflow-checked 64-bit.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "hecke/error.hpp"
#include "hecke/linalg.hpp"

namespace hecke {

struct ZMatrix {
  size_t rows = 0, cols = 0;
  std::vector<int64_t> a;  // row-major

  ZMatrix() = default;
  ZMatrix(size_t r, size_t c, int64_t fill = 0) : rows(r), cols(c), a(r * c, fill) {}

  int64_t& at(size_t i, size_t j) { return a[i * cols + j]; }
  int64_t at(size_t i, size_t j) const { return a[i * cols + j]; }
  bool operator==(const ZMatrix&) const = default;
};

// Overflow-checked scalar ops (InternalError on overflow).
int64_t z_add(int64_t a, int64_t b);
int64_t z_mul(int64_t a, int64_t b);

ZMatrix z_identity(size_t n);
ZMatrix z_mat_mul(const ZMatrix& A, const ZMatrix& B);
ZMatrix z_stack(const ZMatrix& top, const ZMatrix& bottom);  // vertical concatenation

// Exact determinant (Bareiss fraction-free elimination).
int64_t z_det(const ZMatrix& A);

// Row-style Hermite normal form of the row span: pivot entries positive,
// entries above pivots reduced into [0, pivot), zero rows dropped.  The
// result is a canonical basis of the lattice spanned by the rows of A.
ZMatrix z_row_basis(const ZMatrix& A);

struct SnfResult {
  ZMatrix U, D, V;  // U * A * V = D, U and V unimodular, D diagonal
};

// Smith normal form with transforms.  Diagonal entries are nonnegative and
// each divides the next.
SnfResult z_snf(const ZMatrix& A);

// Solves x * B = v over the integers; returns std::nullopt if no solution.
std::optional<std::vector<int64_t>> z_solve_left(const ZMatrix& B, const std::vector<int64_t>& v);

// True if v lies in the lattice spanned by the rows of B.
bool z_lattice_contains(const ZMatrix& B, const std::vector<int64_t>& v);

// Representatives of Z^n modulo the lattice spanned by the rows of T, which
// must have full rank n (ParameterError otherwise).  The identity coset is
// represented by the zero vector and listed first.
std::vector<std::vector<int64_t>> z_lattice_coset_reps(size_t n, const ZMatrix& T);

// Index of a full-rank sublattice (product of Smith invariants).
uint64_t z_lattice_index(size_t n, const ZMatrix& T);

// Inverse of a unimodular matrix (InternalError if not unimodular).
ZMatrix z_unimodular_inverse(const ZMatrix& V);

// ---------------------------------------------------------------------------
// Orbit / stabilizer for an action of Z^n that factors through a quotient
// Z^n -> A where A is abelian with generator orders `ambient_orders`
// (0 = infinite order).  The action is given per generator; exponent words
// are rows in Z^n.

template <class Point>
struct OrbitResult {
  std::vector<Point> orbit;                       // starting point first
  std::vector<std::vector<int64_t>> transversal;  // word w with start * w = orbit[i]
  ZMatrix schreier;                               // generators of the stabilizer lattice
};

// `apply(point, j, inv)` returns the image of `point` under generator j (or
// its inverse).  Point needs operator<.
template <class Point, class Apply>
OrbitResult<Point> z_orbit_stabilizer(const Point& start, size_t n_gens, Apply&& apply) {
  OrbitResult<Point> res;
  std::map<Point, size_t> seen;
  res.orbit.push_back(start);
  res.transversal.emplace_back(n_gens, 0);
  seen[start] = 0;
  std::vector<std::vector<int64_t>> schreier_rows;
  for (size_t head = 0; head < res.orbit.size(); ++head) {
    for (size_t j = 0; j < n_gens; ++j) {
      for (bool inv : {false, true}) {
        Point next = apply(res.orbit[head], j, inv);
        std::vector<int64_t> word = res.transversal[head];
        word[j] = z_add(word[j], inv ? -1 : 1);
        auto it = seen.find(next);
        if (it == seen.end()) {
          seen[next] = res.orbit.size();
          res.orbit.push_back(next);
          res.transversal.push_back(word);
        } else {
          // Schreier generator: word * transversal[it]^{-1} fixes start.
          std::vector<int64_t> gen = word;
          const auto& back = res.transversal[it->second];
          for (size_t t = 0; t < n_gens; ++t) gen[t] = z_add(gen[t], -back[t]);
          bool nonzero = false;
          for (int64_t x : gen) nonzero |= (x != 0);
          if (nonzero) schreier_rows.push_back(gen);
        }
      }
    }
  }
  res.schreier = ZMatrix(schreier_rows.size(), n_gens);
  for (size_t i = 0; i < schreier_rows.size(); ++i)
    for (size_t j = 0; j < n_gens; ++j) res.schreier.at(i, j) = schreier_rows[i][j];
  return res;
}

// A subgroup of A = Z^n / L0 (L0 the torsion lattice of `ambient_orders`)
// presented on independent generators.
struct SubgroupPresentation {
  ZMatrix basis;                 // rows: exponent words, a lattice basis of the preimage in Z^n
  std::vector<uint64_t> orders;  // order of each basis row in A (0 = infinite, 1 = trivial)
};

// Converts stabilizer generators (rows of `gens`, e.g. Schreier generators)
// into an independent presentation.  The preimage lattice is the span of the
// given rows together with L0.
SubgroupPresentation z_subgroup_presentation(const ZMatrix& gens, size_t n,
                                             const std::vector<uint64_t>& ambient_orders);

// The torsion lattice L0 = span{d_j e_j : d_j > 0} as rows.
ZMatrix z_torsion_lattice(const std::vector<uint64_t>& ambient_orders);

// ---------------------------------------------------------------------------
// First cohomology of a finitely generated abelian group.

// dim H^1(G, M) for G abelian with independent generators of the given
// orders (0 = infinite) acting on the right F-module M = F^d via the
// invertible matrices `gen_actions` (which must commute pairwise, and a
// generator of finite order d must have R^d = 1).
size_t h1_abelian(const FqField& F, const std::vector<FqMatrix>& gen_actions,
                  const std::vector<uint64_t>& gen_orders);

}  // namespace hecke
