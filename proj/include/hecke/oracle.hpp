#pragma once

// Brute-force verification path.  The algebra is presented by generators and
// relations materialized directly from the datum; modules are explicit
// matrix tuples; Hom and Ext^1 are computed by plain linear algebra over the
// coefficient field.  None of the closed-form machinery is involved, so
// agreement between this path and the formula path is meaningful evidence.
//
// Generator indexing: first the Z_kappa generators, then one generator per
// reflection lift, then (in full scope only) the length-zero generators.

#include <cstddef>
#include <vector>

#include "hecke/characters.hpp"
#include "hecke/data.hpp"
#include "hecke/linalg.hpp"

namespace hecke {

// aff_only drops the length-zero generators and every relation mentioning
// them, leaving the affine subalgebra.
enum class RelationScope { full, aff_only };

// A right module: one square matrix per generator, acting on row vectors.
struct MatrixModule {
  std::vector<FqMatrix> gens;
};

// One summand coef * (product of generators, leftmost factor applied first).
struct RelTerm {
  Fq coef;
  std::vector<size_t> word;
};

// A relation sum_i coef_i * word_i = 0.
using Relation = std::vector<RelTerm>;

size_t oracle_n_gens(const GenericHeckeData& D, RelationScope scope);

// The defining relations: the Z_kappa presentation, conjugation of Z_kappa
// past reflection lifts and length-zero generators, the quadratic relations
// T_{s~}^2 = sum_t c(t) T_t T_{s~}, braid relations for finite bond labels,
// the mixing relations T_w T_{s~} = T_t T_{(w s w^{-1})~} T_w, and the
// power and commutator relations of the length-zero generators.
std::vector<Relation> build_relations(const GenericHeckeData& D, RelationScope scope);

// True when the matrices satisfy every relation.  Throws ParameterError on
// shape mismatches (wrong generator count, non-square or unequal sizes).
bool check_module(const GenericHeckeData& D, const MatrixModule& M, RelationScope scope);

// An affine character as a 1 x 1 matrix module in aff_only scope.
MatrixModule aff_char_module(const GenericHeckeData& D, const AffChar& xi);

// dim Hom(M1, M2) = dim {X : rho1(g) X = X rho2(g) for all generators}.
size_t brute_force_hom(const GenericHeckeData& D, const MatrixModule& M1,
                       const MatrixModule& M2, RelationScope scope);

// dim Ext^1(M1, M2), computed from lower-triangular block extensions
//   g  |->  [[rho1(g), 0], [d(g), rho2(g)]]:
// the space of tuples (d(g)) compatible with every relation, modulo the
// tuples induced by a change of basis.  Both modules are validated first.
size_t brute_force_ext1(const GenericHeckeData& D, const MatrixModule& M1,
                        const MatrixModule& M2, RelationScope scope);

}  // namespace hecke
