#pragma once

// Hom and Ext^1 between simple supersingular modules at q = 0.
//
// A supersingular module is induced from a pair (Xi, V): a supersingular
// affine character Xi = (chi, J) together with a finite-dimensional
// representation V of the stabilizer Omega(1)_Xi of Xi inside the
// length-zero subgroup, on which Z_kappa acts through chi.  The induced
// module has one block of size dim V per coset of the stabilizer.
//
// Ext^1 between two such modules decomposes as a sum over double cosets of
// the two stabilizers.  Each double-coset representative contributes two
// terms: a first-cohomology term H^1(Omega_{Xi,Xi'}, Hom(V, V')) when the
// twisted affine characters agree, and the dimension of the invariants of
// Ext^1 between the affine characters tensored with Hom(V, V') under the
// joint stabilizer.  Both terms are exact linear-algebra computations.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hecke/characters.hpp"
#include "hecke/ext_aff.hpp"
#include "hecke/linalg.hpp"
#include "hecke/oracle.hpp"

namespace hecke {

// The exponent words (rows over the length-zero generators) published as the
// generator list for authoring V: the stabilizer basis rows of nontrivial
// order, in basis order.  Rows of order one lie in Z_kappa and act through
// chi automatically, so no matrix is requested for them.
std::vector<std::vector<int64_t>> stabilizer_words(const GenericHeckeData& D,
                                                   const AffChar& xi);

// Exchange-level description of an induced module: the affine character and
// one invertible v_dim x v_dim matrix per published stabilizer word.
struct SsDescriptor {
  AffChar xi;
  size_t v_dim = 0;
  std::vector<FqMatrix> v_mats;  // aligned with stabilizer_words(D, xi)
};

// Validated form: matrices for every stabilizer basis row (rows of order one
// filled in as chi-scalars), with cached inverses and the orbit of Xi.
struct SsModule {
  AffChar xi;
  size_t v_dim = 0;
  XiOrbit orbit;
  std::vector<FqMatrix> mats;      // one per stabilizer basis row
  std::vector<FqMatrix> mats_inv;  // cached inverses
};

// Checks the descriptor (supersingular character, invertible matrices of the
// right shape and count, torsion powers and commutators compatible with the
// stabilizer presentation through chi) and fills in the trivial-order rows.
// Violations raise ParameterError.
SsModule make_ss_module(const GenericHeckeData& D, const SsDescriptor& m);

// Value of V at an element u of Omega(1)_Xi: u is written as z * product of
// stabilizer basis elements, and the value is chi(z) times the matching
// product of matrices.  u must stabilize Xi.
FqMatrix ss_eval(const GenericHeckeData& D, const SsModule& M, const OmegaElem& u);

// The descriptor conjugated by the length-zero element with exponent word e:
// the affine character moves along the orbit and the matrices are
// re-expressed over the stabilizer words of the moved character.  The
// induced module is unchanged up to isomorphism.
SsDescriptor twist_descriptor(const GenericHeckeData& D, const SsDescriptor& m,
                              const std::vector<int64_t>& e);

// dim Hom over the affine subalgebra: 0 when the characters differ, else the
// full Hom space v_dim * v_dim'.
size_t hom_dim_aff(const GenericHeckeData& D, const SsDescriptor& m1,
                   const SsDescriptor& m2);

// dim H^1(Omega_{Xi,Xi'}, Hom(V, V')): zero when the characters differ;
// otherwise first cohomology of the joint stabilizer acting on Hom blocks by
// F -> V'(w) F V(w)^{-1}, whose fixed points are the intertwiners.  Z_kappa
// acts trivially (the characters agree), so the action descends to the
// length-zero quotient and its presentation orders apply.
size_t h1_term_dim(const GenericHeckeData& D, const SsDescriptor& m1,
                   const SsDescriptor& m2);

// dim of (Ext^1_aff(Xi, Xi') tensor Hom(V, V'))^{Omega(1)_{Xi,Xi'}}: the sum
// over joint-stabilizer orbit representatives s of S1 of the fixed-space
// dimension of the coordinate block under the orbit stabilizer of s (with
// the correction scalar from conjugating the lift of s, Z_kappa generators
// included), plus (dim E2 - dim kernel) times the dimension of
// joint-stabilizer intertwiners V -> V'.
size_t invariant_ext1_dim(const GenericHeckeData& D, const SsDescriptor& m1,
                          const SsDescriptor& m2);

// One double-coset contribution to Ext^1.
struct CosetTerm {
  std::vector<int64_t> rep;  // double-coset representative word
  size_t h1_term = 0;
  size_t inv_ext_term = 0;
};

struct ExtSsBreakdown {
  std::vector<CosetTerm> terms;
  size_t total = 0;  // sum of all terms
};

// dim Ext^1 between the induced modules of m1 and m2: for each double-coset
// representative of the two stabilizers inside the length-zero group, twist
// m2 and add h1_term_dim + invariant_ext1_dim against m1.  Both descriptors
// must be supersingular (ParameterError otherwise).
ExtSsBreakdown dim_ext1_supersingular(const GenericHeckeData& D, const SsDescriptor& m1,
                                      const SsDescriptor& m2);

// 1 when some double-coset twist aligns the affine characters and carries V
// to a module isomorphic to V' (equal dimension and a nonzero intertwiner,
// which for simple inputs is an isomorphism); else 0.
size_t dim_hom_supersingular(const GenericHeckeData& D, const SsDescriptor& m1,
                             const SsDescriptor& m2);

// Generator matrices of the induced module, of size v_dim * [orbit of Xi],
// in the oracle's generator order (Z_kappa generators, reflection lifts,
// length-zero generators).  The output satisfies every defining relation:
// check_module accepts it at full scope.
MatrixModule induce_matrices(const GenericHeckeData& D, const SsDescriptor& m);

}  // namespace hecke
