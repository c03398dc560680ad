#pragma once

// Extensions between characters of the affine subalgebra at q = 0.
//
// For an ordered pair (Xi, Xi') of affine characters, every extension of Xi
// by Xi' is described by a tuple (a_s) of semi-invariant functions on the
// lift cosets of the simple affine reflections, subject to linear conditions
// coming from the quadratic and braid relations.  The reflections split into
// four classes by the vanishing pattern of (Xi(T_{s~}), Xi'(T_{s~})), and
// the extension space is assembled from two pieces: a free part over the
// reflections where both values vanish, and a constrained part over the
// reflections where exactly one vanishes.

#include <cstddef>
#include <vector>

#include "hecke/characters.hpp"
#include "hecke/linalg.hpp"

namespace hecke {

// Classes of simple affine reflections attached to the ordered pair
// (Xi, Xi'), all sorted:
//   a1 = both Xi(T_{s~}) and Xi'(T_{s~}) vanish,
//   a2 = Xi(T_{s~}) != 0 and Xi'(T_{s~}) = 0,
//   a3 = Xi(T_{s~}) = 0 and Xi'(T_{s~}) != 0,
//   a4 = neither vanishes,
//   s2 = a2 together with a3,
//   s1 = the s in a1 with chi(c_s) = 0, chi o conj_s = chi', and m(s, t) != 2
//        for every t in s2 (s must commute with no member of s2).
struct ReflectionClassification {
  std::vector<size_t> a1, a2, a3, a4;
  std::vector<size_t> s1, s2;
};

ReflectionClassification classify(const GenericHeckeData& D, const AffChar& xi,
                                  const AffChar& xi2);

// Dimension of the space C_s of functions on the coset of lifts of s that
// transform by chi' under left translation and chi under right translation:
// 1 when chi o conj_s = chi', else 0.
size_t dim_Cs(const GenericHeckeData& D, const AffChar& xi, const AffChar& xi2,
              size_t s);

// The scalar relating canonical basis vectors of the spaces C_s under the
// inner automorphism attached to a length-zero element g: writing
// g s~ g^{-1} = t (s')~ with s' = g s g^{-1}, precomposition with the
// automorphism carries the basis vector of C_{s'} to chi'(t) times the basis
// vector of C_s.  Returns chi'(t).
Fq omega_scalar_on_Cs(const GenericHeckeData& D, const ZkChar& chi2,
                      const OmegaElem& g, size_t s);

struct ExtAffResult {
  size_t dim_e1 = 0;      // free coordinates over s1
  size_t dim_e2 = 0;      // solutions of the linear conditions over s2
  size_t dim_kernel = 0;  // classes that restrict to split extensions
  size_t dim_ext1 = 0;    // dim_e1 + dim_e2 - dim_kernel
};

// dim Ext^1(Xi, Xi') over the affine subalgebra at q = 0.
//
// Coordinates a_s live in C_s for s in s1 and s2; coordinates with C_s = 0
// are identically zero.  Over s2 the conditions come from braid relations,
// so each binds one pair of reflections with a finite bond label: the
// normalized values a_s chi(c_s)^{-1} agree across finitely bonded pairs in
// a2, the normalized values a_s chi'(c_s)^{-1} agree across finitely bonded
// pairs in a3, and a_s chi(c_s)^{-1} + a_t chi'(c_t)^{-1} = 0 whenever
// s in a2 and t in a3 commute (bond label 2).  A pair with bond label
// infinity satisfies no braid relation and is unconstrained.  The s1
// coordinates are free.
//
// The kernel consists of the classes whose extension splits: a basis change
// with lower-left entry m shifts a_s by m(Xi'(T_{s~}) - Xi(T_{s~})), so the
// split classes have all normalized a2 values equal to a common -m, all
// normalized a3 values equal to m, and a_s = 0 on s1.  Equivalently — on
// data whose s2 pairs all carry finite bonds — they satisfy the conditions
// above plus a_s chi(c_s)^{-1} + a_t chi'(c_t)^{-1} = 0 for every pair
// (s, t) in a2 x a3, commuting or not.
//
// dim_e2 is computed as an exact rank and cross-checked against the closed
// form: each connected component of a2 (and of a3) under finite bonds
// contributes 1 when all its C_s are nonzero; with no commuting a2 x a3
// pair the contributions add, and with one (and at most one line per side)
// the total drops by 1 (not below 0).
ExtAffResult dim_ext1_aff(const GenericHeckeData& D, const AffChar& xi,
                          const AffChar& xi2);

// dim Hom(Xi, Xi') = 1 when the characters are equal, else 0.
size_t dim_hom_aff(const AffChar& xi, const AffChar& xi2);

}  // namespace hecke
