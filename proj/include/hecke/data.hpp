#pragma once

// The generic Hecke datum: a finite abelian coefficient group Z_kappa, an
// affine Coxeter matrix over the simple affine reflections, chosen reflection
// lifts described by their conjugation action and quadratic-relation
// parameters, and a polycyclic presentation of the length-zero subgroup
// Omega(1) (an extension of a finitely generated abelian group by Z_kappa).
//
// Elements of Omega(1) are kept in a collected normal form
//   z * w_1^{e_1} * ... * w_n^{e_n}
// with z in Z_kappa and torsion exponents reduced into [0, order).

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hecke/field.hpp"

namespace hecke {

// An element of Z_kappa = prod Z/m_i: exponents with entry i in [0, m_i).
using ZkElem = std::vector<uint64_t>;

struct ZkGroup {
  std::vector<uint64_t> orders;  // m_i >= 1

  size_t n() const { return orders.size(); }
  ZkElem identity() const { return ZkElem(orders.size(), 0); }
  // Reduces arbitrary integer exponents into normal form.
  ZkElem make(const std::vector<int64_t>& raw) const;
  ZkElem mul(const ZkElem& a, const ZkElem& b) const;
  ZkElem inv(const ZkElem& a) const;
  ZkElem pow(const ZkElem& a, int64_t e) const;
  bool is_identity(const ZkElem& a) const;
  void check(const ZkElem& a) const;  // ParameterError if malformed
};

// An endomorphism of Z_kappa given by generator images; used for the
// conjugation actions of reflection lifts and Omega(1) generators.
struct ZkAut {
  std::vector<ZkElem> img;  // img[i] = image of the i-th generator
  bool operator==(const ZkAut&) const = default;
};

ZkAut zk_identity_aut(const ZkGroup& G);
ZkElem zk_apply(const ZkGroup& G, const ZkAut& f, const ZkElem& a);
// Composition (f then g as maps): zk_compose(G, g, f)(x) = g(f(x)).
ZkAut zk_compose(const ZkGroup& G, const ZkAut& g, const ZkAut& f);
ZkAut zk_aut_pow(const ZkGroup& G, const ZkAut& f, uint64_t e);
// Inverse automorphism, found as a power of f (ParameterError if f is not
// invertible within the iteration cap).
ZkAut zk_inverse_aut(const ZkGroup& G, const ZkAut& f);
void zk_check_aut(const ZkGroup& G, const ZkAut& f);

// Quadratic-relation parameter c for one reflection lift: a finitely
// supported map Z_kappa -> F with nonzero values.
using CParam = std::map<ZkElem, Fq>;

// The group-algebra automorphism induced by f: sum c(t) t  |->  sum c(t) f(t).
CParam c_push(const ZkGroup& G, const ZkAut& f, const CParam& c);
// Translation: sum c(t) t  |->  sum c(t) (u t).
CParam c_translate(const ZkGroup& G, const ZkElem& u, const CParam& c);

struct OmegaGen {
  uint64_t order = 0;           // order of the image in Omega; 0 = infinite
  ZkElem power;                 // w^order, an element of Z_kappa (identity if order 0)
  std::vector<size_t> perm;     // w s w^{-1} = perm[s] on simple affine reflections
  ZkAut aut;                    // conjugation action on Z_kappa
  std::vector<ZkElem> corr;     // w s~ w^{-1} = corr[s] * (perm[s])~
};

struct GenericHeckeData {
  FieldPtr field;
  ZkGroup zk;
  std::vector<std::string> s_labels;
  std::vector<std::vector<uint32_t>> cox_m;  // m(s,t); 1 on diagonal, 0 = infinity
  std::vector<ZkAut> s_conj;                 // conjugation by the lift s~ on Z_kappa
  std::vector<CParam> c_param;
  std::vector<OmegaGen> omega;
  // omega_comm[i][j] for i < j: the commutator w_i w_j w_i^{-1} w_j^{-1} in
  // Z_kappa.  Entries with i >= j must be the identity.
  std::vector<std::vector<ZkElem>> omega_comm;

  size_t n_aff() const { return cox_m.size(); }
  size_t n_omega() const { return omega.size(); }
};

struct OmegaElem {
  ZkElem z;
  std::vector<int64_t> e;
  bool operator==(const OmegaElem&) const = default;
  auto operator<=>(const OmegaElem&) const = default;
};

OmegaElem omega_identity(const GenericHeckeData& D);
// Normal form of z * w_1^{e_1} ... w_n^{e_n} for arbitrary integer exponents.
OmegaElem omega_make(const GenericHeckeData& D, const ZkElem& z, const std::vector<int64_t>& e);
OmegaElem omega_gen(const GenericHeckeData& D, size_t j, int64_t exp = 1);
OmegaElem omega_from_zk(const GenericHeckeData& D, const ZkElem& z);
OmegaElem omega_mul(const GenericHeckeData& D, const OmegaElem& a, const OmegaElem& b);
OmegaElem omega_inv(const GenericHeckeData& D, const OmegaElem& a);
// The conjugation action on Z_kappa of any element with exponent vector e
// (the Z_kappa part of the element acts trivially).
ZkAut omega_zk_action(const GenericHeckeData& D, const std::vector<int64_t>& e);

// g s~ g^{-1} = t * (s')~ for g in Omega(1); returns (s', t).
std::pair<size_t, ZkElem> conj_lift(const GenericHeckeData& D, const OmegaElem& g, size_t s);
// Just the reflection index part of conj_lift.
size_t omega_perm_apply(const GenericHeckeData& D, const std::vector<int64_t>& e, size_t s);

// Full structural validation; throws ParameterError with a description of
// the first violated condition.  Checks well-formedness, the parameter
// compatibility axioms, and consistency of the polycyclic presentation.
void validate(const GenericHeckeData& D);

// The datum of GL_n over a local field with residue field F_q (q = p^f):
// affine type A~_{n-1} (infinite bond for n = 2), Z_kappa = (Z/(q-1))^n,
// reflections swapping adjacent coordinates, and one infinite-order Omega
// generator rotating everything by one step.
GenericHeckeData build_gl_n(size_t n, uint64_t q);

// Quotient datum: keeps the reflections in s_keep (whose complement must be
// orthogonal to it) and replaces Z_kappa by its quotient modulo the subgroup
// generated by k_gens (which must be stable under all stored conjugation
// actions).  Omega generators survive with their actions transported; their
// reflection permutations must preserve s_keep.
GenericHeckeData quotient_data(const GenericHeckeData& D, const std::vector<size_t>& s_keep,
                               const std::vector<ZkElem>& k_gens);

// The same datum with scalars extended along a field embedding.
GenericHeckeData embed_data(const GenericHeckeData& D, const FieldEmbedding& emb);

}  // namespace hecke
