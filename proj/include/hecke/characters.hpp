#pragma once

#include <cstdint>
#include <vector>

#include "hecke/data.hpp"
#include "hecke/zmat.hpp"

namespace hecke {

// A character of Z_kappa with values in the coefficient field: one value per
// generator, with vals[i] nonzero and vals[i]^{order_i} = 1.
struct ZkChar {
  std::vector<Fq> vals;
  bool operator==(const ZkChar&) const = default;
  auto operator<=>(const ZkChar&) const = default;
};

ZkChar trivial_char(const GenericHeckeData& D);
void check_char(const GenericHeckeData& D, const ZkChar& chi);

// Every character of Z_kappa over the coefficient field.  Requires each
// generator order to divide q - 1 so that all roots of unity exist; the
// total count is capped.
std::vector<ZkChar> all_characters(const GenericHeckeData& D);

Fq char_value(const GenericHeckeData& D, const ZkChar& chi, const ZkElem& t);

// chi applied to the c-parameter of the affine reflection s: the sum of
// c(t) chi(t) over the support of c_param[s].
Fq char_on_c(const GenericHeckeData& D, const ZkChar& chi, size_t s);

// chi composed with an automorphism of Z_kappa.
ZkChar char_compose(const GenericHeckeData& D, const ZkChar& chi, const ZkAut& f);

// The sorted list of affine reflections s with chi(c_s) != 0.
std::vector<size_t> s_aff_char(const GenericHeckeData& D, const ZkChar& chi);

// A character Xi of the affine Hecke algebra at q = 0: T_t acts by chi(t),
// and T_{s~} acts by zero for s in j_set and by chi(c_s) otherwise.  j_set
// must be a subset of s_aff_char(D, chi), so that membership in j_set is the
// only source of zero values among reflections with chi(c_s) != 0.
struct AffChar {
  ZkChar chi;
  std::vector<size_t> j_set;  // sorted
  bool operator==(const AffChar&) const = default;
  auto operator<=>(const AffChar&) const = default;
};

AffChar make_aff_char(const GenericHeckeData& D, ZkChar chi,
                      std::vector<size_t> j_set);
bool j_contains(const AffChar& xi, size_t s);

// The value of Xi on T_{s~}.
Fq aff_char_value(const GenericHeckeData& D, const AffChar& xi, size_t s);

// Whether the subgroup of the Coxeter group generated by the given subset of
// reflections is finite.  Decided exactly: the doubled cosine Gram matrix
// has diagonal 2 and off-diagonal -2 cos(pi/m), which lies in Z[sqrt 2,
// sqrt 3] for bond labels in {2, 3, 4, 6} and 0 (= infinity); finiteness is
// equivalent to positive definiteness, checked on leading principal minors
// with exact integer arithmetic.  Subsets of more than 11 reflections are
// rejected (larger minors could overflow the exact representation).
bool coxeter_subset_finite(const std::vector<std::vector<uint32_t>>& cox_m,
                           const std::vector<size_t>& subset);

// Xi is supersingular when j_set and its complement inside s_aff_char both
// generate finite Coxeter groups.
bool is_supersingular(const GenericHeckeData& D, const AffChar& xi);

// Right action of Omega(1) on affine characters, by composing Xi with the
// inner automorphism x -> g x g^{-1} of the affine algebra.  Z_kappa acts
// trivially, so the action factors through exponent vectors.  A single
// generator w_j sends chi to chi o aut_j and j_set to perm_j^{-1}(j_set).
AffChar aff_char_act_gen(const GenericHeckeData& D, const AffChar& xi, size_t j,
                         bool inverse);
// Action of the element with the given exponent vector, letter w_1 applied
// first: act(g h) = act(h) o act(g).
AffChar aff_char_act(const GenericHeckeData& D, const AffChar& xi,
                     const std::vector<int64_t>& e);

// Orbit of an affine character under Omega = Omega(1)/Z_kappa, together with
// a presentation of its stabilizer.  Orbit point i is reached from the start
// by acting with exponent vector transversal[i]; transversal[0] is zero.
// stab.basis rows span the preimage in Z^{n_omega} of the stabilizer
// subgroup (torsion relations included); stab.orders[i] is the order of the
// i-th basis row in Omega (0 = infinite, 1 = trivial).
struct XiOrbit {
  std::vector<AffChar> orbit;
  std::vector<std::vector<int64_t>> transversal;
  SubgroupPresentation stab;
};

XiOrbit xi_orbit(const GenericHeckeData& D, const AffChar& xi);

}  // namespace hecke
