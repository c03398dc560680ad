#pragma once

// Root-system combinatorics and the reduction pipeline that maps Ext^i
// questions between simple modules I(P, sigma, Q) to the supersingular
// core.  Everything here is exact integer combinatorics on subsets of the
// simple roots; no Hecke data is touched.  The output of reduce_simple_ext
// tells the caller either that the group vanishes, that it is a Hom space
// (dimension 1 exactly when the two coefficient modules are isomorphic),
// or that it equals an Ext group of supersingular modules over the
// algebra attached to a smaller root system (built via quotient_data).

#include <cstdint>
#include <string>
#include <vector>

#include "hecke/error.hpp"

namespace hecke {

// A finite root system given by its Cartan matrix cartan[i][j] = <alpha_i,
// alpha_j^vee>.  Valid matrices have 2 on the diagonal, non-positive
// entries elsewhere, a symmetric zero pattern, and a positive-definite
// symmetrization (checked exactly over the integers).
struct RootSystemData {
  std::vector<std::string> labels;            // one label per simple root
  std::vector<std::vector<int64_t>> cartan;   // square, rank x rank

  size_t rank() const { return cartan.size(); }
};

// Builds one of the named irreducible systems: "A1", "B2", "C3", "D4",
// "E6".."E8", "F4", "G2" (an optional underscore before the rank digits is
// accepted, e.g. "A_2").  Throws ParameterError for unknown names or ranks
// outside the defining range (B needs rank >= 2, D rank >= 4, ...).
RootSystemData make_root_system(const std::string& name);

// Validates the RootSystemData invariants; throws ParameterError.
void check_root_system(const RootSystemData& R);

// A simple module of the full algebra, encoded by the classifying triple:
// the parabolic subsets are identified with subsets of the simple roots.
// delta_sigma (the support of the coefficient module sigma) is part of the
// input; sigma itself stays opaque behind sigma_tag.  The supersingular
// flag records the caller's assertion that sigma is supersingular for the
// Levi algebra of p_set.
struct SimpleModuleTriple {
  std::vector<size_t> p_set;        // Delta_P, subset of root indices
  std::string sigma_tag;            // opaque identifier of sigma
  std::vector<size_t> delta_sigma;  // Delta(sigma), contains p_set
  std::vector<size_t> q_set;        // Delta_Q with p_set <= q_set <= delta_sigma
  bool supersingular = true;

  bool operator==(const SimpleModuleTriple&) const = default;
};

// Checks containments and the defining orthogonality of delta_sigma:
// every root in delta_sigma outside p_set pairs to zero with all of p_set.
// Throws ParameterError.
void check_triple(const RootSystemData& R, const SimpleModuleTriple& t);

// r = #(Q1 symmetric-difference Q2), for subsets given as root indices.
size_t sym_diff_degree(const std::vector<size_t>& q1, const std::vector<size_t>& q2);

enum class PlanOutcome {
  zero,                  // the Ext group vanishes; see reason
  hom_case,              // equals a Hom space: dimension 1 iff sigma_1 = sigma_2
  supersingular_target,  // equals Ext^degree between supersingular modules
                         // over the algebra of the ambient subsystem
};

// One executed reduction step: which rule ran, the condition it tested,
// and the verdict ("pass", "fail", or "assumed").
struct TraceEntry {
  std::string rule;
  std::string condition;
  std::string verdict;
};

struct ReductionPlan {
  PlanOutcome outcome;
  std::string reason;           // set for zero outcomes
  std::vector<size_t> ambient;  // reduced ambient Delta', set for
                                // supersingular_target (and hom_case)
  int64_t degree = 0;           // i - r, set for supersingular_target
  std::vector<TraceEntry> trace;
};

// Runs the reduction for Ext^i(I(t1), I(t2)) in order:
//   (1) distinct p_set => zero by the central character;
//   (2) q_set of t2 not inside delta_sigma of t1, or delta_sigma of t1 not
//       inside q_set of t1 union delta_sigma of t2 => zero, because the
//       parabolic induction cannot be stripped;
//   (3) pass to the ambient Delta' = intersection of the two delta_sigma,
//       replace Q1 by its intersection with delta_sigma of t2, and compute
//       the degree shift r = #(Q1' symmetric-difference Q2);
//   (4) decide by i - r: negative => zero, zero => hom_case,
//       positive => supersingular_target over Delta' in degree i - r.
// Both triples are validated first; i must be >= 0.
ReductionPlan reduce_simple_ext(const RootSystemData& R, const SimpleModuleTriple& t1,
                                const SimpleModuleTriple& t2, int64_t i);

}  // namespace hecke
