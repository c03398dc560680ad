#include "hecke/ext_ss.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <utility>

#include "hecke/error.hpp"

namespace hecke {

namespace {

OmegaElem omega_elem_pow(const GenericHeckeData& D, const OmegaElem& u, int64_t e) {
  OmegaElem base = e >= 0 ? u : omega_inv(D, u);
  int64_t n = e >= 0 ? e : -e;
  OmegaElem r = omega_identity(D);
  for (int64_t i = 0; i < n; ++i) r = omega_mul(D, r, base);
  return r;
}

bool e_part_trivial(const OmegaElem& u) {
  return std::all_of(u.e.begin(), u.e.end(), [](int64_t x) { return x == 0; });
}

OmegaElem word_elem(const GenericHeckeData& D, const std::vector<int64_t>& w) {
  return omega_make(D, D.zk.identity(), w);
}

std::vector<int64_t> matrix_row(const ZMatrix& B, size_t i) {
  std::vector<int64_t> row(B.cols);
  for (size_t j = 0; j < B.cols; ++j) row[j] = B.at(i, j);
  return row;
}

std::vector<OmegaElem> basis_elems(const GenericHeckeData& D, const ZMatrix& B) {
  std::vector<OmegaElem> out;
  out.reserve(B.rows);
  for (size_t i = 0; i < B.rows; ++i) out.push_back(word_elem(D, matrix_row(B, i)));
  return out;
}

// Nonzero Z_kappa generator exponent vectors (order-one generators are the
// identity and contribute the identity element).
ZkElem zk_gen_elem(const GenericHeckeData& D, size_t l) {
  ZkElem g = D.zk.identity();
  if (D.zk.orders[l] > 1) g[l] = 1;
  return g;
}

// The joint stabilizer of an ordered pair of affine characters, as an
// independent presentation over the length-zero generators together with
// the corresponding group elements.
struct PairStab {
  SubgroupPresentation pres;
  std::vector<OmegaElem> elems;  // one per basis row
};

PairStab pair_stabilizer(const GenericHeckeData& D, const AffChar& xi, const AffChar& xi2) {
  using Pt = std::pair<AffChar, AffChar>;
  auto apply = [&](const Pt& p, size_t j, bool inv) {
    return Pt{aff_char_act_gen(D, p.first, j, inv), aff_char_act_gen(D, p.second, j, inv)};
  };
  auto orb = z_orbit_stabilizer<Pt>(Pt{xi, xi2}, D.n_omega(), apply);
  std::vector<uint64_t> ambient;
  for (const auto& g : D.omega) ambient.push_back(g.order);
  PairStab ps;
  ps.pres = z_subgroup_presentation(orb.schreier, D.n_omega(), ambient);
  ps.elems = basis_elems(D, ps.pres.basis);
  return ps;
}

// Coset representatives of the length-zero group modulo the product of the
// two stabilizers (a subgroup, the group being abelian); the identity word
// comes first.
std::vector<std::vector<int64_t>> double_coset_reps(const GenericHeckeData& D,
                                                    const SsModule& M1, const SsModule& M2) {
  ZMatrix L = z_row_basis(z_stack(M1.orbit.stab.basis, M2.orbit.stab.basis));
  return z_lattice_coset_reps(D.n_omega(), L);
}

}  // namespace

std::vector<std::vector<int64_t>> stabilizer_words(const GenericHeckeData& D,
                                                   const AffChar& xi) {
  AffChar x = make_aff_char(D, xi.chi, xi.j_set);
  XiOrbit xo = xi_orbit(D, x);
  std::vector<std::vector<int64_t>> out;
  for (size_t i = 0; i < xo.stab.basis.rows; ++i)
    if (xo.stab.orders[i] != 1) out.push_back(matrix_row(xo.stab.basis, i));
  return out;
}

SsModule make_ss_module(const GenericHeckeData& D, const SsDescriptor& m) {
  const FqField& F = *D.field;
  SsModule M;
  M.xi = make_aff_char(D, m.xi.chi, m.xi.j_set);
  require(is_supersingular(D, M.xi), "make_ss_module: affine character is not supersingular");
  require(m.v_dim > 0, "make_ss_module: v_dim must be positive");
  M.v_dim = m.v_dim;
  M.orbit = xi_orbit(D, M.xi);
  const SubgroupPresentation& st = M.orbit.stab;

  size_t want = 0;
  for (uint64_t o : st.orders) want += (o != 1);
  require(m.v_mats.size() == want,
          "make_ss_module: matrix count does not match the published stabilizer words");

  std::vector<OmegaElem> elems = basis_elems(D, st.basis);
  size_t next = 0;
  for (size_t i = 0; i < st.basis.rows; ++i) {
    check_internal(aff_char_act(D, M.xi, matrix_row(st.basis, i)) == M.xi,
                   "make_ss_module: stabilizer basis row does not stabilize Xi");
    if (st.orders[i] == 1) {
      check_internal(e_part_trivial(elems[i]),
                     "make_ss_module: trivial-order row collects outside Z_kappa");
      M.mats.push_back(
          fq_scale(F, char_value(D, M.xi.chi, elems[i].z), fq_identity(F, M.v_dim)));
    } else {
      const FqMatrix& A = m.v_mats[next++];
      require(A.rows == M.v_dim && A.cols == M.v_dim,
              "make_ss_module: matrices must be v_dim x v_dim");
      require(fq_rank(F, A) == M.v_dim, "make_ss_module: matrices must be invertible");
      M.mats.push_back(A);
    }
  }
  for (const FqMatrix& A : M.mats) M.mats_inv.push_back(fq_inverse(F, A));

  // Torsion relations: the d-th power of a finite-order basis element lies
  // in Z_kappa and must act through chi.
  for (size_t i = 0; i < st.basis.rows; ++i) {
    if (st.orders[i] <= 1) continue;
    OmegaElem p = omega_elem_pow(D, elems[i], int64_t(st.orders[i]));
    check_internal(e_part_trivial(p), "make_ss_module: torsion power collects outside Z_kappa");
    FqMatrix lhs = fq_pow(F, M.mats[i], int64_t(st.orders[i]));
    FqMatrix rhs = fq_scale(F, char_value(D, M.xi.chi, p.z), fq_identity(F, M.v_dim));
    require(lhs == rhs, "make_ss_module: torsion relation violated");
  }
  // Commutators of basis elements lie in Z_kappa and must act through chi.
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = i + 1; j < elems.size(); ++j) {
      OmegaElem c = omega_mul(D, omega_mul(D, elems[i], elems[j]),
                              omega_inv(D, omega_mul(D, elems[j], elems[i])));
      check_internal(e_part_trivial(c), "make_ss_module: commutator collects outside Z_kappa");
      FqMatrix lhs = fq_mul(F, M.mats[i], M.mats[j]);
      FqMatrix rhs = fq_scale(F, char_value(D, M.xi.chi, c.z), fq_mul(F, M.mats[j], M.mats[i]));
      require(lhs == rhs, "make_ss_module: commutator relation violated");
    }
  return M;
}

FqMatrix ss_eval(const GenericHeckeData& D, const SsModule& M, const OmegaElem& u) {
  const FqField& F = *D.field;
  check_internal(aff_char_act(D, M.xi, u.e) == M.xi, "ss_eval: element does not stabilize Xi");
  auto y = z_solve_left(M.orbit.stab.basis, u.e);
  check_internal(y.has_value(), "ss_eval: exponent word outside the stabilizer lattice");
  std::vector<OmegaElem> elems = basis_elems(D, M.orbit.stab.basis);
  OmegaElem prod = omega_identity(D);
  for (size_t j = 0; j < elems.size(); ++j)
    prod = omega_mul(D, prod, omega_elem_pow(D, elems[j], (*y)[j]));
  OmegaElem rest = omega_mul(D, u, omega_inv(D, prod));
  check_internal(e_part_trivial(rest), "ss_eval: collected remainder outside Z_kappa");
  FqMatrix out = fq_scale(F, char_value(D, M.xi.chi, rest.z), fq_identity(F, M.v_dim));
  for (size_t j = 0; j < elems.size(); ++j) {
    int64_t e = (*y)[j];
    const FqMatrix& base = e >= 0 ? M.mats[j] : M.mats_inv[j];
    for (int64_t k = 0; k < std::llabs(e); ++k) out = fq_mul(F, out, base);
  }
  return out;
}

SsDescriptor twist_descriptor(const GenericHeckeData& D, const SsDescriptor& m,
                              const std::vector<int64_t>& e) {
  SsModule M = make_ss_module(D, m);
  OmegaElem w = word_elem(D, e);
  OmegaElem winv = omega_inv(D, w);
  SsDescriptor out;
  out.xi = aff_char_act(D, M.xi, e);
  out.v_dim = m.v_dim;
  for (const auto& word : stabilizer_words(D, out.xi)) {
    OmegaElem g = word_elem(D, word);
    out.v_mats.push_back(ss_eval(D, M, omega_mul(D, omega_mul(D, w, g), winv)));
  }
  return out;
}

size_t hom_dim_aff(const GenericHeckeData& D, const SsDescriptor& m1,
                   const SsDescriptor& m2) {
  SsModule M1 = make_ss_module(D, m1);
  SsModule M2 = make_ss_module(D, m2);
  return M1.xi == M2.xi ? M1.v_dim * M2.v_dim : 0;
}

size_t h1_term_dim(const GenericHeckeData& D, const SsDescriptor& m1,
                   const SsDescriptor& m2) {
  const FqField& F = *D.field;
  SsModule M1 = make_ss_module(D, m1);
  SsModule M2 = make_ss_module(D, m2);
  if (!(M1.xi == M2.xi)) return 0;
  PairStab ps = pair_stabilizer(D, M1.xi, M2.xi);
  std::vector<FqMatrix> acts;
  for (const OmegaElem& w : ps.elems) {
    FqMatrix A = ss_eval(D, M2, w);
    FqMatrix Binv = fq_inverse(F, ss_eval(D, M1, w));
    acts.push_back(fq_sandwich_operator(F, A, Binv));
  }
  return h1_abelian(F, acts, ps.pres.orders);
}

size_t invariant_ext1_dim(const GenericHeckeData& D, const SsDescriptor& m1,
                          const SsDescriptor& m2) {
  const FqField& F = *D.field;
  SsModule M1 = make_ss_module(D, m1);
  SsModule M2 = make_ss_module(D, m2);
  const size_t d1 = M1.v_dim, d2 = M2.v_dim;
  PairStab ps = pair_stabilizer(D, M1.xi, M2.xi);
  ReflectionClassification cls = classify(D, M1.xi, M2.xi);
  ExtAffResult ea = dim_ext1_aff(D, M1.xi, M2.xi);

  size_t total = 0;

  // Free part: one coordinate block per reflection in s1, permuted by the
  // joint stabilizer; invariants decompose over orbit representatives as
  // the fixed space under the orbit stabilizer.
  std::vector<bool> in_s1(D.n_aff(), false), seen(D.n_aff(), false);
  for (size_t s : cls.s1) in_s1[s] = true;
  auto perm_apply = [&](size_t s, size_t j, bool inv) {
    std::vector<int64_t> row = matrix_row(ps.pres.basis, j);
    if (inv)
      for (int64_t& x : row) x = -x;
    return omega_perm_apply(D, row, s);
  };
  for (size_t s : cls.s1) {
    if (seen[s]) continue;
    auto orb = z_orbit_stabilizer<size_t>(s, ps.pres.basis.rows, perm_apply);
    for (size_t x : orb.orbit) {
      check_internal(in_s1[x], "invariant_ext1_dim: stabilizer orbit leaves S1");
      seen[x] = true;
    }
    SubgroupPresentation sp =
        z_subgroup_presentation(orb.schreier, ps.pres.basis.rows, ps.pres.orders);

    // Operators on the coordinate block at s: the conjugation correction
    // scalar composed with F -> V'(w) F V(w)^{-1}.
    std::vector<FqMatrix> ops;
    auto block_op = [&](const OmegaElem& w) {
      auto [simg, tcorr] = conj_lift(D, w, s);
      check_internal(simg == s, "invariant_ext1_dim: stabilizer element moves s");
      FqMatrix A = ss_eval(D, M2, w);
      FqMatrix Binv = fq_inverse(F, ss_eval(D, M1, w));
      Fq scalar = F.inv(char_value(D, M2.xi.chi, tcorr));
      return fq_scale(F, scalar, fq_sandwich_operator(F, A, Binv));
    };
    for (size_t r = 0; r < sp.basis.rows; ++r) {
      OmegaElem w = omega_identity(D);
      for (size_t j = 0; j < ps.elems.size(); ++j)
        w = omega_mul(D, w, omega_elem_pow(D, ps.elems[j], sp.basis.at(r, j)));
      ops.push_back(block_op(w));
    }
    for (size_t l = 0; l < D.zk.n(); ++l) {
      FqMatrix op = block_op(omega_from_zk(D, zk_gen_elem(D, l)));
      check_internal(fq_is_identity(F, op),
                     "invariant_ext1_dim: Z_kappa acts nontrivially on an S1 block");
      ops.push_back(op);
    }
    total += ops.empty() ? d1 * d2 : fq_invariant_subspace_dim(F, ops);
  }

  // Constrained part: the stabilizer acts trivially on the solution space of
  // the braid conditions modulo its split line, so the invariants are that
  // multiplicity times the space of joint intertwiners.
  size_t e2_mult = ea.dim_e2 - ea.dim_kernel;
  if (e2_mult > 0) {
    std::vector<FqMatrix> Ps, Qs;
    for (const OmegaElem& w : ps.elems) {
      Ps.push_back(ss_eval(D, M2, w));
      Qs.push_back(ss_eval(D, M1, w));
    }
    for (size_t l = 0; l < D.zk.n(); ++l) {
      Ps.push_back(fq_scale(F, M2.xi.chi.vals[l], fq_identity(F, d2)));
      Qs.push_back(fq_scale(F, M1.xi.chi.vals[l], fq_identity(F, d1)));
    }
    size_t inter = Ps.empty() ? d1 * d2 : fq_intertwiner_dim(F, Ps, Qs);
    total += e2_mult * inter;
  }
  return total;
}

ExtSsBreakdown dim_ext1_supersingular(const GenericHeckeData& D, const SsDescriptor& m1,
                                      const SsDescriptor& m2) {
  SsModule M1 = make_ss_module(D, m1);
  SsModule M2 = make_ss_module(D, m2);
  ExtSsBreakdown out;
  for (const auto& rep : double_coset_reps(D, M1, M2)) {
    SsDescriptor tw = twist_descriptor(D, m2, rep);
    CosetTerm term;
    term.rep = rep;
    term.h1_term = h1_term_dim(D, m1, tw);
    term.inv_ext_term = invariant_ext1_dim(D, m1, tw);
    out.total += term.h1_term + term.inv_ext_term;
    out.terms.push_back(std::move(term));
  }
  return out;
}

size_t dim_hom_supersingular(const GenericHeckeData& D, const SsDescriptor& m1,
                             const SsDescriptor& m2) {
  const FqField& F = *D.field;
  SsModule M1 = make_ss_module(D, m1);
  SsModule M2 = make_ss_module(D, m2);
  for (const auto& rep : double_coset_reps(D, M1, M2)) {
    if (!(aff_char_act(D, M2.xi, rep) == M1.xi)) continue;
    // At most one coset aligns the characters; the modules are isomorphic
    // exactly when the twisted V admits a nonzero intertwiner with V'.
    if (M1.v_dim != M2.v_dim) return 0;
    SsModule T = make_ss_module(D, twist_descriptor(D, m2, rep));
    PairStab ps = pair_stabilizer(D, M1.xi, T.xi);
    std::vector<FqMatrix> Ps, Qs;
    for (const OmegaElem& w : ps.elems) {
      Ps.push_back(ss_eval(D, T, w));
      Qs.push_back(ss_eval(D, M1, w));
    }
    for (size_t l = 0; l < D.zk.n(); ++l) {
      Ps.push_back(fq_scale(F, T.xi.chi.vals[l], fq_identity(F, M2.v_dim)));
      Qs.push_back(fq_scale(F, M1.xi.chi.vals[l], fq_identity(F, M1.v_dim)));
    }
    size_t inter = Ps.empty() ? M1.v_dim * M2.v_dim : fq_intertwiner_dim(F, Ps, Qs);
    return inter > 0 ? 1 : 0;
  }
  return 0;
}

MatrixModule induce_matrices(const GenericHeckeData& D, const SsDescriptor& m) {
  const FqField& F = *D.field;
  SsModule M = make_ss_module(D, m);
  const size_t nc = M.orbit.orbit.size();
  const size_t d = M.v_dim;
  const size_t N = nc * d;

  std::map<AffChar, size_t> index;
  for (size_t i = 0; i < nc; ++i) index[M.orbit.orbit[i]] = i;
  std::vector<OmegaElem> trans;
  trans.reserve(nc);
  for (const auto& w : M.orbit.transversal) trans.push_back(word_elem(D, w));

  MatrixModule out;
  // Z_kappa generators act on block i through chi twisted by the coset word.
  for (size_t l = 0; l < D.zk.n(); ++l) {
    ZkElem g = zk_gen_elem(D, l);
    FqMatrix mat = fq_zero_matrix(F, N, N);
    for (size_t i = 0; i < nc; ++i) {
      ZkAut aut = omega_zk_action(D, M.orbit.transversal[i]);
      Fq v = char_value(D, M.xi.chi, zk_apply(D.zk, aut, g));
      for (size_t a = 0; a < d; ++a) mat.at(i * d + a, i * d + a) = v;
    }
    out.gens.push_back(std::move(mat));
  }
  // Reflection lifts act on block i by the Xi-value at the conjugated lift.
  for (size_t s = 0; s < D.n_aff(); ++s) {
    FqMatrix mat = fq_zero_matrix(F, N, N);
    for (size_t i = 0; i < nc; ++i) {
      auto [simg, t] = conj_lift(D, trans[i], s);
      Fq v = F.mul(char_value(D, M.xi.chi, t), aff_char_value(D, M.xi, simg));
      for (size_t a = 0; a < d; ++a) mat.at(i * d + a, i * d + a) = v;
    }
    out.gens.push_back(std::move(mat));
  }
  // Length-zero generators permute the blocks, with the V-value of the
  // stabilizer element closing the triangle.
  for (size_t j = 0; j < D.n_omega(); ++j) {
    FqMatrix mat = fq_zero_matrix(F, N, N);
    OmegaElem wj = omega_gen(D, j);
    for (size_t i = 0; i < nc; ++i) {
      AffChar target = aff_char_act_gen(D, M.orbit.orbit[i], j, false);
      auto it = index.find(target);
      check_internal(it != index.end(), "induce_matrices: orbit not closed under a generator");
      size_t k = it->second;
      OmegaElem u = omega_mul(D, omega_mul(D, trans[i], wj), omega_inv(D, trans[k]));
      FqMatrix blk = ss_eval(D, M, u);
      for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b) mat.at(i * d + a, k * d + b) = blk.at(a, b);
    }
    out.gens.push_back(std::move(mat));
  }
  return out;
}

}  // namespace hecke
