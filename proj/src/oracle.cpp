#include "hecke/oracle.hpp"

#include <algorithm>

#include "hecke/error.hpp"

namespace hecke {

namespace {

// Generator indices.
size_t zk_gen(size_t i) { return i; }
size_t aff_gen(const GenericHeckeData& D, size_t s) { return D.zk.n() + s; }
size_t omega_gen_idx(const GenericHeckeData& D, size_t j) {
  return D.zk.n() + D.n_aff() + j;
}

// Word for T_t, t in Z_kappa (the Z_kappa generators commute).
std::vector<size_t> zk_word(const ZkElem& t) {
  std::vector<size_t> w;
  for (size_t i = 0; i < t.size(); ++i)
    for (uint64_t k = 0; k < t[i]; ++k) w.push_back(zk_gen(i));
  return w;
}

std::vector<size_t> cat(std::vector<size_t> a, const std::vector<size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

FqMatrix eval_word(const FqField& F, const MatrixModule& M, const std::vector<size_t>& w,
                   size_t dim) {
  FqMatrix P = fq_identity(F, dim);
  for (size_t g : w) P = fq_mul(F, P, M.gens[g]);
  return P;
}

size_t module_dim(const GenericHeckeData& D, const MatrixModule& M, RelationScope scope) {
  require(M.gens.size() == oracle_n_gens(D, scope),
          "matrix module: wrong number of generators for this scope");
  require(!M.gens.empty(), "matrix module: no generators");
  size_t d = M.gens[0].rows;
  for (const FqMatrix& A : M.gens)
    require(A.rows == d && A.cols == d, "matrix module: matrices must be square of equal size");
  return d;
}

}  // namespace

size_t oracle_n_gens(const GenericHeckeData& D, RelationScope scope) {
  size_t n = D.zk.n() + D.n_aff();
  if (scope == RelationScope::full) n += D.n_omega();
  return n;
}

std::vector<Relation> build_relations(const GenericHeckeData& D, RelationScope scope) {
  const FqField& F = *D.field;
  const Fq one = F.one();
  const Fq neg = F.neg(one);
  std::vector<Relation> rels;
  size_t nz = D.zk.n(), na = D.n_aff();

  // Z_kappa: generator orders and commutativity.
  for (size_t i = 0; i < nz; ++i) {
    std::vector<size_t> w(D.zk.orders[i], zk_gen(i));
    rels.push_back({{one, w}, {neg, {}}});
  }
  for (size_t i = 0; i < nz; ++i)
    for (size_t j = i + 1; j < nz; ++j)
      rels.push_back({{one, {zk_gen(i), zk_gen(j)}}, {neg, {zk_gen(j), zk_gen(i)}}});

  // Reflection lifts: conjugation of Z_kappa and the quadratic relation.
  for (size_t s = 0; s < na; ++s) {
    for (size_t i = 0; i < nz; ++i)
      rels.push_back({{one, {aff_gen(D, s), zk_gen(i)}},
                      {neg, cat(zk_word(D.s_conj[s].img[i]), {aff_gen(D, s)})}});
    Relation quad = {{one, {aff_gen(D, s), aff_gen(D, s)}}};
    for (const auto& [t, c] : D.c_param[s])
      quad.push_back({F.neg(c), cat(zk_word(t), {aff_gen(D, s)})});
    rels.push_back(quad);
  }

  // Braid relations for finite bond labels.
  for (size_t s = 0; s < na; ++s)
    for (size_t t = s + 1; t < na; ++t) {
      uint32_t m = D.cox_m[s][t];
      if (m < 2) continue;  // 0 encodes an infinite bond
      std::vector<size_t> lhs, rhs;
      for (uint32_t k = 0; k < m; ++k) {
        lhs.push_back(aff_gen(D, k % 2 == 0 ? s : t));
        rhs.push_back(aff_gen(D, k % 2 == 0 ? t : s));
      }
      rels.push_back({{one, lhs}, {neg, rhs}});
    }

  if (scope == RelationScope::full) {
    for (size_t j = 0; j < D.n_omega(); ++j) {
      const OmegaGen& w = D.omega[j];
      // Conjugation of Z_kappa.
      for (size_t i = 0; i < nz; ++i)
        rels.push_back({{one, {omega_gen_idx(D, j), zk_gen(i)}},
                        {neg, cat(zk_word(w.aut.img[i]), {omega_gen_idx(D, j)})}});
      // Mixing past reflection lifts.
      for (size_t s = 0; s < na; ++s)
        rels.push_back(
            {{one, {omega_gen_idx(D, j), aff_gen(D, s)}},
             {neg, cat(zk_word(w.corr[s]), {aff_gen(D, w.perm[s]), omega_gen_idx(D, j)})}});
      // Torsion.
      if (w.order > 0) {
        std::vector<size_t> pw(w.order, omega_gen_idx(D, j));
        rels.push_back({{one, pw}, {neg, zk_word(w.power)}});
      }
      // Commutators with the later generators.
      for (size_t k = j + 1; k < D.n_omega(); ++k)
        rels.push_back(
            {{one, {omega_gen_idx(D, j), omega_gen_idx(D, k)}},
             {neg, cat(zk_word(D.omega_comm[j][k]),
                       {omega_gen_idx(D, k), omega_gen_idx(D, j)})}});
    }
  }
  return rels;
}

bool check_module(const GenericHeckeData& D, const MatrixModule& M, RelationScope scope) {
  const FqField& F = *D.field;
  size_t d = module_dim(D, M, scope);
  for (const Relation& rel : build_relations(D, scope)) {
    FqMatrix acc = fq_zero_matrix(F, d, d);
    for (const RelTerm& term : rel)
      acc = fq_add(F, acc, fq_scale(F, term.coef, eval_word(F, M, term.word, d)));
    if (!fq_is_zero_matrix(F, acc)) return false;
  }
  return true;
}

MatrixModule aff_char_module(const GenericHeckeData& D, const AffChar& xi) {
  make_aff_char(D, xi.chi, xi.j_set);  // revalidate
  MatrixModule M;
  for (size_t i = 0; i < D.zk.n(); ++i) {
    ZkElem t = D.zk.identity();
    t[i] = D.zk.orders[i] > 1 ? 1 : 0;
    M.gens.push_back(FqMatrix(1, 1, char_value(D, xi.chi, t)));
  }
  for (size_t s = 0; s < D.n_aff(); ++s)
    M.gens.push_back(FqMatrix(1, 1, aff_char_value(D, xi, s)));
  return M;
}

size_t brute_force_hom(const GenericHeckeData& D, const MatrixModule& M1,
                       const MatrixModule& M2, RelationScope scope) {
  require(check_module(D, M1, scope), "brute_force_hom: first module fails the relations");
  require(check_module(D, M2, scope), "brute_force_hom: second module fails the relations");
  return fq_intertwiner_dim(*D.field, M1.gens, M2.gens);
}

size_t brute_force_ext1(const GenericHeckeData& D, const MatrixModule& M1,
                        const MatrixModule& M2, RelationScope scope) {
  const FqField& F = *D.field;
  require(check_module(D, M1, scope), "brute_force_ext1: first module fails the relations");
  require(check_module(D, M2, scope), "brute_force_ext1: second module fails the relations");
  size_t d1 = module_dim(D, M1, scope), d2 = module_dim(D, M2, scope);
  size_t ng = oracle_n_gens(D, scope);
  size_t block = d2 * d1;       // one unknown matrix d(g) per generator
  size_t nvars = ng * block;

  std::vector<Relation> rels = build_relations(D, scope);
  size_t neqs = 0;
  for (const Relation& rel : rels) {
    (void)rel;
    neqs += block;
  }

  // Rows are equations, columns are variables; the equations say that the
  // lower-left block of every relation, evaluated on the block matrices,
  // vanishes.  For a word g_1 ... g_l that block is
  //   sum_k rho2(g_1 .. g_{k-1}) d(g_k) rho1(g_{k+1} .. g_l).
  FqMatrix A(neqs, nvars, F.zero());
  size_t eq0 = 0;
  for (const Relation& rel : rels) {
    for (const RelTerm& term : rel) {
      const std::vector<size_t>& w = term.word;
      size_t l = w.size();
      std::vector<FqMatrix> pre(l + 1), suf(l + 1);
      pre[0] = fq_identity(F, d2);
      for (size_t k = 0; k < l; ++k) pre[k + 1] = fq_mul(F, pre[k], M2.gens[w[k]]);
      suf[l] = fq_identity(F, d1);
      for (size_t k = l; k-- > 0;) suf[k] = fq_mul(F, M1.gens[w[k]], suf[k + 1]);
      for (size_t k = 0; k < l; ++k) {
        size_t g = w[k];
        for (size_t i = 0; i < d2; ++i)
          for (size_t j = 0; j < d1; ++j) {
            size_t eq = eq0 + i * d1 + j;
            for (size_t r = 0; r < d2; ++r)
              for (size_t c = 0; c < d1; ++c) {
                Fq add = F.mul(term.coef, F.mul(pre[k].at(i, r), suf[k + 1].at(c, j)));
                size_t var = g * block + r * d1 + c;
                A.at(eq, var) = F.add(A.at(eq, var), add);
              }
          }
      }
    }
    eq0 += block;
  }
  size_t cocycles = nvars - fq_rank(F, A);

  // Change-of-basis tuples d(g) = m rho1(g) - rho2(g) m for m of shape d2 x d1.
  FqMatrix C(block, nvars, F.zero());
  for (size_t r = 0; r < d2; ++r)
    for (size_t c = 0; c < d1; ++c) {
      size_t row = r * d1 + c;
      for (size_t g = 0; g < ng; ++g)
        for (size_t i = 0; i < d2; ++i)
          for (size_t j = 0; j < d1; ++j) {
            // coefficient of m[r][c] in (m rho1(g) - rho2(g) m)[i][j]
            Fq v = F.zero();
            if (i == r) v = M1.gens[g].at(c, j);
            if (c == j) v = F.sub(v, M2.gens[g].at(i, r));
            C.at(row, g * block + i * d1 + j) = v;
          }
    }
  size_t coboundaries = fq_rank(F, C);
  check_internal(coboundaries <= cocycles, "brute_force_ext1: coboundaries exceed cocycles");
  return cocycles - coboundaries;
}

}  // namespace hecke
