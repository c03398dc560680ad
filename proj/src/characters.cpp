#include "hecke/characters.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <utility>

#include "hecke/error.hpp"

namespace hecke {

namespace {

constexpr uint64_t kMaxCharCount = uint64_t(1) << 20;
constexpr size_t kMaxFinitenessRank = 11;
constexpr int64_t kMaxActExponent = 1000000;

using I128 = __int128;

int sign_of(I128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Sign of u + v sqrt(2) for integers u, v.
int sign_sqrt2(I128 u, I128 v) {
  int su = sign_of(u);
  int sv = sign_of(v);
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  int cmp = sign_of(u * u - 2 * v * v);  // compares |u| with |v| sqrt 2
  return su > 0 ? cmp : -cmp;
}

// An element a + b sqrt2 + c sqrt3 + d sqrt6 of Z[sqrt2, sqrt3].  With at
// most 11 generators all minors stay below 2^31 per component (Hadamard
// bound on every Galois conjugate), so the squares taken while comparing
// nested radicals fit comfortably in 128 bits.
struct QuadElem {
  I128 a = 0, b = 0, c = 0, d = 0;
};

QuadElem qe_add(const QuadElem& x, const QuadElem& y) {
  return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}

QuadElem qe_neg(const QuadElem& x) { return {-x.a, -x.b, -x.c, -x.d}; }

QuadElem qe_mul(const QuadElem& x, const QuadElem& y) {
  QuadElem r;
  r.a = x.a * y.a + 2 * x.b * y.b + 3 * x.c * y.c + 6 * x.d * y.d;
  r.b = x.a * y.b + x.b * y.a + 3 * (x.c * y.d + x.d * y.c);
  r.c = x.a * y.c + x.c * y.a + 2 * (x.b * y.d + x.d * y.b);
  r.d = x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b;
  return r;
}

// Sign of x = X + Y sqrt3 with X = a + b sqrt2, Y = c + d sqrt2.
int qe_sign(const QuadElem& x) {
  int sx = sign_sqrt2(x.a, x.b);
  int sy = sign_sqrt2(x.c, x.d);
  if (sy == 0) return sx;
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  // Opposite signs: compare X^2 with 3 Y^2 inside Z[sqrt2].
  I128 u = x.a * x.a + 2 * x.b * x.b - 3 * (x.c * x.c + 2 * x.d * x.d);
  I128 v = 2 * x.a * x.b - 6 * x.c * x.d;
  int cmp = sign_sqrt2(u, v);
  return sx > 0 ? cmp : -cmp;
}

// Off-diagonal Gram entry -2 cos(pi / m), with 0 encoding m = infinity.
QuadElem bond_entry(uint32_t m) {
  switch (m) {
    case 2:
      return {0, 0, 0, 0};
    case 3:
      return {-1, 0, 0, 0};
    case 4:
      return {0, -1, 0, 0};
    case 6:
      return {0, 0, -1, 0};
    case 0:
      return {-2, 0, 0, 0};
    default:
      throw ParameterError(
          "finiteness test supports bond labels 2, 3, 4, 6 and 0 (infinity)");
  }
}

}  // namespace

ZkChar trivial_char(const GenericHeckeData& D) {
  ZkChar chi;
  chi.vals.assign(D.zk.n(), D.field->one());
  return chi;
}

void check_char(const GenericHeckeData& D, const ZkChar& chi) {
  require(chi.vals.size() == D.zk.n(),
          "character has the wrong number of generator values");
  for (size_t i = 0; i < chi.vals.size(); ++i) {
    D.field->check_element(chi.vals[i]);
    require(!D.field->is_zero(chi.vals[i]), "character values must be nonzero");
    require(D.field->is_one(
                D.field->pow(chi.vals[i], int64_t(D.zk.orders[i]))),
            "character value does not satisfy the generator order");
  }
}

std::vector<ZkChar> all_characters(const GenericHeckeData& D) {
  size_t n = D.zk.n();
  uint64_t count = 1;
  std::vector<Fq> roots;
  for (size_t i = 0; i < n; ++i) {
    uint64_t m = D.zk.orders[i];
    roots.push_back(D.field->root_of_unity(m));
    require(count <= kMaxCharCount / m, "too many characters to enumerate");
    count *= m;
  }
  std::vector<ZkChar> out;
  out.reserve(count);
  std::vector<uint64_t> idx(n, 0);
  while (true) {
    ZkChar chi;
    chi.vals.reserve(n);
    for (size_t i = 0; i < n; ++i)
      chi.vals.push_back(D.field->pow(roots[i], int64_t(idx[i])));
    out.push_back(std::move(chi));
    size_t pos = 0;
    while (pos < n && ++idx[pos] == D.zk.orders[pos]) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  check_internal(out.size() == count, "character enumeration miscounted");
  return out;
}

Fq char_value(const GenericHeckeData& D, const ZkChar& chi, const ZkElem& t) {
  require(chi.vals.size() == D.zk.n() && t.size() == D.zk.n(),
          "character or element has the wrong length");
  Fq r = D.field->one();
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] != 0) r = D.field->mul(r, D.field->pow(chi.vals[i], int64_t(t[i])));
  return r;
}

Fq char_on_c(const GenericHeckeData& D, const ZkChar& chi, size_t s) {
  require(s < D.n_aff(), "reflection index out of range");
  Fq r = D.field->zero();
  for (const auto& [t, coef] : D.c_param[s])
    r = D.field->add(r, D.field->mul(coef, char_value(D, chi, t)));
  return r;
}

ZkChar char_compose(const GenericHeckeData& D, const ZkChar& chi,
                    const ZkAut& f) {
  require(f.img.size() == D.zk.n(), "automorphism has the wrong size");
  ZkChar out;
  out.vals.reserve(D.zk.n());
  for (size_t i = 0; i < D.zk.n(); ++i)
    out.vals.push_back(char_value(D, chi, f.img[i]));
  return out;
}

std::vector<size_t> s_aff_char(const GenericHeckeData& D, const ZkChar& chi) {
  std::vector<size_t> out;
  for (size_t s = 0; s < D.n_aff(); ++s)
    if (!D.field->is_zero(char_on_c(D, chi, s))) out.push_back(s);
  return out;
}

AffChar make_aff_char(const GenericHeckeData& D, ZkChar chi,
                      std::vector<size_t> j_set) {
  check_char(D, chi);
  std::sort(j_set.begin(), j_set.end());
  require(std::adjacent_find(j_set.begin(), j_set.end()) == j_set.end(),
          "j_set has repeated entries");
  for (size_t s : j_set) {
    require(s < D.n_aff(), "j_set entry out of range");
    require(!D.field->is_zero(char_on_c(D, chi, s)),
            "j_set must consist of reflections with chi(c_s) nonzero");
  }
  return AffChar{std::move(chi), std::move(j_set)};
}

bool j_contains(const AffChar& xi, size_t s) {
  return std::binary_search(xi.j_set.begin(), xi.j_set.end(), s);
}

Fq aff_char_value(const GenericHeckeData& D, const AffChar& xi, size_t s) {
  require(s < D.n_aff(), "reflection index out of range");
  if (j_contains(xi, s)) return D.field->zero();
  return char_on_c(D, xi.chi, s);
}

bool coxeter_subset_finite(const std::vector<std::vector<uint32_t>>& cox_m,
                           const std::vector<size_t>& subset) {
  size_t k = subset.size();
  require(k <= kMaxFinitenessRank,
          "finiteness test supports at most 11 reflections");
  std::set<size_t> distinct(subset.begin(), subset.end());
  require(distinct.size() == k, "subset has repeated entries");
  for (size_t s : subset) {
    require(s < cox_m.size(), "subset entry out of range");
    require(cox_m[s].size() == cox_m.size(), "Coxeter matrix is not square");
  }
  if (k == 0) return true;

  std::vector<std::vector<QuadElem>> A(k, std::vector<QuadElem>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      A[i][j] = (i == j) ? QuadElem{2, 0, 0, 0}
                         : bond_entry(cox_m[subset[i]][subset[j]]);

  // dp[mask] = determinant of the submatrix on rows 0..popcount(mask)-1 and
  // the columns in mask, filled by expansion along the last row.
  std::vector<QuadElem> dp(size_t(1) << k);
  dp[0] = QuadElem{1, 0, 0, 0};
  for (size_t mask = 1; mask < dp.size(); ++mask) {
    size_t r = size_t(std::popcount(mask)) - 1;
    QuadElem acc;
    size_t pos = 0;
    for (size_t j = 0; j < k; ++j) {
      if (!((mask >> j) & 1)) continue;
      QuadElem term = qe_mul(A[r][j], dp[mask ^ (size_t(1) << j)]);
      acc = qe_add(acc, (r + pos) % 2 == 0 ? term : qe_neg(term));
      ++pos;
    }
    dp[mask] = acc;
  }

  // Positive definite iff every leading principal minor is positive.
  for (size_t r = 1; r <= k; ++r)
    if (qe_sign(dp[(size_t(1) << r) - 1]) <= 0) return false;
  return true;
}

bool is_supersingular(const GenericHeckeData& D, const AffChar& xi) {
  std::vector<size_t> s_chi = s_aff_char(D, xi.chi);
  std::vector<size_t> complement;
  for (size_t s : s_chi)
    if (!j_contains(xi, s)) complement.push_back(s);
  return coxeter_subset_finite(D.cox_m, xi.j_set) &&
         coxeter_subset_finite(D.cox_m, complement);
}

AffChar aff_char_act_gen(const GenericHeckeData& D, const AffChar& xi, size_t j,
                         bool inverse) {
  require(j < D.n_omega(), "Omega generator index out of range");
  const OmegaGen& g = D.omega[j];
  ZkAut a = inverse ? zk_inverse_aut(D.zk, g.aut) : g.aut;
  ZkChar nc = char_compose(D, xi.chi, a);
  std::vector<size_t> nj;
  if (inverse) {
    for (size_t s : xi.j_set) nj.push_back(g.perm[s]);
  } else {
    for (size_t s = 0; s < D.n_aff(); ++s)
      if (j_contains(xi, g.perm[s])) nj.push_back(s);
  }
  return make_aff_char(D, std::move(nc), std::move(nj));
}

AffChar aff_char_act(const GenericHeckeData& D, const AffChar& xi,
                     const std::vector<int64_t>& e) {
  require(e.size() == D.n_omega(), "exponent vector has the wrong length");
  AffChar cur = xi;
  for (size_t j = 0; j < e.size(); ++j) {
    int64_t steps = e[j];
    uint64_t d = D.omega[j].order;
    // w_j^d is central, so the twist by w_j has order dividing d.
    if (d > 0) steps %= int64_t(d);
    bool inv = steps < 0;
    int64_t count = inv ? -steps : steps;
    require(count <= kMaxActExponent, "exponent too large");
    for (int64_t t = 0; t < count; ++t) cur = aff_char_act_gen(D, cur, j, inv);
  }
  return cur;
}

XiOrbit xi_orbit(const GenericHeckeData& D, const AffChar& xi) {
  AffChar start = make_aff_char(D, xi.chi, xi.j_set);
  auto apply = [&](const AffChar& x, size_t j, bool inv) {
    return aff_char_act_gen(D, x, j, inv);
  };
  OrbitResult<AffChar> orb =
      z_orbit_stabilizer<AffChar>(start, D.n_omega(), apply);
  std::vector<uint64_t> amb;
  amb.reserve(D.n_omega());
  for (const auto& g : D.omega) amb.push_back(g.order);
  XiOrbit out;
  out.orbit = std::move(orb.orbit);
  out.transversal = std::move(orb.transversal);
  out.stab = z_subgroup_presentation(orb.schreier, D.n_omega(), amb);
  return out;
}

}  // namespace hecke
