#include "hecke/data.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

#include "hecke/error.hpp"
#include "hecke/zmat.hpp"

namespace hecke {

namespace {

constexpr uint64_t kAutOrderCap = 1000000;

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b, r = a % b;
  return (r < 0) ? q - 1 : q;
}

uint64_t mod_reduce(__int128 x, uint64_t m) {
  __int128 r = x % static_cast<__int128>(m);
  if (r < 0) r += m;
  return static_cast<uint64_t>(r);
}

}  // namespace

// --------------------------------------------------------------------------
// Z_kappa

ZkElem ZkGroup::make(const std::vector<int64_t>& raw) const {
  require(raw.size() == orders.size(), "Z_kappa exponent vector has wrong length");
  ZkElem out(orders.size());
  for (size_t i = 0; i < orders.size(); ++i) out[i] = mod_reduce(raw[i], orders[i]);
  return out;
}

ZkElem ZkGroup::mul(const ZkElem& a, const ZkElem& b) const {
  check(a);
  check(b);
  ZkElem out(orders.size());
  for (size_t i = 0; i < orders.size(); ++i)
    out[i] = mod_reduce(static_cast<__int128>(a[i]) + b[i], orders[i]);
  return out;
}

ZkElem ZkGroup::inv(const ZkElem& a) const {
  check(a);
  ZkElem out(orders.size());
  for (size_t i = 0; i < orders.size(); ++i) out[i] = (a[i] == 0) ? 0 : orders[i] - a[i];
  return out;
}

ZkElem ZkGroup::pow(const ZkElem& a, int64_t e) const {
  check(a);
  ZkElem out(orders.size());
  for (size_t i = 0; i < orders.size(); ++i)
    out[i] = mod_reduce(static_cast<__int128>(a[i]) * e, orders[i]);
  return out;
}

bool ZkGroup::is_identity(const ZkElem& a) const {
  check(a);
  for (uint64_t x : a)
    if (x != 0) return false;
  return true;
}

void ZkGroup::check(const ZkElem& a) const {
  require(a.size() == orders.size(), "Z_kappa element has wrong length");
  for (size_t i = 0; i < orders.size(); ++i)
    require(a[i] < orders[i], "Z_kappa exponent out of range");
}

ZkAut zk_identity_aut(const ZkGroup& G) {
  ZkAut f;
  for (size_t i = 0; i < G.n(); ++i) {
    ZkElem e = G.identity();
    if (G.orders[i] > 1) e[i] = 1;
    f.img.push_back(e);
  }
  return f;
}

ZkElem zk_apply(const ZkGroup& G, const ZkAut& f, const ZkElem& a) {
  G.check(a);
  check_internal(f.img.size() == G.n(), "automorphism has wrong generator count");
  ZkElem out(G.n(), 0);
  for (size_t j = 0; j < G.n(); ++j) {
    __int128 acc = 0;
    for (size_t i = 0; i < G.n(); ++i)
      acc += static_cast<__int128>(a[i]) * f.img[i][j] % G.orders[j];
    out[j] = mod_reduce(acc, G.orders[j]);
  }
  return out;
}

ZkAut zk_compose(const ZkGroup& G, const ZkAut& g, const ZkAut& f) {
  ZkAut out;
  for (size_t i = 0; i < G.n(); ++i) out.img.push_back(zk_apply(G, g, f.img[i]));
  return out;
}

ZkAut zk_aut_pow(const ZkGroup& G, const ZkAut& f, uint64_t e) {
  ZkAut out = zk_identity_aut(G);
  for (uint64_t t = 0; t < e; ++t) out = zk_compose(G, f, out);
  return out;
}

ZkAut zk_inverse_aut(const ZkGroup& G, const ZkAut& f) {
  // f^{-1} = f^{k-1} where k is the order of f.
  ZkAut prev = zk_identity_aut(G);
  ZkAut cur = f;
  const ZkAut id = prev;
  for (uint64_t k = 1; k <= kAutOrderCap; ++k) {
    if (cur == id) return prev;
    prev = cur;
    cur = zk_compose(G, f, cur);
  }
  throw ParameterError("Z_kappa endomorphism is not invertible (or has huge order)");
}

void zk_check_aut(const ZkGroup& G, const ZkAut& f) {
  require(f.img.size() == G.n(), "automorphism must list an image per generator");
  for (size_t i = 0; i < G.n(); ++i) {
    G.check(f.img[i]);
    // The image of a generator of order m must have order dividing m.
    require(G.is_identity(G.pow(f.img[i], static_cast<int64_t>(G.orders[i]))),
            "automorphism image violates a generator order");
  }
  zk_inverse_aut(G, f);  // throws if not invertible
}

CParam c_push(const ZkGroup& G, const ZkAut& f, const CParam& c) {
  CParam out;
  for (const auto& [key, val] : c) {
    ZkElem nk = zk_apply(G, f, key);
    auto it = out.find(nk);
    check_internal(it == out.end(), "automorphism collapsed c-parameter support");
    out.emplace(nk, val);
  }
  return out;
}

CParam c_translate(const ZkGroup& G, const ZkElem& u, const CParam& c) {
  CParam out;
  for (const auto& [key, val] : c) out.emplace(G.mul(u, key), val);
  return out;
}

// --------------------------------------------------------------------------
// Omega(1) collection

namespace {

struct Letter {
  size_t j;
  int sign;
};

std::vector<Letter> flatten(const std::vector<int64_t>& e) {
  std::vector<Letter> out;
  size_t total = 0;
  for (int64_t x : e) total += static_cast<size_t>(std::llabs(x));
  check_internal(total <= 100000, "exponent word too long to collect");
  out.reserve(total);
  for (size_t j = 0; j < e.size(); ++j)
    for (int64_t t = 0; t < std::llabs(e[j]); ++t) out.push_back({j, e[j] > 0 ? 1 : -1});
  return out;
}

// Applies the conjugation action of a word with net exponent vector `net`.
ZkElem apply_word_aut(const GenericHeckeData& D, const std::vector<int64_t>& net,
                      const ZkElem& t) {
  ZkElem cur = t;
  for (size_t m = 0; m < net.size(); ++m) {
    if (net[m] == 0) continue;
    if (net[m] > 0) {
      for (int64_t k = 0; k < net[m]; ++k) cur = zk_apply(D.zk, D.omega[m].aut, cur);
    } else {
      ZkAut inv = zk_inverse_aut(D.zk, D.omega[m].aut);
      for (int64_t k = 0; k < -net[m]; ++k) cur = zk_apply(D.zk, inv, cur);
    }
  }
  return cur;
}

// Reduces torsion exponents into [0, order), pushing extracted powers of
// w_j^{order} (elements of Z_kappa) leftwards through the prefix.
void torsion_normalize(const GenericHeckeData& D, ZkElem& z, std::vector<int64_t>& e) {
  for (size_t j = 0; j < D.n_omega(); ++j) {
    uint64_t d = D.omega[j].order;
    if (d == 0) continue;
    int64_t q = floor_div(e[j], static_cast<int64_t>(d));
    if (q == 0) continue;
    e[j] -= q * static_cast<int64_t>(d);
    ZkElem pw = D.zk.pow(D.omega[j].power, q);
    std::vector<int64_t> prefix(D.n_omega(), 0);
    for (size_t m = 0; m < j; ++m) prefix[m] = e[m];
    z = D.zk.mul(z, apply_word_aut(D, prefix, pw));
  }
}

// Sorts a letter word into nondecreasing generator order, accumulating the
// Z_kappa corrections produced by each adjacent swap into z.
OmegaElem collect(const GenericHeckeData& D, ZkElem z, std::vector<Letter> letters) {
  const ZkGroup& G = D.zk;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < letters.size(); ++i) {
      if (letters[i].j <= letters[i + 1].j) continue;
      size_t k = letters[i].j, j = letters[i + 1].j;
      int s1 = letters[i].sign, s2 = letters[i + 1].sign;
      const ZkElem& c = D.omega_comm[j][k];
      // w_k^{s1} w_j^{s2} = t * w_j^{s2} w_k^{s1} with t as follows.
      ZkElem t;
      if (s1 > 0 && s2 > 0) {
        t = G.inv(c);
      } else if (s1 < 0 && s2 > 0) {
        t = zk_apply(G, zk_inverse_aut(G, D.omega[k].aut), c);
      } else if (s1 > 0 && s2 < 0) {
        t = zk_apply(G, zk_inverse_aut(G, D.omega[j].aut), c);
      } else {
        ZkAut inv_jk =
            zk_compose(G, zk_inverse_aut(G, D.omega[j].aut), zk_inverse_aut(G, D.omega[k].aut));
        t = zk_apply(G, inv_jk, G.inv(c));
      }
      if (!G.is_identity(t)) {
        std::vector<int64_t> prefix(D.n_omega(), 0);
        for (size_t p = 0; p < i; ++p) prefix[letters[p].j] += letters[p].sign;
        z = G.mul(z, apply_word_aut(D, prefix, t));
      }
      std::swap(letters[i], letters[i + 1]);
      changed = true;
    }
  }
  std::vector<int64_t> e(D.n_omega(), 0);
  for (const Letter& l : letters) e[l.j] += l.sign;
  torsion_normalize(D, z, e);
  return OmegaElem{z, e};
}

std::vector<size_t> invert_perm(const std::vector<size_t>& p) {
  std::vector<size_t> inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

}  // namespace

OmegaElem omega_identity(const GenericHeckeData& D) {
  return OmegaElem{D.zk.identity(), std::vector<int64_t>(D.n_omega(), 0)};
}

OmegaElem omega_make(const GenericHeckeData& D, const ZkElem& z, const std::vector<int64_t>& e) {
  require(e.size() == D.n_omega(), "Omega exponent vector has wrong length");
  ZkElem zz = z;
  D.zk.check(zz);
  std::vector<int64_t> ee = e;
  torsion_normalize(D, zz, ee);
  return OmegaElem{zz, ee};
}

OmegaElem omega_gen(const GenericHeckeData& D, size_t j, int64_t exp) {
  require(j < D.n_omega(), "Omega generator index out of range");
  std::vector<int64_t> e(D.n_omega(), 0);
  e[j] = exp;
  return omega_make(D, D.zk.identity(), e);
}

OmegaElem omega_from_zk(const GenericHeckeData& D, const ZkElem& z) {
  D.zk.check(z);
  return OmegaElem{z, std::vector<int64_t>(D.n_omega(), 0)};
}

OmegaElem omega_mul(const GenericHeckeData& D, const OmegaElem& a, const OmegaElem& b) {
  check_internal(a.e.size() == D.n_omega() && b.e.size() == D.n_omega(),
                 "Omega element arity mismatch");
  ZkElem z = D.zk.mul(a.z, apply_word_aut(D, a.e, b.z));
  std::vector<Letter> letters = flatten(a.e);
  std::vector<Letter> tail = flatten(b.e);
  letters.insert(letters.end(), tail.begin(), tail.end());
  return collect(D, z, letters);
}

OmegaElem omega_inv(const GenericHeckeData& D, const OmegaElem& a) {
  // (z W)^{-1} = W^{-1} z^{-1}.
  std::vector<Letter> letters;
  for (size_t jj = D.n_omega(); jj-- > 0;)
    for (int64_t t = 0; t < std::llabs(a.e[jj]); ++t) letters.push_back({jj, a.e[jj] > 0 ? -1 : 1});
  OmegaElem winv = collect(D, D.zk.identity(), std::move(letters));
  return omega_mul(D, winv, omega_from_zk(D, D.zk.inv(a.z)));
}

ZkAut omega_zk_action(const GenericHeckeData& D, const std::vector<int64_t>& e) {
  ZkAut out = zk_identity_aut(D.zk);
  for (size_t i = 0; i < D.zk.n(); ++i) out.img[i] = apply_word_aut(D, e, out.img[i]);
  return out;
}

std::pair<size_t, ZkElem> conj_lift(const GenericHeckeData& D, const OmegaElem& g, size_t s) {
  require(s < D.n_aff(), "reflection index out of range");
  const ZkGroup& G = D.zk;
  size_t cur_s = s;
  ZkElem cur_t = G.identity();
  // Letters act right to left; z comes last (it is the leftmost factor).
  for (size_t jj = D.n_omega(); jj-- > 0;) {
    int64_t ej = g.e[jj];
    if (ej == 0) continue;
    const OmegaGen& og = D.omega[jj];
    if (ej > 0) {
      for (int64_t t = 0; t < ej; ++t) {
        cur_t = G.mul(zk_apply(G, og.aut, cur_t), og.corr[cur_s]);
        cur_s = og.perm[cur_s];
      }
    } else {
      ZkAut inv_aut = zk_inverse_aut(G, og.aut);
      std::vector<size_t> inv_perm = invert_perm(og.perm);
      for (int64_t t = 0; t < -ej; ++t) {
        size_t u = inv_perm[cur_s];
        cur_t = zk_apply(G, inv_aut, G.mul(cur_t, G.inv(og.corr[u])));
        cur_s = u;
      }
    }
  }
  cur_t = G.mul(cur_t, G.mul(g.z, G.inv(zk_apply(G, D.s_conj[cur_s], g.z))));
  return {cur_s, cur_t};
}

size_t omega_perm_apply(const GenericHeckeData& D, const std::vector<int64_t>& e, size_t s) {
  require(s < D.n_aff(), "reflection index out of range");
  size_t cur = s;
  for (size_t jj = D.n_omega(); jj-- > 0;) {
    int64_t ej = e[jj];
    if (ej == 0) continue;
    const std::vector<size_t>& p = D.omega[jj].perm;
    if (ej > 0) {
      for (int64_t t = 0; t < ej; ++t) cur = p[cur];
    } else {
      std::vector<size_t> ip = invert_perm(p);
      for (int64_t t = 0; t < -ej; ++t) cur = ip[cur];
    }
  }
  return cur;
}

// --------------------------------------------------------------------------
// Validation

void validate(const GenericHeckeData& D) {
  require(D.field != nullptr, "datum has no coefficient field");
  const ZkGroup& G = D.zk;
  const FqField& F = *D.field;
  for (uint64_t m : G.orders) require(m >= 1, "Z_kappa invariant must be positive");

  const size_t na = D.n_aff();
  require(D.cox_m.size() == na, "Coxeter matrix size mismatch");
  require(D.s_labels.size() == na, "reflection label count mismatch");
  require(D.s_conj.size() == na, "lift conjugation count mismatch");
  require(D.c_param.size() == na, "c-parameter count mismatch");
  for (size_t i = 0; i < na; ++i) {
    require(D.cox_m[i].size() == na, "Coxeter matrix row size mismatch");
    require(D.cox_m[i][i] == 1, "Coxeter matrix diagonal must be 1");
    for (size_t j = 0; j < na; ++j) {
      require(D.cox_m[i][j] == D.cox_m[j][i], "Coxeter matrix must be symmetric");
      if (i != j) {
        uint32_t m = D.cox_m[i][j];
        require(m == 0 || m == 2 || m == 3 || m == 4 || m == 6,
                "off-diagonal Coxeter labels must be 2, 3, 4, 6 or 0 (infinity)");
      }
    }
  }

  for (size_t s = 0; s < na; ++s) {
    zk_check_aut(G, D.s_conj[s]);
    // Conjugation by a lift of an involution squares to conjugation by an
    // element of the abelian group Z_kappa, which is trivial.
    require(zk_compose(G, D.s_conj[s], D.s_conj[s]) == zk_identity_aut(G),
            "reflection conjugation action must be an involution");
    for (const auto& [key, val] : D.c_param[s]) {
      G.check(key);
      require(!F.is_zero(val), "c-parameter stores a zero coefficient");
      F.check_element(val);
    }
    // c is fixed by conjugation with its own lift.
    require(c_push(G, D.s_conj[s], D.c_param[s]) == D.c_param[s],
            "c-parameter must be fixed by its own conjugation action");
    // c is invariant under translation by t * conj_s(t)^{-1}: conjugation by
    // t in Z_kappa fixes c while rewriting the lift to that translate.
    for (size_t i = 0; i < G.n(); ++i) {
      ZkElem t = G.identity();
      if (G.orders[i] > 1) t[i] = 1;
      ZkElem u = G.mul(t, G.inv(zk_apply(G, D.s_conj[s], t)));
      require(c_translate(G, u, D.c_param[s]) == D.c_param[s],
              "c-parameter must be invariant under its translation subgroup");
    }
  }

  // Braid words in the conjugation actions agree (the chosen lifts satisfy
  // the braid relations exactly).
  for (size_t s = 0; s < na; ++s)
    for (size_t t = s + 1; t < na; ++t) {
      uint32_t m = D.cox_m[s][t];
      if (m == 0) continue;
      ZkAut left = zk_identity_aut(G), right = left;
      for (uint32_t k = 0; k < m; ++k) {
        left = zk_compose(G, left, D.s_conj[(k % 2 == 0) ? s : t]);
        right = zk_compose(G, right, D.s_conj[(k % 2 == 0) ? t : s]);
      }
      require(left == right, "braid relation fails on the conjugation actions");
    }

  // Omega generators.
  const size_t no = D.n_omega();
  require(D.omega_comm.size() == no, "commutator table size mismatch");
  for (size_t i = 0; i < no; ++i) {
    require(D.omega_comm[i].size() == no, "commutator table row size mismatch");
    for (size_t j = 0; j < no; ++j) {
      G.check(D.omega_comm[i][j]);
      if (i >= j)
        require(G.is_identity(D.omega_comm[i][j]),
                "commutator table must be trivial on and below the diagonal");
    }
  }
  for (size_t j = 0; j < no; ++j) {
    const OmegaGen& og = D.omega[j];
    require(og.perm.size() == na, "Omega permutation size mismatch");
    std::vector<bool> hit(na, false);
    for (size_t s = 0; s < na; ++s) {
      require(og.perm[s] < na, "Omega permutation image out of range");
      require(!hit[og.perm[s]], "Omega permutation is not a bijection");
      hit[og.perm[s]] = true;
    }
    for (size_t s = 0; s < na; ++s)
      for (size_t t = 0; t < na; ++t)
        require(D.cox_m[og.perm[s]][og.perm[t]] == D.cox_m[s][t],
                "Omega permutation must preserve the Coxeter matrix");
    zk_check_aut(G, og.aut);
    G.check(og.power);
    require(og.corr.size() == na, "Omega correction count mismatch");
    for (const ZkElem& c : og.corr) G.check(c);
    if (og.order == 0) {
      require(G.is_identity(og.power), "infinite-order generator cannot have a power value");
    } else {
      require(zk_aut_pow(G, og.aut, og.order) == zk_identity_aut(G),
              "Omega automorphism order incompatible with the generator order");
      size_t cur = 0;
      for (size_t s = 0; s < na; ++s) {
        cur = s;
        for (uint64_t k = 0; k < og.order; ++k) cur = og.perm[cur];
        require(cur == s, "Omega permutation order incompatible with the generator order");
      }
      // Conjugating a lift by w^order must equal conjugating by the stored
      // central value w^order = power.
      OmegaElem wd{G.identity(), std::vector<int64_t>(no, 0)};
      wd.e[j] = static_cast<int64_t>(og.order);
      for (size_t s = 0; s < na; ++s) {
        // Bypass normal form: iterate the single-generator step directly.
        size_t cs = s;
        ZkElem ct = G.identity();
        for (uint64_t k = 0; k < og.order; ++k) {
          ct = G.mul(zk_apply(G, og.aut, ct), og.corr[cs]);
          cs = og.perm[cs];
        }
        ZkElem expect = G.mul(og.power, G.inv(zk_apply(G, D.s_conj[s], og.power)));
        require(cs == s && ct == expect,
                "Omega corrections are inconsistent with the generator power");
      }
    }
  }
  // Pairwise compatibility: the induced actions commute and the commutator
  // entries conjugate lifts consistently.
  for (size_t i = 0; i < no; ++i)
    for (size_t j = i + 1; j < no; ++j) {
      require(zk_compose(G, D.omega[i].aut, D.omega[j].aut) ==
                  zk_compose(G, D.omega[j].aut, D.omega[i].aut),
              "Omega conjugation actions must commute on Z_kappa");
      for (size_t s = 0; s < na; ++s)
        require(D.omega[i].perm[D.omega[j].perm[s]] == D.omega[j].perm[D.omega[i].perm[s]],
                "Omega permutations must commute");
      // w_i w_j = comm * w_j w_i: conjugate a lift along both sides.
      for (size_t s = 0; s < na; ++s) {
        // Left side: w_j first, then w_i.
        size_t sl = D.omega[j].perm[s];
        ZkElem tl = D.omega[j].corr[s];
        tl = G.mul(zk_apply(G, D.omega[i].aut, tl), D.omega[i].corr[sl]);
        sl = D.omega[i].perm[sl];
        // Right side: w_i, then w_j, then the central commutator value.
        size_t sr = D.omega[i].perm[s];
        ZkElem tr = D.omega[i].corr[s];
        tr = G.mul(zk_apply(G, D.omega[j].aut, tr), D.omega[j].corr[sr]);
        sr = D.omega[j].perm[sr];
        const ZkElem& c = D.omega_comm[i][j];
        tr = G.mul(G.mul(c, G.inv(zk_apply(G, D.s_conj[sr], c))), tr);
        require(sl == sr && tl == tr,
                "commutator entry is inconsistent with the stored corrections");
      }
    }

  // Parameter compatibility along Omega: pushing c_s forward along w gives
  // the parameter of the lift w s~ w^{-1} = corr * (perm s)~, which is the
  // corr-translate of c_{perm s}.
  for (size_t j = 0; j < no; ++j)
    for (size_t s = 0; s < na; ++s) {
      CParam pushed = c_push(G, D.omega[j].aut, D.c_param[s]);
      CParam translated = c_translate(G, D.omega[j].corr[s], D.c_param[D.omega[j].perm[s]]);
      require(pushed == translated, "c-parameters are not compatible with the Omega action");
    }

  // Spot-check associativity of the collected normal form (a consistency
  // test of the polycyclic presentation).
  if (no > 0) {
    std::mt19937_64 rng(hecke_seed() ^ 0x5bd1e995u);
    auto random_elem = [&]() {
      ZkElem z = G.identity();
      for (size_t i = 0; i < G.n(); ++i) z[i] = rng() % G.orders[i];
      std::vector<int64_t> e(no);
      for (size_t jj = 0; jj < no; ++jj) {
        uint64_t d = D.omega[jj].order;
        e[jj] = (d > 0) ? static_cast<int64_t>(rng() % d) : static_cast<int64_t>(rng() % 5) - 2;
      }
      return omega_make(D, z, e);
    };
    for (int trial = 0; trial < 40; ++trial) {
      OmegaElem a = random_elem(), b = random_elem(), c = random_elem();
      require(omega_mul(D, omega_mul(D, a, b), c) == omega_mul(D, a, omega_mul(D, b, c)),
              "Omega presentation is inconsistent (associativity fails)");
      require(omega_mul(D, a, omega_inv(D, a)) == omega_identity(D),
              "Omega presentation is inconsistent (inverses fail)");
    }
  }
}

// --------------------------------------------------------------------------
// GL_n

GenericHeckeData build_gl_n(size_t n, uint64_t q) {
  require(n >= 2, "GL_n datum needs n >= 2");
  require(q >= 2, "residue field size must be at least 2");
  std::vector<uint64_t> pf = distinct_prime_factors(q);
  require(pf.size() == 1, "residue field size must be a prime power");
  uint64_t p = pf[0];

  GenericHeckeData D;
  D.field = make_field(p, q - 1 == 0 ? 1 : q - 1);
  D.zk.orders.assign(n, q - 1 > 0 ? q - 1 : 1);
  const ZkGroup& G = D.zk;

  for (size_t i = 0; i < n; ++i) D.s_labels.push_back("s" + std::to_string(i));
  D.cox_m.assign(n, std::vector<uint32_t>(n, 2));
  for (size_t i = 0; i < n; ++i) D.cox_m[i][i] = 1;
  if (n == 2) {
    D.cox_m[0][1] = D.cox_m[1][0] = 0;  // infinite bond
  } else {
    for (size_t i = 0; i < n; ++i) {
      size_t j = (i + 1) % n;
      D.cox_m[i][j] = D.cox_m[j][i] = 3;
    }
  }

  for (size_t i = 0; i < n; ++i) {
    // Conjugation by the lift of s_i swaps diagonal coordinates i, i+1 mod n.
    ZkAut f = zk_identity_aut(G);
    std::swap(f.img[i], f.img[(i + 1) % n]);
    D.s_conj.push_back(f);
    // c = sum over t in the residue multiplicative group of nu_i(t) nu_{i+1}(t)^{-1}.
    CParam c;
    for (uint64_t a = 0; a < G.orders[i]; ++a) {
      std::vector<int64_t> raw(n, 0);
      raw[i] = static_cast<int64_t>(a);
      raw[(i + 1) % n] = -static_cast<int64_t>(a);
      c[G.make(raw)] = D.field->one();
    }
    D.c_param.push_back(std::move(c));
  }

  OmegaGen w;
  w.order = 0;
  w.power = G.identity();
  w.perm.resize(n);
  for (size_t i = 0; i < n; ++i) w.perm[i] = (i + 1) % n;
  w.aut.img.resize(n);
  for (size_t i = 0; i < n; ++i) {
    ZkElem e = G.identity();
    if (G.orders[(i + 1) % n] > 1) e[(i + 1) % n] = 1;
    w.aut.img[i] = e;
  }
  w.corr.assign(n, G.identity());
  D.omega.push_back(std::move(w));
  D.omega_comm.assign(1, std::vector<ZkElem>(1, G.identity()));

  validate(D);
  return D;
}

// --------------------------------------------------------------------------
// Quotients

namespace {

// Projection data for Z_kappa -> Z_kappa / K.
struct ZkProjection {
  ZkGroup target;
  ZMatrix basis;              // lattice of relations in Z^n (full rank)
  ZMatrix V, Vinv;            // from the Smith form of the basis
  std::vector<int64_t> inv_d; // all Smith invariants
  std::vector<size_t> kept;   // positions with invariant > 1
  size_t n_old = 0;

  ZkElem operator()(const ZkElem& x) const {
    ZkElem out(kept.size(), 0);
    for (size_t t = 0; t < kept.size(); ++t) {
      size_t jt = kept[t];
      __int128 acc = 0;
      for (size_t i = 0; i < n_old; ++i)
        acc += static_cast<__int128>(x[i]) * V.at(i, jt) % inv_d[jt];
      out[t] = mod_reduce(acc, static_cast<uint64_t>(inv_d[jt]));
    }
    return out;
  }

  // A preimage of a target element.
  ZkElem section(const ZkGroup& old, const ZkElem& r) const {
    std::vector<int64_t> pad(n_old, 0);
    for (size_t t = 0; t < kept.size(); ++t) pad[kept[t]] = static_cast<int64_t>(r[t]);
    std::vector<int64_t> x(n_old, 0);
    for (size_t j = 0; j < n_old; ++j) {
      int64_t acc = 0;
      for (size_t i = 0; i < n_old; ++i) acc = z_add(acc, z_mul(pad[i], Vinv.at(i, j)));
      x[j] = acc;
    }
    return old.make(x);
  }
};

ZkProjection make_projection(const ZkGroup& old, const std::vector<ZkElem>& k_gens) {
  const size_t n = old.n();
  ZMatrix rows(k_gens.size(), n);
  for (size_t i = 0; i < k_gens.size(); ++i)
    for (size_t j = 0; j < n; ++j) rows.at(i, j) = static_cast<int64_t>(k_gens[i][j]);
  std::vector<uint64_t> orders = old.orders;
  ZkProjection P;
  P.n_old = n;
  P.basis = z_row_basis(z_stack(rows, z_torsion_lattice(orders)));
  check_internal(P.basis.rows == n, "relation lattice of a finite group must have full rank");
  SnfResult s = z_snf(P.basis);
  P.V = s.V;
  P.Vinv = z_unimodular_inverse(s.V);
  for (size_t i = 0; i < n; ++i) {
    int64_t d = s.D.at(i, i);
    check_internal(d > 0, "Smith invariant of a full-rank lattice must be positive");
    P.inv_d.push_back(d);
    if (d > 1) {
      P.kept.push_back(i);
      P.target.orders.push_back(static_cast<uint64_t>(d));
    }
  }
  return P;
}

}  // namespace

GenericHeckeData quotient_data(const GenericHeckeData& D, const std::vector<size_t>& s_keep_in,
                               const std::vector<ZkElem>& k_gens) {
  const ZkGroup& G = D.zk;
  std::vector<size_t> s_keep = s_keep_in;
  std::sort(s_keep.begin(), s_keep.end());
  s_keep.erase(std::unique(s_keep.begin(), s_keep.end()), s_keep.end());
  for (size_t s : s_keep) require(s < D.n_aff(), "kept reflection index out of range");
  std::vector<bool> keep(D.n_aff(), false);
  for (size_t s : s_keep) keep[s] = true;

  for (size_t s = 0; s < D.n_aff(); ++s)
    for (size_t t = 0; t < D.n_aff(); ++t)
      if (keep[s] && !keep[t])
        require(D.cox_m[s][t] == 2,
                "kept reflections must be orthogonal to the discarded ones");
  for (const OmegaGen& og : D.omega)
    for (size_t s : s_keep)
      require(keep[og.perm[s]], "Omega permutations must preserve the kept reflections");

  for (const ZkElem& g : k_gens) G.check(g);
  bool trivial_k = true;
  for (const ZkElem& g : k_gens) trivial_k = trivial_k && G.is_identity(g);

  // Index maps for the kept reflections.
  std::vector<size_t> new_idx(D.n_aff(), SIZE_MAX);
  for (size_t t = 0; t < s_keep.size(); ++t) new_idx[s_keep[t]] = t;

  GenericHeckeData out;
  out.field = D.field;

  if (trivial_k) {
    out.zk = G;
  } else {
    ZkProjection P = make_projection(G, k_gens);
    // Stability of K under all stored automorphisms.
    auto stable_under = [&](const ZkAut& f) {
      for (const ZkElem& g : k_gens) {
        ZkElem img = zk_apply(G, f, g);
        std::vector<int64_t> row(G.n());
        for (size_t j = 0; j < G.n(); ++j) row[j] = static_cast<int64_t>(img[j]);
        if (!z_lattice_contains(P.basis, row)) return false;
      }
      return true;
    };
    for (size_t s : s_keep)
      require(stable_under(D.s_conj[s]),
              "subgroup is not stable under a reflection conjugation action");
    for (const OmegaGen& og : D.omega)
      require(stable_under(og.aut), "subgroup is not stable under an Omega action");

    out.zk = P.target;
    auto transport_aut = [&](const ZkAut& f) {
      ZkAut nf;
      for (size_t r = 0; r < P.target.n(); ++r) {
        ZkElem gen(P.target.n(), 0);
        if (P.target.orders[r] > 1) gen[r] = 1;
        nf.img.push_back(P(zk_apply(G, f, P.section(G, gen))));
      }
      return nf;
    };
    auto transport_c = [&](const CParam& c) {
      CParam nc;
      for (const auto& [key, val] : c) {
        ZkElem nk = P(key);
        auto it = nc.find(nk);
        if (it == nc.end()) {
          nc.emplace(nk, val);
        } else {
          it->second = out.field->add(it->second, val);
          if (out.field->is_zero(it->second)) nc.erase(it);
        }
      }
      return nc;
    };
    for (size_t s : s_keep) {
      out.s_labels.push_back(D.s_labels[s]);
      out.s_conj.push_back(transport_aut(D.s_conj[s]));
      out.c_param.push_back(transport_c(D.c_param[s]));
    }
    out.cox_m.assign(s_keep.size(), std::vector<uint32_t>(s_keep.size(), 0));
    for (size_t a = 0; a < s_keep.size(); ++a)
      for (size_t b = 0; b < s_keep.size(); ++b) out.cox_m[a][b] = D.cox_m[s_keep[a]][s_keep[b]];
    for (const OmegaGen& og : D.omega) {
      OmegaGen ng;
      ng.order = og.order;
      ng.power = P(og.power);
      ng.aut = transport_aut(og.aut);
      ng.perm.resize(s_keep.size());
      for (size_t a = 0; a < s_keep.size(); ++a) ng.perm[a] = new_idx[og.perm[s_keep[a]]];
      for (size_t a = 0; a < s_keep.size(); ++a) ng.corr.push_back(P(og.corr[s_keep[a]]));
      out.omega.push_back(std::move(ng));
    }
    out.omega_comm.assign(D.n_omega(), std::vector<ZkElem>(D.n_omega(), P.target.identity()));
    for (size_t i = 0; i < D.n_omega(); ++i)
      for (size_t j = i + 1; j < D.n_omega(); ++j) out.omega_comm[i][j] = P(D.omega_comm[i][j]);
    validate(out);
    return out;
  }

  // Trivial K: restrict reflections only.
  for (size_t s : s_keep) {
    out.s_labels.push_back(D.s_labels[s]);
    out.s_conj.push_back(D.s_conj[s]);
    out.c_param.push_back(D.c_param[s]);
  }
  out.cox_m.assign(s_keep.size(), std::vector<uint32_t>(s_keep.size(), 0));
  for (size_t a = 0; a < s_keep.size(); ++a)
    for (size_t b = 0; b < s_keep.size(); ++b) out.cox_m[a][b] = D.cox_m[s_keep[a]][s_keep[b]];
  for (const OmegaGen& og : D.omega) {
    OmegaGen ng = og;
    ng.perm.resize(s_keep.size());
    ng.corr.clear();
    for (size_t a = 0; a < s_keep.size(); ++a) {
      ng.perm[a] = new_idx[og.perm[s_keep[a]]];
      ng.corr.push_back(og.corr[s_keep[a]]);
    }
    out.omega.push_back(std::move(ng));
  }
  out.omega_comm = D.omega_comm;
  validate(out);
  return out;
}

GenericHeckeData embed_data(const GenericHeckeData& D, const FieldEmbedding& emb) {
  require(emb.small()->p() == D.field->p() && emb.small()->min_poly() == D.field->min_poly(),
          "embedding does not start at the datum's field");
  GenericHeckeData out = D;
  out.field = emb.big();
  for (auto& c : out.c_param)
    for (auto& [key, val] : c) val = emb(val);
  validate(out);
  return out;
}

}  // namespace hecke
