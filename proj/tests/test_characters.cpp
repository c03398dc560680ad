#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "hecke/characters.hpp"
#include "hecke/data.hpp"
#include "hecke/error.hpp"

using namespace hecke;

namespace {

using Cox = std::vector<std::vector<uint32_t>>;

// Finds the character with the given generator values (as element indices of
// powers of the canonical root); convenience for GL_n data over prime fields.
ZkChar char_from_ints(const GenericHeckeData& D, const std::vector<int64_t>& v) {
  ZkChar chi;
  for (int64_t x : v) chi.vals.push_back(D.field->from_int(x));
  check_char(D, chi);
  return chi;
}

}  // namespace

TEST_CASE("character basics on GL_2 over F_3") {
  GenericHeckeData D = build_gl_n(2, 3);
  std::vector<ZkChar> chars = all_characters(D);
  REQUIRE(chars.size() == 4);
  for (const ZkChar& chi : chars) check_char(D, chi);

  ZkChar triv = trivial_char(D);
  CHECK(std::count(chars.begin(), chars.end(), triv) == 1);

  // chi(c_s) = 1 + chi(1,1); the support of both c-parameters is
  // {(0,0), (1,1)}.
  ZkChar sgn_triv = char_from_ints(D, {2, 1});
  ZkChar sgn_sgn = char_from_ints(D, {2, 2});
  CHECK(char_on_c(D, triv, 0) == D.field->from_int(2));
  CHECK(char_on_c(D, triv, 1) == D.field->from_int(2));
  CHECK(D.field->is_zero(char_on_c(D, sgn_triv, 0)));
  CHECK(D.field->is_zero(char_on_c(D, sgn_triv, 1)));
  CHECK(char_on_c(D, sgn_sgn, 0) == D.field->from_int(2));

  CHECK(s_aff_char(D, triv) == std::vector<size_t>{0, 1});
  CHECK(s_aff_char(D, sgn_triv).empty());
  CHECK(s_aff_char(D, sgn_sgn) == std::vector<size_t>{0, 1});

  // char_value is multiplicative in the exponents.
  ZkElem t = D.zk.make({1, 1});
  CHECK(char_value(D, sgn_triv, t) == D.field->from_int(2));
  CHECK(char_value(D, sgn_sgn, t) == D.field->one());
}

TEST_CASE("regular characters of GL_2 over F_5 are those with equal values") {
  GenericHeckeData D = build_gl_n(2, 5);
  std::vector<ZkChar> chars = all_characters(D);
  REQUIRE(chars.size() == 16);
  size_t with_support = 0;
  for (const ZkChar& chi : chars) {
    std::vector<size_t> s = s_aff_char(D, chi);
    if (chi.vals[0] == chi.vals[1]) {
      CHECK(s == std::vector<size_t>{0, 1});
      ++with_support;
    } else {
      CHECK(s.empty());
    }
  }
  CHECK(with_support == 4);
}

TEST_CASE("s_aff_char of GL_3 over F_3 couples cyclically adjacent values") {
  GenericHeckeData D = build_gl_n(3, 3);
  for (const ZkChar& chi : all_characters(D)) {
    std::vector<size_t> expected;
    for (size_t i = 0; i < 3; ++i)
      if (chi.vals[i] == chi.vals[(i + 1) % 3]) expected.push_back(i);
    CHECK(s_aff_char(D, chi) == expected);
  }
}

TEST_CASE("affine characters validate their zero set") {
  GenericHeckeData D = build_gl_n(2, 3);
  ZkChar triv = trivial_char(D);
  ZkChar sgn_triv = char_from_ints(D, {2, 1});

  AffChar xi = make_aff_char(D, triv, {1, 0});  // sorted on construction
  CHECK(xi.j_set == std::vector<size_t>{0, 1});
  CHECK(j_contains(xi, 0));

  AffChar xi0 = make_aff_char(D, triv, {0});
  CHECK(D.field->is_zero(aff_char_value(D, xi0, 0)));
  CHECK(aff_char_value(D, xi0, 1) == D.field->from_int(2));

  // s = 0 has chi(c_0) = 0 for sgn_triv, so it may not be placed in j_set.
  CHECK_THROWS_AS(make_aff_char(D, sgn_triv, {0}), ParameterError);
  CHECK_NOTHROW(make_aff_char(D, sgn_triv, {}));
  CHECK_THROWS_AS(make_aff_char(D, triv, {0, 0}), ParameterError);
  CHECK_THROWS_AS(make_aff_char(D, triv, {2}), ParameterError);
}

TEST_CASE("Coxeter finiteness for the rank-2 types") {
  CHECK(coxeter_subset_finite({{1}}, {}));
  CHECK(coxeter_subset_finite({{1}}, {0}));
  CHECK(coxeter_subset_finite(Cox{{1, 2}, {2, 1}}, {0, 1}));
  CHECK(coxeter_subset_finite(Cox{{1, 3}, {3, 1}}, {0, 1}));
  CHECK(coxeter_subset_finite(Cox{{1, 4}, {4, 1}}, {0, 1}));
  CHECK(coxeter_subset_finite(Cox{{1, 6}, {6, 1}}, {0, 1}));
  CHECK_FALSE(coxeter_subset_finite(Cox{{1, 0}, {0, 1}}, {0, 1}));
  CHECK_THROWS_AS(coxeter_subset_finite(Cox{{1, 5}, {5, 1}}, {0, 1}),
                  ParameterError);
  CHECK_THROWS_AS(coxeter_subset_finite(Cox{{1, 7}, {7, 1}}, {0, 1}),
                  ParameterError);
  CHECK_THROWS_AS(coxeter_subset_finite(Cox{{1, 3}, {3, 1}}, {0, 0}),
                  ParameterError);
  CHECK_THROWS_AS(coxeter_subset_finite(Cox{{1, 3}, {3, 1}}, {0, 2}),
                  ParameterError);
}

TEST_CASE("Coxeter finiteness separates finite from affine diagrams") {
  // Triangle of 3-bonds (affine A_2): infinite, but each edge is finite.
  Cox tri{{1, 3, 3}, {3, 1, 3}, {3, 3, 1}};
  CHECK_FALSE(coxeter_subset_finite(tri, {0, 1, 2}));
  CHECK(coxeter_subset_finite(tri, {0, 1}));
  CHECK(coxeter_subset_finite(tri, {0, 2}));

  // 4-3 chain (type B_3) is finite; the 4-4 chain (affine C_2) is not — its
  // last principal minor vanishes.
  CHECK(coxeter_subset_finite(Cox{{1, 4, 2}, {4, 1, 3}, {2, 3, 1}}, {0, 1, 2}));
  Cox c2aff{{1, 4, 2}, {4, 1, 4}, {2, 4, 1}};
  CHECK_FALSE(coxeter_subset_finite(c2aff, {0, 1, 2}));
  CHECK(coxeter_subset_finite(c2aff, {0, 1}));
  CHECK(coxeter_subset_finite(c2aff, {1, 2}));

  // F_4 chain 3-4-3.
  Cox f4{{1, 3, 2, 2}, {3, 1, 4, 2}, {2, 4, 1, 3}, {2, 2, 3, 1}};
  CHECK(coxeter_subset_finite(f4, {0, 1, 2, 3}));

  // A star with four legs (affine D_4) is infinite; dropping a leg gives D_4.
  Cox d4aff{{1, 3, 3, 3, 3},
            {3, 1, 2, 2, 2},
            {3, 2, 1, 2, 2},
            {3, 2, 2, 1, 2},
            {3, 2, 2, 2, 1}};
  CHECK_FALSE(coxeter_subset_finite(d4aff, {0, 1, 2, 3, 4}));
  CHECK(coxeter_subset_finite(d4aff, {0, 1, 2, 3}));

  // G_2 with an extra orthogonal node.
  Cox g2a1{{1, 6, 2}, {6, 1, 2}, {2, 2, 1}};
  CHECK(coxeter_subset_finite(g2a1, {0, 1, 2}));
}

TEST_CASE("Coxeter finiteness size cap") {
  // Eleven mutually orthogonal reflections are fine; twelve are rejected.
  size_t n = 12;
  Cox big(n, std::vector<uint32_t>(n, 2));
  for (size_t i = 0; i < n; ++i) big[i][i] = 1;
  std::vector<size_t> all11(11);
  for (size_t i = 0; i < 11; ++i) all11[i] = i;
  CHECK(coxeter_subset_finite(big, all11));
  std::vector<size_t> all12(12);
  for (size_t i = 0; i < 12; ++i) all12[i] = i;
  CHECK_THROWS_AS(coxeter_subset_finite(big, all12), ParameterError);
}

TEST_CASE("supersingularity for GL_2 and GL_3") {
  GenericHeckeData D2 = build_gl_n(2, 3);
  ZkChar triv = trivial_char(D2);
  CHECK_FALSE(is_supersingular(D2, make_aff_char(D2, triv, {})));
  CHECK(is_supersingular(D2, make_aff_char(D2, triv, {0})));
  CHECK(is_supersingular(D2, make_aff_char(D2, triv, {1})));
  CHECK_FALSE(is_supersingular(D2, make_aff_char(D2, triv, {0, 1})));

  // Characters with empty support are supersingular with J empty.
  ZkChar sgn_triv = char_from_ints(D2, {2, 1});
  CHECK(is_supersingular(D2, make_aff_char(D2, sgn_triv, {})));

  GenericHeckeData D3 = build_gl_n(3, 2);
  ZkChar t3 = trivial_char(D3);
  size_t count = 0;
  for (size_t mask = 0; mask < 8; ++mask) {
    std::vector<size_t> j;
    for (size_t s = 0; s < 3; ++s)
      if ((mask >> s) & 1) j.push_back(s);
    bool ss = is_supersingular(D3, make_aff_char(D3, t3, j));
    CHECK(ss == (mask != 0 && mask != 7));
    count += ss;
  }
  CHECK(count == 6);
}

TEST_CASE("reflections in the support fix the character") {
  // chi(c_s) != 0 forces chi o conj_s = chi: c is invariant under the
  // translations t conj_s(t)^{-1}, so chi must kill them all.
  for (auto [n, q] : {std::pair<size_t, uint64_t>{2, 3}, {2, 5}, {3, 3}}) {
    GenericHeckeData D = build_gl_n(n, q);
    for (const ZkChar& chi : all_characters(D))
      for (size_t s : s_aff_char(D, chi))
        CHECK(char_compose(D, chi, D.s_conj[s]) == chi);
  }
}

TEST_CASE("Omega action on affine characters") {
  GenericHeckeData D = build_gl_n(2, 5);
  Fq zeta = D.field->root_of_unity(4);
  ZkChar chi;
  chi.vals = {zeta, D.field->one()};
  check_char(D, chi);

  // One application of w rotates the values.
  AffChar xi = make_aff_char(D, chi, {});
  AffChar moved = aff_char_act_gen(D, xi, 0, false);
  CHECK(moved.chi.vals[0] == D.field->one());
  CHECK(moved.chi.vals[1] == zeta);
  CHECK(aff_char_act_gen(D, moved, 0, true) == xi);

  // J moves through the inverse permutation.
  ZkChar diag;
  diag.vals = {zeta, zeta};
  AffChar xj = make_aff_char(D, diag, {0});
  AffChar xj1 = aff_char_act_gen(D, xj, 0, false);
  CHECK(xj1.j_set == std::vector<size_t>{1});
  CHECK(xj1.chi == diag);

  // The twist by w^2 is inner, hence trivial on descriptors, and word
  // application is additive in the exponent.
  CHECK(aff_char_act(D, xj, {2}) == xj);
  CHECK(aff_char_act(D, xj, {-4}) == xj);
  CHECK(aff_char_act(D, xj, {3}) == xj1);

  GenericHeckeData D3 = build_gl_n(3, 5);
  ZkChar c3;
  c3.vals = {D3.field->root_of_unity(4), D3.field->one(), D3.field->one()};
  AffChar y = make_aff_char(D3, c3, {});
  CHECK(aff_char_act(D3, y, {3}) == y);
  AffChar step = aff_char_act(D3, y, {1});
  CHECK(aff_char_act(D3, step, {1}) == aff_char_act(D3, y, {2}));
  CHECK(aff_char_act(D3, aff_char_act(D3, y, {2}), {-1}) == step);

  // The action preserves supersingularity and the support size.
  GenericHeckeData E = build_gl_n(3, 3);
  for (const ZkChar& c : all_characters(E)) {
    std::vector<size_t> supp = s_aff_char(E, c);
    AffChar z = make_aff_char(E, c, supp.empty()
                                         ? std::vector<size_t>{}
                                         : std::vector<size_t>{supp[0]});
    AffChar zm = aff_char_act(E, z, {1});
    CHECK(s_aff_char(E, zm.chi).size() == supp.size());
    CHECK(is_supersingular(E, zm) == is_supersingular(E, z));
  }
}

TEST_CASE("orbits and stabilizers of affine characters") {
  GenericHeckeData D = build_gl_n(2, 3);
  ZkChar triv = trivial_char(D);

  XiOrbit o = xi_orbit(D, make_aff_char(D, triv, {0}));
  REQUIRE(o.orbit.size() == 2);
  CHECK(o.orbit[0].j_set == std::vector<size_t>{0});
  CHECK(o.orbit[1].j_set == std::vector<size_t>{1});
  CHECK(o.transversal[0] == std::vector<int64_t>{0});
  CHECK(o.transversal[1] == std::vector<int64_t>{1});
  REQUIRE(o.stab.basis.rows == 1);
  CHECK(o.stab.basis.at(0, 0) == 2);
  CHECK(o.stab.orders == std::vector<uint64_t>{0});

  // The fixed descriptor J = {} has the full group as stabilizer.
  XiOrbit fix = xi_orbit(D, make_aff_char(D, triv, {}));
  CHECK(fix.orbit.size() == 1);
  REQUIRE(fix.stab.basis.rows == 1);
  CHECK(fix.stab.basis.at(0, 0) == 1);
  CHECK(fix.stab.orders == std::vector<uint64_t>{0});

  // A character orbit with constant J: the two support-free characters of
  // GL_2 over F_3 swap.
  ZkChar sgn_triv = char_from_ints(D, {2, 1});
  XiOrbit c = xi_orbit(D, make_aff_char(D, sgn_triv, {}));
  REQUIRE(c.orbit.size() == 2);
  CHECK(c.orbit[1].chi == char_from_ints(D, {1, 2}));
  CHECK(c.stab.basis.at(0, 0) == 2);

  GenericHeckeData D3 = build_gl_n(3, 2);
  ZkChar t3 = trivial_char(D3);
  XiOrbit o3 = xi_orbit(D3, make_aff_char(D3, t3, {0}));
  REQUIRE(o3.orbit.size() == 3);
  CHECK(o3.orbit[1].j_set == std::vector<size_t>{2});  // forward edge first
  CHECK(o3.orbit[2].j_set == std::vector<size_t>{1});
  CHECK(o3.stab.basis.at(0, 0) == 3);
  CHECK(o3.stab.orders == std::vector<uint64_t>{0});

  // Two-element J-sets of the triangle also form a single orbit.
  XiOrbit o32 = xi_orbit(D3, make_aff_char(D3, t3, {0, 1}));
  CHECK(o32.orbit.size() == 3);

  // Orbit points are reached by their transversal words.
  for (size_t i = 0; i < o3.orbit.size(); ++i)
    CHECK(aff_char_act(D3, o3.orbit[0], o3.transversal[i]) == o3.orbit[i]);
}

TEST_CASE("all characters of a trivial Z_kappa") {
  GenericHeckeData D = build_gl_n(3, 2);
  std::vector<ZkChar> chars = all_characters(D);
  REQUIRE(chars.size() == 1);
  CHECK(chars[0] == trivial_char(D));
  CHECK(char_on_c(D, chars[0], 0) == D.field->one());
  CHECK(s_aff_char(D, chars[0]) == std::vector<size_t>{0, 1, 2});
}
