#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "hecke/planner.hpp"

using namespace hecke;

namespace {

SimpleModuleTriple mk_triple(std::vector<size_t> p, std::vector<size_t> ds,
                             std::vector<size_t> q, const std::string& tag = "sigma") {
  SimpleModuleTriple t;
  t.p_set = std::move(p);
  t.sigma_tag = tag;
  t.delta_sigma = std::move(ds);
  t.q_set = std::move(q);
  return t;
}

// All subsets of {0, ..., n-1} as sorted index lists.
std::vector<std::vector<size_t>> all_subsets(size_t n) {
  std::vector<std::vector<size_t>> out;
  for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
    std::vector<size_t> s;
    for (size_t i = 0; i < n; ++i)
      if (mask & (uint64_t(1) << i)) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("named root systems") {
  RootSystemData a2 = make_root_system("A2");
  CHECK(a2.rank() == 2);
  CHECK(a2.cartan == std::vector<std::vector<int64_t>>{{2, -1}, {-1, 2}});
  CHECK(make_root_system("A_2").cartan == a2.cartan);

  RootSystemData b3 = make_root_system("B3");
  CHECK(b3.cartan[1][2] == -2);
  CHECK(b3.cartan[2][1] == -1);
  RootSystemData c3 = make_root_system("C3");
  CHECK(c3.cartan[1][2] == -1);
  CHECK(c3.cartan[2][1] == -2);

  RootSystemData d4 = make_root_system("D4");
  CHECK(d4.cartan[1][3] == -1);  // branch node
  CHECK(d4.cartan[2][3] == 0);

  RootSystemData g2 = make_root_system("G2");
  CHECK(g2.cartan == std::vector<std::vector<int64_t>>{{2, -1}, {-3, 2}});
  RootSystemData f4 = make_root_system("F4");
  CHECK(f4.cartan[1][2] == -2);
  CHECK(f4.cartan[2][1] == -1);

  for (const char* name : {"E6", "E7", "E8", "B2", "C2", "D5", "A1", "A7"})
    CHECK_NOTHROW(make_root_system(name));

  CHECK_THROWS_AS(make_root_system("H3"), ParameterError);
  CHECK_THROWS_AS(make_root_system("D3"), ParameterError);
  CHECK_THROWS_AS(make_root_system("E9"), ParameterError);
  CHECK_THROWS_AS(make_root_system("G3"), ParameterError);
  CHECK_THROWS_AS(make_root_system("A"), ParameterError);
  CHECK_THROWS_AS(make_root_system(""), ParameterError);
}

TEST_CASE("root system validation") {
  RootSystemData bad;
  bad.labels = {"a", "b"};

  // Affine matrix: symmetrizable but only positive semidefinite.
  bad.cartan = {{2, -2}, {-2, 2}};
  CHECK_THROWS_AS(check_root_system(bad), ParameterError);
  // Indefinite.
  bad.cartan = {{2, -3}, {-3, 2}};
  CHECK_THROWS_AS(check_root_system(bad), ParameterError);
  // Asymmetric zero pattern.
  bad.cartan = {{2, -1}, {0, 2}};
  CHECK_THROWS_AS(check_root_system(bad), ParameterError);
  // Positive off-diagonal.
  bad.cartan = {{2, 1}, {1, 2}};
  CHECK_THROWS_AS(check_root_system(bad), ParameterError);
  // Wrong diagonal.
  bad.cartan = {{1, 0}, {0, 2}};
  CHECK_THROWS_AS(check_root_system(bad), ParameterError);
  // Label count mismatch.
  bad.cartan = {{2, 0}, {0, 2}};
  bad.labels = {"a"};
  CHECK_THROWS_AS(check_root_system(bad), ParameterError);

  // A disconnected but valid system.
  RootSystemData ok;
  ok.labels = {"a", "b"};
  ok.cartan = {{2, 0}, {0, 2}};
  CHECK_NOTHROW(check_root_system(ok));
}

TEST_CASE("triple validation") {
  RootSystemData a2 = make_root_system("A2");
  CHECK_NOTHROW(check_triple(a2, mk_triple({}, {0, 1}, {0})));
  CHECK_NOTHROW(check_triple(a2, mk_triple({0}, {0}, {0})));
  // delta_sigma must be orthogonal to p_set away from p_set.
  CHECK_THROWS_AS(check_triple(a2, mk_triple({0}, {0, 1}, {0})), ParameterError);
  // Containment failures.
  CHECK_THROWS_AS(check_triple(a2, mk_triple({0}, {1}, {1})), ParameterError);
  CHECK_THROWS_AS(check_triple(a2, mk_triple({}, {0}, {1})), ParameterError);
  CHECK_THROWS_AS(check_triple(a2, mk_triple({1}, {1}, {})), ParameterError);
  // Out-of-range index and unsorted input.
  CHECK_THROWS_AS(check_triple(a2, mk_triple({}, {0, 2}, {})), ParameterError);
  CHECK_THROWS_AS(check_triple(a2, mk_triple({}, {1, 0}, {})), ParameterError);

  // In A1 x A1 the roots are orthogonal, so p_set = {0} allows 1 in
  // delta_sigma.
  RootSystemData a11;
  a11.labels = {"a", "b"};
  a11.cartan = {{2, 0}, {0, 2}};
  CHECK_NOTHROW(check_triple(a11, mk_triple({0}, {0, 1}, {0, 1})));
}

TEST_CASE("symmetric difference degree") {
  CHECK(sym_diff_degree({0, 1}, {0, 1}) == 0);
  CHECK(sym_diff_degree({}, {}) == 0);
  CHECK(sym_diff_degree({0}, {1}) == 2);
  CHECK(sym_diff_degree({0, 1}, {1, 2}) == 2);
  CHECK(sym_diff_degree({0}, {0, 1}) == 1);
  CHECK(sym_diff_degree({2, 0}, {0, 2}) == 0);  // order-insensitive
}

TEST_CASE("reduction steps and traces") {
  RootSystemData a2 = make_root_system("A2");
  std::vector<size_t> full = {0, 1};

  // (1) Distinct parabolic supports.
  {
    SimpleModuleTriple t1 = mk_triple({}, full, {});
    SimpleModuleTriple t2 = mk_triple({0}, {0}, {0});
    ReductionPlan plan = reduce_simple_ext(a2, t1, t2, 1);
    CHECK(plan.outcome == PlanOutcome::zero);
    CHECK(plan.reason == "central character");
    REQUIRE(plan.trace.size() == 1);
    CHECK(plan.trace[0].rule == "central character");
    CHECK(plan.trace[0].verdict == "fail");
    // The verdict of step (1) does not depend on the argument order.
    ReductionPlan swapped = reduce_simple_ext(a2, t2, t1, 1);
    CHECK(swapped.outcome == PlanOutcome::zero);
    CHECK(swapped.reason == "central character");
  }

  // (2) Parabolic induction conditions.
  {
    SimpleModuleTriple t1 = mk_triple({}, {0}, {0});
    SimpleModuleTriple t2 = mk_triple({}, full, full);
    // q_set of t2 is not inside delta_sigma of t1.
    ReductionPlan plan = reduce_simple_ext(a2, t1, t2, 1);
    CHECK(plan.outcome == PlanOutcome::zero);
    CHECK(plan.reason == "parabolic induction conditions");
    CHECK(plan.trace.size() == 2);
    // Second containment: delta_sigma of t1 must lie inside q_set of t1
    // union delta_sigma of t2.
    ReductionPlan plan2 = reduce_simple_ext(a2, mk_triple({}, full, {}), t1, 1);
    CHECK(plan2.outcome == PlanOutcome::zero);
    CHECK(plan2.reason == "parabolic induction conditions");
    // The swap of the first pair strips cleanly down to the ambient {0}.
    ReductionPlan plan3 = reduce_simple_ext(a2, t2, t1, 1);
    CHECK(plan3.outcome == PlanOutcome::supersingular_target);
    CHECK(plan3.ambient == std::vector<size_t>{0});
  }

  // (4) r = 2 in degree 1.
  {
    ReductionPlan plan = reduce_simple_ext(a2, mk_triple({}, full, {0}),
                                           mk_triple({}, full, {1}), 1);
    CHECK(plan.outcome == PlanOutcome::zero);
    CHECK(plan.reason == "negative degree");
    CHECK(plan.trace.size() == 5);
    // Degree 2 reaches the hom case instead, degree 3 the target.
    CHECK(reduce_simple_ext(a2, mk_triple({}, full, {0}), mk_triple({}, full, {1}), 2)
              .outcome == PlanOutcome::hom_case);
    ReductionPlan deep = reduce_simple_ext(a2, mk_triple({}, full, {0}),
                                           mk_triple({}, full, {1}), 3);
    CHECK(deep.outcome == PlanOutcome::supersingular_target);
    CHECK(deep.degree == 1);
  }

  // r = 1 gives the hom case in degree 1.
  {
    ReductionPlan plan = reduce_simple_ext(a2, mk_triple({}, full, {0}),
                                           mk_triple({}, full, full), 1);
    CHECK(plan.outcome == PlanOutcome::hom_case);
    CHECK(plan.ambient == full);
  }

  // r = 0: the question survives as a degree-1 supersingular question.
  {
    ReductionPlan plan = reduce_simple_ext(a2, mk_triple({}, full, {0}),
                                           mk_triple({}, full, {0}), 1);
    CHECK(plan.outcome == PlanOutcome::supersingular_target);
    CHECK(plan.ambient == full);
    CHECK(plan.degree == 1);
    CHECK(plan.trace.size() == 5);
    for (const TraceEntry& e : plan.trace) CHECK(!e.rule.empty());
  }

  // Mixed supports: the ambient drops to the intersection.
  {
    RootSystemData a11;
    a11.labels = {"a", "b"};
    a11.cartan = {{2, 0}, {0, 2}};
    SimpleModuleTriple t1 = mk_triple({}, {0, 1}, {0, 1});
    SimpleModuleTriple t2 = mk_triple({}, {0}, {0});
    ReductionPlan plan = reduce_simple_ext(a11, t1, t2, 1);
    CHECK(plan.outcome == PlanOutcome::supersingular_target);
    CHECK(plan.ambient == std::vector<size_t>{0});
    CHECK(plan.degree == 1);
  }

  CHECK_THROWS_AS(reduce_simple_ext(a2, mk_triple({}, full, {0}),
                                    mk_triple({}, full, {0}), -1),
                  ParameterError);
}

TEST_CASE("outcome partition over all full-support pairs") {
  for (const char* name : {"A2", "A3"}) {
    RootSystemData R = make_root_system(name);
    std::vector<size_t> full;
    for (size_t i = 0; i < R.rank(); ++i) full.push_back(i);
    std::vector<std::vector<size_t>> subsets = all_subsets(R.rank());
    for (const auto& q1 : subsets)
      for (const auto& q2 : subsets) {
        ReductionPlan plan = reduce_simple_ext(R, mk_triple({}, full, q1),
                                               mk_triple({}, full, q2), 1);
        size_t r = sym_diff_degree(q1, q2);
        if (r == 0) {
          CHECK(plan.outcome == PlanOutcome::supersingular_target);
          CHECK(plan.ambient == full);
          CHECK(plan.degree == 1);
        } else if (r == 1) {
          CHECK(plan.outcome == PlanOutcome::hom_case);
        } else {
          CHECK(plan.outcome == PlanOutcome::zero);
          CHECK(plan.reason == "negative degree");
        }
        CHECK(!plan.trace.empty());
      }
  }
}
