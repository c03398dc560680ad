#include "hecke/planner.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace hecke {

namespace {

std::vector<std::string> default_labels(size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back("alpha_" + std::to_string(i + 1));
  return out;
}

RootSystemData from_edges(size_t n, const std::vector<std::pair<size_t, size_t>>& edges) {
  RootSystemData R;
  R.labels = default_labels(n);
  R.cartan.assign(n, std::vector<int64_t>(n, 0));
  for (size_t i = 0; i < n; ++i) R.cartan[i][i] = 2;
  for (auto [a, b] : edges) R.cartan[a][b] = R.cartan[b][a] = -1;
  return R;
}

RootSystemData chain(size_t n) {
  std::vector<std::pair<size_t, size_t>> edges;
  for (size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return from_edges(n, edges);
}

// Exact determinant of a small integer matrix (fraction-free elimination).
int64_t det_bareiss(std::vector<std::vector<int64_t>> a) {
  size_t n = a.size();
  if (n == 0) return 1;
  int64_t sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Integer diagonal d with d_i c_ij = d_j c_ji, found by propagating the
// ratios along the graph; throws if the matrix is not symmetrizable.
std::vector<int64_t> symmetrizer(const std::vector<std::vector<int64_t>>& c) {
  size_t n = c.size();
  // d_i as reduced fractions num/den.
  std::vector<int64_t> num(n, 0), den(n, 1);
  for (size_t start = 0; start < n; ++start) {
    if (num[start] != 0) continue;
    num[start] = 1;
    std::vector<size_t> stack = {start};
    while (!stack.empty()) {
      size_t i = stack.back();
      stack.pop_back();
      for (size_t j = 0; j < n; ++j) {
        if (i == j || c[i][j] == 0) continue;
        // d_j = d_i * c_ij / c_ji
        int64_t nj = num[i] * c[i][j], dj = den[i] * c[j][i];
        if (dj < 0) { nj = -nj; dj = -dj; }
        int64_t g = std::gcd(std::abs(nj), dj);
        nj /= g; dj /= g;
        if (num[j] == 0) {
          num[j] = nj; den[j] = dj;
          stack.push_back(j);
        } else {
          require(num[j] == nj && den[j] == dj,
                  "root system: Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  int64_t l = 1;
  for (size_t i = 0; i < n; ++i) l = std::lcm(l, den[i]);
  std::vector<int64_t> d(n);
  for (size_t i = 0; i < n; ++i) d[i] = num[i] * (l / den[i]);
  return d;
}

std::vector<size_t> normalize_set(const RootSystemData& R, std::vector<size_t> s,
                                  const char* what) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (size_t i : s)
    require(i < R.rank(), std::string(what) + ": root index out of range");
  return s;
}

bool subset_of(const std::vector<size_t>& a, const std::vector<size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<size_t> set_intersection(const std::vector<size_t>& a,
                                     const std::vector<size_t>& b) {
  std::vector<size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<size_t> set_union(const std::vector<size_t>& a,
                              const std::vector<size_t>& b) {
  std::vector<size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string show_set(const std::vector<size_t>& s) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << "}";
  return os.str();
}

}  // namespace

RootSystemData make_root_system(const std::string& name) {
  require(!name.empty(), "root system: empty name");
  char type = char(std::toupper(static_cast<unsigned char>(name[0])));
  size_t pos = 1;
  if (pos < name.size() && name[pos] == '_') ++pos;
  require(pos < name.size(), "root system: missing rank in name '" + name + "'");
  size_t n = 0;
  for (; pos < name.size(); ++pos) {
    require(std::isdigit(static_cast<unsigned char>(name[pos])) != 0,
            "root system: bad rank in name '" + name + "'");
    n = n * 10 + size_t(name[pos] - '0');
  }
  RootSystemData R;
  switch (type) {
    case 'A':
      require(n >= 1, "root system: A_n needs n >= 1");
      R = chain(n);
      break;
    case 'B':
      require(n >= 2, "root system: B_n needs n >= 2");
      R = chain(n);
      R.cartan[n - 2][n - 1] = -2;  // last root short
      break;
    case 'C':
      require(n >= 2, "root system: C_n needs n >= 2");
      R = chain(n);
      R.cartan[n - 1][n - 2] = -2;  // last root long
      break;
    case 'D': {
      require(n >= 4, "root system: D_n needs n >= 4");
      std::vector<std::pair<size_t, size_t>> edges;
      for (size_t i = 0; i + 2 < n; ++i) edges.push_back({i, i + 1});
      edges.push_back({n - 3, n - 1});
      R = from_edges(n, edges);
      break;
    }
    case 'E': {
      require(n >= 6 && n <= 8, "root system: E_n needs n in {6,7,8}");
      // Nodes 0..n-1: chain 0-2-3-4-...-(n-1) with node 1 attached to 3.
      std::vector<std::pair<size_t, size_t>> edges = {{0, 2}, {1, 3}};
      for (size_t i = 2; i + 1 < n; ++i) edges.push_back({i, i + 1});
      R = from_edges(n, edges);
      break;
    }
    case 'F':
      require(n == 4, "root system: F_n needs n = 4");
      R = chain(4);
      R.cartan[1][2] = -2;  // double bond between the middle roots
      break;
    case 'G':
      require(n == 2, "root system: G_n needs n = 2");
      R = chain(2);
      R.cartan[1][0] = -3;
      break;
    default:
      throw ParameterError("root system: unknown type '" + name + "'");
  }
  check_root_system(R);
  return R;
}

void check_root_system(const RootSystemData& R) {
  size_t n = R.cartan.size();
  require(R.labels.size() == n, "root system: one label per simple root required");
  for (size_t i = 0; i < n; ++i) {
    require(R.cartan[i].size() == n, "root system: Cartan matrix must be square");
    require(R.cartan[i][i] == 2, "root system: Cartan diagonal must be 2");
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      require(R.cartan[i][j] <= 0, "root system: off-diagonal entries must be <= 0");
      require((R.cartan[i][j] == 0) == (R.cartan[j][i] == 0),
              "root system: zero pattern must be symmetric");
    }
  }
  // Finite type: the symmetrization d_i c_ij must be positive definite,
  // checked by the leading principal minors.
  std::vector<int64_t> d = symmetrizer(R.cartan);
  for (size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<int64_t>> m(k, std::vector<int64_t>(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) m[i][j] = d[i] * R.cartan[i][j];
    require(det_bareiss(m) > 0, "root system: Cartan matrix is not of finite type");
  }
}

void check_triple(const RootSystemData& R, const SimpleModuleTriple& t) {
  std::vector<size_t> p = normalize_set(R, t.p_set, "triple p_set");
  std::vector<size_t> ds = normalize_set(R, t.delta_sigma, "triple delta_sigma");
  std::vector<size_t> q = normalize_set(R, t.q_set, "triple q_set");
  require(p == t.p_set && ds == t.delta_sigma && q == t.q_set,
          "triple: sets must be sorted lists of distinct root indices");
  require(subset_of(p, ds), "triple: p_set must lie inside delta_sigma");
  require(subset_of(p, q), "triple: p_set must lie inside q_set");
  require(subset_of(q, ds), "triple: q_set must lie inside delta_sigma");
  for (size_t a : ds) {
    if (std::binary_search(p.begin(), p.end(), a)) continue;
    for (size_t b : p)
      require(R.cartan[b][a] == 0,
              "triple: delta_sigma must be orthogonal to p_set outside p_set");
  }
}

size_t sym_diff_degree(const std::vector<size_t>& q1, const std::vector<size_t>& q2) {
  std::vector<size_t> a = q1, b = q2, diff;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(diff));
  return diff.size();
}

ReductionPlan reduce_simple_ext(const RootSystemData& R, const SimpleModuleTriple& t1,
                                const SimpleModuleTriple& t2, int64_t i) {
  check_root_system(R);
  check_triple(R, t1);
  check_triple(R, t2);
  require(i >= 0, "reduce_simple_ext: degree must be >= 0");

  ReductionPlan plan;
  auto log = [&](const std::string& rule, const std::string& cond,
                 const std::string& verdict) {
    plan.trace.push_back({rule, cond, verdict});
  };

  // (1) Different parabolic supports give different central characters.
  bool same_p = t1.p_set == t2.p_set;
  log("central character",
      "p_set " + show_set(t1.p_set) + " equals p_set " + show_set(t2.p_set),
      same_p ? "pass" : "fail");
  if (!same_p) {
    plan.outcome = PlanOutcome::zero;
    plan.reason = "central character";
    return plan;
  }

  // (2) Stripping the parabolic induction requires both containments.
  bool cond_q = subset_of(t2.q_set, t1.delta_sigma);
  bool cond_d = subset_of(t1.delta_sigma, set_union(t1.q_set, t2.delta_sigma));
  log("parabolic induction conditions",
      "q_set " + show_set(t2.q_set) + " inside delta_sigma " +
          show_set(t1.delta_sigma) + " and delta_sigma inside q_set union " +
          show_set(t2.delta_sigma),
      cond_q && cond_d ? "pass" : "fail");
  if (!cond_q || !cond_d) {
    plan.outcome = PlanOutcome::zero;
    plan.reason = "parabolic induction conditions";
    return plan;
  }

  // (3) Reduce to the common ambient and shift the degree by the symmetric
  // difference.  That both modules have full support inside the reduced
  // ambient is assumed, not derived here.
  plan.ambient = set_intersection(t1.delta_sigma, t2.delta_sigma);
  std::vector<size_t> q1r = set_intersection(t1.q_set, t2.delta_sigma);
  size_t r = sym_diff_degree(q1r, t2.q_set);
  log("full support in reduced ambient",
      "both modules have support " + show_set(plan.ambient), "assumed");
  log("degree shift",
      "r = #(" + show_set(q1r) + " sym-diff " + show_set(t2.q_set) + ") = " +
          std::to_string(r),
      "pass");

  // (4) Decide by the shifted degree.
  int64_t shifted = i - int64_t(r);
  if (shifted < 0) {
    plan.outcome = PlanOutcome::zero;
    plan.reason = "negative degree";
    log("shifted degree", "i - r = " + std::to_string(shifted), "fail");
    return plan;
  }
  log("shifted degree", "i - r = " + std::to_string(shifted), "pass");
  if (shifted == 0) {
    plan.outcome = PlanOutcome::hom_case;
    return plan;
  }
  plan.outcome = PlanOutcome::supersingular_target;
  plan.degree = shifted;
  return plan;
}

}  // namespace hecke
