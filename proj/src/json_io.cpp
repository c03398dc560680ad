#include "hecke/json_io.hpp"

#include <fstream>
#include <sstream>

namespace hecke {

namespace {

void reject_floats(const Json& j) {
  if (j.is_number_float())
    throw ParameterError("json: floating-point numbers are not allowed");
  if (j.is_array() || j.is_object())
    for (const Json& c : j) reject_floats(c);
}

uint64_t get_u64(const Json& j, const std::string& what) {
  require(j.is_number_integer() || j.is_number_unsigned(),
          "json: " + what + " must be an integer");
  if (j.is_number_integer())
    require(j.get<int64_t>() >= 0, "json: " + what + " must be non-negative");
  return j.get<uint64_t>();
}

int64_t get_i64(const Json& j, const std::string& what) {
  require(j.is_number_integer() || j.is_number_unsigned(),
          "json: " + what + " must be an integer");
  return j.get<int64_t>();
}

const Json& get_key(const Json& j, const std::string& key, const std::string& what) {
  require(j.is_object(), "json: " + what + " must be an object");
  auto it = j.find(key);
  require(it != j.end(), "json: " + what + " is missing key '" + key + "'");
  return *it;
}

std::vector<uint64_t> u64_list(const Json& j, const std::string& what) {
  require(j.is_array(), "json: " + what + " must be an array");
  std::vector<uint64_t> out;
  for (const Json& c : j) out.push_back(get_u64(c, what + " entry"));
  return out;
}

std::vector<size_t> index_list(const Json& j, const std::string& what) {
  std::vector<size_t> out;
  for (uint64_t v : u64_list(j, what)) out.push_back(size_t(v));
  return out;
}

Json zk_elem_to_json(const ZkElem& z) { return Json(z); }

ZkElem zk_elem_from_json(const ZkGroup& G, const Json& j, const std::string& what) {
  ZkElem z = u64_list(j, what);
  G.check(z);
  return z;
}

Json zk_aut_to_json(const ZkAut& f) {
  Json out = Json::array();
  for (const ZkElem& im : f.img) out.push_back(zk_elem_to_json(im));
  return out;
}

ZkAut zk_aut_from_json(const ZkGroup& G, const Json& j, const std::string& what) {
  require(j.is_array(), "json: " + what + " must be an array");
  ZkAut f;
  for (const Json& c : j) f.img.push_back(zk_elem_from_json(G, c, what + " row"));
  zk_check_aut(G, f);
  return f;
}

std::string word_key(const std::vector<int64_t>& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  return os.str();
}

// Generator key names in the oracle's generator order.
std::vector<std::string> generator_keys(const GenericHeckeData& D) {
  std::vector<std::string> keys;
  for (size_t i = 0; i < D.zk.n(); ++i) keys.push_back("z" + std::to_string(i));
  for (const std::string& l : D.s_labels) keys.push_back(l);
  for (size_t j = 0; j < D.n_omega(); ++j) keys.push_back("w" + std::to_string(j));
  for (size_t i = 0; i < keys.size(); ++i)
    for (size_t j = i + 1; j < keys.size(); ++j)
      require(keys[i] != keys[j],
              "json: generator key '" + keys[i] + "' is ambiguous for this datum");
  return keys;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "json: cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParameterError("json: parse error in '" + path + "': " + e.what());
  }
  reject_floats(j);
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  require(out.good(), "json: cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  require(out.good(), "json: write to '" + path + "' failed");
}

Json field_to_json(const FqField& F) {
  return Json{{"p", F.p()}, {"k", F.k()}, {"min_poly", F.min_poly()}};
}

FieldPtr field_from_json(const Json& j) {
  uint64_t p = get_u64(get_key(j, "p", "field"), "field p");
  uint64_t k = get_u64(get_key(j, "k", "field"), "field k");
  std::vector<uint64_t> mp = u64_list(get_key(j, "min_poly", "field"), "min_poly");
  std::vector<uint32_t> mp32;
  for (uint64_t c : mp) {
    require(c < p, "json: min_poly coefficients must lie in [0, p)");
    mp32.push_back(uint32_t(c));
  }
  require(mp32.size() == k + 1, "json: min_poly must have k + 1 coefficients");
  return make_field_from_descriptor(p, mp32);
}

Json fq_to_json(const Fq& a) { return Json(a.c); }

Fq fq_from_json(const FqField& F, const Json& j) {
  Fq a;
  for (uint64_t c : u64_list(j, "field element")) a.c.push_back(uint32_t(c));
  F.check_element(a);
  return a;
}

Json matrix_to_json(const FqMatrix& A) {
  Json rows = Json::array();
  for (size_t i = 0; i < A.rows; ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < A.cols; ++j) row.push_back(fq_to_json(A.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

FqMatrix matrix_from_json(const FqField& F, const Json& j) {
  require(j.is_array(), "json: matrix must be an array of rows");
  size_t rows = j.size();
  size_t cols = rows == 0 ? 0 : j[0].size();
  FqMatrix A(rows, cols, F.zero());
  for (size_t i = 0; i < rows; ++i) {
    require(j[i].is_array() && j[i].size() == cols,
            "json: matrix rows must have equal length");
    for (size_t c = 0; c < cols; ++c) A.at(i, c) = fq_from_json(F, j[i][c]);
  }
  return A;
}

Json data_to_json(const GenericHeckeData& D) {
  Json j;
  j["field"] = field_to_json(*D.field);
  j["s_aff"] = D.s_labels;
  j["coxeter"] = D.cox_m;
  j["z_kappa"] = Json{{"invariants", D.zk.orders}};
  Json conj = Json::array();
  for (const ZkAut& f : D.s_conj) conj.push_back(zk_aut_to_json(f));
  j["lift_conj"] = conj;
  Json cs = Json::array();
  for (const CParam& c : D.c_param) {
    Json terms = Json::array();
    for (const auto& [t, v] : c)
      terms.push_back(Json::array({zk_elem_to_json(t), fq_to_json(v)}));
    cs.push_back(terms);
  }
  j["c_param"] = cs;
  Json om = Json::array();
  for (size_t i = 0; i < D.n_omega(); ++i) {
    const OmegaGen& w = D.omega[i];
    Json comm = Json::array();
    for (const ZkElem& z : D.omega_comm[i]) comm.push_back(zk_elem_to_json(z));
    Json corr = Json::array();
    for (const ZkElem& z : w.corr) corr.push_back(zk_elem_to_json(z));
    om.push_back(Json{{"order", w.order},
                      {"power", zk_elem_to_json(w.power)},
                      {"auto", zk_aut_to_json(w.aut)},
                      {"perm", w.perm},
                      {"corrections", corr},
                      {"commutators", comm}});
  }
  j["omega"] = om;
  return j;
}

GenericHeckeData data_from_json(const Json& j) {
  GenericHeckeData D;
  D.field = field_from_json(get_key(j, "field", "datum"));
  D.zk.orders = u64_list(get_key(get_key(j, "z_kappa", "datum"), "invariants", "z_kappa"),
                         "z_kappa invariants");
  const Json& labels = get_key(j, "s_aff", "datum");
  require(labels.is_array(), "json: s_aff must be an array");
  for (const Json& l : labels) {
    require(l.is_string(), "json: s_aff labels must be strings");
    D.s_labels.push_back(l.get<std::string>());
  }
  const Json& cox = get_key(j, "coxeter", "datum");
  require(cox.is_array(), "json: coxeter must be an array");
  for (const Json& row : cox) {
    std::vector<uint32_t> r;
    for (uint64_t v : u64_list(row, "coxeter row")) r.push_back(uint32_t(v));
    D.cox_m.push_back(r);
  }
  const Json& conj = get_key(j, "lift_conj", "datum");
  require(conj.is_array(), "json: lift_conj must be an array");
  for (const Json& f : conj) D.s_conj.push_back(zk_aut_from_json(D.zk, f, "lift_conj"));
  const Json& cs = get_key(j, "c_param", "datum");
  require(cs.is_array(), "json: c_param must be an array");
  for (const Json& terms : cs) {
    require(terms.is_array(), "json: c_param entries must be arrays");
    CParam c;
    for (const Json& term : terms) {
      require(term.is_array() && term.size() == 2,
              "json: c_param terms must be [exponents, element] pairs");
      ZkElem t = zk_elem_from_json(D.zk, term[0], "c_param exponents");
      require(!c.count(t), "json: duplicate c_param support element");
      c[t] = fq_from_json(*D.field, term[1]);
    }
    D.c_param.push_back(c);
  }
  const Json& om = get_key(j, "omega", "datum");
  require(om.is_array(), "json: omega must be an array");
  for (const Json& w : om) {
    OmegaGen g;
    g.order = get_u64(get_key(w, "order", "omega generator"), "omega order");
    g.power = zk_elem_from_json(D.zk, get_key(w, "power", "omega generator"), "omega power");
    g.aut = zk_aut_from_json(D.zk, get_key(w, "auto", "omega generator"), "omega auto");
    g.perm = index_list(get_key(w, "perm", "omega generator"), "omega perm");
    const Json& corr = get_key(w, "corrections", "omega generator");
    require(corr.is_array(), "json: omega corrections must be an array");
    for (const Json& z : corr)
      g.corr.push_back(zk_elem_from_json(D.zk, z, "omega correction"));
    D.omega.push_back(g);
    const Json& comm = get_key(w, "commutators", "omega generator");
    require(comm.is_array(), "json: omega commutators must be an array");
    std::vector<ZkElem> row;
    for (const Json& z : comm)
      row.push_back(zk_elem_from_json(D.zk, z, "omega commutator"));
    D.omega_comm.push_back(row);
  }
  validate(D);
  return D;
}

Json aff_char_to_json(const AffChar& xi) {
  Json chi = Json::array();
  for (const Fq& v : xi.chi.vals) chi.push_back(fq_to_json(v));
  return Json{{"chi", chi}, {"j_set", xi.j_set}};
}

AffChar aff_char_from_json(const GenericHeckeData& D, const Json& j) {
  const Json& chi = get_key(j, "chi", "character");
  require(chi.is_array(), "json: chi must be an array");
  ZkChar c;
  for (const Json& v : chi) c.vals.push_back(fq_from_json(*D.field, v));
  return make_aff_char(D, c, index_list(get_key(j, "j_set", "character"), "j_set"));
}

Json descriptor_to_json(const GenericHeckeData& D, const SsDescriptor& m) {
  Json j = aff_char_to_json(m.xi);
  j["v_dim"] = m.v_dim;
  std::vector<std::vector<int64_t>> words = stabilizer_words(D, m.xi);
  require(words.size() == m.v_mats.size(),
          "descriptor: matrix count must match the published words");
  Json mats = Json::object();
  for (size_t i = 0; i < words.size(); ++i)
    mats[word_key(words[i])] = matrix_to_json(m.v_mats[i]);
  j["v_mats"] = mats;
  return j;
}

SsDescriptor descriptor_from_json(const GenericHeckeData& D, const Json& j) {
  SsDescriptor m;
  m.xi = aff_char_from_json(D, j);
  m.v_dim = size_t(get_u64(get_key(j, "v_dim", "descriptor"), "v_dim"));
  const Json& mats = get_key(j, "v_mats", "descriptor");
  require(mats.is_object(), "json: v_mats must be an object");
  std::vector<std::vector<int64_t>> words = stabilizer_words(D, m.xi);
  require(mats.size() == words.size(),
          "json: v_mats must have one entry per published stabilizer word");
  for (const std::vector<int64_t>& w : words) {
    auto it = mats.find(word_key(w));
    require(it != mats.end(), "json: v_mats is missing word '" + word_key(w) + "'");
    m.v_mats.push_back(matrix_from_json(*D.field, *it));
  }
  return m;
}

Json module_to_json(const GenericHeckeData& D, const MatrixModule& M) {
  std::vector<std::string> keys = generator_keys(D);
  require(M.gens.size() == keys.size(),
          "module: generator count does not match the datum");
  size_t dim = M.gens.empty() ? 0 : M.gens[0].rows;
  Json mats = Json::object();
  for (size_t i = 0; i < keys.size(); ++i) mats[keys[i]] = matrix_to_json(M.gens[i]);
  return Json{{"dim", dim}, {"mats", mats}};
}

MatrixModule module_from_json(const GenericHeckeData& D, const Json& j) {
  std::vector<std::string> keys = generator_keys(D);
  size_t dim = size_t(get_u64(get_key(j, "dim", "module"), "module dim"));
  const Json& mats = get_key(j, "mats", "module");
  require(mats.is_object(), "json: mats must be an object");
  require(mats.size() == keys.size(), "json: mats must have one entry per generator");
  MatrixModule M;
  for (const std::string& key : keys) {
    auto it = mats.find(key);
    require(it != mats.end(), "json: mats is missing generator '" + key + "'");
    FqMatrix A = matrix_from_json(*D.field, *it);
    require(A.rows == dim && A.cols == dim,
            "json: generator '" + key + "' must be a dim x dim matrix");
    M.gens.push_back(A);
  }
  return M;
}

Json triple_to_json(const SimpleModuleTriple& t) {
  return Json{{"p_set", t.p_set},
              {"sigma_tag", t.sigma_tag},
              {"delta_sigma", t.delta_sigma},
              {"q_set", t.q_set},
              {"supersingular", t.supersingular}};
}

SimpleModuleTriple triple_from_json(const Json& j) {
  SimpleModuleTriple t;
  t.p_set = index_list(get_key(j, "p_set", "triple"), "p_set");
  const Json& tag = get_key(j, "sigma_tag", "triple");
  require(tag.is_string(), "json: sigma_tag must be a string");
  t.sigma_tag = tag.get<std::string>();
  t.delta_sigma = index_list(get_key(j, "delta_sigma", "triple"), "delta_sigma");
  t.q_set = index_list(get_key(j, "q_set", "triple"), "q_set");
  const Json& ss = get_key(j, "supersingular", "triple");
  require(ss.is_boolean(), "json: supersingular must be a boolean");
  t.supersingular = ss.get<bool>();
  return t;
}

Json root_system_to_json(const RootSystemData& R) {
  return Json{{"labels", R.labels}, {"cartan", R.cartan}};
}

Json breakdown_to_json(const ExtSsBreakdown& b) {
  Json terms = Json::array();
  for (const CosetTerm& t : b.terms)
    terms.push_back(Json{{"rep", t.rep},
                         {"h1_term", t.h1_term},
                         {"inv_ext_term", t.inv_ext_term}});
  return Json{{"total", b.total}, {"terms", terms}};
}

Json plan_to_json(const ReductionPlan& plan) {
  Json j;
  switch (plan.outcome) {
    case PlanOutcome::zero:
      j["outcome"] = "Zero";
      j["reason"] = plan.reason;
      break;
    case PlanOutcome::hom_case:
      j["outcome"] = "HomCase";
      j["ambient"] = plan.ambient;
      break;
    case PlanOutcome::supersingular_target:
      j["outcome"] = "SupersingularTarget";
      j["ambient"] = plan.ambient;
      j["degree"] = plan.degree;
      break;
  }
  Json trace = Json::array();
  for (const TraceEntry& e : plan.trace)
    trace.push_back(Json{{"rule", e.rule},
                         {"condition", e.condition},
                         {"verdict", e.verdict}});
  j["trace"] = trace;
  return j;
}

RootSystemData root_system_from_json(const Json& j) {
  if (j.is_string()) return make_root_system(j.get<std::string>());
  if (j.is_object() && j.contains("name")) {
    const Json& name = j["name"];
    require(name.is_string(), "json: root system name must be a string");
    return make_root_system(name.get<std::string>());
  }
  RootSystemData R;
  const Json& labels = get_key(j, "labels", "root system");
  require(labels.is_array(), "json: labels must be an array");
  for (const Json& l : labels) {
    require(l.is_string(), "json: labels must be strings");
    R.labels.push_back(l.get<std::string>());
  }
  const Json& cartan = get_key(j, "cartan", "root system");
  require(cartan.is_array(), "json: cartan must be an array");
  for (const Json& row : cartan) {
    require(row.is_array(), "json: cartan rows must be arrays");
    std::vector<int64_t> r;
    for (const Json& v : row) r.push_back(get_i64(v, "cartan entry"));
    R.cartan.push_back(r);
  }
  check_root_system(R);
  return R;
}

}  // namespace hecke
