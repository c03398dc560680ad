// Command-line front end: data construction, validation, dimension
// computations, oracle cross-checks, and reduction planning.  Every
// subcommand prints a single JSON document {"status": "ok", "payload":
// ...} on success.  User errors (bad arguments, malformed files, failed
// validation) exit with code 2; detected internal inconsistencies (for
// example a closed-form/oracle mismatch under --check) exit with code 3.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hecke/json_io.hpp"

namespace {

using namespace hecke;

void emit_ok(const Json& payload) {
  std::cout << Json{{"status", "ok"}, {"payload", payload}}.dump(2) << "\n";
}

std::vector<size_t> parse_index_list(const std::string& s) {
  std::vector<size_t> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    require(!cur.empty(), "empty entry in index list '" + s + "'");
    out.push_back(size_t(std::stoull(cur)));
  }
  return out;
}

std::vector<uint64_t> parse_order_list(const std::string& s) {
  std::vector<uint64_t> out;
  for (size_t v : parse_index_list(s)) out.push_back(v);
  return out;
}

// Semicolon-separated exponent vectors, e.g. "1,1,0;0,0,2".
std::vector<ZkElem> parse_subgroup(const ZkGroup& G, const std::string& s) {
  std::vector<ZkElem> out;
  if (s.empty()) return out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ';')) {
    std::vector<int64_t> raw;
    for (size_t v : parse_index_list(cur)) raw.push_back(int64_t(v));
    out.push_back(G.make(raw));
  }
  return out;
}

GenericHeckeData load_data(const std::string& path) {
  return data_from_json(load_json_file(path));
}

int run(int argc, char** argv) {
  CLI::App app{"Exact Ext-group computations for generic pro-p-Iwahori "
               "Hecke algebras at q = 0"};
  app.require_subcommand(1);

  // build gl_n --n N --q Q [-o FILE]
  auto* build = app.add_subcommand("build", "Construct a datum");
  build->require_subcommand(1);
  auto* gln = build->add_subcommand("gl_n", "The GL_n datum over a residue "
                                            "field with q elements");
  size_t gl_rank = 0;
  uint64_t gl_q = 0;
  std::string out_path;
  gln->add_option("--n", gl_rank, "Rank n >= 2")->required();
  gln->add_option("--q", gl_q, "Residue field size")->required();
  gln->add_option("-o,--output", out_path, "Write the datum to this file");
  gln->callback([&] {
    GenericHeckeData D = build_gl_n(gl_rank, gl_q);
    Json j = data_to_json(D);
    if (!out_path.empty()) {
      save_json_file(out_path, j);
      emit_ok(Json{{"written", out_path},
                   {"n_aff", D.n_aff()},
                   {"n_omega", D.n_omega()}});
    } else {
      emit_ok(j);
    }
  });

  // validate --data FILE
  auto* validate_cmd = app.add_subcommand("validate", "Load and validate a datum");
  std::string data_path;
  validate_cmd->add_option("--data", data_path, "Datum file")->required();
  validate_cmd->callback([&] {
    GenericHeckeData D = load_data(data_path);
    uint64_t zk_order = 1;
    for (uint64_t m : D.zk.orders) zk_order *= m;
    emit_ok(Json{{"valid", true},
                 {"n_aff", D.n_aff()},
                 {"n_omega", D.n_omega()},
                 {"z_kappa_order", zk_order},
                 {"field_order", D.field->order()}});
  });

  // ext-aff --data F --xi1 F --xi2 F
  auto* extaff = app.add_subcommand(
      "ext-aff", "dim Ext^1 between characters of the affine subalgebra");
  std::string xi1_path, xi2_path;
  extaff->add_option("--data", data_path, "Datum file")->required();
  extaff->add_option("--xi1", xi1_path, "First character file")->required();
  extaff->add_option("--xi2", xi2_path, "Second character file")->required();
  extaff->callback([&] {
    GenericHeckeData D = load_data(data_path);
    AffChar x1 = aff_char_from_json(D, load_json_file(xi1_path));
    AffChar x2 = aff_char_from_json(D, load_json_file(xi2_path));
    ExtAffResult r = dim_ext1_aff(D, x1, x2);
    emit_ok(Json{{"dim_e1", r.dim_e1},
                 {"dim_e2", r.dim_e2},
                 {"dim_kernel", r.dim_kernel},
                 {"dim_ext1", r.dim_ext1}});
  });

  // ext-ss --data F --m1 F --m2 F [--breakdown] [--check]
  auto* extss = app.add_subcommand(
      "ext-ss", "dim Ext^1 between simple supersingular modules");
  std::string m1_path, m2_path;
  bool breakdown = false, check = false;
  extss->add_option("--data", data_path, "Datum file")->required();
  extss->add_option("--m1", m1_path, "First module descriptor file")->required();
  extss->add_option("--m2", m2_path, "Second module descriptor file")->required();
  extss->add_flag("--breakdown", breakdown, "Emit per-coset terms");
  extss->add_flag("--check", check,
                  "Also run the brute-force oracle; exit 3 on mismatch");
  extss->callback([&] {
    GenericHeckeData D = load_data(data_path);
    SsDescriptor m1 = descriptor_from_json(D, load_json_file(m1_path));
    SsDescriptor m2 = descriptor_from_json(D, load_json_file(m2_path));
    ExtSsBreakdown b = dim_ext1_supersingular(D, m1, m2);
    Json payload{{"total", b.total}};
    if (breakdown) payload["terms"] = breakdown_to_json(b)["terms"];
    if (check) {
      size_t oracle = brute_force_ext1(D, induce_matrices(D, m1),
                                       induce_matrices(D, m2), RelationScope::full);
      payload["oracle"] = oracle;
      check_internal(oracle == b.total,
                     "ext-ss --check: closed form " + std::to_string(b.total) +
                         " != oracle " + std::to_string(oracle));
    }
    emit_ok(payload);
  });

  // oracle --data F --m1 F --m2 F [--aff-only]
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "Brute-force Ext^1 and Hom from relation matrices");
  bool aff_only = false;
  oracle_cmd->add_option("--data", data_path, "Datum file")->required();
  oracle_cmd
      ->add_option("--m1", m1_path,
                   "First module: a descriptor, a raw matrix module, or with "
                   "--aff-only a character file")
      ->required();
  oracle_cmd->add_option("--m2", m2_path, "Second module, same formats")->required();
  oracle_cmd->add_flag("--aff-only", aff_only,
                       "Restrict to the affine subalgebra; inputs are "
                       "character files");
  oracle_cmd->callback([&] {
    GenericHeckeData D = load_data(data_path);
    RelationScope scope = aff_only ? RelationScope::aff_only : RelationScope::full;
    auto load_module = [&](const std::string& path) -> MatrixModule {
      Json j = load_json_file(path);
      if (aff_only) return aff_char_module(D, aff_char_from_json(D, j));
      if (j.contains("v_dim"))
        return induce_matrices(D, descriptor_from_json(D, j));
      return module_from_json(D, j);
    };
    MatrixModule M1 = load_module(m1_path);
    MatrixModule M2 = load_module(m2_path);
    require(check_module(D, M1, scope), "oracle: --m1 does not satisfy the relations");
    require(check_module(D, M2, scope), "oracle: --m2 does not satisfy the relations");
    emit_ok(Json{{"ext", brute_force_ext1(D, M1, M2, scope)},
                 {"hom", brute_force_hom(D, M1, M2, scope)}});
  });

  // stabilizer --data F --xi F
  auto* stab = app.add_subcommand(
      "stabilizer", "Published generator words of the character stabilizer "
                    "(the words a module descriptor must provide matrices for)");
  std::string xi_path;
  stab->add_option("--data", data_path, "Datum file")->required();
  stab->add_option("--xi", xi_path, "Character file")->required();
  stab->callback([&] {
    GenericHeckeData D = load_data(data_path);
    AffChar xi = aff_char_from_json(D, load_json_file(xi_path));
    XiOrbit orbit = xi_orbit(D, xi);
    Json words = Json::array(), orders = Json::array();
    for (size_t i = 0; i < orbit.stab.orders.size(); ++i) {
      if (orbit.stab.orders[i] == 1) continue;
      std::vector<int64_t> w;
      for (size_t c = 0; c < orbit.stab.basis.cols; ++c)
        w.push_back(orbit.stab.basis.at(i, c));
      words.push_back(w);
      orders.push_back(orbit.stab.orders[i]);
    }
    emit_ok(Json{{"words", words},
                 {"orders", orders},
                 {"orbit_size", orbit.orbit.size()},
                 {"supersingular", is_supersingular(D, xi)}});
  });

  // plan --root TYPE --i N --t1 F --t2 F
  auto* plan_cmd = app.add_subcommand(
      "plan", "Reduce Ext^i between simple modules to the supersingular case");
  std::string root_spec, t1_path, t2_path;
  int64_t degree = 1;
  plan_cmd->add_option("--root", root_spec, "Root system name (e.g. A2) or file")
      ->required();
  plan_cmd->add_option("--i", degree, "Cohomological degree")->required();
  plan_cmd->add_option("--t1", t1_path, "First triple file")->required();
  plan_cmd->add_option("--t2", t2_path, "Second triple file")->required();
  plan_cmd->callback([&] {
    std::ifstream probe(root_spec);
    RootSystemData R = probe.good() ? root_system_from_json(load_json_file(root_spec))
                                    : make_root_system(root_spec);
    SimpleModuleTriple t1 = triple_from_json(load_json_file(t1_path));
    SimpleModuleTriple t2 = triple_from_json(load_json_file(t2_path));
    emit_ok(plan_to_json(reduce_simple_ext(R, t1, t2, degree)));
  });

  // h1 --group SPEC --action F
  auto* h1_cmd = app.add_subcommand(
      "h1", "dim H^1 of a finitely generated abelian group");
  std::string group_spec, action_path;
  h1_cmd->add_option("--group", group_spec,
                     "Generator orders, comma-separated (0 = infinite)")
      ->required();
  h1_cmd->add_option("--action", action_path,
                     "File {\"field\", \"mats\": [one matrix per generator]}")
      ->required();
  h1_cmd->callback([&] {
    std::vector<uint64_t> orders = parse_order_list(group_spec);
    Json j = load_json_file(action_path);
    require(j.contains("field"), "h1: action file needs a 'field' descriptor");
    FieldPtr F = field_from_json(j["field"]);
    require(j.contains("mats") && j["mats"].is_array(),
            "h1: action file needs a 'mats' array");
    std::vector<FqMatrix> mats;
    for (const Json& mj : j["mats"]) mats.push_back(matrix_from_json(*F, mj));
    require(mats.size() == orders.size(), "h1: one matrix per generator required");
    emit_ok(Json{{"dim", h1_abelian(*F, mats, orders)}});
  });

  // quotient --data F --keep LIST --subgroup SPEC -o FILE
  auto* quot = app.add_subcommand(
      "quotient", "Quotient datum: keep listed reflections, quotient Z_kappa");
  std::string keep_spec, subgroup_spec;
  quot->add_option("--data", data_path, "Datum file")->required();
  quot->add_option("--keep", keep_spec, "Reflections to keep, comma-separated")
      ->required();
  quot->add_option("--subgroup", subgroup_spec,
                   "Z_kappa subgroup generators, e.g. '1,1,0;0,0,2' (may be "
                   "empty)");
  quot->add_option("-o,--output", out_path, "Write the quotient datum here")
      ->required();
  quot->callback([&] {
    GenericHeckeData D = load_data(data_path);
    GenericHeckeData Q = quotient_data(D, parse_index_list(keep_spec),
                                       parse_subgroup(D.zk, subgroup_spec));
    save_json_file(out_path, data_to_json(Q));
    emit_ok(Json{{"written", out_path},
                 {"n_aff", Q.n_aff()},
                 {"n_omega", Q.n_omega()},
                 {"z_kappa_invariants", Q.zk.orders}});
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const hecke::ParameterError& e) {
    std::cout << hecke::Json{{"status", "error"}, {"message", e.what()}}.dump(2)
              << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hecke::InternalError& e) {
    std::cout << hecke::Json{{"status", "error"}, {"message", e.what()}}.dump(2)
              << "\n";
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
}
