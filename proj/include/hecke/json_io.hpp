#pragma once

// JSON serialization for every object that crosses the command-line
// boundary.  All numbers are exact integers; a document containing any
// floating-point literal is rejected on load.  Serialization is
// byte-stable: keys are emitted in sorted order and save_json_file always
// produces the same bytes for the same object, so every written file
// reloads and re-saves identically.
//
// Schemas:
//   field       {"p", "k", "min_poly": [c_0..c_k]}
//   element     [a_0..a_{k-1}]             (coefficients of 1, x, ...)
//   datum       {"field", "s_aff": [labels], "coxeter": [[m]] with 0 for
//                infinity, "z_kappa": {"invariants": [m_i]},
//                "lift_conj": [generator-exponent matrices],
//                "c_param": [[[exponents], element] ...] per reflection,
//                "omega": [{"order", "power", "auto", "perm",
//                           "corrections", "commutators"}]}
//   character   {"chi": [element per generator], "j_set": [indices]}
//   descriptor  {"chi", "j_set", "v_dim", "v_mats": {word: matrix}} where
//               word is the comma-joined exponent row published by
//               stabilizer_words (e.g. "2" or "1,0")
//   module      {"dim", "mats": {generator: matrix}} with generator keys
//               "z<i>" for Z_kappa, the reflection labels, "w<j>" for the
//               length-zero generators
//   matrix      row-major nested arrays of elements
//   triple      {"p_set", "sigma_tag", "delta_sigma", "q_set",
//                "supersingular"}
//   root system {"name": "A2"} or {"labels", "cartan"}

#include <string>

#include <json.hpp>

#include "hecke/characters.hpp"
#include "hecke/data.hpp"
#include "hecke/ext_ss.hpp"
#include "hecke/oracle.hpp"
#include "hecke/planner.hpp"

namespace hecke {

using Json = nlohmann::json;

// Parses a file; throws ParameterError with the parse location on bad
// syntax and rejects any floating-point number anywhere in the document.
Json load_json_file(const std::string& path);
// Writes with two-space indentation, sorted keys, and a trailing newline.
void save_json_file(const std::string& path, const Json& j);

Json field_to_json(const FqField& F);
FieldPtr field_from_json(const Json& j);

Json fq_to_json(const Fq& a);
Fq fq_from_json(const FqField& F, const Json& j);

Json matrix_to_json(const FqMatrix& A);
FqMatrix matrix_from_json(const FqField& F, const Json& j);

Json data_to_json(const GenericHeckeData& D);
GenericHeckeData data_from_json(const Json& j);  // validates

Json aff_char_to_json(const AffChar& xi);
AffChar aff_char_from_json(const GenericHeckeData& D, const Json& j);  // validates

Json descriptor_to_json(const GenericHeckeData& D, const SsDescriptor& m);
SsDescriptor descriptor_from_json(const GenericHeckeData& D, const Json& j);

Json module_to_json(const GenericHeckeData& D, const MatrixModule& M);
MatrixModule module_from_json(const GenericHeckeData& D, const Json& j);

Json triple_to_json(const SimpleModuleTriple& t);
SimpleModuleTriple triple_from_json(const Json& j);

Json root_system_to_json(const RootSystemData& R);
RootSystemData root_system_from_json(const Json& j);  // validates

// Result payloads (one-way; consumed by the CLI and the Python bindings).
Json breakdown_to_json(const ExtSsBreakdown& b);
Json plan_to_json(const ReductionPlan& plan);

}  // namespace hecke
