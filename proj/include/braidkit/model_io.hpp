#pragma once

#include <string>

#include "braidkit/model.hpp"

namespace braidkit {

// JSON (de)serialization for lattice models.
//
// Schema, variant "H1" (three-coupling chain):
//   {"variant":"H1","m":3,"n":1,"c_ab0":1.0,"c_ab_neg_m":0.22,
//    "c_ba_n":-1.5,"c_i":0.0,"c_z":0.0}
// Variant "H2" is the same fields with c_i / c_z active. Variant "H3" lists
// the coupling rows explicitly as offset arrays:
//   {"variant":"H3",
//    "ab_left":[0,0,1.5],  // C_ab at offsets -1,-2,-3
//    "ab_right":[1,0,3],   // C_ab at offsets  0,+1,+2
//    "ba_left":[0,0,3],    // C_ba at offsets -1,-2,-3
//    "ba_right":[1,4.5],   // C_ba at offsets  0,+1
//    "c_i":1.0,"c_z":0.0}
// Complex amplitudes may be written as [re, im] pairs anywhere a number is
// accepted. Throws IoError on malformed input.
Model model_from_json(const std::string& text);
Model model_from_json_file(const std::string& path);
std::string model_to_json(const Model& model);

// Picks the serialization variant: H3 when the couplings do not fit the
// three-coupling template, else H2 when c_i or c_z is nonzero, else H1.
std::string model_variant(const Model& model);

// Writes one real parameter addressed by a path string:
//   "cab0"  both rows' shared constant coupling
//   "cabm"  the A<-B entry at its most negative offset
//   "cban"  the B<-A entry at its most positive offset
//   "ci" / "cz"  onsite terms
//   "ab_left.J" / "ab_right.J" / "ba_left.J" / "ba_right.J"
//           row entry at offset -J (left) or +J (right)
// Used by parameter sweeps. Throws DomainError for unknown paths or paths
// that do not resolve on this model.
void set_model_param(Model& model, const std::string& path, double value);

}  // namespace braidkit
