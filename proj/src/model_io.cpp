#include "braidkit/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace braidkit {

namespace {

using nlohmann::json;

cplx parse_amplitude(const json& j, const std::string& field) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw IoError("field '" + field + "' must be a number or [re, im] pair");
}

json dump_amplitude(cplx c) {
  if (c.imag() == 0.0) return json(c.real());
  return json::array({c.real(), c.imag()});
}

double required_real(const json& j, const std::string& field) {
  if (!j.contains(field)) throw IoError("missing field '" + field + "'");
  if (!j[field].is_number())
    throw IoError("field '" + field + "' must be a real number");
  return j[field].get<double>();
}

double optional_real(const json& j, const std::string& field, double dflt) {
  if (!j.contains(field)) return dflt;
  if (!j[field].is_number())
    throw IoError("field '" + field + "' must be a real number");
  return j[field].get<double>();
}

// Reads an offset-indexed coupling array: name_left[i] sits at offset -(i+1),
// name_right[i] at offset +i.
void read_row(const json& j, const std::string& name, std::map<int, cplx>& row) {
  const std::string left = name + "_left", right = name + "_right";
  if (j.contains(left)) {
    if (!j[left].is_array()) throw IoError("field '" + left + "' must be an array");
    int off = -1;
    for (const auto& e : j[left]) row[off--] = parse_amplitude(e, left);
  }
  if (j.contains(right)) {
    if (!j[right].is_array())
      throw IoError("field '" + right + "' must be an array");
    int off = 0;
    for (const auto& e : j[right]) row[off++] = parse_amplitude(e, right);
  }
}

// True when the couplings fit the three-coupling template
// ab = {0: c0, -m: cm}, ba = {0: c0, n: cn} with m, n >= 1.
bool is_three_coupling(const Model& m) {
  if (m.ab.size() != 2 || m.ba.size() != 2) return false;
  if (!m.ab.count(0) || !m.ba.count(0)) return false;
  if (m.ab.at(0) != m.ba.at(0)) return false;
  const int lo = m.ab.begin()->first;
  const int hi = m.ba.rbegin()->first;
  return lo <= -1 && hi >= 1;
}

}  // namespace

Model model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("model JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw IoError("model JSON must be an object");
  if (!j.contains("variant") || !j["variant"].is_string())
    throw IoError("missing string field 'variant'");
  const std::string variant = j["variant"].get<std::string>();

  Model model;
  if (variant == "H1" || variant == "H2") {
    const int m = static_cast<int>(required_real(j, "m"));
    const int n = static_cast<int>(required_real(j, "n"));
    if (m < 1 || n < 1) throw IoError("reaches m, n must be >= 1");
    if (!j.contains("c_ab0") || !j.contains("c_ab_neg_m") ||
        !j.contains("c_ba_n"))
      throw IoError("variant " + variant +
                    " needs c_ab0, c_ab_neg_m and c_ba_n");
    model = Model::three_coupling(
        m, n, parse_amplitude(j["c_ab0"], "c_ab0"),
        parse_amplitude(j["c_ab_neg_m"], "c_ab_neg_m"),
        parse_amplitude(j["c_ba_n"], "c_ba_n"), optional_real(j, "c_i", 0.0),
        optional_real(j, "c_z", 0.0));
  } else if (variant == "H3") {
    read_row(j, "ab", model.ab);
    read_row(j, "ba", model.ba);
    model.c_i = optional_real(j, "c_i", 0.0);
    model.c_z = optional_real(j, "c_z", 0.0);
    if (model.ab.empty() && model.ba.empty())
      throw IoError("variant H3 needs at least one coupling array");
  } else {
    throw IoError("unknown variant '" + variant + "'");
  }
  model.prune();
  return model;
}

Model model_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

std::string model_variant(const Model& model) {
  if (!is_three_coupling(model)) return "H3";
  return (model.c_i == 0.0 && model.c_z == 0.0) ? "H1" : "H2";
}

std::string model_to_json(const Model& model) {
  json j;
  const std::string variant = model_variant(model);
  j["variant"] = variant;
  if (variant == "H3") {
    json ab_left = json::array(), ab_right = json::array();
    json ba_left = json::array(), ba_right = json::array();
    const auto fill = [](const std::map<int, cplx>& row, json& left,
                         json& right) {
      int lo = 0, hi = -1;
      if (!row.empty()) {
        lo = row.begin()->first;
        hi = row.rbegin()->first;
      }
      for (int off = -1; off >= lo; --off)
        left.push_back(dump_amplitude(row.count(off) ? row.at(off) : cplx(0.0)));
      for (int off = 0; off <= hi; ++off)
        right.push_back(dump_amplitude(row.count(off) ? row.at(off) : cplx(0.0)));
    };
    fill(model.ab, ab_left, ab_right);
    fill(model.ba, ba_left, ba_right);
    if (!ab_left.empty()) j["ab_left"] = ab_left;
    if (!ab_right.empty()) j["ab_right"] = ab_right;
    if (!ba_left.empty()) j["ba_left"] = ba_left;
    if (!ba_right.empty()) j["ba_right"] = ba_right;
  } else {
    j["m"] = -model.ab.begin()->first;
    j["n"] = model.ba.rbegin()->first;
    j["c_ab0"] = dump_amplitude(model.ab.at(0));
    j["c_ab_neg_m"] = dump_amplitude(model.ab.begin()->second);
    j["c_ba_n"] = dump_amplitude(model.ba.rbegin()->second);
  }
  if (model.c_i != 0.0 || variant != "H1") j["c_i"] = model.c_i;
  if (model.c_z != 0.0 || variant == "H2") j["c_z"] = model.c_z;
  return j.dump(2) + "\n";
}

void set_model_param(Model& model, const std::string& path, double value) {
  if (path == "ci") {
    model.c_i = value;
    return;
  }
  if (path == "cz") {
    model.c_z = value;
    return;
  }
  if (path == "cab0") {
    model.ab[0] = value;
    model.ba[0] = value;
    return;
  }
  if (path == "cabm") {
    if (model.ab.empty() || model.ab.begin()->first >= 0)
      throw DomainError("model has no long-range A<-B coupling for 'cabm'");
    model.ab.begin()->second = value;
    return;
  }
  if (path == "cban") {
    if (model.ba.empty() || model.ba.rbegin()->first <= 0)
      throw DomainError("model has no intercell B<-A coupling for 'cban'");
    model.ba.rbegin()->second = value;
    return;
  }
  const auto dot = path.find('.');
  if (dot != std::string::npos) {
    const std::string head = path.substr(0, dot);
    int idx = 0;
    try {
      idx = std::stoi(path.substr(dot + 1));
    } catch (const std::exception&) {
      throw DomainError("bad offset in parameter path: " + path);
    }
    if (idx < 0) throw DomainError("offset must be >= 0 in path: " + path);
    if (head == "ab_left") {
      model.ab[-idx] = value;
      return;
    }
    if (head == "ab_right") {
      model.ab[idx] = value;
      return;
    }
    if (head == "ba_left") {
      model.ba[-idx] = value;
      return;
    }
    if (head == "ba_right") {
      model.ba[idx] = value;
      return;
    }
  }
  throw DomainError("unknown parameter path: " + path);
}

}  // namespace braidkit
