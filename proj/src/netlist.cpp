#include "braidkit/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace braidkit {

std::string si_format(double v) {
  if (v == 0.0) return "0";
  if (!std::isfinite(v)) return v > 0 ? "inf" : "-inf";
  const bool neg = v < 0.0;

  // Shortest round-trip decimal form, then shift the decimal point in the
  // digit string. Dividing by the suffix scale first would reintroduce
  // binary rounding ("4.699999999999999n").
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), std::abs(v),
                                 std::chars_format::scientific);
  const std::string sci(buf, res.ptr);
  const std::size_t epos = sci.find('e');
  std::string digits = sci.substr(0, epos);
  digits.erase(std::remove(digits.begin(), digits.end(), '.'), digits.end());
  const int exp10 = std::stoi(sci.substr(epos + 1));

  struct Suffix {
    int power;
    const char* tag;
  };
  static constexpr Suffix suffixes[] = {
      {6, "meg"}, {3, "k"}, {0, ""}, {-3, "m"},
      {-6, "u"},  {-9, "n"}, {-12, "p"},
  };
  const Suffix* pick = &suffixes[sizeof(suffixes) / sizeof(suffixes[0]) - 1];
  for (const Suffix& s : suffixes) {
    if (exp10 >= s.power) {
      pick = &s;
      break;
    }
  }

  const int shift = exp10 - pick->power;
  std::string mant;
  if (shift < 0) {
    mant = "0." + std::string(static_cast<std::size_t>(-shift) - 1, '0') +
           digits;
  } else {
    const std::size_t lead = static_cast<std::size_t>(shift) + 1;
    if (digits.size() <= lead)
      mant = digits + std::string(lead - digits.size(), '0');
    else
      mant = digits.substr(0, lead) + "." + digits.substr(lead);
  }
  return (neg ? "-" : "") + mant + pick->tag;
}

double si_parse(const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw IoError("bad element value: " + text);
  }
  std::string suffix = text.substr(pos);
  std::transform(suffix.begin(), suffix.end(), suffix.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (suffix.empty()) return v;
  if (suffix == "meg") return v * 1e6;
  if (suffix == "k") return v * 1e3;
  if (suffix == "m") return v * 1e-3;
  if (suffix == "u") return v * 1e-6;
  if (suffix == "n") return v * 1e-9;
  if (suffix == "p") return v * 1e-12;
  if (suffix == "f") return v * 1e-15;
  throw IoError("unknown value suffix: " + text);
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

}  // namespace

std::string netlist_export(const CircuitParams& p, std::size_t cells,
                           Boundary bc) {
  if (cells < static_cast<std::size_t>(p.m + p.n) + 1)
    throw DomainError("chain too short for the converter reach");
  const long nc = static_cast<long>(cells);
  std::ostringstream out;
  const char* bctag = bc == Boundary::periodic ? "pbc" : "obc";

  out << "* braidkit two-band chain, " << cells << " cells, " << bctag
      << " boundary\n";
  out << "* cells=" << cells << " bc=" << bctag << " f=" << si_format(p.f_res)
      << " m=" << p.m << " n=" << p.n << " leak=" << si_format(p.leak)
      << " reciprocal=" << (p.reciprocal ? 1 : 0) << "\n";
  out << "* ground lands on node 0; X cards are stamped as ideal converters "
         "on parse\n";
  if (!p.reciprocal) {
    out << ".SUBCKT INIC IN OUT C1=1n C2=1n RA=1k CA=10p POL=1\n"
        << "* converter core: op-amp as VCVS with Za = RA || CA feedback,\n"
        << "* half-capacitor C1 through the inverting leg, C2 direct\n"
        << "C1A IN NC {C1}\n"
        << "C2A IN OUT {C2}\n"
        << "RA1 NO NC {RA}\n"
        << "CA1 NO NC {CA}\n"
        << "E1 NO 0 NC OUT 1e6\n"
        << ".ENDS INIC\n";
  }

  const auto a_node = [](long j) { return "A" + std::to_string(j + 1); };
  const auto b_node = [](long j) { return "B" + std::to_string(j + 1); };
  const auto wrap = [nc](long j) { return ((j % nc) + nc) % nc; };

  for (long j = 0; j < nc; ++j) {
    if (p.esr > 0.0) {
      out << "LA" << j + 1 << " " << a_node(j) << " NLA" << j + 1 << " "
          << si_format(p.la) << "\n";
      out << "RLA" << j + 1 << " NLA" << j + 1 << " 0 " << si_format(p.esr)
          << "\n";
      out << "LB" << j + 1 << " " << b_node(j) << " NLB" << j + 1 << " "
          << si_format(p.lb) << "\n";
      out << "RLB" << j + 1 << " NLB" << j + 1 << " 0 " << si_format(p.esr)
          << "\n";
    } else {
      out << "LA" << j + 1 << " " << a_node(j) << " 0 " << si_format(p.la)
          << "\n";
      out << "LB" << j + 1 << " " << b_node(j) << " 0 " << si_format(p.lb)
          << "\n";
    }
    if (std::isfinite(p.r0)) {
      out << "R0A" << j + 1 << " " << a_node(j) << " 0 " << si_format(p.r0)
          << "\n";
      out << "R0B" << j + 1 << " " << b_node(j) << " 0 " << si_format(p.r0)
          << "\n";
    }
    out << "C0" << j + 1 << " " << a_node(j) << " " << b_node(j) << " "
        << si_format(p.c0) << "\n";
  }

  const auto [cm1, cm2] = inic_halves(p.cm, p.leak);
  const auto [cn1, cn2] = inic_halves(p.cn, p.leak);
  for (long j = 0; j < nc; ++j) {
    const long am = j + p.m;
    const long bn = j - p.n;
    const bool has_m = bc == Boundary::periodic || am < nc;
    const bool has_n = bc == Boundary::periodic || bn >= 0;
    if (has_m) {
      const std::string tgt = a_node(bc == Boundary::periodic ? wrap(am) : am);
      if (p.reciprocal)
        out << "CM" << j + 1 << " " << b_node(j) << " " << tgt << " "
            << si_format(p.cm) << "\n";
      else
        out << "XM" << j + 1 << " " << b_node(j) << " " << tgt
            << " INIC C1=" << si_format(cm1) << " C2=" << si_format(cm2)
            << " POL=" << p.sign_m << "\n";
    }
    if (has_n) {
      const std::string tgt = b_node(bc == Boundary::periodic ? wrap(bn) : bn);
      if (p.reciprocal)
        out << "CN" << j + 1 << " " << a_node(j) << " " << tgt << " "
            << si_format(p.cn) << "\n";
      else
        out << "XN" << j + 1 << " " << a_node(j) << " " << tgt
            << " INIC C1=" << si_format(cn1) << " C2=" << si_format(cn2)
            << " POL=" << p.sign_n << "\n";
    }
  }

  if (bc == Boundary::open) {
    // Compensation capacitors: restore the diagonal loads the missing
    // boundary bonds would have provided.
    for (long j = nc - p.m; j < nc; ++j)
      out << "CCM" << j + 1 << " " << b_node(j) << " 0 " << si_format(p.cm)
          << "\n";
    for (long j = 0; j < p.n && j < nc; ++j)
      out << "CCN" << j + 1 << " " << a_node(j) << " 0 " << si_format(p.cn)
          << "\n";
    if (p.reciprocal) {
      for (long j = 0; j < p.m && j < nc; ++j)
        out << "CCMA" << j + 1 << " " << a_node(j) << " 0 " << si_format(p.cm)
            << "\n";
      for (long j = nc - p.n; j < nc; ++j)
        out << "CCNB" << j + 1 << " " << b_node(j) << " 0 " << si_format(p.cn)
            << "\n";
    } else if (p.leak != 0.0) {
      for (long j = 0; j < p.m && j < nc; ++j)
        out << "CLM" << j + 1 << " " << a_node(j) << " 0 "
            << si_format(p.leak * p.cm) << "\n";
      for (long j = nc - p.n; j < nc; ++j)
        out << "CLN" << j + 1 << " " << b_node(j) << " 0 "
            << si_format(p.leak * p.cn) << "\n";
    }
  }
  out << ".END\n";
  return out.str();
}

void netlist_write(const CircuitParams& p, std::size_t cells, Boundary bc,
                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open netlist output: " + path);
  out << netlist_export(p, cells, bc);
  if (!out) throw IoError("failed writing netlist: " + path);
}

namespace {

struct NetlistData {
  ParsedNetlist meta;
  // Element stamps recorded for later matrix assembly.
  struct TwoTerminal {
    char kind;  // 'R', 'L' or 'C'
    std::string n1, n2;
    double value;
  };
  struct Converter {
    std::string src, tgt;
    double c1 = 0.0, c2 = 0.0;
    int pol = 1;
  };
  std::vector<TwoTerminal> passives;
  std::vector<Converter> converters;
};

NetlistData read_netlist(const std::string& text) {
  NetlistData data;
  std::istringstream in(text);
  std::string line;
  bool in_subckt = false;
  bool have_cells = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '*') {
      // Header comments carry machine-readable key=value pairs.
      for (const std::string& tok : tokenize(line.substr(1))) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        try {
          if (key == "cells") {
            data.meta.cells = static_cast<std::size_t>(std::stoul(val));
            have_cells = true;
          } else if (key == "bc") {
            data.meta.bc = val == "obc" ? Boundary::open : Boundary::periodic;
          } else if (key == "f") {
            data.meta.f_res = si_parse(val);
          }
        } catch (const std::exception&) {
          throw IoError("bad header value: " + tok);
        }
      }
      continue;
    }
    std::vector<std::string> toks = tokenize(line);
    if (toks.empty()) continue;
    std::string head = toks[0];
    std::transform(head.begin(), head.end(), head.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (head == ".SUBCKT") {
      in_subckt = true;
      continue;
    }
    if (head == ".ENDS") {
      in_subckt = false;
      continue;
    }
    if (head == ".END") break;
    if (in_subckt || head[0] == '.') continue;

    if (head[0] == 'R' || head[0] == 'L' || head[0] == 'C') {
      if (toks.size() < 4) throw IoError("short element card: " + line);
      data.passives.push_back(
          {head[0], toks[1], toks[2], si_parse(toks[3])});
      ++data.meta.n_elements;
    } else if (head[0] == 'X') {
      if (toks.size() < 4) throw IoError("short converter card: " + line);
      NetlistData::Converter cv;
      cv.src = toks[1];
      cv.tgt = toks[2];
      for (std::size_t t = 4; t < toks.size(); ++t) {
        const auto eq = toks[t].find('=');
        if (eq == std::string::npos)
          throw IoError("bad converter parameter: " + toks[t]);
        const std::string key = toks[t].substr(0, eq);
        const std::string val = toks[t].substr(eq + 1);
        if (key == "C1")
          cv.c1 = si_parse(val);
        else if (key == "C2")
          cv.c2 = si_parse(val);
        else if (key == "POL")
          cv.pol = std::stoi(val) < 0 ? -1 : 1;
      }
      data.converters.push_back(cv);
      ++data.meta.n_elements;
    } else {
      throw IoError("unsupported card: " + line);
    }
  }
  if (!have_cells) throw IoError("netlist header lacks a cells= record");
  return data;
}

}  // namespace

ParsedNetlist netlist_parse(const std::string& text) {
  return read_netlist(text).meta;
}

CMatrix netlist_admittance(const std::string& text, double omega) {
  const NetlistData data = read_netlist(text);
  const std::size_t cells = data.meta.cells;
  const std::size_t main_count = 2 * cells;

  // Node name -> dense index. Chain nodes take the fixed slots
  // A1,B1,A2,B2,...; internal nodes (series esr joints) come after and are
  // eliminated at the end. Ground is dropped.
  std::map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < cells; ++j) {
    index["A" + std::to_string(j + 1)] = 2 * j;
    index["B" + std::to_string(j + 1)] = 2 * j + 1;
  }
  std::size_t next = main_count;
  const auto node_id = [&](const std::string& name) -> std::ptrdiff_t {
    if (name == "0") return -1;
    const auto it = index.find(name);
    if (it != index.end()) return static_cast<std::ptrdiff_t>(it->second);
    index[name] = next;
    return static_cast<std::ptrdiff_t>(next++);
  };

  // First pass assigns indices so the matrix can be sized.
  for (const auto& el : data.passives) {
    node_id(el.n1);
    node_id(el.n2);
  }
  for (const auto& cv : data.converters) {
    node_id(cv.src);
    node_id(cv.tgt);
  }
  const std::size_t dim = next;
  if (dim < main_count) throw IoError("netlist lacks chain nodes");
  CMatrix mat(dim, dim);

  const cplx jw(0.0, omega);
  const auto stamp2 = [&](std::ptrdiff_t a, std::ptrdiff_t b, cplx y) {
    if (a >= 0) mat(a, a) += y;
    if (b >= 0) mat(b, b) += y;
    if (a >= 0 && b >= 0) {
      mat(a, b) -= y;
      mat(b, a) -= y;
    }
  };
  for (const auto& el : data.passives) {
    cplx y;
    if (el.kind == 'R')
      y = 1.0 / el.value;
    else if (el.kind == 'L')
      y = 1.0 / (jw * el.value);
    else
      y = jw * el.value;
    stamp2(node_id(el.n1), node_id(el.n2), y);
  }
  for (const auto& cv : data.converters) {
    const auto [fwd, rev] = inic_effective(cv.c1, cv.c2);
    const std::ptrdiff_t s = node_id(cv.src), t = node_id(cv.tgt);
    if (s < 0 || t < 0) throw IoError("converter terminal on ground");
    mat(s, s) += jw * fwd;
    mat(t, s) -= jw * static_cast<double>(cv.pol) * fwd;
    if (rev != 0.0) {
      mat(t, t) += jw * rev;
      mat(s, t) -= jw * static_cast<double>(cv.pol) * rev;
    }
  }

  if (dim == main_count) return mat;

  // Schur-eliminate the internal nodes: J_mm - J_mi J_ii^{-1} J_im.
  const std::size_t internal = dim - main_count;
  CMatrix jii(internal, internal);
  CMatrix jim(internal, main_count);
  for (std::size_t r = 0; r < internal; ++r) {
    for (std::size_t c = 0; c < internal; ++c)
      jii(r, c) = mat(main_count + r, main_count + c);
    for (std::size_t c = 0; c < main_count; ++c)
      jim(r, c) = mat(main_count + r, c);
  }
  const LuFactors f = lu_factor(jii);
  if (f.singular) throw IoError("internal netlist node is isolated");
  CMatrix x(internal, main_count);  // J_ii^{-1} J_im
  std::vector<cplx> col(internal);
  for (std::size_t c = 0; c < main_count; ++c) {
    for (std::size_t r = 0; r < internal; ++r) col[r] = jim(r, c);
    const std::vector<cplx> sol = lu_solve(f, col);
    for (std::size_t r = 0; r < internal; ++r) x(r, c) = sol[r];
  }
  CMatrix red(main_count, main_count);
  for (std::size_t r = 0; r < main_count; ++r)
    for (std::size_t c = 0; c < main_count; ++c) {
      cplx acc = mat(r, c);
      for (std::size_t t = 0; t < internal; ++t)
        acc -= mat(r, main_count + t) * x(t, c);
      red(r, c) = acc;
    }
  return red;
}

}  // namespace braidkit
