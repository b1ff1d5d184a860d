// braidkit command line: braiding indices, phase diagrams, spectra,
// exceptional-point scans and circuit synthesis for two-band non-Hermitian
// chains. Exit codes: 0 success, 1 usage, 2 domain error, 3 I/O error.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "braidkit/braid.hpp"
#include "braidkit/circuit.hpp"
#include "braidkit/eps.hpp"
#include "braidkit/model.hpp"
#include "braidkit/model_io.hpp"
#include "braidkit/netlist.hpp"
#include "braidkit/parallel.hpp"
#include "braidkit/spectra.hpp"

namespace {

using namespace braidkit;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-trippable decimal form; keeps CSV output byte-stable.
std::string fmt(double v) {
  char buf[32];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general);
  return std::string(buf, res.ptr);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  if (!out) throw IoError("failed writing output file: " + path);
}

// Inline H1 flags or a JSON model file.
struct ModelOpts {
  std::string file;
  int m = 3, n = 1;
  double cab0 = 1.0, cabm = 0.0, cban = 0.0;
  double ci = 0.0, cz = 0.0;
  bool have_cabm = false, have_cban = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", file, "model JSON file (variants H1/H2/H3)");
    cmd->add_option("--m", m, "A<-B intercell reach (inline H1, default 3)");
    cmd->add_option("--n", n, "B<-A intercell reach (inline H1, default 1)");
    cmd->add_option("--cab0", cab0, "shared intracell coupling (default 1)");
    cmd->add_option("--cabm", cabm, "long-range A<-B coupling")
        ->each([this](const std::string&) { have_cabm = true; });
    cmd->add_option("--cban", cban, "intercell B<-A coupling")
        ->each([this](const std::string&) { have_cban = true; });
    cmd->add_option("--ci", ci, "staggered onsite term (default 0)");
    cmd->add_option("--cz", cz, "chiral-breaking mass term (default 0)");
  }

  Model resolve() const {
    if (!file.empty()) return model_from_json_file(file);
    if (!have_cabm || !have_cban)
      throw UsageError("provide --model FILE or inline --cabm and --cban");
    if (m < 1 || n < 1) throw UsageError("reaches --m and --n must be >= 1");
    return Model::three_coupling(m, n, cab0, cabm, cban, ci, cz);
  }
};

struct AxisOpts {
  std::string path;
  double lo = 0.0, hi = 0.0;
  long steps = 0;

  std::vector<double> values() const {
    if (steps < 1) throw UsageError("axis resolution must be >= 1 step");
    std::vector<double> vs(static_cast<std::size_t>(steps));
    for (long i = 0; i < steps; ++i)
      vs[static_cast<std::size_t>(i)] =
          steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                     static_cast<double>(steps - 1);
    return vs;
  }
};

// ---------------------------------------------------------------- braid ----

struct BraidCmd {
  ModelOpts model;
  std::size_t winding_samples = 256;
  std::size_t word_samples = 4096;
  bool as_json = false;
  std::string out;

  void run() const {
    const Model mod = model.resolve();
    const int xi_i = xi_integral(mod, winding_samples);
    const XiRootsResult xr = xi_roots(mod);
    const BraidWord word = braid_word(mod, word_samples);
    if (as_json) {
      json j;
      j["xi_integral"] = xi_i;
      j["xi_roots"] = xr.xi;
      j["boundary_flag"] = xr.boundary;
      j["braid_word"] = braid_word_text(word);
      j["exponent_sum"] = word.exponent_sum;
      j["closure"] = closure_name(word.exponent_sum);
      j["closure_swaps"] = word.closure_swaps;
      write_output(out, j.dump(2) + "\n");
      return;
    }
    std::ostringstream os;
    os << "xi_integral: " << xi_i << "\n"
       << "xi_roots: " << xr.xi << "\n"
       << "boundary_flag: " << (xr.boundary ? 1 : 0) << "\n"
       << "braid_word: " << braid_word_text(word) << "\n"
       << "exponent_sum: " << word.exponent_sum << "\n"
       << "closure: " << closure_name(word.exponent_sum) << "\n"
       << "closure_swaps: " << (word.closure_swaps ? 1 : 0) << "\n";
    write_output(out, os.str());
  }
};

// -------------------------------------------------------- phase diagram ----

struct PhaseDiagramCmd {
  ModelOpts model;
  AxisOpts axis1, axis2;
  std::string out, format = "csv";

  void run() const {
    const Model base = model.resolve();
    if (axis1.path.empty() || axis2.path.empty())
      throw UsageError("phase-diagram needs --axis1 and --axis2 paths");
    const std::vector<double> v1 = axis1.values();
    const std::vector<double> v2 = axis2.values();
    {
      // Fail fast on unresolvable axis paths.
      Model probe = base;
      set_model_param(probe, axis1.path, v1.front());
      set_model_param(probe, axis2.path, v2.front());
    }

    struct Cell {
      int xi = 0;
      bool boundary = false;
    };
    std::vector<Cell> cells(v1.size() * v2.size());
    parallel_for(cells.size(), [&](std::size_t idx) {
      Model mod = base;
      set_model_param(mod, axis1.path, v1[idx / v2.size()]);
      set_model_param(mod, axis2.path, v2[idx % v2.size()]);
      const XiRootsResult xr = xi_roots(mod);
      cells[idx] = {xr.xi, xr.boundary};
    });

    if (format == "json") {
      json rows = json::array();
      for (std::size_t idx = 0; idx < cells.size(); ++idx)
        rows.push_back({{"axis1", v1[idx / v2.size()]},
                        {"axis2", v2[idx % v2.size()]},
                        {"xi", cells[idx].xi},
                        {"boundary_flag", cells[idx].boundary ? 1 : 0}});
      json j;
      j["axis1"] = axis1.path;
      j["axis2"] = axis2.path;
      j["cells"] = rows;
      write_output(out, j.dump(2) + "\n");
      return;
    }
    if (format != "csv") throw UsageError("format must be csv or json");
    std::ostringstream os;
    os << "axis1,axis2,xi,boundary_flag\n";
    for (std::size_t idx = 0; idx < cells.size(); ++idx)
      os << fmt(v1[idx / v2.size()]) << ',' << fmt(v2[idx % v2.size()]) << ','
         << cells[idx].xi << ',' << (cells[idx].boundary ? 1 : 0) << "\n";
    write_output(out, os.str());
  }
};

// ------------------------------------------------------------- spectrum ----

struct SpectrumCmd {
  ModelOpts model;
  std::size_t cells = 0;
  std::string bc = "obc";
  AxisOpts fl_axis;  // optional f_L sweep
  std::string out, format = "csv";

  void run() const {
    const Model base = model.resolve();
    if (cells == 0) throw UsageError("--cells is required");
    if (bc != "pbc" && bc != "obc") throw UsageError("--bc must be pbc or obc");

    if (!fl_axis.path.empty()) {
      const std::vector<double> vs = fl_axis.values();
      std::vector<double> fl(vs.size());
      parallel_for(vs.size(), [&](std::size_t i) {
        Model mod = base;
        set_model_param(mod, fl_axis.path, vs[i]);
        fl[i] = left_fraction(mod, cells);
      });
      emit_rows("value,f_l\n", vs.size(), [&](std::ostringstream& os,
                                              std::size_t i) {
        os << fmt(vs[i]) << ',' << fmt(fl[i]) << "\n";
      });
      return;
    }

    if (bc == "pbc") {
      const std::vector<cplx> es = pbc_spectrum(base, cells);
      emit_rows("k_or_index,re_e,im_e,center_of_mass,ipr,side\n", es.size(),
                [&](std::ostringstream& os, std::size_t i) {
                  const double k = two_pi * static_cast<double>(i / 2) /
                                   static_cast<double>(cells);
                  os << fmt(k) << ',' << fmt(es[i].real()) << ','
                     << fmt(es[i].imag()) << ",,,\n";
                });
      return;
    }
    const std::vector<ChainState> states =
        chain_states(base, cells, Boundary::open);
    emit_rows("k_or_index,re_e,im_e,center_of_mass,ipr,side\n", states.size(),
              [&](std::ostringstream& os, std::size_t i) {
                const ChainState& st = states[i];
                os << i << ',' << fmt(st.energy.real()) << ','
                   << fmt(st.energy.imag()) << ',' << fmt(st.center_of_mass)
                   << ',' << fmt(st.ipr) << ','
                   << (st.left ? "left" : "right") << "\n";
              });
  }

 private:
  template <typename RowFn>
  void emit_rows(const char* header, std::size_t count, RowFn&& fn) const {
    if (format == "json") {
      // JSON mirrors the CSV: an array of objects keyed by the header names.
      std::ostringstream csv;
      for (std::size_t i = 0; i < count; ++i) fn(csv, i);
      write_output(out, csv_to_json(header, csv.str()));
      return;
    }
    if (format != "csv") throw UsageError("format must be csv or json");
    std::ostringstream os;
    os << header;
    for (std::size_t i = 0; i < count; ++i) fn(os, i);
    write_output(out, os.str());
  }

  static std::string csv_to_json(const std::string& header,
                                 const std::string& body) {
    std::vector<std::string> cols;
    {
      std::string h = header;
      if (!h.empty() && h.back() == '\n') h.pop_back();
      std::istringstream hs(h);
      std::string c;
      while (std::getline(hs, c, ',')) cols.push_back(c);
    }
    json rows = json::array();
    std::istringstream bs(body);
    std::string line;
    while (std::getline(bs, line)) {
      json row;
      std::istringstream ls(line);
      std::string cell;
      std::size_t ci = 0;
      while (std::getline(ls, cell, ',') && ci < cols.size()) {
        if (cell.empty())
          row[cols[ci]] = nullptr;
        else {
          try {
            std::size_t pos = 0;
            const double v = std::stod(cell, &pos);
            if (pos == cell.size())
              row[cols[ci]] = v;
            else
              row[cols[ci]] = cell;
          } catch (const std::exception&) {
            row[cols[ci]] = cell;
          }
        }
        ++ci;
      }
      rows.push_back(row);
    }
    return rows.dump(2) + "\n";
  }
};

// -------------------------------------------------------------- ep scan ----

struct EpScanCmd {
  ModelOpts model;
  bool table = false;
  std::string line;
  int line_m = 0;
  std::string out, format = "csv";

  static BoundaryLine parse_line(const std::string& s) {
    if (s == "pq") return BoundaryLine::pq;
    if (s == "rs") return BoundaryLine::rs;
    if (s == "ab") return BoundaryLine::ab;
    if (s == "ef") return BoundaryLine::ef;
    throw UsageError("--line must be one of pq, rs, ab, ef");
  }

  static std::string klist(const std::vector<double>& ks) {
    std::string s;
    for (double k : ks) {
      if (!s.empty()) s += ' ';
      s += fmt(k);
    }
    return s;
  }

  void run() const {
    if (format != "csv") throw UsageError("ep-scan emits csv only");
    std::ostringstream os;
    if (table) {
      os << "m,pq_count,rs_count,pq_k,rs_k\n";
      for (int m = 2; m <= 6; ++m) {
        const std::vector<double> pq = ep_momenta(BoundaryLine::pq, m);
        const std::vector<double> rs = ep_momenta(BoundaryLine::rs, m);
        os << m << ',' << pq.size() << ',' << rs.size() << ',' << klist(pq)
           << ',' << klist(rs) << "\n";
      }
      write_output(out, os.str());
      return;
    }
    if (!line.empty()) {
      const BoundaryLine bl = parse_line(line);
      if ((bl == BoundaryLine::pq || bl == BoundaryLine::rs) && line_m < 1)
        throw UsageError("--line pq/rs needs --line-m >= 1");
      const std::vector<double> ks = ep_momenta(bl, line_m);
      os << "line,count,type,k_values\n";
      os << boundary_line_name(bl) << ',' << ks.size() << ','
         << (ks.size() > 1 ? 2 : 1) << ',' << klist(ks) << "\n";
      write_output(out, os.str());
      return;
    }
    const Model mod = model.resolve();
    const std::vector<EpPoint> eps = find_eps(mod);
    os << "k,det_abs\n";
    for (const EpPoint& p : eps)
      os << fmt(p.k) << ',' << fmt(p.det_abs) << "\n";
    write_output(out, os.str());
  }
};

// -------------------------------------------------------------- circuit ----

struct CircuitShared {
  ModelOpts model;
  std::string params_file;
  double c0 = 4.7e-9;
  double f_target = 0.0;
  double r0 = -1.0;  // <0: leave as-is / infinity
  double esr = -1.0;
  double leak = -1.0;
  bool reciprocal = false;

  CircuitParams resolve() const {
    CircuitParams p;
    if (!params_file.empty())
      p = circuit_from_json_file(params_file);
    else
      p = synthesize(model.resolve(), c0, f_target);
    if (r0 >= 0.0)
      p.r0 = r0 == 0.0 ? std::numeric_limits<double>::infinity() : r0;
    if (esr >= 0.0) p.esr = esr;
    if (leak >= 0.0) p.leak = leak;
    if (reciprocal) p.reciprocal = true;
    return p;
  }

  void attach(CLI::App* cmd) {
    model.attach(cmd);
    cmd->add_option("--params", params_file, "circuit parameter JSON file");
    cmd->add_option("--c0", c0, "c0 capacitance in farads (default 4.7e-9)");
    cmd->add_option("--f", f_target, "target resonance in Hz (0 = 200 kHz)");
    cmd->add_option("--r0", r0, "grounding resistor in ohms (0 = none)");
    cmd->add_option("--esr", esr, "inductor series resistance in ohms");
    cmd->add_option("--leak", leak, "converter reverse leak fraction");
    cmd->add_flag("--reciprocal", reciprocal,
                  "replace converters with plain capacitors");
  }
};

struct CircuitSynthCmd {
  CircuitShared shared;
  std::string out;
  void run() const { write_output(out, circuit_to_json(shared.resolve())); }
};

struct CircuitExportCmd {
  CircuitShared shared;
  std::size_t cells = 0;
  std::string bc = "pbc";
  std::string out;
  void run() const {
    if (cells == 0) throw UsageError("--cells is required");
    if (bc != "pbc" && bc != "obc") throw UsageError("--bc must be pbc or obc");
    const Boundary b = bc == "obc" ? Boundary::open : Boundary::periodic;
    write_output(out, netlist_export(shared.resolve(), cells, b));
  }
};

struct CircuitVerifyCmd {
  CircuitShared shared;
  std::size_t k_samples = 256;
  std::size_t cells = 0;  // 0: skip the Green's-function round trip
  std::string bc = "pbc";
  std::string out;

  void run() const {
    const CircuitParams p = shared.resolve();
    const Model target = p.realized_model();
    const double omega = two_pi * p.f_res;

    double worst = 0.0;
    for (std::size_t j = 0; j < k_samples; ++j) {
      const double k = two_pi * static_cast<double>(j) /
                       static_cast<double>(k_samples);
      const auto [j1, j2] = laplacian_k(p, omega, k).eigenvalues();
      const auto [e1, e2] = target.bloch(k).eigenvalues();
      const cplx t1 = cplx(0.0, -omega) * e1;
      const cplx t2 = cplx(0.0, -omega) * e2;
      const double scale =
          std::max({std::abs(t1), std::abs(t2), std::abs(j1), std::abs(j2)});
      const double direct = std::max(std::abs(j1 - t1), std::abs(j2 - t2));
      const double crossed = std::max(std::abs(j1 - t2), std::abs(j2 - t1));
      if (scale > 0.0) worst = std::max(worst, std::min(direct, crossed) / scale);
    }

    std::ostringstream os;
    os << "correspondence_residual: " << fmt(worst) << "\n"
       << "f_res_a: " << fmt(p.resonant_freq_a()) << "\n"
       << "f_res_b: " << fmt(p.resonant_freq_b()) << "\n"
       << "detuned: " << (p.detuned() ? 1 : 0) << "\n";
    if (cells > 0) {
      const Boundary b = bc == "obc" ? Boundary::open : Boundary::periodic;
      const GreensResult g = greens_reconstruct(p, omega, cells, b);
      os << "greens_error: " << fmt(g.error) << "\n";
      const std::string net = netlist_export(p, cells, b);
      const CMatrix parsed = netlist_admittance(net, omega);
      const CMatrix direct = laplacian_real(p, omega, cells, b);
      double diff = 0.0, norm = 0.0;
      for (std::size_t r = 0; r < parsed.rows(); ++r)
        for (std::size_t c = 0; c < parsed.cols(); ++c) {
          diff += std::norm(parsed(r, c) - direct(r, c));
          norm += std::norm(direct(r, c));
        }
      os << "netlist_roundtrip_error: "
         << fmt(norm > 0.0 ? std::sqrt(diff / norm) : 0.0) << "\n";
    }
    write_output(out, os.str());
  }
};

struct CircuitStabilityCmd {
  CircuitShared shared;
  std::size_t cells = 10;
  std::string bc = "pbc";
  std::string out;
  void run() const {
    if (bc != "pbc" && bc != "obc") throw UsageError("--bc must be pbc or obc");
    const CircuitParams p = shared.resolve();
    const Boundary b = bc == "obc" ? Boundary::open : Boundary::periodic;
    const StabilityResult s =
        stability_check(p, two_pi * p.f_res, cells, b);
    std::ostringstream os;
    os << "min_imag: " << fmt(s.min_imag) << "\n"
       << "max_abs: " << fmt(s.max_abs) << "\n"
       << "stable: " << (s.stable ? "true" : "false") << "\n";
    write_output(out, os.str());
  }
};

struct CircuitDisorderCmd {
  CircuitShared shared;
  double pct = 0.0;
  std::uint64_t seed = 0;
  std::size_t draws = 1;
  std::string out;

  void run() const {
    if (!shared.params_file.empty()) {
      const CircuitParams p = shared.resolve();
      write_output(out, circuit_to_json(disorder_sample(p, pct, seed)));
      return;
    }
    const Model base = shared.model.resolve();
    if (draws == 1) {
      write_output(out, model_to_json(disorder_sample(base, pct, seed)));
      return;
    }
    const int xi_base = xi_integral(base);
    std::size_t unchanged = 0, failed = 0;
    for (std::size_t d = 0; d < draws; ++d) {
      try {
        if (xi_integral(disorder_sample(base, pct, seed + d)) == xi_base)
          ++unchanged;
      } catch (const DomainError&) {
        ++failed;  // draw landed on a phase boundary
      }
    }
    std::ostringstream os;
    os << "draws: " << draws << "\n"
       << "xi_base: " << xi_base << "\n"
       << "xi_unchanged: " << unchanged << "\n"
       << "xi_changed: " << draws - unchanged - failed << "\n"
       << "boundary_hits: " << failed << "\n";
    write_output(out, os.str());
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "braidkit: complex-energy braiding topology of two-band non-Hermitian "
      "chains and their RLC circuit realizations"};
  app.require_subcommand(1);

  BraidCmd braid_cmd;
  {
    CLI::App* c = app.add_subcommand(
        "braid", "braiding index (both routes), braid word and closure");
    braid_cmd.model.attach(c);
    c->add_option("--winding-samples", braid_cmd.winding_samples,
                  "base k-grid for the winding integral (default 256)");
    c->add_option("--samples", braid_cmd.word_samples,
                  "k-grid for crossing detection (default 4096)");
    c->add_flag("--json", braid_cmd.as_json, "emit JSON instead of text");
    c->add_option("--out", braid_cmd.out, "output file (default stdout)");
    c->callback([&] { braid_cmd.run(); });
  }

  PhaseDiagramCmd pd_cmd;
  {
    CLI::App* c = app.add_subcommand(
        "phase-diagram",
        "braiding-index map over a 2D parameter grid "
        "(csv: axis1,axis2,xi,boundary_flag)");
    pd_cmd.model.attach(c);
    c->add_option("--axis1", pd_cmd.axis1.path,
                  "first swept parameter (cab0|cabm|cban|ci|cz|ab_left.J|...)");
    c->add_option("--a1-min", pd_cmd.axis1.lo, "axis1 start");
    c->add_option("--a1-max", pd_cmd.axis1.hi, "axis1 end");
    c->add_option("--a1-steps", pd_cmd.axis1.steps, "axis1 sample count");
    c->add_option("--axis2", pd_cmd.axis2.path, "second swept parameter");
    c->add_option("--a2-min", pd_cmd.axis2.lo, "axis2 start");
    c->add_option("--a2-max", pd_cmd.axis2.hi, "axis2 end");
    c->add_option("--a2-steps", pd_cmd.axis2.steps, "axis2 sample count");
    c->add_option("--out", pd_cmd.out, "output file (default stdout)");
    c->add_option("--format", pd_cmd.format, "csv (default) or json");
    c->callback([&] { pd_cmd.run(); });
  }

  SpectrumCmd sp_cmd;
  {
    CLI::App* c = app.add_subcommand(
        "spectrum",
        "pbc/obc spectra with localization data "
        "(csv: k_or_index,re_e,im_e,center_of_mass,ipr,side), or an f_L sweep");
    sp_cmd.model.attach(c);
    c->add_option("--cells", sp_cmd.cells,
                  "unit cells (obc) or k samples (pbc)");
    c->add_option("--bc", sp_cmd.bc, "pbc or obc (default obc)");
    c->add_option("--fl-axis", sp_cmd.fl_axis.path,
                  "sweep this parameter and report f_L per value");
    c->add_option("--fl-min", sp_cmd.fl_axis.lo, "sweep start");
    c->add_option("--fl-max", sp_cmd.fl_axis.hi, "sweep end");
    c->add_option("--fl-steps", sp_cmd.fl_axis.steps, "sweep sample count");
    c->add_option("--out", sp_cmd.out, "output file (default stdout)");
    c->add_option("--format", sp_cmd.format, "csv (default) or json");
    c->callback([&] { sp_cmd.run(); });
  }

  EpScanCmd ep_cmd;
  {
    CLI::App* c = app.add_subcommand(
        "ep-scan",
        "exceptional-point momenta: closed-form line tables or a numeric "
        "scan of a boundary model");
    ep_cmd.model.attach(c);
    c->add_flag("--table", ep_cmd.table,
                "emit the closed-form pq/rs table for m = 2..6");
    c->add_option("--line", ep_cmd.line, "boundary line: pq, rs, ab or ef");
    c->add_option("--line-m", ep_cmd.line_m, "reach m for pq/rs lines");
    c->add_option("--out", ep_cmd.out, "output file (default stdout)");
    c->add_option("--format", ep_cmd.format, "csv only");
    c->callback([&] { ep_cmd.run(); });
  }

  CLI::App* circuit =
      app.add_subcommand("circuit", "RLC realization: synthesis, netlists, "
                                    "verification, stability, disorder");
  circuit->require_subcommand(1);

  CircuitSynthCmd cs_cmd;
  {
    CLI::App* c = circuit->add_subcommand(
        "synth", "component values realizing an H1 model (JSON)");
    cs_cmd.shared.attach(c);
    c->add_option("--out", cs_cmd.out, "output file (default stdout)");
    c->callback([&] { cs_cmd.run(); });
  }
  CircuitExportCmd ce_cmd;
  {
    CLI::App* c = circuit->add_subcommand("export", "SPICE netlist emission");
    ce_cmd.shared.attach(c);
    c->add_option("--cells", ce_cmd.cells, "number of unit cells");
    c->add_option("--bc", ce_cmd.bc, "pbc (default) or obc");
    c->add_option("--out", ce_cmd.out, "netlist file (default stdout)");
    c->callback([&] { ce_cmd.run(); });
  }
  CircuitVerifyCmd cv_cmd;
  {
    CLI::App* c = circuit->add_subcommand(
        "verify",
        "Laplacian <-> Hamiltonian correspondence residual at resonance");
    cv_cmd.shared.attach(c);
    c->add_option("--k-samples", cv_cmd.k_samples, "k grid (default 256)");
    c->add_option("--cells", cv_cmd.cells,
                  "also run the Green's round trip on this many cells");
    c->add_option("--bc", cv_cmd.bc, "pbc (default) or obc");
    c->add_option("--out", cv_cmd.out, "output file (default stdout)");
    c->callback([&] { cv_cmd.run(); });
  }
  CircuitStabilityCmd cst_cmd;
  {
    CLI::App* c = circuit->add_subcommand(
        "stability", "growth-rate check of the driven circuit");
    cst_cmd.shared.attach(c);
    c->add_option("--cells", cst_cmd.cells, "unit cells (default 10)");
    c->add_option("--bc", cst_cmd.bc, "pbc (default) or obc");
    c->add_option("--out", cst_cmd.out, "output file (default stdout)");
    c->callback([&] { cst_cmd.run(); });
  }
  CircuitDisorderCmd cd_cmd;
  {
    CLI::App* c = circuit->add_subcommand(
        "disorder",
        "component-tolerance draws: perturbed instance or xi-stability "
        "report over many draws");
    cd_cmd.shared.attach(c);
    c->add_option("--pct", cd_cmd.pct, "tolerance in percent, [0, 50)");
    c->add_option("--seed", cd_cmd.seed, "base RNG seed (default 0)");
    c->add_option("--draws", cd_cmd.draws,
                  "number of draws (model mode; default 1)");
    c->add_option("--out", cd_cmd.out, "output file (default stdout)");
    c->callback([&] { cd_cmd.run(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
