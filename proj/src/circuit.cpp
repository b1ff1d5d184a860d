#include "braidkit/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace braidkit {

namespace {

constexpr cplx kImag(0.0, 1.0);

bool is_real(cplx c) { return c.imag() == 0.0; }

// Admittance of the grounding branch: inductor (with esr in series) plus the
// optional r0 resistor in parallel.
cplx ground_admittance(double l, double esr, double r0, double omega) {
  cplx y = 1.0 / (kImag * omega * l + esr);
  if (std::isfinite(r0)) y += 1.0 / r0;
  return y;
}

}  // namespace

double CircuitParams::resonant_freq_a() const {
  return 1.0 / (two_pi * std::sqrt(la * (c0 + cn)));
}

double CircuitParams::resonant_freq_b() const {
  return 1.0 / (two_pi * std::sqrt(lb * (c0 + cm)));
}

bool CircuitParams::detuned() const {
  const double ta = la * (c0 + cn);
  const double tb = lb * (c0 + cm);
  return std::abs(ta - tb) > 1e-6 * std::max(ta, tb);
}

Model CircuitParams::realized_model() const {
  return Model::three_coupling(m, n, c0, sign_m * cm, sign_n * cn);
}

CircuitParams synthesize(const Model& model, double c0_phys, double f_target) {
  if (model.ab.size() != 2 || model.ba.size() != 2 || !model.ab.count(0) ||
      !model.ba.count(0) || model.ab.at(0) != model.ba.at(0))
    throw DomainError(
        "not circuit-representable: need the three-coupling template");
  if (model.c_i != 0.0 || model.c_z != 0.0)
    throw DomainError("not circuit-representable: onsite terms have no "
                      "passive realization");
  const int m = -model.ab.begin()->first;
  const int n = model.ba.rbegin()->first;
  if (m < 1 || n < 1)
    throw DomainError(
        "not circuit-representable: need the three-coupling template");
  const cplx c0h = model.ab.at(0);
  const cplx cmh = model.ab.begin()->second;
  const cplx cnh = model.ba.rbegin()->second;
  if (!is_real(c0h) || !is_real(cmh) || !is_real(cnh))
    throw DomainError("not circuit-representable: couplings must be +-real");
  if (c0h.real() <= 0.0)
    throw DomainError("not circuit-representable: c_ab0 must be positive");
  if (cmh.real() == 0.0 || cnh.real() == 0.0)
    throw DomainError("not circuit-representable: zero coupling");
  if (!(c0_phys > 0.0)) throw DomainError("c0 capacitance must be positive");

  CircuitParams p;
  p.m = m;
  p.n = n;
  p.c0 = c0_phys;
  p.cm = std::abs(cmh.real() / c0h.real()) * c0_phys;
  p.cn = std::abs(cnh.real() / c0h.real()) * c0_phys;
  p.sign_m = cmh.real() > 0.0 ? 1 : -1;
  p.sign_n = cnh.real() > 0.0 ? 1 : -1;
  p.f_res = f_target > 0.0 ? f_target : 200e3;
  const double w = two_pi * p.f_res;
  p.la = 1.0 / (w * w * (p.c0 + p.cn));
  p.lb = 1.0 / (w * w * (p.c0 + p.cm));
  return p;
}

Mat2 laplacian_k(const CircuitParams& p, double omega, double k) {
  const cplx jw = kImag * omega;
  Mat2 j;
  j.a11 = jw * (p.c0 + p.cn) + ground_admittance(p.la, p.esr, p.r0, omega);
  j.a22 = jw * (p.c0 + p.cm) + ground_admittance(p.lb, p.esr, p.r0, omega);
  if (p.reciprocal) {
    j.a11 += jw * p.cm;
    j.a22 += jw * p.cn;
    j.a12 = -jw * (p.c0 + p.cm * std::polar(1.0, -p.m * k) +
                   p.cn * std::polar(1.0, -p.n * k));
    j.a21 = -jw * (p.c0 + p.cm * std::polar(1.0, p.m * k) +
                   p.cn * std::polar(1.0, p.n * k));
    return j;
  }
  if (p.leak != 0.0) {
    j.a11 += jw * p.leak * p.cm;  // c_m converter targets load A sites
    j.a22 += jw * p.leak * p.cn;
  }
  j.a12 = -jw * (p.c0 + static_cast<double>(p.sign_m) * p.cm *
                            std::polar(1.0, -p.m * k));
  j.a21 = -jw * (p.c0 + static_cast<double>(p.sign_n) * p.cn *
                            std::polar(1.0, p.n * k));
  if (p.leak != 0.0) {
    // Reverse transfer of each converter: B<-A through the c_m bond
    // (phase +imk) and A<-B through the c_n bond (phase -ink).
    j.a21 += -jw * static_cast<double>(p.sign_m) * p.leak * p.cm *
             std::polar(1.0, p.m * k);
    j.a12 += -jw * static_cast<double>(p.sign_n) * p.leak * p.cn *
             std::polar(1.0, -p.n * k);
  }
  return j;
}

CMatrix laplacian_real(const CircuitParams& p, double omega, std::size_t cells,
                       Boundary bc) {
  // Same minimum as the model-side real-space builder, so every circuit
  // matrix can be checked against it.
  const int span = p.m + p.n;
  if (cells < static_cast<std::size_t>(span) + 1)
    throw DomainError("chain too short for the converter reach");
  const std::size_t dim = 2 * cells;
  const std::ptrdiff_t nc = static_cast<std::ptrdiff_t>(cells);
  const cplx jw = kImag * omega;
  CMatrix mat(dim, dim);

  const auto node_a = [](std::ptrdiff_t j) { return 2 * j; };
  const auto node_b = [](std::ptrdiff_t j) { return 2 * j + 1; };
  const auto wrap = [nc](std::ptrdiff_t j) { return ((j % nc) + nc) % nc; };

  for (std::ptrdiff_t j = 0; j < nc; ++j) {
    // Grounding branches.
    mat(node_a(j), node_a(j)) +=
        ground_admittance(p.la, p.esr, p.r0, omega);
    mat(node_b(j), node_b(j)) +=
        ground_admittance(p.lb, p.esr, p.r0, omega);
    // Intracell reciprocal capacitor.
    mat(node_a(j), node_a(j)) += jw * p.c0;
    mat(node_b(j), node_b(j)) += jw * p.c0;
    mat(node_a(j), node_b(j)) -= jw * p.c0;
    mat(node_b(j), node_a(j)) -= jw * p.c0;
  }

  const auto plain_cap = [&](std::ptrdiff_t na, std::ptrdiff_t nb, double c) {
    mat(na, na) += jw * c;
    mat(nb, nb) += jw * c;
    mat(na, nb) -= jw * c;
    mat(nb, na) -= jw * c;
  };
  // Ideal converter: source diagonal load c, directed transfer sign*c, plus
  // the leak as a mirrored converter of strength leak*c.
  const auto converter = [&](std::ptrdiff_t src, std::ptrdiff_t tgt, double c,
                             int sign) {
    mat(src, src) += jw * c;
    mat(tgt, src) -= jw * static_cast<double>(sign) * c;
    if (p.leak != 0.0) {
      mat(tgt, tgt) += jw * p.leak * c;
      mat(src, tgt) -= jw * static_cast<double>(sign) * p.leak * c;
    }
  };

  for (std::ptrdiff_t j = 0; j < nc; ++j) {
    // c_m bond: B_j -> A_{j+m}; c_n bond: A_j -> B_{j-n}.
    const std::ptrdiff_t am = j + p.m;
    const std::ptrdiff_t bn = j - p.n;
    if (p.reciprocal) {
      if (bc == Boundary::periodic) {
        plain_cap(node_b(j), node_a(wrap(am)), p.cm);
        plain_cap(node_a(j), node_b(wrap(bn)), p.cn);
      } else {
        if (am < nc) plain_cap(node_b(j), node_a(am), p.cm);
        if (bn >= 0) plain_cap(node_a(j), node_b(bn), p.cn);
      }
      continue;
    }
    if (bc == Boundary::periodic) {
      converter(node_b(j), node_a(wrap(am)), p.cm, p.sign_m);
      converter(node_a(j), node_b(wrap(bn)), p.cn, p.sign_n);
    } else {
      if (am < nc) converter(node_b(j), node_a(am), p.cm, p.sign_m);
      if (bn >= 0) converter(node_a(j), node_b(bn), p.cn, p.sign_n);
    }
  }

  if (bc == Boundary::open) {
    // Grounded compensation capacitors keep every diagonal uniform where a
    // boundary removed a bond.
    if (p.reciprocal) {
      for (std::ptrdiff_t j = nc - p.m; j < nc; ++j)
        mat(node_b(j), node_b(j)) += jw * p.cm;  // lost c_m source end
      for (std::ptrdiff_t j = 0; j < p.m && j < nc; ++j)
        mat(node_a(j), node_a(j)) += jw * p.cm;  // lost c_m far end
      for (std::ptrdiff_t j = 0; j < p.n && j < nc; ++j)
        mat(node_a(j), node_a(j)) += jw * p.cn;  // lost c_n source end
      for (std::ptrdiff_t j = nc - p.n; j < nc; ++j)
        mat(node_b(j), node_b(j)) += jw * p.cn;  // lost c_n far end
    } else {
      for (std::ptrdiff_t j = nc - p.m; j < nc; ++j)
        mat(node_b(j), node_b(j)) += jw * p.cm;
      for (std::ptrdiff_t j = 0; j < p.n && j < nc; ++j)
        mat(node_a(j), node_a(j)) += jw * p.cn;
      if (p.leak != 0.0) {
        for (std::ptrdiff_t j = 0; j < p.m && j < nc; ++j)
          mat(node_a(j), node_a(j)) += jw * p.leak * p.cm;
        for (std::ptrdiff_t j = nc - p.n; j < nc; ++j)
          mat(node_b(j), node_b(j)) += jw * p.leak * p.cn;
      }
    }
  }
  return mat;
}

GreensResult greens_reconstruct(const CircuitParams& p, double omega,
                                std::size_t cells, Boundary bc) {
  const CMatrix j = laplacian_real(p, omega, cells, bc);
  const double cond = cond_1(j);
  if (!std::isfinite(cond) || cond > 1e12)
    throw DomainError(
        "Laplacian is numerically singular (driving an undamped resonance); "
        "add a grounding resistor r0");
  const std::size_t dim = j.rows();
  const LuFactors f = lu_factor(j);
  CMatrix greens(dim, dim);
  std::vector<cplx> e(dim, 0.0);
  for (std::size_t col = 0; col < dim; ++col) {
    std::fill(e.begin(), e.end(), cplx(0.0));
    e[col] = 1.0;
    const std::vector<cplx> v = lu_solve(f, e);
    for (std::size_t r = 0; r < dim; ++r) greens(r, col) = v[r];
  }
  GreensResult out;
  out.reconstructed = inverse(greens);
  double err = 0.0;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      err += std::norm(out.reconstructed(r, c) - j(r, c));
  out.error = std::sqrt(err);
  return out;
}

StabilityResult stability_check(const CircuitParams& p, double omega,
                                std::size_t cells, Boundary bc) {
  CMatrix j = laplacian_real(p, omega, cells, bc);
  const std::size_t dim = j.rows();
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) j(r, c) *= kImag * omega;
  const EigResult e = eig(j, /*want_vectors=*/false);
  if (!e.converged)
    throw DomainError("stability eigensolve failed to converge");
  StabilityResult out;
  out.min_imag = std::numeric_limits<double>::infinity();
  for (const cplx s : e.values) {
    out.min_imag = std::min(out.min_imag, s.imag());
    out.max_abs = std::max(out.max_abs, std::abs(s));
  }
  out.stable = out.min_imag >= -1e-9 * out.max_abs;
  return out;
}

std::pair<double, double> inic_effective(double c1, double c2) {
  return {c1 + c2, c2 - c1};
}

std::pair<double, double> inic_halves(double c, double leak) {
  return {0.5 * c * (1.0 - leak), 0.5 * c * (1.0 + leak)};
}

double lowpass_3db(double r, double c) {
  if (!(r > 0.0) || !(c > 0.0))
    throw DomainError("lowpass_3db needs positive R and C");
  return 1.0 / (two_pi * r * c);
}

namespace {

void check_tolerance(double pct) {
  if (!(pct >= 0.0) || pct >= 50.0)
    throw DomainError("component tolerance must lie in [0, 50) percent");
}

}  // namespace

CircuitParams disorder_sample(const CircuitParams& p, double tolerance_pct,
                              std::uint64_t seed) {
  check_tolerance(tolerance_pct);
  const double t = tolerance_pct / 100.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mult(1.0 - t, 1.0 + t);
  CircuitParams out = p;
  out.c0 = p.c0 * mult(rng);
  out.cm = p.cm * mult(rng);
  out.cn = p.cn * mult(rng);
  out.la = p.la * mult(rng);
  out.lb = p.lb * mult(rng);
  return out;
}

Model disorder_sample(const Model& model, double tolerance_pct,
                      std::uint64_t seed) {
  check_tolerance(tolerance_pct);
  const double t = tolerance_pct / 100.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mult(1.0 - t, 1.0 + t);
  Model out = model;
  for (auto& [b, c] : out.ab)
    if (c != cplx(0.0)) c *= mult(rng);
  for (auto& [d, c] : out.ba)
    if (c != cplx(0.0)) c *= mult(rng);
  if (out.c_i != 0.0) out.c_i *= mult(rng);
  if (out.c_z != 0.0) out.c_z *= mult(rng);
  return out;
}

namespace {

using nlohmann::json;

}  // namespace

std::string circuit_to_json(const CircuitParams& p) {
  json j;
  j["m"] = p.m;
  j["n"] = p.n;
  j["c_ab0"] = p.c0;
  j["c_abm"] = p.cm;
  j["c_ban"] = p.cn;
  j["sign_m"] = p.sign_m;
  j["sign_n"] = p.sign_n;
  j["l_a"] = p.la;
  j["l_b"] = p.lb;
  j["f_res"] = p.f_res;
  if (std::isfinite(p.r0)) j["r0"] = p.r0;
  if (p.esr != 0.0) j["esr"] = p.esr;
  if (p.leak != 0.0) j["leak"] = p.leak;
  if (p.reciprocal) j["reciprocal"] = true;
  return j.dump(2) + "\n";
}

CircuitParams circuit_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("circuit JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw IoError("circuit JSON must be an object");
  const auto need = [&](const char* f) -> double {
    if (!j.contains(f) || !j[f].is_number())
      throw IoError(std::string("missing numeric field '") + f + "'");
    return j[f].get<double>();
  };
  CircuitParams p;
  p.m = static_cast<int>(need("m"));
  p.n = static_cast<int>(need("n"));
  p.c0 = need("c_ab0");
  p.cm = need("c_abm");
  p.cn = need("c_ban");
  p.la = need("l_a");
  p.lb = need("l_b");
  p.f_res = need("f_res");
  if (j.contains("sign_m")) p.sign_m = j["sign_m"].get<int>() < 0 ? -1 : 1;
  if (j.contains("sign_n")) p.sign_n = j["sign_n"].get<int>() < 0 ? -1 : 1;
  if (j.contains("r0")) p.r0 = j["r0"].get<double>();
  if (j.contains("esr")) p.esr = j["esr"].get<double>();
  if (j.contains("leak")) p.leak = j["leak"].get<double>();
  if (j.contains("reciprocal")) p.reciprocal = j["reciprocal"].get<bool>();
  if (p.m < 1 || p.n < 1) throw IoError("reaches m, n must be >= 1");
  if (!(p.c0 > 0.0) || !(p.cm > 0.0) || !(p.cn > 0.0))
    throw IoError("capacitances must be positive");
  if (!(p.la > 0.0) || !(p.lb > 0.0)) throw IoError("inductances must be positive");
  return p;
}

CircuitParams circuit_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open circuit file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return circuit_from_json(buf.str());
}

}  // namespace braidkit
