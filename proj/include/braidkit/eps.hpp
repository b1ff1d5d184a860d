#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "braidkit/model.hpp"

namespace braidkit {

// Phase-boundary lines of the three-coupling chain in coupling space, named
// by which coupling crosses which sign of c_ab0.
enum class BoundaryLine {
  pq,  // c_ab_neg_m = -c_ab0
  rs,  // c_ab_neg_m = +c_ab0
  ab,  // c_ba_n = -c_ab0
  ef,  // c_ba_n = +c_ab0
};

std::string boundary_line_name(BoundaryLine line);

// Exceptional points on one boundary line: the k values where the two bands
// coalesce. Closed form:
//   pq: k = 2 pi j / m            (m points)
//   rs: k = (2j + 1) pi / m       (m points)
//   ab: k = 0                     (1 point)
//   ef: k = pi                    (1 point)
// reported in (-pi, pi], ascending. `m` is the A<-B reach (pq/rs); ab/ef
// ignore it.
std::vector<double> ep_momenta(BoundaryLine line, int m);

// Numerically locates band-touching momenta for a model sitting on a phase
// boundary: coarse scan of |det of the traceless Bloch matrix| plus Newton
// polish on its squared modulus. An off-boundary model yields an empty list.
struct EpPoint {
  double k = 0.0;
  double det_abs = 0.0;  // |det| of the traceless Bloch matrix at k
};
std::vector<EpPoint> find_eps(const Model& model, std::size_t scan = 4096,
                              double tol = 1e-12);

// Transition classification between two phases. Type 1: same-sign (or one
// zero) braiding indices with few exceptional momenta; type 2: strictly
// opposite signs, with the full m-fold family of exceptional momenta.
struct TransitionClass {
  int type = 0;          // 1 or 2
  int xi_before = 0;
  int xi_after = 0;
  std::size_t ep_count = 0;
  bool criteria_agree = false;  // sign rule and EP-count rule concur
};

// Classifies the transition crossed when moving between two models across a
// shared boundary line. Both xi values are computed off-boundary.
TransitionClass classify_transition(const Model& before, const Model& after,
                                    BoundaryLine line);

// Defectiveness probe at a band-touching momentum: the traceless Bloch
// matrix there is nilpotent (rank 1, square ~ 0). Returns ||H~^2||_max
// relative to ||H~||_max^2.
double defectiveness_residual(const Model& model, double k);

}  // namespace braidkit
