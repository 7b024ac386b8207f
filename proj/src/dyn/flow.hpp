#pragma once

#include "dyn/system.hpp"

namespace hoferlab::dyn {

inline constexpr int kDefaultSteps = 1024;

struct FlowOptions {
  int steps = kDefaultSteps;
  bool monodromy = false;
  bool trajectory = false;
  double newton_tol = 1e-12;
  int newton_maxit = 64;
  // Force generic implicit-midpoint integration even when the system offers
  // a structural flow (used by the dual-route consistency tests).
  bool force_generic = false;
};

struct FlowResult {
  Vec endpoint;
  // Filled when trajectory (times/points) or monodromy (path) was requested.
  std::vector<double> times;
  std::vector<Vec> points;        // lifted: never wrapped to the fundamental domain
  Mat monodromy;                  // D phi(t0 -> t1)
  std::vector<Mat> monodromy_path;
  // max over recorded matrices of |M^T Jhat M - Jhat|_inf.
  double symplectic_defect = 0.0;
};

// X_H = Jhat grad H.
Vec hamiltonian_field(const HamiltonianSystem& sys, double t, const Vec& x);

// Implicit midpoint flow of the Hamiltonian field from (t0, x0) to t1 in a
// fixed number of steps (t1 < t0 integrates backwards). Newton inner solves
// to newton_tol; non-convergence raises a numeric error naming the step.
FlowResult flow(const HamiltonianSystem& sys, const Vec& x0, double t0, double t1,
                const FlowOptions& opts = {});

// Monodromy path t -> D phi^t(x) on [0,1] sampled at the integrator steps,
// with the spatial Hessians along the trajectory (consumed by the
// Conley-Zehnder machinery).
struct MonodromyPath {
  std::vector<double> times;
  std::vector<Mat> mats;
  std::vector<Mat> hessians;
  double symplectic_defect = 0.0;
};

MonodromyPath monodromy_path(const HamiltonianSystem& sys, const Vec& x, int steps);

double symplectic_defect(const Mat& m);

}  // namespace hoferlab::dyn
