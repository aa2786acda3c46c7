#ifndef MSOS_MODELS_HPP
#define MSOS_MODELS_HPP

#include <string>
#include <vector>

#include "msos/polynomial.hpp"

namespace msos {

/// Point mass between two soft walls: quadratic regulation objective,
/// discretized dynamics, control saturation and one complementarity pair per
/// wall and step.
struct DoubleIntegratorParams {
  int N = 3;
  double m = 1.0;
  double dt = 0.1;
  double k1 = 100.0;
  double k2 = 100.0;
  double d1 = 1.0;
  double d2 = 1.0;
  double u_max = 10.0;
  double x_init = 0.5;
  double v_init = 0.0;
};

/// Variables: x_0..x_N, v_0..v_N, u_k, lam1_k, lam2_k for k < N. Initial
/// conditions stay as equality constraints so the clique structure of the
/// first step is visible.
Pop make_double_integrator(const DoubleIntegratorParams& p);

/// Zero-control rollout from the initial state; feasible whenever the mass
/// never crosses a wall. Used as an upper-bound witness.
std::vector<double> double_integrator_rollout(const DoubleIntegratorParams& p);

/// Mode-selection system: sum lam_i^2 = 1, lam_i (1 - lam_i) = 0. The
/// objective defaults to zero; a linear form can be supplied.
Pop make_separable_modes(int n, const std::vector<double>& linear_objective = {});

/// 1-D two-link chain: integrator dynamics per link plus squared distance
/// constraints between neighbors. Returns the POP and the per-step
/// user-defined cliques (three of size 3 and four of size 2 per step).
struct KinematicChain {
  Pop pop;
  std::vector<std::vector<int>> self_cliques;
};
KinematicChain make_kinematic_chain(int N, double r);

}  // namespace msos

#endif
