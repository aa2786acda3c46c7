#include "msos/models.hpp"

#include <algorithm>
#include <stdexcept>

namespace msos {

namespace {

Polynomial var(int idx, int n) { return Polynomial::variable(idx, n); }
Polynomial con(double c, int n) { return Polynomial::constant(c, n); }

}  // namespace

Pop make_double_integrator(const DoubleIntegratorParams& p) {
  if (p.N < 1 || p.m <= 0 || p.dt <= 0 || p.k1 <= 0 || p.k2 <= 0)
    throw std::invalid_argument("invalid double integrator parameters");
  const int N = p.N;
  Pop pop;
  // x_0..x_N, v_0..v_N, then per step u_k, lam1_k, lam2_k
  for (int k = 0; k <= N; ++k) pop.variable_names.push_back("x" + std::to_string(k));
  for (int k = 0; k <= N; ++k) pop.variable_names.push_back("v" + std::to_string(k));
  for (int k = 0; k < N; ++k) {
    pop.variable_names.push_back("u" + std::to_string(k));
    pop.variable_names.push_back("lam1_" + std::to_string(k));
    pop.variable_names.push_back("lam2_" + std::to_string(k));
  }
  const int n = pop.nvars();
  auto x = [&](int k) { return var(k, n); };
  auto v = [&](int k) { return var(N + 1 + k, n); };
  auto u = [&](int k) { return var(2 * (N + 1) + 3 * k, n); };
  auto lam1 = [&](int k) { return var(2 * (N + 1) + 3 * k + 1, n); };
  auto lam2 = [&](int k) { return var(2 * (N + 1) + 3 * k + 2, n); };

  // objective: sum u_k^2 + x_{k+1}^2 + v_{k+1}^2
  Polynomial obj(n);
  for (int k = 0; k < N; ++k)
    obj = obj + u(k) * u(k) + x(k + 1) * x(k + 1) + v(k + 1) * v(k + 1);
  pop.objective = obj;

  for (int k = 0; k < N; ++k) {
    // dynamics
    pop.equalities.push_back(x(k + 1) - x(k) - con(p.dt, n) * v(k));
    pop.equalities.push_back(v(k + 1) - v(k) -
                             con(p.dt / p.m, n) * (u(k) + lam1(k) - lam2(k)));
    // control saturation
    pop.inequalities.push_back(con(p.u_max * p.u_max, n) - u(k) * u(k));
    // wall 1: 0 <= lam1 perp lam1/k1 + d1 + x
    Polynomial gap1 = con(1.0 / p.k1, n) * lam1(k) + con(p.d1, n) + x(k);
    pop.inequalities.push_back(lam1(k));
    pop.inequalities.push_back(gap1);
    pop.equalities.push_back(lam1(k) * gap1);
    // wall 2: 0 <= lam2 perp lam2/k2 + d2 - x
    Polynomial gap2 = con(1.0 / p.k2, n) * lam2(k) + con(p.d2, n) - x(k);
    pop.inequalities.push_back(lam2(k));
    pop.inequalities.push_back(gap2);
    pop.equalities.push_back(lam2(k) * gap2);
  }
  // initial conditions kept as equality constraints
  pop.equalities.push_back(x(0) - con(p.x_init, n));
  pop.equalities.push_back(v(0) - con(p.v_init, n));
  return pop;
}

std::vector<double> double_integrator_rollout(const DoubleIntegratorParams& p) {
  const int N = p.N;
  std::vector<double> point(2 * (N + 1) + 3 * N, 0.0);
  double xk = p.x_init, vk = p.v_init;
  point[0] = xk;
  point[N + 1] = vk;
  for (int k = 0; k < N; ++k) {
    // u = 0 and no wall contact; valid while the mass stays inside the walls
    double xn = xk + p.dt * vk;
    double vn = vk;
    point[k + 1] = xn;
    point[N + 1 + k + 1] = vn;
    xk = xn;
    vk = vn;
  }
  return point;
}

Pop make_separable_modes(int n, const std::vector<double>& linear_objective) {
  if (n < 1) throw std::invalid_argument("need at least one mode");
  Pop pop;
  for (int i = 1; i <= n; ++i) pop.variable_names.push_back("lam" + std::to_string(i));
  pop.objective = Polynomial(n);
  for (std::size_t i = 0; i < linear_objective.size() && i < static_cast<std::size_t>(n); ++i)
    pop.objective = pop.objective + con(linear_objective[i], n) * var(static_cast<int>(i), n);
  Polynomial h0(n);
  for (int i = 0; i < n; ++i) h0 = h0 + var(i, n) * var(i, n);
  h0 = h0 - con(1.0, n);
  pop.equalities.push_back(h0);
  for (int i = 0; i < n; ++i)
    pop.equalities.push_back(var(i, n) * (con(1.0, n) - var(i, n)));
  return pop;
}

KinematicChain make_kinematic_chain(int N, double r) {
  if (N < 1) throw std::invalid_argument("horizon must be >= 1");
  KinematicChain out;
  Pop& pop = out.pop;
  // x_{i,k} for i=1..3, k=0..N then u_{i,k} for k<N
  for (int k = 0; k <= N; ++k)
    for (int i = 1; i <= 3; ++i)
      pop.variable_names.push_back("x" + std::to_string(i) + "_" + std::to_string(k));
  for (int k = 0; k < N; ++k)
    for (int i = 1; i <= 3; ++i)
      pop.variable_names.push_back("u" + std::to_string(i) + "_" + std::to_string(k));
  const int n = pop.nvars();
  auto x = [&](int i, int k) { return 3 * k + (i - 1); };
  auto u = [&](int i, int k) { return 3 * (N + 1) + 3 * k + (i - 1); };

  // control-effort objective
  Polynomial obj(n);
  for (int k = 0; k < N; ++k)
    for (int i = 1; i <= 3; ++i) obj = obj + var(u(i, k), n) * var(u(i, k), n);
  pop.objective = obj;

  for (int k = 0; k < N; ++k)
    for (int i = 1; i <= 3; ++i)
      pop.equalities.push_back(var(x(i, k + 1), n) - var(x(i, k), n) - var(u(i, k), n));
  for (int k = 0; k <= N; ++k)
    for (int i = 1; i <= 2; ++i) {
      Polynomial diff = var(x(i, k), n) - var(x(i + 1, k), n);
      pop.equalities.push_back(diff * diff - con(r * r, n));
    }

  // per step: three size-3 cliques and four size-2 cliques (link pairs at k
  // and k+1); duplicates across steps are dropped
  auto push_unique = [&](std::vector<int> c) {
    std::sort(c.begin(), c.end());
    for (const auto& existing : out.self_cliques)
      if (existing == c) return;
    out.self_cliques.push_back(std::move(c));
  };
  for (int k = 0; k < N; ++k) {
    for (int i = 1; i <= 3; ++i) push_unique({x(i, k), x(i, k + 1), u(i, k)});
    for (int m = k; m <= k + 1; ++m)
      for (int i = 1; i <= 2; ++i) push_unique({x(i, m), x(i + 1, m)});
  }
  return out;
}

}  // namespace msos
