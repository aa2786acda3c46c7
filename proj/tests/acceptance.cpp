// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expected values are frozen from the worked examples and from the
// independent oracles coded below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "msos/extraction.hpp"
#include "msos/models.hpp"
#include "msos/relaxation.hpp"
#include "msos/sdpa.hpp"
#include "msos/solver.hpp"

using namespace msos;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++failures;
}

struct Check {
  bool ok = true;
  std::string detail;
  void fail(const std::string& msg) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += msg;
  }
  void expect(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
  }
};

Graph six_vertex_graph() {
  Graph g(6);  // A..F = 0..5
  g.add_edge(0, 1);
  g.add_edge(0, 3);
  g.add_edge(1, 2);
  g.add_edge(1, 4);
  g.add_edge(2, 5);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  return g;
}

SolverConfig solver_cfg(double eps = 1e-8, int iters = 200000) {
  SolverConfig cfg;
  cfg.eps_abs = eps;
  cfg.eps_rel = eps * 10;
  cfg.max_iters = iters;
  return cfg;
}

// ---------------------------------------------------------------- criterion 1
void criterion_chordal_example() {
  Check c;
  Graph g = six_vertex_graph();
  auto t0 = clock_type::now();
  auto [ext, order] = extend_md(g);
  CliqueSet cliques = maximal_cliques(ext, order);
  double ms = std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();

  c.expect(ext.nedges() - g.nedges() == 2, "fill count != 2");
  c.expect(ext.has_edge(1, 3), "missing fill edge (B,D)");
  c.expect(ext.has_edge(1, 5), "missing fill edge (B,F)");
  std::set<std::vector<int>> got(cliques.cliques.begin(), cliques.cliques.end());
  std::set<std::vector<int>> expect = {{0, 1, 3}, {1, 3, 4}, {1, 4, 5}, {1, 2, 5}};
  c.expect(got == expect, "cliques differ from {A,B,D},{B,D,E},{B,E,F},{B,C,F}");
  c.expect(ms < 1.0, "took " + std::to_string(ms) + " ms");
  report(1, "MD extension of the six-vertex example", c.ok, c.detail);
}

// ---------------------------------------------------------------- criterion 2
void criterion_riesz() {
  Check c;
  const int n = 3;
  MomentSequence y;
  auto label = [&](const LinForm& f) {
    std::string out;
    for (std::size_t i = 0; i < f.terms.size(); ++i) {
      if (i) out += "+";
      out += y.label(f.terms[i].first, n);
    }
    return out;
  };

  // L_y([x]_1 [x]_1^T), n = 3: full 4x4 symbolic matrix
  MonomialBasis b1 = monomial_basis({0, 1, 2}, 1);
  const char* expect_m[4][4] = {
      {"y(0,0,0)", "y(1,0,0)", "y(0,1,0)", "y(0,0,1)"},
      {"y(1,0,0)", "y(2,0,0)", "y(1,1,0)", "y(1,0,1)"},
      {"y(0,1,0)", "y(1,1,0)", "y(0,2,0)", "y(0,1,1)"},
      {"y(0,0,1)", "y(1,0,1)", "y(0,1,1)", "y(0,0,2)"}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Polynomial p = Polynomial::from_monomial(b1[i] * b1[j], n);
      if (label(riesz_apply(p, y)) != expect_m[i][j])
        c.fail("moment matrix entry (" + std::to_string(i + 1) + "," +
               std::to_string(j + 1) + ")");
    }

  // L_y((x1 + x3) * [x(I)]_2), I = {1, 3}
  Polynomial s = Polynomial::variable(0, n) + Polynomial::variable(2, n);
  MonomialBasis bI = monomial_basis({0, 2}, 2);
  const char* expect_v[6] = {"y(1,0,0)+y(0,0,1)", "y(2,0,0)+y(1,0,1)",
                             "y(1,0,1)+y(0,0,2)", "y(3,0,0)+y(2,0,1)",
                             "y(2,0,1)+y(1,0,2)", "y(1,0,2)+y(0,0,3)"};
  for (int i = 0; i < 6; ++i) {
    Polynomial p = s * Polynomial::from_monomial(bI[i], n);
    if (label(riesz_apply(p, y)) != expect_v[i])
      c.fail("vector entry " + std::to_string(i + 1));
  }
  report(2, "Riesz functional matches the worked example", c.ok, c.detail);
}

// ---------------------------------------------------------------- criterion 3
void criterion_csp_cliques() {
  Check c;
  DoubleIntegratorParams p;
  p.N = 1;
  Pop pop = make_double_integrator(p);
  auto idx = [&](const std::string& name) {
    for (int v = 0; v < pop.nvars(); ++v)
      if (pop.variable_names[v] == name) return v;
    return -1;
  };
  CsOption md;
  md.mode = SparsityMode::kMd;
  CliqueDecomposition dec = decompose(pop, md);

  std::vector<int> fig_a = {idx("x0"), idx("v0"), idx("lam1_0"), idx("lam2_0")};
  std::vector<int> fig_b = {idx("x0"), idx("x1"), idx("v0")};
  std::sort(fig_a.begin(), fig_a.end());
  std::sort(fig_b.begin(), fig_b.end());

  std::set<std::vector<int>> with_x0;
  for (const auto& clique : dec.cliques)
    if (std::binary_search(clique.begin(), clique.end(), idx("x0")))
      with_x0.insert(clique);
  c.expect(with_x0 == std::set<std::vector<int>>{fig_a, fig_b},
           "cliques containing x0 are not the two highlighted ones");
  report(3, "double integrator N=1 CSP cliques", c.ok, c.detail);
}

// ---------------------------------------------------------------- criterion 4
void criterion_ts_masks() {
  Check c;
  Pop pop = make_separable_modes(3);
  CsOption non;
  non.mode = SparsityMode::kNon;
  CliqueDecomposition dec = decompose(pop, non);
  TsOption ts;
  ts.mode = SparsityMode::kMax;
  MaskSet masks = build_masks(pop, dec, ts, 2);

  const std::vector<std::vector<int>> expect = {
      {1, 1, 1, 1, 1, 0, 0, 1, 0, 1},
      {1, 1, 0, 0, 0, 0, 0, 0, 0, 0},
      {1, 0, 1, 0, 0, 0, 0, 0, 0, 0},
      {1, 0, 0, 1, 0, 0, 0, 0, 0, 0}};
  for (int j = 0; j < 4; ++j) {
    const EqMask* mask = masks.find_eq(0, j);
    if (!mask || mask->pattern != expect[j])
      c.fail("B^h_(2,1," + std::to_string(j) + ") differs");
  }

  MonomialBasis red = reduced_basis(masks, 0);
  bool basis_ok = red.size() == 7;
  if (basis_ok) {
    std::vector<Monomial> expect_basis = {
        Monomial::one(),           Monomial::variable(0, 1), Monomial::variable(1, 1),
        Monomial::variable(2, 1),  Monomial::variable(0, 2), Monomial::variable(1, 2),
        Monomial::variable(2, 2)};
    basis_ok = red.members == expect_basis;
  }
  c.expect(basis_ok, "reduced basis != {1,l1,l2,l3,l1^2,l2^2,l3^2}");

  for (int n = 3; n <= 8; ++n) {
    Pop pn = make_separable_modes(n);
    CliqueDecomposition dn = decompose(pn, non);
    MaskSet mn = build_masks(pn, dn, ts, 2);
    int red_size = reduced_basis(mn, 0).size();
    int dense_size = static_cast<int>(basis_count(n, 2));
    if (red_size != 2 * n + 1 || dense_size != (n + 1) * (n + 2) / 2)
      c.fail("n=" + std::to_string(n) + ": reduced " + std::to_string(red_size) +
             " vs dense " + std::to_string(dense_size));
  }
  report(4, "term-sparsity masks and reduced bases", c.ok, c.detail);
}

// ------------------------------------------------------- criteria 5, 9 and 10
struct RandomInstance {
  Pop pop;
  int dmin;
  std::string tag;
  bool has_equality = false;
};

// Random boxed POPs: integer-coefficient objective, per-variable box
// 1 - x_i^2 >= 0, optionally one extra inequality or the lattice-exact
// equality x1^2 = 1/4.
std::vector<RandomInstance> make_random_instances() {
  std::mt19937 rng(424242u);
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto random_objective = [&](int n, int deg, int terms) {
    Polynomial f(n);
    MonomialBasis full;
    std::vector<int> vars(n);
    for (int i = 0; i < n; ++i) vars[i] = i;
    full = monomial_basis(vars, deg);
    std::uniform_int_distribution<int> pick(1, full.size() - 1);
    for (int t = 0; t < terms; ++t) {
      int c = coeff(rng);
      if (c != 0) f.add_term(full[pick(rng)], static_cast<double>(c));
    }
    if (f.is_zero()) f.add_term(full[1], 1.0);
    return f;
  };
  auto boxed = [&](int n, int deg, int terms, int extra) {
    RandomInstance inst;
    Pop pop;
    for (int i = 1; i <= n; ++i) pop.variable_names.push_back("x" + std::to_string(i));
    pop.objective = random_objective(n, deg, terms);
    for (int i = 0; i < n; ++i) {
      Polynomial box = Polynomial::constant(1.0, n);
      box = box - Polynomial::variable(i, n) * Polynomial::variable(i, n);
      pop.inequalities.push_back(box);
    }
    if (extra == 1) {
      // 1 - (x1 - 1/4)^2 >= 0 keeps a slab of the box feasible
      Polynomial shift = Polynomial::variable(0, n) - Polynomial::constant(0.25, n);
      pop.inequalities.push_back(Polynomial::constant(1.0, n) - shift * shift);
    }
    if (extra == 2) {
      // x1^2 = 1/4: satisfied exactly at the lattice points +-0.5
      pop.equalities.push_back(Polynomial::variable(0, n) * Polynomial::variable(0, n) -
                               Polynomial::constant(0.25, n));
      inst.has_equality = true;
    }
    inst.pop = pop;
    inst.dmin = compute_dmin(pop);
    inst.tag = "n" + std::to_string(n) + "d" + std::to_string(deg) +
               (extra == 1 ? "+g" : extra == 2 ? "+h" : "");
    return inst;
  };
  return {boxed(1, 4, 4, 0), boxed(2, 4, 6, 0), boxed(2, 3, 5, 1), boxed(3, 4, 6, 0),
          boxed(3, 2, 5, 2), boxed(4, 2, 6, 0), boxed(4, 2, 6, 1), boxed(3, 4, 5, 1),
          boxed(2, 4, 6, 2), boxed(4, 2, 5, 2)};
}

double eval_at(const Pop& pop, const std::vector<double>& x) {
  return evaluate(pop.objective, x);
}

bool grid_feasible(const Pop& pop, const std::vector<double>& x) {
  for (const auto& g : pop.inequalities)
    if (evaluate(g, x) < -1e-12) return false;
  for (const auto& h : pop.equalities)
    if (std::fabs(evaluate(h, x)) > 1e-9) return false;
  return true;
}

// Brute-force grid minimum over [-1,1]^n on the 1e-3 lattice. n <= 2 is
// exhaustive; larger n starts from a coarse sweep of the same lattice and
// descends through neighbor moves with shrinking lattice strides, so every
// evaluated point stays a feasible lattice point and the result upper-bounds
// the true minimum.
double grid_minimum(const Pop& pop) {
  const int n = pop.nvars();
  const double step = 1e-3;
  const long span = 1000;  // +-1 in lattice units
  double best = std::numeric_limits<double>::infinity();
  std::vector<long> best_pt;

  std::function<void(std::vector<long>&, std::size_t, long)> sweep =
      [&](std::vector<long>& pt, std::size_t dim, long stride) {
        if (dim == pt.size()) {
          std::vector<double> x(pt.size());
          for (std::size_t i = 0; i < pt.size(); ++i) x[i] = pt[i] * step;
          if (!grid_feasible(pop, x)) return;
          double v = eval_at(pop, x);
          if (v < best) {
            best = v;
            best_pt.assign(pt.begin(), pt.end());
          }
          return;
        }
        for (long k = -span; k <= span; k += stride) {
          pt[dim] = k;
          sweep(pt, dim + 1, stride);
        }
      };

  std::vector<long> pt(n, 0);
  long coarse = n <= 2 ? 1 : (n == 3 ? 50 : 100);
  sweep(pt, 0, coarse);
  if (n <= 2 || best_pt.empty()) return best;

  // neighbor descent on the 1e-3 lattice with shrinking strides
  for (long stride : {25L, 5L, 1L}) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int dim = 0; dim < n; ++dim) {
        for (long dir : {-1L, 1L}) {
          std::vector<long> cand = best_pt;
          cand[dim] += dir * stride;
          if (cand[dim] < -span || cand[dim] > span) continue;
          std::vector<double> x(cand.size());
          for (std::size_t i = 0; i < cand.size(); ++i) x[i] = cand[i] * step;
          if (!grid_feasible(pop, x)) continue;
          double v = eval_at(pop, x);
          if (v < best - 1e-15) {
            best = v;
            best_pt = cand;
            improved = true;
          }
        }
      }
    }
  }
  return best;
}

void criteria_bound_hierarchy_and_duality() {
  Check chain_check, ladder_check, duality_check;
  auto t0 = clock_type::now();
  std::vector<RandomInstance> instances = make_random_instances();
  const double slack = 1e-4;
  int duality_compared = 0;

  for (const auto& inst : instances) {
    const Pop& pop = inst.pop;
    int d = inst.dmin;
    SolverConfig cfg = solver_cfg(1e-8, 100000);

    RelaxationProblem dense = assemble_dense(pop, d);
    SdpSolution dense_sol = solve(dense, cfg);

    CsOption md;
    md.mode = SparsityMode::kMd;
    CliqueDecomposition dec = decompose(pop, md);
    RelaxationProblem cs = assemble_cs(pop, dec, d);
    SdpSolution cs_sol = solve(cs, cfg);

    TsOption ts;
    ts.mode = SparsityMode::kMd;
    ts.sparse_order = 1;
    MaskSet masks = build_masks(pop, dec, ts, d);
    RelaxationProblem csts = assemble_cs_ts(pop, dec, masks, d);
    SdpSolution csts_sol = solve(csts, cfg);

    double gridmin = grid_minimum(pop);

    if (!(csts_sol.objective_value <= cs_sol.objective_value + slack))
      chain_check.fail(inst.tag + ": CS-TS " + std::to_string(csts_sol.objective_value) +
                       " > CS " + std::to_string(cs_sol.objective_value));
    if (!(cs_sol.objective_value <= dense_sol.objective_value + slack))
      chain_check.fail(inst.tag + ": CS > dense");
    if (!(dense_sol.objective_value <= gridmin + slack))
      chain_check.fail(inst.tag + ": dense " + std::to_string(dense_sol.objective_value) +
                       " > grid " + std::to_string(gridmin));

    // rho_d nondecreasing over three orders of the CS hierarchy
    double prev = -std::numeric_limits<double>::infinity();
    for (int dd = d; dd <= d + 2; ++dd) {
      RelaxationProblem rp = assemble_cs(pop, dec, dd);
      SdpSolution sol = solve(rp, cfg);
      if (!(sol.objective_value >= prev - slack))
        ladder_check.fail(inst.tag + ": rho_" + std::to_string(dd) + " decreased");
      prev = sol.objective_value;
      if (dd == d + 2 && !(gridmin >= sol.objective_value - slack))
        ladder_check.fail(inst.tag + ": top order exceeds grid minimum");
    }

    // criterion 9 on the same instances
    if (dense_sol.status == SolveStatus::kOptimal) {
      SdpSolution sos_sol = solve_sos(dualize(dense), cfg);
      if (sos_sol.status == SolveStatus::kOptimal) {
        ++duality_compared;
        double diff = std::fabs(sos_sol.objective_value - dense_sol.objective_value);
        if (!(diff <= 1e-4 * (1.0 + std::fabs(dense_sol.objective_value))))
          duality_check.fail(inst.tag + ": moment/SOS differ by " + std::to_string(diff));
      }
    }
  }
  double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
  if (secs >= 120.0)
    chain_check.fail("runtime " + std::to_string(secs) + " s exceeds 2 min");
  report(5, "bound hierarchy on 10 random POPs",
         chain_check.ok && ladder_check.ok,
         chain_check.detail + ladder_check.detail +
             (chain_check.ok && ladder_check.ok
                  ? "runtime " + std::to_string(secs).substr(0, 5) + " s"
                  : ""));
  if (duality_compared == 0) duality_check.fail("no instance solved on both sides");
  report(9, "moment/SOS duality within 1e-4 relative", duality_check.ok,
         duality_check.ok ? std::to_string(duality_compared) + " instances"
                          : duality_check.detail);
}

// ---------------------------------------------------------------- criterion 6
void criterion_tightness() {
  Check c;
  Pop pop = parse_pop("vars x; min x^4 - x^2;");
  RelaxationProblem rp = assemble_dense(pop, 2);
  SdpSolution sol = solve(rp, solver_cfg(1e-9));
  c.expect(std::fabs(sol.objective_value + 0.25) <= 1e-4,
           "lower bound " + std::to_string(sol.objective_value));
  ExtractionResult res = extract_robust(pop, rp, sol);
  double root = 1.0 / std::sqrt(2.0);
  c.expect(std::fabs(std::fabs(res.point[0]) - root) <= 1e-3,
           "extracted point " + std::to_string(res.point[0]));
  Certificate cert = certify(pop, sol.objective_value, res, 1e-6);
  c.expect(cert.feasible && cert.eta_g <= 1e-3,
           "eta_g " + std::to_string(cert.eta_g));
  report(6, "min x^4 - x^2 tight at d=2 with certified extraction", c.ok, c.detail);
}

// ---------------------------------------------------------------- criterion 7
void criterion_robust_vs_naive() {
  Check c;
  Pop pop = parse_pop("vars x; min x; s.t. x^2 == 1;");
  RelaxationProblem rp = assemble_dense(pop, 2);
  // symmetric two-atom moment sequence of (delta_+1 + delta_-1)/2
  std::vector<double> y(static_cast<std::size_t>(rp.y.size()));
  for (int pos = 0; pos < rp.y.size(); ++pos)
    y[static_cast<std::size_t>(pos)] =
        rp.y.monomial(pos).total_degree() % 2 == 0 ? 1.0 : 0.0;

  ExtractionResult naive = extract_naive(pop, rp, y);
  c.expect(std::fabs(naive.point[0]) <= 1e-3,
           "naive returned " + std::to_string(naive.point[0]));
  ExtractionResult robust = extract_robust(pop, rp, y);
  c.expect(std::fabs(std::fabs(robust.point[0]) - 1.0) <= 1e-3,
           "robust returned " + std::to_string(robust.point[0]));
  report(7, "naive midpoint vs robust atom on the two-atom mixture", c.ok, c.detail);
}

// ---------------------------------------------------------------- criterion 8
void criterion_double_integrator_end_to_end() {
  Check c;
  auto t0 = clock_type::now();
  DoubleIntegratorParams p;
  p.N = 3;
  Pop pop = make_double_integrator(p);
  CsOption md;
  md.mode = SparsityMode::kMd;
  CliqueDecomposition dec = decompose(pop, md);
  RelaxationProblem rp = assemble_cs(pop, dec, 2);
  SdpSolution sol = solve(rp, solver_cfg(1e-9));

  c.expect(sol.status == SolveStatus::kOptimal, "status " + status_name(sol.status));
  double log_kkt = -std::log10(std::max(sol.kkt_max, 1e-300));
  c.expect(log_kkt >= 5.0, "-log10(kkt) = " + std::to_string(log_kkt));

  std::vector<double> rollout = double_integrator_rollout(p);
  c.expect(feasibility_residual(pop, rollout) <= 1e-12, "rollout infeasible");
  double upper = evaluate(pop.objective, rollout);
  c.expect(sol.objective_value <= upper + 1e-6,
           "lower " + std::to_string(sol.objective_value) + " > rollout " +
               std::to_string(upper));

  ExtractionResult res = extract_robust(pop, rp, sol);
  Certificate cert = certify(pop, sol.objective_value, res, 1e-4);
  c.expect(cert.feasible, "extracted point infeasible at 1e-4");

  double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.expect(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  std::string detail = c.ok ? "-log10(kkt) = " + std::to_string(log_kkt).substr(0, 4) +
                                  ", eta_g = " + std::to_string(cert.eta_g)
                            : c.detail;
  report(8, "double integrator N=3 end to end", c.ok, detail);
}

// --------------------------------------------------------------- criterion 10
void criterion_sdpa_round_trip() {
  Check c;
  std::vector<std::pair<std::string, RelaxationProblem>> instances;

  for (int N : {1, 2, 3}) {
    DoubleIntegratorParams p;
    p.N = N;
    Pop pop = make_double_integrator(p);
    CsOption md;
    md.mode = SparsityMode::kMd;
    CliqueDecomposition dec = decompose(pop, md);
    instances.emplace_back("di" + std::to_string(N), assemble_cs(pop, dec, 2));
  }
  {
    Pop pop = make_separable_modes(3);
    CsOption non;
    non.mode = SparsityMode::kNon;
    CliqueDecomposition dec = decompose(pop, non);
    TsOption ts;
    ts.mode = SparsityMode::kMax;
    instances.emplace_back("modes",
                           assemble_cs_ts(pop, dec, build_masks(pop, dec, ts, 2), 2));
  }
  {
    KinematicChain kc = make_kinematic_chain(2, 1.0);
    CsOption self;
    self.mode = SparsityMode::kSelf;
    self.self_cliques = kc.self_cliques;
    CliqueDecomposition dec = decompose(kc.pop, self);
    instances.emplace_back("chain", assemble_cs(kc.pop, dec, 2));
  }
  for (const auto& inst : make_random_instances()) {
    CsOption md;
    md.mode = SparsityMode::kMd;
    instances.emplace_back(inst.tag,
                           assemble_cs(inst.pop, decompose(inst.pop, md), inst.dmin));
  }
  instances.emplace_back("quartic",
                         assemble_dense(parse_pop("vars x; min x^4 - x^2;"), 2));

  for (const auto& [tag, rp] : instances) {
    std::string once = export_sdpa(rp);
    SdpaData imported = import_sdpa(once);
    std::string twice = export_sdpa(imported);
    if (once != twice) c.fail(tag + ": second export differs");
    if (!structurally_equal(sdpa_from_relaxation(rp), imported))
      c.fail(tag + ": structural mismatch after import");
  }
  report(10, "SDPA export/import/export is byte-stable",
         c.ok, c.ok ? std::to_string(instances.size()) + " instances" : c.detail);
}

// --------------------------------------------------------------- criterion 11
void criterion_sparse_order_monotone() {
  Check c;
  Pop pop = make_separable_modes(3, {1.0, 2.0, 3.0});
  CsOption non;
  non.mode = SparsityMode::kNon;
  CliqueDecomposition dec = decompose(pop, non);
  SolverConfig cfg = solver_cfg(1e-9);

  RelaxationProblem cs = assemble_cs(pop, dec, 2);
  double rho_d = solve(cs, cfg).objective_value;

  double prev = -std::numeric_limits<double>::infinity();
  bool reached = false;
  double rho_fix = 0;
  for (int k = 1; k <= 8; ++k) {
    TsOption ts;
    ts.mode = SparsityMode::kMax;
    ts.sparse_order = k;
    MaskSet masks = build_masks(pop, dec, ts, 2);
    RelaxationProblem rp = assemble_cs_ts(pop, dec, masks, 2);
    double rho_k = solve(rp, cfg).objective_value;
    if (!(rho_k >= prev - 1e-5))
      c.fail("rho^" + std::to_string(k) + " decreased");
    if (!(rho_k <= rho_d + 1e-5))
      c.fail("rho^" + std::to_string(k) + " exceeds rho_d");
    prev = rho_k;
    if (masks.reached_fixpoint) {
      reached = true;
      rho_fix = rho_k;
      break;
    }
  }
  c.expect(reached, "mask fixpoint not reached within k = 8");
  if (reached)
    c.expect(std::fabs(rho_fix - rho_d) <= 1e-4 * (1.0 + std::fabs(rho_d)),
             "fixpoint value " + std::to_string(rho_fix) + " != rho_d " +
                 std::to_string(rho_d));
  report(11, "sparse order k: monotone, bounded by rho_d, equal at fixpoint", c.ok,
         c.detail);
}

}  // namespace

int main() {
  criterion_chordal_example();
  criterion_riesz();
  criterion_csp_cliques();
  criterion_ts_masks();
  criteria_bound_hierarchy_and_duality();  // prints criteria 5 and 9
  criterion_tightness();
  criterion_robust_vs_naive();
  criterion_double_integrator_end_to_end();
  criterion_sdpa_round_trip();
  criterion_sparse_order_monotone();
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
